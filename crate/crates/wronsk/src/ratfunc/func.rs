//! Rational functions in canonical form, and Moebius coordinate changes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::{rat_int, rat_to_string, Poly, Rat};

/// A reduced fraction of polynomials: the field `Q(z)`.
///
/// Canonical form: the denominator is monic and nonzero, numerator and
/// denominator are coprime, and zero is `0/1`. Two values are equal exactly
/// when their fields are identical, so `PartialEq` can be derived.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds `num/den` in canonical form; errors on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::canonical(num, den))
    }

    /// Internal constructor; the caller guarantees `den != 0`.
    fn canonical(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let (monic_den, lc) = den.monic();
        if !lc.is_one() {
            let inv = rat_int(1) / lc;
            num = num.scale(&inv);
            den = monic_den;
        } else {
            den = monic_den;
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    pub fn var() -> RatFunc {
        RatFunc::from_poly(Poly::var())
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> RatFunc {
        RatFunc::constant(rat_int(n))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The underlying polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::canonical(
            &self.num * &other.den,
            &self.den * &other.num,
        ))
    }

    /// Integer power; a negative exponent of zero is an error.
    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Exact formal derivative via the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let den = &self.den * &self.den;
        RatFunc::canonical(num, den)
    }

    /// Substitutes `inner` for the variable.
    ///
    /// Errors when the substituted denominator vanishes identically, which
    /// happens exactly when `inner` is a constant root of the denominator.
    pub fn compose(&self, inner: &RatFunc) -> Result<RatFunc> {
        let m = self
            .num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0));
        let num = homogenized_eval(&self.num, inner, m);
        let den = homogenized_eval(&self.den, inner, m);
        if den.is_zero() {
            return Err(Error::UndefinedComposition);
        }
        Ok(RatFunc::canonical(num, den))
    }

    /// Order of vanishing at `z = 0` (negative at a pole); `None` for zero.
    pub fn ord_at_zero(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let n = self.num.ord_at_zero().unwrap() as i64;
        let d = self.den.ord_at_zero().unwrap() as i64;
        Some(n - d)
    }

    /// Valuation at infinity: `deg(den) - deg(num)`; `None` for zero.
    pub fn val_at_infinity(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64)
    }

    /// Canonical text in a named variable: the polynomial form when the
    /// denominator is 1, `(num)/(den)` otherwise.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.to_string_var(var)
        } else {
            format!(
                "({})/({})",
                self.num.to_string_var(var),
                self.den.to_string_var(var)
            )
        }
    }

    /// Structured mirror of the canonical fields: ascending-power coefficient
    /// lists of numerator and denominator, coefficients as `p` or `p/q` text.
    pub fn to_json(&self) -> Value {
        let coeffs = |p: &Poly| -> Value {
            Value::Array(p.coeffs().iter().map(|c| json!(rat_to_string(c))).collect())
        };
        json!({ "num": coeffs(&self.num), "den": coeffs(&self.den) })
    }
}

/// Evaluates `p` at the rational function `u/v`, cleared by `v^m`:
/// returns `sum_k p_k * u^k * v^(m-k)` as a polynomial.
fn homogenized_eval(p: &Poly, inner: &RatFunc, m: usize) -> Poly {
    let u = inner.num();
    let v = inner.den();
    let mut upows = Vec::with_capacity(m + 1);
    let mut upow = Poly::one();
    for _ in 0..=m {
        upows.push(upow.clone());
        upow = &upow * u;
    }
    let mut acc = Poly::zero();
    let mut vpow = Poly::one();
    for k in (0..=m).rev() {
        let c = p.coeff(k);
        if !c.is_zero() {
            acc = &acc + &(&upows[k].scale(&c) * &vpow);
        }
        vpow = &vpow * v;
    }
    acc
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::canonical(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RatFunc::canonical(num, den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1);
        let d2 = rhs.den.exact_div(&g1);
        let n2 = rhs.num.exact_div(&g2);
        let d1 = self.den.exact_div(&g2);
        RatFunc::canonical(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// A Moebius transformation `z -> (az + b)/(cz + d)` with `ad - bc != 0`:
/// the coordinate changes of the Riemann sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    a: Rat,
    b: Rat,
    c: Rat,
    d: Rat,
}

impl Mobius {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Mobius> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(Error::DegenerateMobius);
        }
        Ok(Mobius { a, b, c, d })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Mobius> {
        Mobius::new(rat_int(a), rat_int(b), rat_int(c), rat_int(d))
    }

    /// `z -> 1/z`, the chart change of the sphere.
    pub fn inversion() -> Mobius {
        Mobius {
            a: rat_int(0),
            b: rat_int(1),
            c: rat_int(1),
            d: rat_int(0),
        }
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::canonical(
            Poly::from_coeffs(vec![self.b.clone(), self.a.clone()]),
            Poly::from_coeffs(vec![self.d.clone(), self.c.clone()]),
        )
    }

    /// The inverse transformation `z -> (dz - b)/(-cz + a)`.
    pub fn inverse(&self) -> Mobius {
        Mobius {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }
}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_ratfunc())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    #[test]
    fn canonical_form_cancels_and_normalizes() {
        // (z^2-1)/(z-1) reduces to z+1
        let x = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(x, rf("z + 1"));
        // denominator made monic: z / (2z - 2) = (1/2 z)/(z - 1)
        let y = RatFunc::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[-2, 2])).unwrap();
        assert_eq!(y.den(), &Poly::from_ints(&[-1, 1]));
        assert_eq!(y, rf("(1/2*z)/(z-1)"));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(
            RatFunc::new(Poly::one(), Poly::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn sum_with_inverse_variable() {
        let z = RatFunc::var();
        let inv = z.inverse().unwrap();
        assert_eq!(&z + &inv, rf("(z^2 + 1)/(z)"));
    }

    #[test]
    fn multiplicative_inverse_axiom() {
        let x = rf("(z - 2)/(z + 3)");
        assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rf("z^3").derivative(), rf("3*z^2"));
        assert_eq!(rf("1/z").derivative(), rf("-1/(z^2)"));
        assert_eq!(
            rf("(z^2 + 1)/(z - 1)").derivative(),
            rf("(z^2 - 2*z - 1)/((z-1)^2)")
        );
    }

    #[test]
    fn compose_examples() {
        let sq = rf("z^2");
        let inv = rf("1/z");
        assert_eq!(sq.compose(&inv).unwrap(), rf("1/(z^2)"));
        // constants are fixed by any substitution
        assert_eq!(rf("5").compose(&rf("(z-1)/(z+1)")).unwrap(), rf("5"));
    }

    #[test]
    fn compose_with_mobius_inverse_round_trips() {
        let x = rf("(z + 1)/(z - 1)");
        let lam = Mobius::from_ints(1, -1, 1, 1).unwrap(); // (z-1)/(z+1)
        let once = x.compose(&lam.as_ratfunc()).unwrap();
        assert_eq!(once, rf("-1*z"));
        let back = once.compose(&lam.inverse().as_ratfunc()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn compose_rejects_identically_vanishing_denominator() {
        // 1/(z-2) composed with the constant 2
        let x = rf("1/(z - 2)");
        assert_eq!(x.compose(&rf("2")), Err(Error::UndefinedComposition));
    }

    #[test]
    fn valuations() {
        let x = rf("(z^2)/(z - 1)");
        assert_eq!(x.ord_at_zero(), Some(2));
        assert_eq!(x.val_at_infinity(), Some(-1));
        assert_eq!(rf("1/z").ord_at_zero(), Some(-1));
        assert_eq!(RatFunc::zero().val_at_infinity(), None);
    }
}
