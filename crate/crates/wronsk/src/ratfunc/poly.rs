//! Dense polynomials over `Rat` in one variable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{rat_int, rat_to_string, Rat};

/// A polynomial with `Rat` coefficients, stored by ascending power.
///
/// Invariant: the leading coefficient is nonzero; the zero polynomial is the
/// empty coefficient list, and its degree is reported as `None` rather than
/// any integer sentinel.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(rat_int(1))
    }

    /// The variable `z`.
    pub fn var() -> Self {
        Poly {
            coeffs: vec![rat_int(0), rat_int(1)],
        }
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// `c * z^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![rat_int(0); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Builds from ascending-power coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integers, ascending powers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&n| rat_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero-padded beyond the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(|| rat_int(0))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Multiplicity of the root `z = 0`; `None` for the zero polynomial.
    pub fn ord_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = rat_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_int(k as i64))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor (internal misuse).
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = rat_int(1) / d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd + 1 {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![rat_int(0); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[k - dd + j] = &rem[k - dd + j] - &t;
            }
            quot[k - dd] = q;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`, and gcd with a nonzero constant is 1.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic().0
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * other).exact_div(&g).monic().0
    }

    /// `(self / leading, leading)`; the zero polynomial maps to `(0, 1)`.
    pub fn monic(&self) -> (Poly, Rat) {
        match self.leading() {
            None => (Poly::zero(), rat_int(1)),
            Some(lc) if lc.is_one() => (self.clone(), rat_int(1)),
            Some(lc) => {
                let lc = lc.clone();
                let inv = rat_int(1) / lc.clone();
                (self.scale(&inv), lc)
            }
        }
    }

    /// Fixed total order used for canonical sorting of divisor bases:
    /// by degree first, then ascending-power lexicographic on coefficients.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Canonical ascending-power text in a named variable.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let negative = c.is_negative();
            if first {
                // A leading negative term keeps an explicit magnitude so the
                // output stays inside the expression grammar (`-z` is not a
                // valid base, `-1*z` is).
                if negative {
                    out.push('-');
                }
                first = false;
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let body = match k {
                0 => rat_to_string(&mag),
                _ if mag.is_one() && !(negative && out == "-") => power_str(var, k),
                _ => format!("{}*{}", rat_to_string(&mag), power_str(var, k)),
            };
            out.push_str(&body);
        }
        out
    }
}

fn power_str(var: &str, k: usize) -> String {
    if k == 1 {
        var.to_string()
    } else {
        format!("{var}^{k}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![rat_int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::rat;

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0, 3]).degree(), Some(2));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = Poly::from_ints(&[-1, 0, 0, 2, 5]);
        let b = Poly::from_ints(&[3, 1, 2]);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (z-1)(z+2) and (z-1)(z-3)
        let a = Poly::from_ints(&[-2, 1, 1]);
        let b = Poly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
        // constants
        assert_eq!(Poly::from_ints(&[7]).gcd(&Poly::from_ints(&[3])), Poly::one());
        assert_eq!(Poly::zero().gcd(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn derivative_power_rule() {
        let p = Poly::from_ints(&[0, 0, 0, 1]); // z^3
        assert_eq!(p.derivative(), Poly::from_ints(&[0, 0, 3]));
        assert_eq!(Poly::from_ints(&[5]).derivative(), Poly::zero());
    }

    #[test]
    fn printing_round_trips_through_grammar_shapes() {
        assert_eq!(Poly::from_ints(&[0]).to_string(), "0");
        assert_eq!(Poly::from_ints(&[-1, 0, 1]).to_string(), "-1 + z^2");
        assert_eq!(Poly::from_ints(&[0, -1]).to_string(), "-1*z");
        assert_eq!(Poly::from_ints(&[2, 3]).to_string(), "2 + 3*z");
        assert_eq!(
            Poly::from_coeffs(vec![rat(1, 2), rat(-3, 4)]).to_string(),
            "1/2 - 3/4*z"
        );
    }

    #[test]
    fn ord_at_zero_counts_trailing_zero_coeffs() {
        assert_eq!(Poly::from_ints(&[0, 0, 5, 1]).ord_at_zero(), Some(2));
        assert_eq!(Poly::from_ints(&[1]).ord_at_zero(), Some(0));
        assert_eq!(Poly::zero().ord_at_zero(), None);
    }
}
