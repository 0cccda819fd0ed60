//! Divisors on the projective line, exactly.
//!
//! A closed point of the line over `Q` is either the point at infinity or a
//! Galois orbit of finite points, represented by a monic squarefree
//! polynomial. A divisor stores a finite list of such basis polynomials with
//! integer multiplicities plus a multiplicity at infinity. Basis elements
//! are kept pairwise coprime and sorted, so a representation is canonical
//! relative to the polynomials that produced it; comparisons refine both
//! sides to a common coprime basis first.
//!
//! This is all the structure needed to talk about the divisor of a rational
//! function, degrees (the Picard group of the line is the integers via the
//! degree), and whether a divisor is `n` times a principal divisor.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ratfunc::{coprime_basis, rat_to_string, squarefree_factor, Poly, RatFunc};

/// A finite formal integer combination of closed points of the line.
#[derive(Clone, Debug, Eq)]
pub struct Divisor {
    /// Pairs `(basis polynomial, multiplicity)`: monic, squarefree, pairwise
    /// coprime, degree >= 1, nonzero multiplicities, sorted canonically.
    finite: Vec<(Poly, i64)>,
    /// Multiplicity at the point at infinity.
    inf: i64,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor {
            finite: Vec::new(),
            inf: 0,
        }
    }

    /// Builds from raw parts, refining overlapping basis elements and
    /// dropping zero multiplicities.
    pub fn from_parts(finite: Vec<(Poly, i64)>, inf: i64) -> Divisor {
        (Divisor { finite, inf }).combine(&Divisor::zero(), 1)
    }

    pub fn finite_part(&self) -> &[(Poly, i64)] {
        &self.finite
    }

    pub fn inf_mult(&self) -> i64 {
        self.inf
    }

    pub fn is_zero(&self) -> bool {
        self.finite.is_empty() && self.inf == 0
    }

    /// `deg = sum mult_i * deg(g_i) + inf_mult`.
    pub fn degree(&self) -> i64 {
        let finite: i64 = self
            .finite
            .iter()
            .map(|(g, e)| e * g.degree().expect("basis elements are nonzero") as i64)
            .sum();
        finite + self.inf
    }

    /// `self + sign*other`, computed on a common coprime basis.
    pub fn combine(&self, other: &Divisor, sign: i64) -> Divisor {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        let inputs: Vec<Poly> = self
            .finite
            .iter()
            .chain(other.finite.iter())
            .map(|(g, _)| g.clone())
            .collect();
        let basis = coprime_basis(&inputs);
        let mut finite = Vec::new();
        for b in basis {
            let mult = self.mult_of_refined(&b) + sign * other.mult_of_refined(&b);
            if mult != 0 {
                finite.push((b, mult));
            }
        }
        finite.sort_by(|(a, _), (b, _)| a.cmp_canonical(b));
        Divisor {
            finite,
            inf: self.inf + sign * other.inf,
        }
    }

    /// Multiplicity carried by a refined basis element; `b` divides at most
    /// one of the pairwise coprime basis polynomials.
    fn mult_of_refined(&self, b: &Poly) -> i64 {
        for (g, e) in &self.finite {
            if g.gcd(b) == *b {
                return *e;
            }
        }
        0
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            finite: self.finite.iter().map(|(g, e)| (g.clone(), -e)).collect(),
            inf: -self.inf,
        }
    }

    /// All multiplicities scaled by `n`.
    pub fn scale(&self, n: i64) -> Divisor {
        if n == 0 {
            return Divisor::zero();
        }
        Divisor {
            finite: self.finite.iter().map(|(g, e)| (g.clone(), n * e)).collect(),
            inf: n * self.inf,
        }
    }

    /// Tests whether `self = div(f^n)` for some rational function `f`, and
    /// returns the witness. True exactly when every finite multiplicity is
    /// divisible by `n` and the total degree is zero (which then forces the
    /// infinity multiplicity); the witness is the product of the basis
    /// elements raised to `mult/n`.
    pub fn nth_power_witness(&self, n: u32) -> Option<RatFunc> {
        assert!(n >= 1, "n must be positive");
        let n = n as i64;
        if self.degree() != 0 || self.inf % n != 0 {
            return None;
        }
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (g, e) in &self.finite {
            if e % n != 0 {
                return None;
            }
            let q = e / n;
            let p = g.pow(q.unsigned_abs() as u32);
            if q >= 0 {
                num = &num * &p;
            } else {
                den = &den * &p;
            }
        }
        Some(RatFunc::new(num, den).expect("denominator is a product of monic factors"))
    }

    /// Structured mirror of the fields.
    pub fn to_json(&self) -> Value {
        let finite: Vec<Value> = self
            .finite
            .iter()
            .map(|(g, e)| {
                json!({
                    "basis": g.coeffs().iter().map(rat_to_string).collect::<Vec<_>>(),
                    "text": g.to_string(),
                    "mult": e,
                })
            })
            .collect();
        json!({ "finite": finite, "inf_mult": self.inf })
    }
}

/// Equality after mutual refinement to a common coprime basis.
impl PartialEq for Divisor {
    fn eq(&self, other: &Divisor) -> bool {
        self.combine(other, -1).is_zero()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut write_term = |f: &mut fmt::Formatter<'_>, mult: i64, point: &str| -> fmt::Result {
            if first {
                first = false;
                write!(f, "{}*({})", mult, point)
            } else if mult < 0 {
                write!(f, " - {}*({})", -mult, point)
            } else {
                write!(f, " + {}*({})", mult, point)
            }
        };
        for (g, e) in &self.finite {
            write_term(f, *e, &g.to_string())?;
        }
        if self.inf != 0 {
            write_term(f, self.inf, "inf")?;
        }
        Ok(())
    }
}

/// The divisor of a nonzero rational function: zeros minus poles with
/// multiplicity, including the point at infinity, where the valuation is
/// `deg(den) - deg(num)`. Principal divisors always have degree zero.
pub fn divisor_of(r: &RatFunc) -> Result<Divisor> {
    if r.is_zero() {
        return Err(Error::ZeroRatFunc);
    }
    let num = squarefree_factor(r.num())?;
    let den = squarefree_factor(r.den())?;
    let mut finite: Vec<(Poly, i64)> = Vec::new();
    finite.extend(num.factors.into_iter().map(|(g, e)| (g, e as i64)));
    finite.extend(den.factors.into_iter().map(|(g, e)| (g, -(e as i64))));
    finite.sort_by(|(a, _), (b, _)| a.cmp_canonical(b));
    // num and den are coprime, so the merged basis is pairwise coprime.
    Ok(Divisor {
        finite,
        inf: r.val_at_infinity().expect("nonzero"),
    })
}
