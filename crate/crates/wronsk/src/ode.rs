//! The linear ODE attached to a generic tuple, Abel's identity, and
//! Liouville's formula.
//!
//! A generic n-tuple `A` has linearly independent derivatives
//! `A, A', ..., A^(n-1)`, so there are unique coefficients `p_1, ..., p_n`
//! with `A^(n) = p_1 A^(n-1) + p_2 A^(n-2) + ... + p_n A` componentwise.
//! Abel's identity says the Wronskian determinant solves the first-order
//! equation `w' = p_1 w`; Liouville's formula is its matrix-valued parent,
//! `Tr(M^{-1} M') = (det M)'/det M` for any invertible `M`.
//!
//! Checks return certificates carrying every intermediate quantity, so a
//! caller (or the command line) can print an auditable derivation; a check
//! passes exactly when its residual is the zero rational function.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::wronskian::{is_generic, wronskian_det, wronskian_matrix, RatMatrix, VecSection};

/// Coefficients of the order-n ODE `a^(n) = sum_k p_k a^(n-k)` satisfied by
/// every component of the tuple that produced them; `coeffs[k-1]` is `p_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeCoeffs {
    coeffs: Vec<RatFunc>,
}

impl OdeCoeffs {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `p_k` for `k = 1..=n`.
    pub fn p(&self, k: usize) -> &RatFunc {
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|p| json!({ "text": p.to_string(), "value": p.to_json() }))
                .collect(),
        )
    }
}

/// Recovers the unique ODE coefficients of a generic tuple by exact
/// elimination on the linear system whose rows are the components'
/// derivative stacks (a transposed, row-reversed Wronskian matrix).
pub fn ode_coefficients(a: &VecSection) -> Result<OdeCoeffs> {
    if !is_generic(a) {
        return Err(Error::NotGeneric);
    }
    let n = a.len();
    // derivs[i] = i-th derivative of the tuple, i = 0..=n
    let mut derivs = Vec::with_capacity(n + 1);
    derivs.push(a.clone());
    for i in 1..=n {
        derivs.push(derivs[i - 1].derivative());
    }
    // Row j (one per component): sum_k p_k a_j^(n-k) = a_j^(n).
    let system = RatMatrix::from_fn(n, n, |j, col| {
        let k = col + 1;
        derivs[n - k].components()[j].clone()
    });
    let rhs = RatMatrix::from_fn(n, 1, |j, _| derivs[n].components()[j].clone());
    let solution = system.inverse()?.mul(&rhs)?;
    Ok(OdeCoeffs {
        coeffs: (0..n).map(|k| solution.at(k, 0).clone()).collect(),
    })
}

/// Certificate for Abel's identity `w' = p_1 w`.
#[derive(Clone, Debug)]
pub struct AbelCertificate {
    pub p1: RatFunc,
    pub wronskian: RatFunc,
    pub wronskian_derivative: RatFunc,
    /// `w' - p_1 w`; identically zero on a passing certificate.
    pub residual: RatFunc,
}

impl AbelCertificate {
    pub fn passes(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p1": self.p1.to_string(),
            "w": self.wronskian.to_string(),
            "w_prime": self.wronskian_derivative.to_string(),
            "residual": self.residual.to_string(),
            "passes": self.passes(),
        })
    }
}

/// Checks Abel's identity on a generic tuple.
pub fn abel_check(a: &VecSection) -> Result<AbelCertificate> {
    let p1 = ode_coefficients(a)?.p(1).clone();
    let w = wronskian_det(a);
    let wp = w.derivative();
    let residual = &wp - &(&p1 * &w);
    Ok(AbelCertificate {
        p1,
        wronskian: w,
        wronskian_derivative: wp,
        residual,
    })
}

/// Certificate for Liouville's formula `Tr(M^{-1} M') = (det M)'/det M`.
#[derive(Clone, Debug)]
pub struct LiouvilleCertificate {
    /// Trace of the Maurer-Cartan form `M^{-1} M'` (coefficient of the
    /// ambient chart differential).
    pub trace_maurer_cartan: RatFunc,
    /// Logarithmic derivative of the determinant.
    pub dlog_det: RatFunc,
    pub residual: RatFunc,
}

impl LiouvilleCertificate {
    pub fn passes(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trace_maurer_cartan": self.trace_maurer_cartan.to_string(),
            "dlog_det": self.dlog_det.to_string(),
            "residual": self.residual.to_string(),
            "passes": self.passes(),
        })
    }
}

/// Checks Liouville's formula on a square invertible matrix.
pub fn liouville_check(m: &RatMatrix) -> Result<LiouvilleCertificate> {
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let trace = m.inverse()?.mul(&m.derivative())?.trace()?;
    let dlog = det.derivative().div(&det)?;
    let residual = &trace - &dlog;
    Ok(LiouvilleCertificate {
        trace_maurer_cartan: trace,
        dlog_det: dlog,
        residual,
    })
}

/// Test-visible consistency hook: every component of the tuple satisfies
/// the recovered ODE; returns the componentwise residuals.
pub fn annihilation_residuals(a: &VecSection, ode: &OdeCoeffs) -> Vec<RatFunc> {
    let n = ode.order();
    let mut derivs = Vec::with_capacity(n + 1);
    derivs.push(a.clone());
    for i in 1..=n {
        derivs.push(derivs[i - 1].derivative());
    }
    (0..a.len())
        .map(|j| {
            let mut acc = derivs[n].components()[j].clone();
            for k in 1..=n {
                acc = &acc - &(ode.p(k) * &derivs[n - k].components()[j]);
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn sec(exprs: &[&str]) -> VecSection {
        VecSection::from_strs(exprs).unwrap()
    }

    /// Independent route for small systems: Cramer's rule with cofactor
    /// determinants, no elimination.
    fn cramer_ode(a: &VecSection) -> Vec<RatFunc> {
        let n = a.len();
        let mut derivs = vec![a.clone()];
        for i in 1..=n {
            derivs.push(derivs[i - 1].derivative());
        }
        let column = |k: usize| -> Vec<RatFunc> { derivs[k].components().to_vec() };
        let det_cofactor = |m: &Vec<Vec<RatFunc>>| -> RatFunc {
            fn go(m: &[Vec<RatFunc>], cols: &[usize]) -> RatFunc {
                if cols.len() == 1 {
                    return m[m.len() - cols.len()][cols[0]].clone();
                }
                let row = m.len() - cols.len();
                let mut acc = RatFunc::zero();
                for (idx, &c) in cols.iter().enumerate() {
                    let rest: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let term = &m[row][c] * &go(m, &rest);
                    acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
            go(m, &(0..m.len()).collect::<Vec<_>>())
        };
        // system rows: component j, columns p_1..p_n with coefficient a_j^(n-k)
        let system: Vec<Vec<RatFunc>> = (0..n)
            .map(|j| (1..=n).map(|k| column(n - k)[j].clone()).collect())
            .collect();
        let rhs: Vec<RatFunc> = column(n);
        let d = det_cofactor(&system);
        (0..n)
            .map(|col| {
                let mut replaced = system.clone();
                for j in 0..n {
                    replaced[j][col] = rhs[j].clone();
                }
                det_cofactor(&replaced).div(&d).unwrap()
            })
            .collect()
    }

    #[test]
    fn polynomial_basis_is_annihilated_by_zero_coeffs() {
        let ode = ode_coefficients(&sec(&["1", "z", "z^2"])).unwrap();
        assert_eq!(ode.coeffs(), &[rf("0"), rf("0"), rf("0")]);
    }

    #[test]
    fn ode_fixture_with_pole() {
        let ode = ode_coefficients(&sec(&["1", "z", "1/z"])).unwrap();
        assert_eq!(ode.coeffs(), &[rf("-3/z"), rf("0"), rf("0")]);
    }

    #[test]
    fn ode_fixture_rank_two() {
        let ode = ode_coefficients(&sec(&["z", "z^2"])).unwrap();
        assert_eq!(ode.coeffs(), &[rf("2/z"), rf("-2/(z^2)")]);
    }

    #[test]
    fn ode_requires_genericity() {
        assert_eq!(ode_coefficients(&sec(&["z", "2*z"])), Err(Error::NotGeneric));
    }

    #[test]
    fn elimination_agrees_with_cramer_for_small_orders() {
        for comps in [
            vec!["1", "z", "1/z"],
            vec!["z", "z^2"],
            vec!["1/z", "z^2", "z^3 - 1"],
            vec!["(z+1)/(z-1)", "z"],
        ] {
            let a = sec(&comps);
            let ode = ode_coefficients(&a).unwrap();
            assert_eq!(ode.coeffs(), cramer_ode(&a).as_slice(), "tuple {comps:?}");
        }
    }

    #[test]
    fn components_satisfy_the_recovered_ode() {
        let a = sec(&["1/z", "z^2", "z^3 - 1"]);
        let ode = ode_coefficients(&a).unwrap();
        for r in annihilation_residuals(&a, &ode) {
            assert!(r.is_zero());
        }
    }

    #[test]
    fn abel_fixtures() {
        let c = abel_check(&sec(&["1", "z", "z^2"])).unwrap();
        assert_eq!(c.wronskian, rf("2"));
        assert_eq!(c.p1, rf("0"));
        assert!(c.passes());

        let c = abel_check(&sec(&["1", "z", "1/z"])).unwrap();
        assert_eq!(c.wronskian, rf("2/z^3"));
        assert_eq!(c.p1, rf("-3/z"));
        assert!(c.passes());

        let c = abel_check(&sec(&["z", "z^2"])).unwrap();
        assert_eq!(c.wronskian, rf("z^2"));
        assert_eq!(c.p1, rf("2/z"));
        assert!(c.passes());
    }

    #[test]
    fn liouville_fixtures() {
        let m = RatMatrix::from_rows(vec![
            vec![rf("z"), rf("0")],
            vec![rf("0"), rf("z")],
        ])
        .unwrap();
        let c = liouville_check(&m).unwrap();
        assert_eq!(c.trace_maurer_cartan, rf("2/z"));
        assert_eq!(c.dlog_det, rf("2/z"));
        assert!(c.passes());

        let m = RatMatrix::from_rows(vec![
            vec![rf("3"), rf("5")],
            vec![rf("1"), rf("2")],
        ])
        .unwrap();
        let c = liouville_check(&m).unwrap();
        assert!(c.trace_maurer_cartan.is_zero());
        assert!(c.passes());

        let m = RatMatrix::from_rows(vec![
            vec![rf("1"), rf("z")],
            vec![rf("0"), rf("z^2")],
        ])
        .unwrap();
        let c = liouville_check(&m).unwrap();
        assert_eq!(c.dlog_det, rf("2/z"));
        assert!(c.passes());
    }

    #[test]
    fn liouville_rejects_singular_input() {
        let m = RatMatrix::from_rows(vec![
            vec![rf("z"), rf("z^2")],
            vec![rf("1"), rf("z")],
        ])
        .unwrap();
        assert!(matches!(liouville_check(&m), Err(Error::SingularMatrix)));
    }

    #[test]
    fn abel_p1_matches_ode_coefficients() {
        let a = sec(&["1/z", "z^2", "z^3 - 1"]);
        let c = abel_check(&a).unwrap();
        assert_eq!(&c.p1, ode_coefficients(&a).unwrap().p(1));
    }
}
