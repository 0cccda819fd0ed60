//! Wronskian matrices, determinants, genericity and quotients.
//!
//! For a tuple `A = (a_1, ..., a_n)` of rational functions, the Wronskian
//! matrix stacks the successive derivatives of the tuple: row `i`
//! (0-indexed) holds the i-th derivative of every component, so
//! `W(A)[i][j] = a_j^(i)`. Its determinant `w(A)` vanishes identically
//! exactly when the components are linearly dependent over the constants.
//!
//! Two lower-triangular companions intertwine the Wronskian with the two
//! things one can do to a tuple besides changing basis:
//!
//! - [`scaling_matrix`] `S_n(f)` satisfies `W(fA) = S_n(f) W(A)`;
//! - [`chain_rule_matrix`] `C_n(g)` satisfies `W(A . g) = C_n(g) (W(A) . g)`
//!   for a non-constant map `g` (composition applied entrywise).
//!
//! The quotient of two tuples with `B` generic is `A/B = W(B)^{-1} W(A)`,
//! an endomorphism-valued function; conjugation-invariance, the triple
//! cocycle law and scalar cancellation are exercised in the tests and the
//! verification suites.

mod matrix;

pub use matrix::RatMatrix;

use num::BigInt;

use crate::error::{Error, Result};
use crate::ratfunc::{Rat, RatFunc};

/// A tuple of rational functions: the component vector of a (local) section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecSection {
    components: Vec<RatFunc>,
}

impl VecSection {
    pub fn new(components: Vec<RatFunc>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DimensionMismatch("empty section".into()));
        }
        Ok(VecSection { components })
    }

    pub fn from_strs(exprs: &[&str]) -> Result<Self> {
        let components = exprs
            .iter()
            .map(|s| crate::ratfunc::parse_ratfunc(s))
            .collect::<Result<Vec<_>>>()?;
        VecSection::new(components)
    }

    /// Number of components; at least 1 by construction.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.components
    }

    pub fn derivative(&self) -> VecSection {
        VecSection {
            components: self.components.iter().map(|c| c.derivative()).collect(),
        }
    }

    /// Componentwise scaling by `f`.
    pub fn scale(&self, f: &RatFunc) -> VecSection {
        VecSection {
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }

    /// Componentwise substitution.
    pub fn compose(&self, inner: &RatFunc) -> Result<VecSection> {
        let components = self
            .components
            .iter()
            .map(|c| c.compose(inner))
            .collect::<Result<Vec<_>>>()?;
        Ok(VecSection { components })
    }

    /// Basis change acting on the tuple as a row vector: the m-th new
    /// component is `sum_l a_l * t[l][m]`.
    pub fn apply_basis(&self, t: &RatMatrix) -> Result<VecSection> {
        let n = self.len();
        if t.rows() != n || t.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "basis change {}x{} on a {n}-tuple",
                t.rows(),
                t.cols()
            )));
        }
        let components = (0..n)
            .map(|m| {
                let mut acc = RatFunc::zero();
                for (l, a) in self.components.iter().enumerate() {
                    acc = &acc + &(a * t.at(l, m));
                }
                acc
            })
            .collect();
        Ok(VecSection { components })
    }

    /// Constant-matrix action on the tuple as a column vector: the i-th new
    /// component is `sum_j m[i][j] * a_j`.
    pub fn apply_matrix_left(&self, m: &RatMatrix) -> Result<VecSection> {
        let n = self.len();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} on a {n}-tuple",
                m.rows(),
                m.cols()
            )));
        }
        let components = (0..n)
            .map(|i| {
                let mut acc = RatFunc::zero();
                for (j, a) in self.components.iter().enumerate() {
                    acc = &acc + &(m.at(i, j) * a);
                }
                acc
            })
            .collect();
        Ok(VecSection { components })
    }
}

/// The n x n matrix whose i-th row is the i-th derivative of the tuple.
pub fn wronskian_matrix(a: &VecSection) -> RatMatrix {
    let n = a.len();
    let mut rows = Vec::with_capacity(n);
    let mut current = a.clone();
    rows.push(current.components().to_vec());
    for _ in 1..n {
        current = current.derivative();
        rows.push(current.components().to_vec());
    }
    RatMatrix::from_rows(rows).expect("n >= 1 rows of equal length")
}

/// `w(A) = det W(A)`.
pub fn wronskian_det(a: &VecSection) -> RatFunc {
    wronskian_matrix(a).det().expect("square by construction")
}

/// A tuple is generic when its Wronskian determinant is not identically
/// zero, i.e. when its components are linearly independent over constants.
pub fn is_generic(a: &VecSection) -> bool {
    !wronskian_det(a).is_zero()
}

/// The Wronskian quotient `A/B = W(B)^{-1} W(A)`.
///
/// Requires tuples of equal length and a generic `B`; genericity is checked
/// eagerly so the error is `NotGeneric` rather than a downstream singularity.
pub fn quotient(a: &VecSection, b: &VecSection) -> Result<RatMatrix> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "quotient of a {}-tuple by a {}-tuple",
            a.len(),
            b.len()
        )));
    }
    let wb = wronskian_matrix(b);
    let det = wb.det().expect("square");
    if det.is_zero() {
        return Err(Error::NotGeneric);
    }
    wb.inverse()?.mul(&wronskian_matrix(a))
}

/// `S_n(f)`: the lower-triangular matrix with `S[i][j] = C(i, i-j) f^(i-j)`
/// (0-indexed), so that `W(fA) = S_n(f) W(A)` by the product rule. Its
/// diagonal entries are all `f`, hence `det S_n(f) = f^n`.
pub fn scaling_matrix(f: &RatFunc, n: usize) -> RatMatrix {
    let mut derivs = Vec::with_capacity(n);
    derivs.push(f.clone());
    for i in 1..n {
        derivs.push(derivs[i - 1].derivative());
    }
    RatMatrix::from_fn(n, n, |i, j| {
        if i < j {
            RatFunc::zero()
        } else {
            let b = RatFunc::constant(binom(i, i - j));
            &b * &derivs[i - j]
        }
    })
}

/// How to build the chain-rule matrix `C_n(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainRuleMethod {
    /// Row-by-row formal differentiation of the operator identity:
    /// `C[m+1][k] = C[m][k]' + C[m][k-1] * g'`.
    Recursive,
    /// Direct fill via the Faa di Bruno partition sum: `C[m][k]` is the
    /// partial Bell polynomial `B_{m,k}(g', g'', ...)`.
    FaaDiBruno,
}

/// `C_n(g)`: the lower-triangular matrix with diagonal
/// `1, g', (g')^2, ..., (g')^(n-1)` satisfying
/// `W(A . g) = C_n(g) (W(A) . g)`. Errors on a constant `g`.
///
/// Both construction methods agree exactly; keeping them separate gives the
/// test suites an internal cross-check.
pub fn chain_rule_matrix(g: &RatFunc, n: usize, method: ChainRuleMethod) -> Result<RatMatrix> {
    if g.is_constant() {
        return Err(Error::ConstantMap);
    }
    match method {
        ChainRuleMethod::Recursive => Ok(chain_rule_recursive(g, n)),
        ChainRuleMethod::FaaDiBruno => Ok(chain_rule_faa_di_bruno(g, n)),
    }
}

fn chain_rule_recursive(g: &RatFunc, n: usize) -> RatMatrix {
    let gp = g.derivative();
    let mut rows: Vec<Vec<RatFunc>> = vec![vec![RatFunc::zero(); n]; n];
    rows[0][0] = RatFunc::one();
    for m in 0..n.saturating_sub(1) {
        for k in 0..n {
            let from_deriv = rows[m][k].derivative();
            let from_shift = if k > 0 {
                &rows[m][k - 1] * &gp
            } else {
                RatFunc::zero()
            };
            rows[m + 1][k] = &from_deriv + &from_shift;
        }
    }
    RatMatrix::from_rows(rows).expect("square by construction")
}

fn chain_rule_faa_di_bruno(g: &RatFunc, n: usize) -> RatMatrix {
    // derivs[j] = g^(j) for j = 1..n-1
    let mut derivs = vec![RatFunc::zero(); n.max(2)];
    derivs[1] = g.derivative();
    for j in 2..n {
        derivs[j] = derivs[j - 1].derivative();
    }
    let mut entries: Vec<Vec<RatFunc>> = vec![vec![RatFunc::zero(); n]; n];
    entries[0][0] = RatFunc::one();
    for m in 1..n {
        // Enumerate multiplicity tuples (c_1, ..., c_m) with sum j*c_j = m;
        // each contributes to column k = sum c_j the term
        //   m! / (prod c_j! (j!)^c_j) * prod (g^(j))^c_j.
        let mut counts = vec![0usize; m + 1];
        let mut contribs: Vec<(usize, RatFunc)> = Vec::new();
        enumerate_partitions(m, m, &mut counts, &mut |counts| {
            let k: usize = counts.iter().sum();
            let mut coeff = Rat::from_integer(factorial(m));
            let mut term = RatFunc::one();
            for (j, &c) in counts.iter().enumerate().skip(1) {
                if c == 0 {
                    continue;
                }
                let denom = factorial(c) * factorial(j).pow(c as u32);
                coeff /= Rat::from_integer(denom);
                for _ in 0..c {
                    term = &term * &derivs[j];
                }
            }
            contribs.push((k, &RatFunc::constant(coeff) * &term));
        });
        for (k, contrib) in contribs {
            entries[m][k] = &entries[m][k] + &contrib;
        }
    }
    RatMatrix::from_rows(entries).expect("square by construction")
}

/// Visits every tuple `(c_1..c_max)` of multiplicities with
/// `sum j*c_j = remaining`, writing into `counts[1..=max]`.
fn enumerate_partitions(
    remaining: usize,
    max_part: usize,
    counts: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        visit(counts);
        return;
    }
    if max_part == 0 {
        return;
    }
    for c in 0..=remaining / max_part {
        counts[max_part] = c;
        enumerate_partitions(remaining - c * max_part, max_part - 1, counts, visit);
        counts[max_part] = 0;
    }
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

fn binom(n: usize, k: usize) -> Rat {
    Rat::from_integer(num::integer::binomial(BigInt::from(n), BigInt::from(k)))
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

    fn mat(rows: &[&[&str]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| rf(s)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn wronskian_matrix_of_monomials() {
        let w = wronskian_matrix(&sec(&["1", "z", "z^2"]));
        assert_eq!(
            w,
            mat(&[
                &["1", "z", "z^2"],
                &["0", "1", "2*z"],
                &["0", "0", "2"],
            ])
        );
        assert_eq!(wronskian_det(&sec(&["1", "z", "z^2"])), rf("2"));
    }

    #[test]
    fn wronskian_matrix_rank_one_case() {
        assert_eq!(wronskian_matrix(&sec(&["z"])), mat(&[&["z"]]));
    }

    #[test]
    fn wronskian_matrix_with_pole() {
        let w = wronskian_matrix(&sec(&["1", "1/z"]));
        assert_eq!(w, mat(&[&["1", "1/z"], &["0", "-1/z^2"]]));
        assert!(is_generic(&sec(&["1", "1/z"])));
    }

    #[test]
    fn repeated_component_kills_the_determinant() {
        let f = "(z^2+1)/(z-3)";
        assert!(wronskian_det(&sec(&[f, f])).is_zero());
        assert!(!is_generic(&sec(&["z", "2*z"])));
    }

    #[test]
    fn monomial_wronskian_closed_form_small_case() {
        // w(1, f, f^2) = 1! 2! (f')^3 with f = z^2
        assert_eq!(wronskian_det(&sec(&["1", "z^2", "z^4"])), rf("16*z^3"));
    }

    #[test]
    fn quotient_of_equal_tuples_is_identity() {
        let a = sec(&["1", "z", "z^2"]);
        assert!(quotient(&a, &a).unwrap().is_identity());
    }

    #[test]
    fn quotient_fixture() {
        let q = quotient(&sec(&["z^2", "z^3"]), &sec(&["1", "z"])).unwrap();
        assert_eq!(q, mat(&[&["-1*z^2", "-2*z^3"], &["2*z", "3*z^2"]]));
    }

    #[test]
    fn quotient_of_zero_numerator_is_zero() {
        let q = quotient(&sec(&["0", "0"]), &sec(&["1", "z"])).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn quotient_preconditions() {
        assert_eq!(
            quotient(&sec(&["1", "z"]), &sec(&["z", "2*z"])),
            Err(Error::NotGeneric)
        );
        assert!(matches!(
            quotient(&sec(&["1", "z"]), &sec(&["1", "z", "z^2"])),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn scaling_matrix_fixtures() {
        let f = rf("(z^2+1)/(z-2)");
        let fp = f.derivative();
        let fpp = fp.derivative();
        let fppp = fpp.derivative();
        let s3 = scaling_matrix(&f, 3);
        let expected3 = RatMatrix::from_rows(vec![
            vec![f.clone(), rf("0"), rf("0")],
            vec![fp.clone(), f.clone(), rf("0")],
            vec![fpp.clone(), &rf("2") * &fp, f.clone()],
        ])
        .unwrap();
        assert_eq!(s3, expected3);
        let s4 = scaling_matrix(&f, 4);
        let expected4 = RatMatrix::from_rows(vec![
            vec![f.clone(), rf("0"), rf("0"), rf("0")],
            vec![fp.clone(), f.clone(), rf("0"), rf("0")],
            vec![fpp.clone(), &rf("2") * &fp, f.clone(), rf("0")],
            vec![fppp.clone(), &rf("3") * &fpp, &rf("3") * &fp, f.clone()],
        ])
        .unwrap();
        assert_eq!(s4, expected4);
    }

    #[test]
    fn scaling_by_one_is_identity() {
        assert!(scaling_matrix(&RatFunc::one(), 5).is_identity());
    }

    #[test]
    fn chain_rule_matrix_fixtures() {
        let g = rf("(z-1)/(z+2)");
        let gp = g.derivative();
        let gpp = gp.derivative();
        let gppp = gpp.derivative();
        let c3 = chain_rule_matrix(&g, 3, ChainRuleMethod::Recursive).unwrap();
        let expected3 = RatMatrix::from_rows(vec![
            vec![rf("1"), rf("0"), rf("0")],
            vec![rf("0"), gp.clone(), rf("0")],
            vec![rf("0"), gpp.clone(), &gp * &gp],
        ])
        .unwrap();
        assert_eq!(c3, expected3);
        let c4 = chain_rule_matrix(&g, 4, ChainRuleMethod::FaaDiBruno).unwrap();
        let expected4 = RatMatrix::from_rows(vec![
            vec![rf("1"), rf("0"), rf("0"), rf("0")],
            vec![rf("0"), gp.clone(), rf("0"), rf("0")],
            vec![rf("0"), gpp.clone(), &gp * &gp, rf("0")],
            vec![
                rf("0"),
                gppp.clone(),
                &(&rf("3") * &gp) * &gpp,
                &(&gp * &gp) * &gp,
            ],
        ])
        .unwrap();
        assert_eq!(c4, expected4);
    }

    #[test]
    fn chain_rule_matrix_at_z_squared() {
        let c3 = chain_rule_matrix(&rf("z^2"), 3, ChainRuleMethod::Recursive).unwrap();
        assert_eq!(
            c3,
            mat(&[
                &["1", "0", "0"],
                &["0", "2*z", "0"],
                &["0", "2", "4*z^2"],
            ])
        );
    }

    #[test]
    fn chain_rule_methods_agree() {
        for g in ["z^2", "1/z", "(z^2-1)/(z+3)", "2*z + 5"] {
            let g = rf(g);
            for n in 1..=6 {
                let a = chain_rule_matrix(&g, n, ChainRuleMethod::Recursive).unwrap();
                let b = chain_rule_matrix(&g, n, ChainRuleMethod::FaaDiBruno).unwrap();
                assert_eq!(a, b, "disagreement at n = {n}");
            }
        }
    }

    #[test]
    fn chain_rule_rejects_constants() {
        assert_eq!(
            chain_rule_matrix(&rf("7"), 3, ChainRuleMethod::Recursive),
            Err(Error::ConstantMap)
        );
    }

    #[test]
    fn chain_rule_identity_on_a_composition() {
        // W(A . g) = C_n(g) (W(A) . g)
        let a = sec(&["1", "z", "z^3"]);
        let g = rf("(z-1)/(z+1)");
        let lhs = wronskian_matrix(&a.compose(&g).unwrap());
        let c = chain_rule_matrix(&g, 3, ChainRuleMethod::Recursive).unwrap();
        let rhs = c.mul(&wronskian_matrix(&a).compose(&g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scaling_identity_on_a_tuple() {
        // W(fA) = S_n(f) W(A)
        let a = sec(&["1", "1/z", "z^2"]);
        let f = rf("(z+1)/(z-1)");
        let lhs = wronskian_matrix(&a.scale(&f));
        let rhs = scaling_matrix(&f, 3).mul(&wronskian_matrix(&a)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn basis_change_acts_on_the_right() {
        let a = sec(&["1", "z", "z^2"]);
        let t = mat(&[&["1", "2", "0"], &["0", "1", "1"], &["3", "0", "1"]]);
        let lhs = wronskian_matrix(&a.apply_basis(&t).unwrap());
        let rhs = wronskian_matrix(&a).mul(&t).unwrap();
        assert_eq!(lhs, rhs);
    }
}
