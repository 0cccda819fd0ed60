//! Dense matrices over `Q(z)` with exact linear algebra.
//!
//! Determinant, inverse and rank all go through the same route: clear each
//! row to a polynomial matrix by its denominator lcm, run fraction-free
//! (Bareiss) elimination over `Q[z]`, and rescale. Fraction-free updates keep
//! every intermediate entry a minor of the cleared matrix, which controls
//! expression swell without ever leaving exact arithmetic.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ratfunc::{Poly, Rat, RatFunc};

/// A `rows x cols` matrix of rational functions, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RatFunc>,
}

impl RatMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::DimensionMismatch("no rows".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged or empty rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_fn(n, n, |i, j| {
            if i == j {
                RatFunc::one()
            } else {
                RatFunc::zero()
            }
        })
    }

    /// Constant matrix from rational scalars.
    pub fn from_const(rows: Vec<Vec<Rat>>) -> Result<Self> {
        RatMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(RatFunc::constant).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.at(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn map(&self, mut f: impl FnMut(&RatFunc) -> RatFunc) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| f(e)).collect(),
        }
    }

    /// Entrywise derivative.
    pub fn derivative(&self) -> Self {
        self.map(|e| e.derivative())
    }

    /// Entrywise substitution of `inner` for the variable.
    pub fn compose(&self, inner: &RatFunc) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.compose(inner)?);
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        self.map(|e| e * f)
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * other.at(k, j));
            }
            acc
        }))
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &RatMatrix,
        f: impl Fn(&RatFunc, &RatFunc) -> RatFunc,
    ) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn trace(&self) -> Result<RatFunc> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("trace of non-square matrix".into()));
        }
        let mut acc = RatFunc::zero();
        for i in 0..self.rows {
            acc = &acc + self.at(i, i);
        }
        Ok(acc)
    }

    /// Clears each row by the monic lcm of its denominators. Returns the
    /// polynomial matrix and the per-row multipliers.
    fn clear_rows(&self) -> (Vec<Vec<Poly>>, Vec<Poly>) {
        let mut cleared = Vec::with_capacity(self.rows);
        let mut multipliers = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = Poly::one();
            for j in 0..self.cols {
                l = l.lcm(self.at(i, j).den());
            }
            let row = (0..self.cols)
                .map(|j| {
                    let e = self.at(i, j);
                    e.num() * &l.exact_div(e.den())
                })
                .collect();
            cleared.push(row);
            multipliers.push(l);
        }
        (cleared, multipliers)
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<RatFunc> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let (cleared, multipliers) = self.clear_rows();
        let det = bareiss_det(cleared);
        let mut scale = Poly::one();
        for m in &multipliers {
            scale = &scale * m;
        }
        RatFunc::new(det, scale)
    }

    /// Exact inverse via the adjugate of the cleared polynomial matrix,
    /// rescaled by the row multipliers.
    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let (cleared, multipliers) = self.clear_rows();
        let det = bareiss_det(cleared.clone());
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let det_rf = RatFunc::from_poly(det);
        // inv(A)[i][j] = (-1)^(i+j) * minor(cleared; row j, col i) * mult_j / det(cleared)
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let cof = bareiss_det(minor(&cleared, j, i));
                let signed = if (i + j) % 2 == 0 { cof } else { -&cof };
                let num = RatFunc::from_poly(&signed * &multipliers[j]);
                row.push(num.div(&det_rf)?);
            }
            out.push(row);
        }
        RatMatrix::from_rows(out)
    }

    /// Rank over the field `Q(z)`.
    pub fn rank(&self) -> usize {
        let (cleared, _) = self.clear_rows();
        poly_rank(cleared)
    }

    pub fn to_string_var(&self, var: &str) -> String {
        let strings: Vec<Vec<String>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j).to_string_var(var))
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| strings.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for (i, row) in strings.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push('[');
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!(" {:>width$}", s, width = widths[j]));
            }
            out.push_str(" ]");
        }
        out
    }

    /// Structured mirror: dimensions plus row-major entries.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| {
                Value::Array(
                    (0..self.cols)
                        .map(|j| {
                            let e = self.at(i, j);
                            json!({
                                "text": e.to_string(),
                                "num": e.to_json()["num"],
                                "den": e.to_json()["den"],
                            })
                        })
                        .collect(),
                )
            })
            .collect();
        json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("z"))
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix(\n{self}\n)")
    }
}

fn minor(m: &[Vec<Poly>], skip_row: usize, skip_col: usize) -> Vec<Vec<Poly>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
/// The empty matrix has determinant 1.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negated = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negated = !negated;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = Poly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negated {
        -&d
    } else {
        d
    }
}

/// Fraction-free row echelon with column pivoting; returns the rank.
fn poly_rank(mut m: Vec<Vec<Poly>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = Poly::one();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let pivot = match (r..rows).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, pivot);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = t.exact_div(&prev);
            }
            m[i][c] = Poly::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::parse_ratfunc;

    fn rf(s: &str) -> RatFunc {
        parse_ratfunc(s).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| rf(s)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn det_of_triangular_matrix() {
        let m = mat(&[&["1", "z"], &["0", "1"]]);
        assert!(m.det().unwrap().is_one());
    }

    #[test]
    fn det_with_rational_entries() {
        // det [[1/z, 1], [1, z]] = 1 - 1 = 0
        let m = mat(&[&["1/z", "1"], &["1", "z"]]);
        assert!(m.det().unwrap().is_zero());
        // det [[1/z, 1], [1, 2*z]] = 2 - 1 = 1
        let m = mat(&[&["1/z", "1"], &["1", "2*z"]]);
        assert!(m.det().unwrap().is_one());
    }

    #[test]
    fn det_needs_pivoting() {
        let m = mat(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(m.det().unwrap(), rf("-1"));
        let m = mat(&[
            &["0", "0", "1"],
            &["0", "1", "0"],
            &["1", "0", "0"],
        ]);
        assert_eq!(m.det().unwrap(), rf("-1"));
    }

    #[test]
    fn inverse_of_unipotent() {
        let m = mat(&[&["1", "z"], &["0", "1"]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, mat(&[&["1", "-1*z"], &["0", "1"]]));
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn inverse_round_trip_with_poles() {
        let m = mat(&[&["1/z", "z"], &["1", "(z+1)/(z-1)"]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = mat(&[&["z", "z^2"], &["1", "z"]]);
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn rank_detects_proportional_rows() {
        let m = mat(&[&["-2*z", "-6*z^2"], &["2", "6*z"]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        let z = mat(&[&["0", "0"], &["0", "0"]]);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn rank_with_leading_zero_column() {
        let m = mat(&[&["0", "1", "z"], &["0", "z", "z^2"], &["0", "0", "1"]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn one_by_one() {
        let m = mat(&[&["(z-1)/(z+1)"]]);
        assert_eq!(m.det().unwrap(), rf("(z-1)/(z+1)"));
        assert_eq!(m.inverse().unwrap(), mat(&[&["(z+1)/(z-1)"]]));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn derivative_is_entrywise() {
        let m = mat(&[&["z^2", "1/z"]]);
        assert_eq!(m.derivative(), mat(&[&["2*z", "-1/z^2"]]));
    }

    #[test]
    fn trace_and_mul_shapes() {
        let a = mat(&[&["1", "2"], &["3", "4"]]);
        assert_eq!(a.trace().unwrap(), rf("5"));
        let b = mat(&[&["1"], &["z"]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, mat(&[&["1 + 2*z"], &["3 + 4*z"]]));
        assert!(b.mul(&a).is_err());
    }
}
