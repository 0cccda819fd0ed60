//! Squarefree factorization (Yun's algorithm) and gcd-free bases.
//!
//! Full irreducible factorization over `Q` is never needed in this crate:
//! divisor bookkeeping only requires splitting a polynomial into pairwise
//! coprime squarefree pieces, and refining families of such pieces until
//! they share no factors.

use crate::error::{Error, Result};

use super::{rat_int, Poly, Rat};

/// `p = unit * prod(factors[i].0 ^ factors[i].1)` with monic squarefree
/// pairwise coprime factors of degree >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeFactorization {
    pub unit: Rat,
    pub factors: Vec<(Poly, u32)>,
}

impl SquarefreeFactorization {
    /// Multiplies the factorization back out.
    pub fn reassemble(&self) -> Poly {
        let mut p = Poly::constant(self.unit.clone());
        for (g, e) in &self.factors {
            p = &p * &g.pow(*e);
        }
        p
    }
}

/// Yun's squarefree decomposition in characteristic zero.
pub fn squarefree_factor(p: &Poly) -> Result<SquarefreeFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (monic, unit) = p.monic();
    let mut factors = Vec::new();
    if monic.is_constant() {
        return Ok(SquarefreeFactorization { unit, factors });
    }

    let deriv = monic.derivative();
    let g = monic.gcd(&deriv);
    let mut c = monic.exact_div(&g);
    let mut d = &deriv.exact_div(&g) - &c.derivative();
    let mut mult = 1u32;
    while !c.is_constant() {
        let a = c.gcd(&d);
        if !a.is_constant() {
            factors.push((a.clone(), mult));
        }
        c = c.exact_div(&a);
        d = &d.exact_div(&a) - &c.derivative();
        mult += 1;
    }
    factors.sort_by(|(a, _), (b, _)| a.cmp_canonical(b));
    Ok(SquarefreeFactorization { unit, factors })
}

/// Refines a family of monic squarefree polynomials into a pairwise coprime
/// basis through which every input factors.
///
/// Inputs must be nonzero; non-monic inputs are normalized, constants are
/// dropped.
pub fn coprime_basis(inputs: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for input in inputs {
        assert!(!input.is_zero(), "coprime_basis: zero input");
        let mut f = input.monic().0;
        if f.is_constant() {
            continue;
        }
        // Split f against the current basis until it is coprime to all of it.
        let mut idx = 0;
        while idx < basis.len() && !f.is_constant() {
            let g = f.gcd(&basis[idx]);
            if g.is_constant() {
                idx += 1;
                continue;
            }
            let rest = basis[idx].exact_div(&g);
            basis[idx] = g.clone();
            if !rest.is_constant() {
                basis.push(rest.monic().0);
            }
            f = f.exact_div(&g);
            // g itself is already coprime to every other basis element
            // (it divides the old basis[idx]), so the scan may continue.
            idx += 1;
        }
        if !f.is_constant() {
            basis.push(f);
        }
    }
    basis.sort_by(|a, b| a.cmp_canonical(b));
    basis.dedup();
    basis
}

/// Splits off the power of `z` dividing `p`: returns `(k, q)` with
/// `p = z^k * q` and `q(0) != 0`. Panics on the zero polynomial.
pub(crate) fn split_power_of_z(p: &Poly) -> (usize, Poly) {
    let k = p.ord_at_zero().expect("split_power_of_z: zero polynomial");
    if k == 0 {
        return (0, p.clone());
    }
    let q = p.exact_div(&Poly::monomial(rat_int(1), k));
    (k, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_ints(coeffs)
    }

    #[test]
    fn yun_separates_multiplicities() {
        // (z-1)(z-2)^2 = z^3 - 5z^2 + 8z - 4
        let p = poly(&[-4, 8, -5, 1]);
        let sf = squarefree_factor(&p).unwrap();
        assert_eq!(sf.unit, rat_int(1));
        assert_eq!(
            sf.factors,
            vec![(poly(&[-2, 1]), 2), (poly(&[-1, 1]), 1)]
        );
        assert_eq!(sf.reassemble(), p);
    }

    #[test]
    fn yun_on_pure_power() {
        let p = poly(&[0, 0, 0, 0, 1]); // z^4
        let sf = squarefree_factor(&p).unwrap();
        assert_eq!(sf.factors, vec![(poly(&[0, 1]), 4)]);
    }

    #[test]
    fn yun_keeps_squarefree_input_whole() {
        let p = poly(&[-2, 0, 1]); // z^2 - 2, irreducible over Q but that is irrelevant
        let sf = squarefree_factor(&p).unwrap();
        assert_eq!(sf.factors, vec![(p.clone(), 1)]);
    }

    #[test]
    fn yun_tracks_the_unit() {
        let p = poly(&[0, 0, -3]); // -3 z^2
        let sf = squarefree_factor(&p).unwrap();
        assert_eq!(sf.unit, rat_int(-3));
        assert_eq!(sf.factors, vec![(poly(&[0, 1]), 2)]);
        assert_eq!(sf.reassemble(), p);
    }

    #[test]
    fn yun_rejects_zero() {
        assert_eq!(squarefree_factor(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn basis_refines_shared_factors() {
        // (z-1)(z-2) and (z-2)(z-3)
        let a = poly(&[2, -3, 1]);
        let b = poly(&[6, -5, 1]);
        let basis = coprime_basis(&[a.clone(), b.clone()]);
        assert_eq!(basis, vec![poly(&[-3, 1]), poly(&[-2, 1]), poly(&[-1, 1])]);
    }

    #[test]
    fn basis_passes_singletons_and_collapses_duplicates() {
        let p = poly(&[-2, 0, 1]);
        assert_eq!(coprime_basis(&[p.clone()]), vec![p.clone()]);
        let q = poly(&[-1, 1]);
        assert_eq!(coprime_basis(&[q.clone(), q.clone()]), vec![q]);
    }

    #[test]
    fn basis_outputs_are_pairwise_coprime() {
        let inputs = vec![
            poly(&[0, 1]),            // z
            poly(&[0, -1, 1]),        // z(z-1)
            poly(&[0, 2, -3, 1]),     // z(z-1)(z-2)
            poly(&[-2, 1]),           // z-2
        ];
        let basis = coprime_basis(&inputs);
        for (i, a) in basis.iter().enumerate() {
            for b in basis.iter().skip(i + 1) {
                assert!(a.gcd(b).is_one(), "{a} and {b} share a factor");
            }
        }
        // every input is a product of basis elements
        for input in &inputs {
            let mut rem = input.monic().0;
            for b in &basis {
                while !rem.is_constant() && rem.gcd(b) == *b {
                    rem = rem.exact_div(b);
                }
            }
            assert!(rem.is_one(), "input {input} does not factor through the basis");
        }
    }
}
