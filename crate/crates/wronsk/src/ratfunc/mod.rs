//! Exact arithmetic in `Q[z]` and `Q(z)`.
//!
//! [`Rat`] is an arbitrary-precision rational scalar, [`Poly`] a dense
//! polynomial over `Rat` in one variable, and [`RatFunc`] a reduced fraction
//! of polynomials with monic denominator. The canonical form of a `RatFunc`
//! (coprime numerator/denominator, monic denominator, zero stored as `0/1`)
//! makes equality a field-by-field comparison, which is what lets every
//! identity in the crate be tested exactly.

mod factor;
mod func;
mod parse;
mod poly;

pub use factor::{coprime_basis, squarefree_factor, SquarefreeFactorization};
pub use func::{Mobius, RatFunc};
pub use parse::{parse_ratfunc, parse_section};
pub use poly::Poly;

pub(crate) use factor::split_power_of_z;

use num::BigInt;

/// Arbitrary-precision rational scalar: the coefficient field for everything.
///
/// `num`'s `BigRational` already maintains the invariants we need: the
/// denominator is positive, numerator and denominator are coprime, and zero
/// is stored as `0/1`.
pub type Rat = num::BigRational;

/// Integer as a `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as a `Rat`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text for a scalar: `p` or `p/q` with `q > 1`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
