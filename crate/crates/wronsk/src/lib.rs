//! Exact Wronskian calculus on the Riemann sphere.
//!
//! Everything here is computed over the field of rational functions with
//! rational coefficients, so every identity is checked with zero tolerance:
//! a residual either is the zero element of the field or it is not.
//!
//! The crate is organized around five layers:
//!
//! - [`ratfunc`] — exact arithmetic in `Q[z]` and `Q(z)`, an expression
//!   parser, squarefree factorization and gcd-free bases;
//! - [`divisor`] — divisors on the projective line (finite closed points
//!   plus the point at infinity), degrees and n-th-power tests;
//! - [`wronskian`] — Wronskian matrices and determinants, genericity,
//!   Wronskian quotients, and the lower-triangular matrices that intertwine
//!   a Wronskian with a coordinate change or a scalar rescaling;
//! - [`ode`] — recovery of the order-n linear ODE annihilating a generic
//!   tuple, Abel's identity and Liouville's formula as certificates;
//! - [`bundle`] — projectively flat bundles on the sphere given by
//!   two-chart transition data, global Wronskian divisors, the Wronskian
//!   line bundle degree, Chern and coboundary cocycle certificates.
//!
//! [`verify`] holds the seeded randomized suites behind `wronsk verify`.
//!
//! Run `cargo run --example wronskian_matrix` (or any other example) for a
//! guided tour; the `wronsk` binary exposes the same operations on the
//! command line.

pub mod bundle;
pub mod divisor;
mod error;
pub mod ode;
pub mod ratfunc;
pub mod verify;
pub mod wronskian;

pub use error::{Error, Result};
pub use ratfunc::{parse_ratfunc, parse_section, Mobius, Poly, Rat, RatFunc};
pub use wronskian::{RatMatrix, VecSection};
