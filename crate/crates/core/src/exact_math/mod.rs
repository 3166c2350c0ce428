//! Exact arithmetic substrate: rationals, vectors, matrices and polynomials.
//!
//! Everything here is arbitrary precision. There are no fixed-width integers
//! on arithmetic paths; degree formulas overflow 64 bits quickly.

mod linalg;
mod polynomial;
mod rational;

pub use linalg::{QMatrix, QVector};
pub use polynomial::{binomial, binomial_or_zero, binomial_poly, factorial, QPolynomial};
pub use rational::Rational;

pub(crate) use linalg::primitive;
pub(crate) use rational::lcm_all;

pub use num_bigint::BigInt;

/// Exact rank of `m` over the rationals.
pub fn rank(m: &QMatrix) -> usize {
    m.rank()
}

/// Canonical basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVector> {
    m.kernel_basis()
}
