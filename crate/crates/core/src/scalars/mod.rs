//! Exact arithmetic in Q(q) and dense linear algebra over it.
//!
//! `q` is a transcendental symbol throughout: no root-of-unity
//! specialization happens anywhere, and the only numeric evaluation is at a
//! caller-supplied rational value of `q`.

mod matrix;
mod poly;
mod qscalar;

pub use matrix::{QMatrix, Rref, Solution};
pub use poly::ZPoly;
pub use qscalar::{LimitQ1, QScalar};
