//! The generalized quantum plane: the algebra on `x, y, x^-1, y^-1` with
//! `xy = q yx`, its derivations, and its commutative image at `q = 1`.

mod commutative;
mod derivation;
mod matrix;
mod plane;

pub use commutative::Laurent;
pub use derivation::Derivation;
pub use matrix::AlgebraMatrix;
pub use plane::{reorder_factor, Monomial, PlaneElement};

pub(crate) use plane::{monomial_string, write_term};
