//! Frame-based differential calculi: the twisted exterior algebra on a
//! frame dual to a set of derivations, the exterior derivative, and the
//! structure data of inner calculi.

mod calculus;
mod exterior;
mod form;
mod identities;
mod relations;
mod structure;

pub use calculus::{Calculus, CalculusSpec, Coordinate};
pub use exterior::{ExteriorAlgebra, Word, MAX_DEGREE};
pub use form::GradedForm;
pub use relations::CoordinateRelation;
pub use structure::{decompose_bracket, twisted_bracket, StructureData, Table, TableEntry};

pub(crate) use form::word_string;
pub(crate) use structure::{all_indices, index_key, pair};
