//! Exact differential calculi on the generalized quantum plane
//! `xy = q yx`: frames built from derivations, twisted exterior algebras,
//! structure data, linear connections and their `q -> 1` limits.
//!
//! Everything is computed in exact arithmetic over the field `Q(q)`.
//!
//! ```
//! use qplane::presets::{self, PresetId};
//!
//! let calc = presets::build(PresetId::Calc2a, None).unwrap();
//! let s = calc.structure().unwrap();
//! assert!(s.d.is_zero() && s.k.is_zero());
//! ```

pub mod algebra;
pub mod check;
pub mod climit;
pub mod connection;
pub mod error;
pub mod expr;
pub mod forms;
pub mod presets;
pub mod report;
pub mod scalars;
pub mod verify;

pub use algebra::{Derivation, Laurent, PlaneElement};
pub use check::{Comparison, NumericStatus, Value};
pub use error::{Error, Result};
pub use forms::{Calculus, CalculusSpec, Coordinate, GradedForm};
pub use scalars::{QMatrix, QScalar};
