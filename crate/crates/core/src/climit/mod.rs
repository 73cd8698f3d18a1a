//! The commutative limit `q -> 1`: Poisson bracket, limit frames, and the
//! Riemannian geometry of the limit metric on the plane minus the axes.

mod cform;
mod chart;
mod rational;

pub use cform::CForm;
pub use chart::{
    cartan_connection, classical_chart, connection_limit_crosscheck, frame_equation_check, gauss_curvature, limit_of,
    poisson, poisson_via_commutator, structure_equation_check, ClassicalChart, CrosscheckReport,
};
pub use rational::CRational;

/// The sign convention used for curvature, recorded in every report.
pub const CURVATURE_CONVENTION: &str = "d omega^1_2 = -K theta^1 ∧ theta^2";
