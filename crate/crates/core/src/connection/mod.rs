//! Linear connections on the 1-forms of an inner calculus: the
//! generalized permutation `σ`, `ω_(0)`, torsion and metric compatibility.

mod linear;
mod solve;
mod tensor;

pub use linear::{
    d0_via_theta, metric_check, metric_matrix_check, metric_omega_check, omega0, sigma_check, sigma_symmetry_check,
    torsion, torsionfree_check, ConnectionData,
};
pub use solve::solve_sigma;
pub use tensor::{MetricTensor, SigmaTensor, TensorBi};
