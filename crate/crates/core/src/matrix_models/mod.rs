//! Random matrix models whose large-dimension moments count meandric systems.

pub mod channels;
pub mod estimate;
pub mod matrix;
pub mod sampling;

pub use channels::{choi, phi_ginibre, phi_ginibre_units, psi, psi_units, tensor_on_omega, units};
pub use estimate::{
    error_nonincreasing, estimate, mean_and_stderr, sample_value, thin_exact, EstimateReport,
    Model, ModelSpec, NcVariant, MAX_ATTEMPTS,
};
pub use matrix::{omega, ComplexMatrix, Factor};
pub use sampling::{complex_gaussian, sample_ginibre, sample_gue, sample_rng, sample_wishart};
