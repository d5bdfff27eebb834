//! Potential operators (fractional integral and its smooth variant) and
//! the parametric test-function families the probes are built from.

mod families;
mod potentials;

pub use families::{make_test_function, TestFamily};
pub use potentials::{
    bessel_like_potential, riesz_potential_circle_grid, riesz_potential_direct,
    riesz_potential_radial_reduced, PotentialValues, RadialProfile,
};

use thiserror::Error;

/// Errors from the potential evaluators and family constructors.
#[derive(Debug, Error)]
pub enum OperatorError {
    #[error("kernel power gamma={gamma} outside the admissible range for n={n}")]
    GammaOutOfRange { gamma: f64, n: u32, inclusive: bool },
    #[error("invalid test family: {0}")]
    BadFamily(String),
    #[error("kernel evaluation failed: {0}")]
    Kernel(String),
}
