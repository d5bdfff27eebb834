//! Angular quadrature, log-spaced radial grids, sampled grid functions and
//! mixed radial-angular norm evaluation.

mod angular;
mod grid_function;
mod norms;
mod radial;

pub use angular::{make_angular_quadrature, AngularQuadrature};
pub use grid_function::GridFunction;
pub use norms::{mixed_norm, mixed_norm_normalized, mixed_norm_recip, monotonicity_check};
pub use radial::{GridSegment, RadialGrid};

use thiserror::Error;

/// Errors from grid construction and norm evaluation.
#[derive(Debug, Error)]
pub enum DiscretizationError {
    #[error("unsupported dimension n={0} (angular rules cover n=2,3)")]
    UnsupportedDimension(u32),
    #[error("angular resolution {0} below the minimum of 4")]
    ResolutionTooSmall(usize),
    #[error("grid shapes do not match")]
    DimensionMismatch,
    #[error("values must be finite")]
    InvalidValues,
    #[error("radial range must be positive, ascending and dense enough")]
    BadRange,
    #[error("exponents out of order")]
    OrderViolation,
    #[error("csv: {0}")]
    Csv(String),
    #[error("io: {0}")]
    Io(String),
}
