//! Sharp spherical-kernel asymptotics: closed-form envelopes for I_ν and
//! J_ν, independent quadrature oracles, and the weak-norm computation that
//! controls the mixed-estimate proof.

mod quad1d;
mod spherical;
mod weak_norm;

pub use quad1d::{adaptive_integrate, gauss_legendre, QuadOutcome};
pub use spherical::{
    bracket, i_nu_closed_form_n3, i_nu_envelope, i_nu_quadrature, i_nu_quadrature_budget,
    i_nu_regime, j_nu_envelope, j_nu_quadrature, j_nu_regime, unit_sphere_measure, IRegime,
    JRegime,
};
pub use weak_norm::{
    proof_kernel_weak_norm, strong_norm_haar, weak_norm_haar, ProofQuantity, WeakNormSample,
    STABILIZATION_RATIO,
};

use thiserror::Error;

/// Errors from the kernel evaluators.
#[derive(Debug, Error)]
pub enum KernelError {
    #[error("integral diverges at |x|={x_norm} for nu={nu}")]
    Divergent { x_norm: f64, nu: f64 },
    #[error("envelope is singular at |x|={x_norm} for nu={nu}")]
    SingularLocation { x_norm: f64, nu: f64 },
    #[error("node budget {budget} exhausted (best value {value}, error {abs_error})")]
    BudgetExceeded {
        value: f64,
        abs_error: f64,
        budget: usize,
    },
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("Young-dual exponent {0}")]
    YoungIndices(String),
}
