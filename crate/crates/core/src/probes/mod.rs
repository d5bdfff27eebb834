//! Empirical sharpness probes: inequality-ratio estimation along test
//! families, boundedness classification against the exact checkers, and
//! envelope verification for the spherical kernels.

mod envelope_check;
mod ratio;
mod spec;
mod sweep;

pub use envelope_check::{
    verify_envelope, verify_envelope_i, verify_envelope_j, EnvelopeReport, LemmaKernel, RegimeFit,
};
pub use ratio::{estimate_ratio, estimate_ratio_full, ProbeResolution, RatioBreakdown};
pub use spec::{InequalitySpec, InequalitySpecFile, NormDescriptor};
pub use sweep::{
    boundary_exempt, sample_family, sharpness_sweep, Classification, ProbeReport, SweepPoint,
    BOUNDED_VARIATION, DIVERGENCE_GROWTH, DIVERGENCE_SLOPE,
};

use thiserror::Error;

/// Errors from probe evaluation.
#[derive(Debug, Error)]
pub enum ProbeError {
    #[error("the right-hand side vanishes or is not finite; ratio undefined")]
    UndefinedRatio,
    #[error("invalid probe specification: {0}")]
    Spec(String),
    #[error("operator evaluation failed: {0}")]
    Operator(String),
}

/// Least-squares slope of ln y against ln x.
pub fn fit_loglog(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let count = logs.len() as f64;
    if logs.len() < 2 {
        return f64::NAN;
    }
    let mean_x: f64 = logs.iter().map(|(x, _)| x).sum::<f64>() / count;
    let mean_y: f64 = logs.iter().map(|(_, y)| y).sum::<f64>() / count;
    let covariance: f64 = logs
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let variance: f64 = logs.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    covariance / variance
}

#[cfg(test)]
mod tests {
    use super::fit_loglog;

    #[test]
    fn slope_fit_recovers_powers() {
        let pts: Vec<(f64, f64)> = (1..=20)
            .map(|i| {
                let x = 1.5f64.powi(i);
                (x, 3.0 * x.powf(-1.75))
            })
            .collect();
        let slope = fit_loglog(&pts);
        assert!((slope + 1.75).abs() < 1e-12, "{slope}");
    }
}
