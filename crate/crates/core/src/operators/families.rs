//! Parametric test-function families for the sharpness probes.

use crate::discretization::{AngularQuadrature, GridFunction, RadialGrid};

use super::OperatorError;

/// Relative level below which the angular bump factor is truncated to
/// exact zero. The truncated tail carries a sub-percent share of every
/// norm in use, and the truncation makes bump sources compactly supported
/// in angle, which the potential evaluators rely on.
pub const BUMP_FLOOR: f64 = 1e-4;

/// The probe families: truncated power spikes, the endpoint log spike,
/// angular concentration bumps, and their tensor product.
///
/// The bump factor is (1 + κ(1−θ·e))^{−m} with axis e = (1,0,…); κ = 1
/// with m = 0 degenerates to a radial function. Values below [`BUMP_FLOOR`]
/// are truncated to zero.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFamily {
    /// |x|^{−s}·1_{ε ≤ |x| ≤ R}
    PowerSpike { s: f64, inner: f64, outer: f64 },
    /// |x|^{e}·log(1/|x|)·1_{ε ≤ |x| ≤ 1/2}
    CknLogSpike { exponent: f64, inner: f64 },
    /// 1_{ε ≤ |x| ≤ R}·(1+κ(1−θ·e))^{−m}
    AngularBump {
        kappa: f64,
        m: f64,
        inner: f64,
        outer: f64,
    },
    /// |x|^{−s}·1_{ε ≤ |x| ≤ R}·(1+κ(1−θ·e))^{−m}
    TensorSpikeBump {
        s: f64,
        kappa: f64,
        m: f64,
        inner: f64,
        outer: f64,
    },
}

impl TestFamily {
    pub fn validate(&self) -> Result<(), OperatorError> {
        let check_cutoffs = |inner: f64, outer: f64| {
            if !(inner > 0.0 && inner < outer) {
                Err(OperatorError::BadFamily(format!(
                    "cutoffs must satisfy 0 < inner < outer, got {inner}, {outer}"
                )))
            } else {
                Ok(())
            }
        };
        let check_kappa = |kappa: f64| {
            if kappa < 1.0 {
                Err(OperatorError::BadFamily(format!(
                    "angular concentration must satisfy κ ≥ 1, got {kappa}"
                )))
            } else {
                Ok(())
            }
        };
        match *self {
            TestFamily::PowerSpike { inner, outer, .. } => check_cutoffs(inner, outer),
            TestFamily::CknLogSpike { inner, .. } => check_cutoffs(inner, 0.5),
            TestFamily::AngularBump {
                kappa,
                inner,
                outer,
                ..
            }
            | TestFamily::TensorSpikeBump {
                kappa,
                inner,
                outer,
                ..
            } => {
                check_cutoffs(inner, outer)?;
                check_kappa(kappa)
            }
        }
    }

    /// Radial support interval.
    pub fn radial_support(&self) -> (f64, f64) {
        match *self {
            TestFamily::PowerSpike { inner, outer, .. } => (inner, outer),
            TestFamily::CknLogSpike { inner, .. } => (inner, 0.5),
            TestFamily::AngularBump { inner, outer, .. } => (inner, outer),
            TestFamily::TensorSpikeBump { inner, outer, .. } => (inner, outer),
        }
    }

    /// Radial breakpoints a grid should pin so the truncations are exact.
    pub fn radial_breakpoints(&self) -> Vec<f64> {
        let (a, b) = self.radial_support();
        vec![a, b]
    }

    /// Whether the family is constant in the angular variable.
    pub fn is_radial(&self) -> bool {
        match *self {
            TestFamily::PowerSpike { .. } | TestFamily::CknLogSpike { .. } => true,
            TestFamily::AngularBump { kappa, m, .. }
            | TestFamily::TensorSpikeBump { kappa, m, .. } => m == 0.0 || kappa == 0.0,
        }
    }

    /// Point evaluation at radius ρ and direction θ.
    pub fn eval(&self, rho: f64, theta: &[f64; 3]) -> f64 {
        let (a, b) = self.radial_support();
        if rho < a || rho > b {
            return 0.0;
        }
        match *self {
            TestFamily::PowerSpike { s, .. } => rho.powf(-s),
            TestFamily::CknLogSpike { exponent, .. } => rho.powf(exponent) * (1.0 / rho).ln(),
            TestFamily::AngularBump { kappa, m, .. } => bump(kappa, m, theta),
            TestFamily::TensorSpikeBump { s, kappa, m, .. } => {
                rho.powf(-s) * bump(kappa, m, theta)
            }
        }
    }

    /// The radial factor alone (the angular factor is 1 on the axis).
    pub fn radial_factor(&self, rho: f64) -> f64 {
        self.eval(rho, &[1.0, 0.0, 0.0])
    }

    /// Dilated family f(λ·) together with the amplitude factor λ^{s}
    /// pulled out of the power spike; only the spike family is
    /// dilation-closed.
    pub fn dilated(&self, lambda: f64) -> Option<(TestFamily, f64)> {
        match *self {
            TestFamily::PowerSpike { s, inner, outer } => Some((
                TestFamily::PowerSpike {
                    s,
                    inner: inner / lambda,
                    outer: outer / lambda,
                },
                lambda.powf(-s),
            )),
            _ => None,
        }
    }
}

fn bump(kappa: f64, m: f64, theta: &[f64; 3]) -> f64 {
    let value = (1.0 + kappa * (1.0 - theta[0])).powf(-m);
    if m > 0.0 && value < BUMP_FLOOR {
        0.0
    } else {
        value
    }
}

/// Sample the family on the given grids.
pub fn make_test_function(
    family: &TestFamily,
    grid: RadialGrid,
    angular: AngularQuadrature,
) -> Result<GridFunction, OperatorError> {
    family.validate()?;
    GridFunction::from_fn(grid, angular, |rho, theta| family.eval(rho, theta))
        .map_err(|e| OperatorError::BadFamily(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::make_angular_quadrature;

    #[test]
    fn spike_with_zero_exponent_is_the_indicator() {
        let f = TestFamily::PowerSpike {
            s: 0.0,
            inner: 1e-9,
            outer: 1.0,
        };
        assert_eq!(f.eval(0.5, &[1.0, 0.0, 0.0]), 1.0);
        assert_eq!(f.eval(1.5, &[1.0, 0.0, 0.0]), 0.0);
        assert!(f.is_radial());
    }

    #[test]
    fn log_spike_value() {
        // exponent −1/2 at |x| = 1/e: e^{1/2}·1
        let f = TestFamily::CknLogSpike {
            exponent: -0.5,
            inner: 1e-3,
        };
        let v = f.eval((-1.0f64).exp(), &[1.0, 0.0, 0.0]);
        assert!((v - (0.5f64).exp().sqrt().powi(2)).abs() < 1e-12);
        assert!((v - 1.0f64.exp().sqrt()).abs() < 1e-12);
        assert_eq!(f.eval(0.6, &[1.0, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn flat_bump_is_radial() {
        let f = TestFamily::AngularBump {
            kappa: 1.0,
            m: 0.0,
            inner: 0.5,
            outer: 2.0,
        };
        assert!(f.is_radial());
        assert_eq!(f.eval(1.0, &[0.0, 1.0, 0.0]), 1.0);
        let g = TestFamily::AngularBump {
            kappa: 10.0,
            m: 2.0,
            inner: 0.5,
            outer: 2.0,
        };
        assert!(!g.is_radial());
        assert!(g.eval(1.0, &[1.0, 0.0, 0.0]) > g.eval(1.0, &[0.0, 1.0, 0.0]));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(TestFamily::PowerSpike {
            s: 1.0,
            inner: 0.0,
            outer: 1.0
        }
        .validate()
        .is_err());
        assert!(TestFamily::CknLogSpike {
            exponent: 0.0,
            inner: 0.7
        }
        .validate()
        .is_err());
        assert!(TestFamily::AngularBump {
            kappa: 0.5,
            m: 1.0,
            inner: 0.1,
            outer: 1.0
        }
        .validate()
        .is_err());
    }

    #[test]
    fn sampling_respects_the_grid() {
        let family = TestFamily::PowerSpike {
            s: 1.0,
            inner: 0.1,
            outer: 1.0,
        };
        let grid = RadialGrid::with_breakpoints(2, 1e-2, 10.0, 32, &family.radial_breakpoints())
            .unwrap();
        let angular = make_angular_quadrature(2, 8).unwrap();
        let f = make_test_function(&family, grid, angular).unwrap();
        assert!(f.is_radial(1e-14));
        let norm_sq: f64 = f
            .grid
            .nodes
            .iter()
            .enumerate()
            .map(|(i, _)| f.grid.volume_weight(i) * f.value(i, 0).powi(2))
            .sum();
        // ∫_{0.1}^{1} ρ^{-2} ρ dρ = ln 10
        assert!((norm_sq - 10.0f64.ln()).abs() < 1e-10);
    }
}
