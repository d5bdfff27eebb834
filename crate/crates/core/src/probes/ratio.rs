//! Inequality-ratio estimation: LHS/RHS of a spec evaluated on one test
//! function through the potential operators and the mixed-norm engine.

use rayon::prelude::*;

use crate::discretization::{
    make_angular_quadrature, mixed_norm_recip, GridFunction, GridSegment, RadialGrid,
};
use crate::kernels::{adaptive_integrate, j_nu_quadrature, KernelError};
use crate::operators::{
    bessel_like_potential, riesz_potential_circle_grid, riesz_potential_direct,
    riesz_potential_radial_reduced, RadialProfile,
};

use super::spec::InequalitySpec;
use super::ProbeError;

/// Grid resolutions for probe evaluations.
#[derive(Debug, Clone)]
pub struct ProbeResolution {
    /// Base density of the output radial grid.
    pub out_per_decade: usize,
    /// Output radial domain (extended automatically below small supports).
    pub out_min: f64,
    pub out_max: f64,
    /// Minimum number of radial panels across the source support.
    pub support_panels: usize,
    /// Angular rule resolution for non-radial probes.
    pub angular_resolution: usize,
    /// Exact output domain, overriding the support-relative defaults;
    /// domain-truncation sweeps move this window point by point.
    pub domain_override: Option<(f64, f64)>,
}

impl Default for ProbeResolution {
    fn default() -> Self {
        ProbeResolution {
            out_per_decade: 24,
            out_min: 1e-4,
            out_max: 1e4,
            support_panels: 24,
            angular_resolution: 64,
            domain_override: None,
        }
    }
}

/// LHS, RHS and their ratio for one evaluation.
#[derive(Debug, Clone, Copy)]
pub struct RatioBreakdown {
    pub ratio: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Estimate LHS/RHS of the inequality on the given sample with default
/// resolutions; radial samples take the reduced 1-D route.
pub fn estimate_ratio(spec: &InequalitySpec, f: &GridFunction) -> Result<f64, ProbeError> {
    estimate_ratio_full(spec, f, None, &ProbeResolution::default()).map(|b| b.ratio)
}

/// Full-control variant: an exact radial profile (when available) replaces
/// sample interpolation in the reduced route.
pub fn estimate_ratio_full(
    spec: &InequalitySpec,
    f: &GridFunction,
    profile: Option<&RadialProfile>,
    res: &ProbeResolution,
) -> Result<RatioBreakdown, ProbeError> {
    if f.grid.n != spec.dimension() {
        return Err(ProbeError::Spec("dimension mismatch".into()));
    }
    let rhs_desc = spec.rhs();
    let rhs1 = mixed_norm_recip(f, rhs_desc.recip_outer, rhs_desc.recip_inner, rhs_desc.weight_power);
    if rhs1 == 0.0 {
        return Err(ProbeError::UndefinedRatio);
    }

    let gamma = spec.kernel_power();
    let support = (
        f.grid.segments.first().unwrap().lo,
        f.grid.segments.last().unwrap().hi,
    );
    let out_grid = output_grid(f.grid.n, support, res)?;

    let radial = profile.is_some() || f.is_radial(1e-12);
    let u = if radial {
        let owned_profile;
        let profile = match profile {
            Some(p) => p,
            None => {
                let ring0: Vec<f64> = (0..f.grid.len()).map(|i| f.value(i, 0)).collect();
                owned_profile = RadialProfile::from_samples(f.grid.nodes.clone(), ring0)
                    .map_err(|e| ProbeError::Operator(e.to_string()))?;
                &owned_profile
            }
        };
        let smooth_kernel = matches!(spec, InequalitySpec::Nonhomogeneous { .. });
        let values: Result<Vec<f64>, ProbeError> = out_grid
            .nodes
            .par_iter()
            .map(|&r| {
                if smooth_kernel {
                    bessel_radial_reduced(profile, f.grid.n, gamma, r)
                } else {
                    riesz_potential_radial_reduced(profile, f.grid.n, gamma, r)
                        .map_err(|e| ProbeError::Operator(e.to_string()))
                }
            })
            .collect();
        let values = values?;
        // constant rings: a minimal angular rule keeps the norms exact
        let angular = make_angular_quadrature(f.grid.n, 4)
            .map_err(|e| ProbeError::Operator(e.to_string()))?;
        let m = angular.len();
        let mut ring_values = Vec::with_capacity(values.len() * m);
        for v in &values {
            ring_values.extend(std::iter::repeat(*v).take(m));
        }
        GridFunction::new(out_grid, angular, ring_values)
            .map_err(|e| ProbeError::Operator(e.to_string()))?
    } else {
        let angular = f.angular.clone();
        let smooth_kernel = matches!(spec, InequalitySpec::Nonhomogeneous { .. });
        let values = if !smooth_kernel && f.grid.n == 2 {
            riesz_potential_circle_grid(f, gamma, &out_grid)
                .map_err(|e| ProbeError::Operator(e.to_string()))?
                .values
        } else {
            let mut targets = Vec::with_capacity(out_grid.len() * angular.len());
            for &r in &out_grid.nodes {
                for node in &angular.nodes {
                    targets.push([r * node[0], r * node[1], r * node[2]]);
                }
            }
            if smooth_kernel {
                bessel_like_potential(f, gamma, &targets)
                    .map_err(|e| ProbeError::Operator(e.to_string()))?
            } else {
                riesz_potential_direct(f, gamma, &targets)
                    .map_err(|e| ProbeError::Operator(e.to_string()))?
                    .values
            }
        };
        GridFunction::new(out_grid, angular, values)
            .map_err(|e| ProbeError::Operator(e.to_string()))?
    };

    let lhs_desc = spec.lhs();
    let lhs = mixed_norm_recip(&u, lhs_desc.recip_outer, lhs_desc.recip_inner, lhs_desc.weight_power);
    let rhs = match spec.rhs_second() {
        None => rhs1,
        Some((second, a)) => {
            let rhs2 = mixed_norm_recip(&u, second.recip_outer, second.recip_inner, second.weight_power);
            if rhs2 == 0.0 {
                return Err(ProbeError::UndefinedRatio);
            }
            rhs1.powf(a) * rhs2.powf(1.0 - a)
        }
    };
    if rhs == 0.0 || !rhs.is_finite() || !lhs.is_finite() {
        return Err(ProbeError::UndefinedRatio);
    }
    Ok(RatioBreakdown {
        ratio: lhs / rhs,
        lhs,
        rhs,
    })
}

/// Output grid: base density over [out_min, out_max] (stretched to reach
/// well below the source support) with a denser band across the support
/// padded by three support half-widths, where the potential develops its
/// local structure.
fn output_grid(
    n: u32,
    support: (f64, f64),
    res: &ProbeResolution,
) -> Result<RadialGrid, ProbeError> {
    let (lo, hi) = res.domain_override.unwrap_or((
        res.out_min.min(support.0 / 8.0),
        res.out_max.max(support.1 * 2.0),
    ));
    let half_span = (support.1 / support.0).sqrt();
    let band = (
        (support.0 / half_span.powi(3)).clamp(lo, hi),
        (support.1 * half_span.powi(3)).clamp(lo, hi),
    );
    let span_decades = (band.1 / band.0).log10().max(1e-3);
    let dense = ((res.support_panels * 8) as f64 / span_decades).ceil() as usize;
    let dense = dense.max(res.out_per_decade);
    let mut segments = Vec::new();
    if band.0 > lo {
        segments.push(GridSegment {
            lo,
            hi: band.0,
            nodes_per_decade: res.out_per_decade,
        });
    }
    if band.1 > band.0 {
        segments.push(GridSegment {
            lo: band.0,
            hi: band.1,
            nodes_per_decade: dense,
        });
    }
    if hi > band.1 {
        segments.push(GridSegment {
            lo: band.1,
            hi,
            nodes_per_decade: res.out_per_decade,
        });
    }
    RadialGrid::graded(n, &segments).map_err(|e| ProbeError::Operator(e.to_string()))
}

/// Radially reduced smooth-kernel potential via the spherical integral
/// J_γ: Sφ(r) = ∫ φ(ρ) ρ^{n−1} J_γ(r, ρ) dρ.
fn bessel_radial_reduced(
    profile: &RadialProfile,
    n: u32,
    gamma: f64,
    target_radius: f64,
) -> Result<f64, ProbeError> {
    let (a, b) = profile.support;
    let integrand = |u: f64| -> f64 {
        let rho = u.exp();
        let v = profile.value(rho);
        if v == 0.0 {
            return 0.0;
        }
        let j = match j_nu_quadrature(n, gamma, target_radius, rho, 1e-8) {
            Ok(v) => v,
            Err(KernelError::BudgetExceeded { value, .. }) => value,
            Err(_) => return f64::NAN,
        };
        v * rho.powi(n as i32) * j
    };
    match adaptive_integrate(&integrand, a.ln(), b.ln(), 1e-6, 400_000) {
        Ok(o) => Ok(o.value),
        Err(KernelError::BudgetExceeded { value, .. }) => Ok(value),
        Err(e) => Err(ProbeError::Operator(e.to_string())),
    }
}
