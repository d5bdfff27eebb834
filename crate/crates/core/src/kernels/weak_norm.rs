//! Weak Lorentz norms on multiplicative-Haar samples and the proof-pipeline
//! quantity ‖ρ^{−β+n/q} ‖|ρe−θ|^{−γ}‖_{L^{r̃}_θ}‖_{L^{r,∞}(dρ/ρ)}.

use num_traits::One;
use rayon::prelude::*;

use crate::exponents::{rational_to_f64, MixedIndices, Rational, RecipExponent};

use super::spherical::i_nu_quadrature_budget;
use super::KernelError;

/// Samples of a non-negative function on an ascending positive grid, with
/// the local dρ/ρ cell weights.
#[derive(Debug, Clone)]
pub struct WeakNormSample {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub haar_weights: Vec<f64>,
}

impl WeakNormSample {
    /// Build from nodes and values; each node gets the Haar measure of the
    /// log-midpoint cell around it, so the weights sum to log(max/min).
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self, KernelError> {
        if nodes.len() != values.len() || nodes.len() < 2 {
            return Err(KernelError::InvalidSample(
                "need matching node/value lists with at least two entries".into(),
            ));
        }
        for w in nodes.windows(2) {
            if !(w[0] > 0.0 && w[1] > w[0]) {
                return Err(KernelError::InvalidSample(
                    "nodes must be strictly increasing and positive".into(),
                ));
            }
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(KernelError::InvalidSample(
                "values must be finite and non-negative".into(),
            ));
        }
        let logs: Vec<f64> = nodes.iter().map(|x| x.ln()).collect();
        let m = nodes.len();
        let mut haar_weights = vec![0.0; m];
        for i in 0..m {
            let lo = if i == 0 { logs[0] } else { 0.5 * (logs[i - 1] + logs[i]) };
            let hi = if i == m - 1 {
                logs[m - 1]
            } else {
                0.5 * (logs[i] + logs[i + 1])
            };
            haar_weights[i] = hi - lo;
        }
        Ok(WeakNormSample {
            nodes,
            values,
            haar_weights,
        })
    }
}

/// Discrete weak norm sup_t t·μ{g > t}^{1/r} with μ the sampled Haar
/// measure, computed exactly on the sample by sorting. The reciprocal 0
/// (r = ∞) degenerates to the essential supremum.
pub fn weak_norm_haar(sample: &WeakNormSample, r: &RecipExponent) -> f64 {
    let recip = r.recip_f64();
    let mut pairs: Vec<(f64, f64)> = sample
        .values
        .iter()
        .copied()
        .zip(sample.haar_weights.iter().copied())
        .collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    if recip == 0.0 {
        return pairs.first().map(|p| p.0).unwrap_or(0.0);
    }
    let mut best: f64 = 0.0;
    let mut mass = 0.0;
    for (value, weight) in pairs {
        mass += weight;
        if value <= 0.0 {
            break;
        }
        best = best.max(value * mass.powf(recip));
    }
    best
}

/// Strong companion (Σ w g^r)^{1/r} on the same sample, for the
/// weak-finite / strong-divergent comparisons.
pub fn strong_norm_haar(sample: &WeakNormSample, r: &RecipExponent) -> f64 {
    let recip = r.recip_f64();
    if recip == 0.0 {
        return sample.values.iter().copied().fold(0.0, f64::max);
    }
    let power = 1.0 / recip;
    let sum: f64 = sample
        .values
        .iter()
        .zip(&sample.haar_weights)
        .map(|(v, w)| w * v.powf(power))
        .sum();
    sum.powf(recip)
}

/// Numerical verdict on the proof-pipeline weak norm: `finite` means the
/// nested-grid values stabilized (last refinement ratio < 1.05).
#[derive(Debug, Clone)]
pub struct ProofQuantity {
    pub finite: bool,
    pub value: f64,
    /// Weak-norm value per refinement level, for inspection.
    pub levels: Vec<f64>,
}

/// Ratio threshold declaring the nested-grid sequence stabilized.
pub const STABILIZATION_RATIO: f64 = 1.05;

const LEVELS: usize = 4;
const BASE_PER_DECADE: usize = 96;
const WINDOW_PER_DECADE: usize = 48;

/// Young-dual exponents 1/r = 1 + 1/q − 1/p and the angular analog; errors
/// when they leave [0,1].
fn young_exponents(idx: &MixedIndices) -> Result<(RecipExponent, RecipExponent), KernelError> {
    let one = Rational::one();
    let recip_r = &one + idx.q.recip() - idx.p.recip();
    let recip_rt = &one + idx.qtilde.recip() - idx.ptilde.recip();
    let mk = |v: Rational, which: &str| {
        RecipExponent::from_recip(v)
            .map_err(|_| KernelError::YoungIndices(format!("{which} outside [1,∞]")))
    };
    Ok((mk(recip_r, "r")?, mk(recip_rt, "r̃")?))
}

/// Evaluate the controlling quantity of the mixed-estimate proof on nested
/// log grids over [10^{−4−k}, 10^{4+k}] with a window refined down to
/// |ρ−1| = 10^{−3−k}, and decide finiteness by stabilization.
///
/// The angular factor is I_{γr̃}(ρe)^{1/r̃} by quadrature for finite r̃, and
/// the exact distance form |ρ−1|^{−γ} at r̃ = ∞.
pub fn proof_kernel_weak_norm(idx: &MixedIndices) -> Result<ProofQuantity, KernelError> {
    let (r, rtilde) = young_exponents(idx)?;
    let n = idx.n;
    let gamma = rational_to_f64(&idx.gamma);
    let radial_power = rational_to_f64(&(Rational::from_integer(n.into()) * idx.q.recip() - &idx.beta));

    let mut levels = Vec::with_capacity(LEVELS);
    for k in 0..LEVELS {
        let nodes = level_grid(k);
        let values: Vec<f64> = nodes
            .par_iter()
            .map(|&rho| {
                let angular = if rtilde.is_infinite() {
                    (rho - 1.0_f64).abs().powf(-gamma)
                } else {
                    let rt = rtilde.exponent_f64();
                    let nu = gamma * rt;
                    let integral = match i_nu_quadrature_budget(n, nu, rho, 1e-7, 200_000) {
                        Ok(v) => v,
                        Err(KernelError::BudgetExceeded { value, .. }) => value,
                        Err(_) => f64::INFINITY,
                    };
                    integral.powf(1.0 / rt)
                };
                rho.powf(radial_power) * angular
            })
            .collect();
        let sample = WeakNormSample::new(nodes, values)?;
        levels.push(weak_norm_haar(&sample, &r));
    }

    let last = levels[LEVELS - 1];
    let prev = levels[LEVELS - 2];
    let finite = if last == 0.0 {
        true
    } else {
        last / prev.max(f64::MIN_POSITIVE) < STABILIZATION_RATIO
    };
    Ok(ProofQuantity {
        finite,
        value: last,
        levels,
    })
}

/// Log-uniform grid over the level-k domain plus the refined window around
/// ρ = 1 (nodes never hit 1 exactly).
fn level_grid(k: usize) -> Vec<f64> {
    let decades = 4 + k as i32;
    let lo = -decades as f64;
    let hi = decades as f64;
    let count = (2 * decades as usize) * BASE_PER_DECADE;
    let mut nodes: Vec<f64> = (0..=count)
        .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / count as f64))
        .collect();
    // window: |ρ−1| log-spaced in [10^{−3−k}, 1/2] on both sides
    let wlo = -(3.0 + k as f64);
    let whi = 0.5f64.log10();
    let wcount = ((whi - wlo) * WINDOW_PER_DECADE as f64).ceil() as usize;
    for i in 0..=wcount {
        let d = 10f64.powf(wlo + (whi - wlo) * i as f64 / wcount as f64);
        nodes.push(1.0 - d);
        nodes.push(1.0 + d);
    }
    nodes.retain(|x| *x > 0.0 && (*x - 1.0).abs() > 1e-15);
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nodes.dedup_by(|a, b| (*a - *b).abs() < 1e-14 * b.abs());
    nodes
}
