//! Envelope verification: bounded quadrature/envelope ratios per regime and
//! log-log slope fits against the sharp exponents.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::kernels::{
    bracket, i_nu_envelope, i_nu_quadrature, i_nu_regime, j_nu_envelope, j_nu_quadrature,
    IRegime,
};

use super::{fit_loglog, ProbeError};

/// Which spherical integral the report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaKernel {
    INu,
    JNu,
}

/// Per-regime statistics: two-sided ratio range, the raw slope of the
/// quadrature against the regime variable with its sharp target (for pure
/// power regimes), and the slope of the ratio itself (flat when the
/// envelope captures the right power).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimeFit {
    pub regime: String,
    pub points: usize,
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub raw_slope: Option<f64>,
    pub expected_slope: Option<f64>,
    pub ratio_slope: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnvelopeReport {
    pub lemma: LemmaKernel,
    pub n: u32,
    pub nu: f64,
    pub fits: Vec<RegimeFit>,
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Points skipped because the quadrature diverges or ran out of budget.
    pub skipped: usize,
}

impl EnvelopeReport {
    pub fn fit(&self, regime: &str) -> &RegimeFit {
        self.fits
            .iter()
            .find(|f| f.regime == regime)
            .unwrap_or_else(|| panic!("no regime {regime}"))
    }
}

const QUAD_TOL: f64 = 1e-8;

/// Dispatch on the lemma with the documented default grids.
pub fn verify_envelope(lemma: LemmaKernel, n: u32, nu: f64) -> Result<EnvelopeReport, ProbeError> {
    match lemma {
        LemmaKernel::INu => verify_envelope_i(n, nu, 200),
        LemmaKernel::JNu => verify_envelope_j(n, nu, 20),
    }
}

fn stats(ratios: &[f64]) -> (f64, f64) {
    ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &r| (lo.min(r), hi.max(r)))
}

/// Ratio + slope verification for the sphere-kernel integral on a log grid
/// of `base_points` radii in [10^{-2}, 10^{2}], the window (0.95, 1.05)
/// excluded when the annulus is singular, plus dedicated annulus samples
/// ||x|−1| ∈ [10^{-4}, 1/2] on both sides of the sphere.
pub fn verify_envelope_i(n: u32, nu: f64, base_points: usize) -> Result<EnvelopeReport, ProbeError> {
    let singular = nu >= (n - 1) as f64;
    let mut radii: Vec<f64> = (0..base_points)
        .map(|i| 10f64.powf(-2.0 + 4.0 * i as f64 / (base_points - 1) as f64))
        .filter(|r| !singular || !(0.95..=1.05).contains(r))
        .collect();
    let annulus: Vec<f64> = (0..40)
        .map(|i| 10f64.powf(-4.0 + (0.5f64.log10() + 4.0) * i as f64 / 39.0))
        .collect();
    for &s in &annulus {
        radii.push(1.0 + s);
        radii.push(1.0 - s);
    }

    let evaluated: Vec<Option<(f64, f64, f64)>> = radii
        .par_iter()
        .map(|&r| {
            let q = i_nu_quadrature(n, nu, r, QUAD_TOL).ok()?;
            let e = i_nu_envelope(n, nu, r).ok()?;
            Some((r, q, e))
        })
        .collect();
    let skipped = evaluated.iter().filter(|o| o.is_none()).count();
    let samples: Vec<(f64, f64, f64)> = evaluated.into_iter().flatten().collect();

    let ratios: Vec<f64> = samples.iter().map(|(_, q, e)| q / e).collect();
    let (ratio_min, ratio_max) = stats(&ratios);

    let mut fits = Vec::new();
    // far field: x ≥ 2, power −ν against ⟨x⟩
    let far: Vec<&(f64, f64, f64)> = samples.iter().filter(|(r, _, _)| *r >= 2.0).collect();
    fits.push(regime_fit(
        "far",
        &far.iter().map(|(r, q, _)| (bracket(*r), *q)).collect::<Vec<_>>(),
        &far.iter().map(|(r, q, e)| (bracket(*r), q / e)).collect::<Vec<_>>(),
        Some(-nu),
    ));
    // bulk: x ≤ 1/2, envelope constant
    let bulk: Vec<&(f64, f64, f64)> = samples.iter().filter(|(r, _, _)| *r <= 0.5).collect();
    fits.push(regime_fit(
        "bulk",
        &bulk.iter().map(|(r, q, _)| (*r, *q)).collect::<Vec<_>>(),
        &bulk.iter().map(|(r, q, e)| (*r, q / e)).collect::<Vec<_>>(),
        None,
    ));
    // annulus, both sides, against the distance to the sphere; ratio
    // bounds cover the whole regime while the slope is fitted on the
    // asymptotic window s ≤ 1/20 where the sharp power dominates
    for (name, side) in [("annulus_above", 1.0f64), ("annulus_below", -1.0f64)] {
        let pts: Vec<&(f64, f64, f64)> = samples
            .iter()
            .filter(|(r, _, _)| {
                let s = (r - 1.0) * side;
                s > 0.0 && s <= 0.5 && *r > 0.5 && *r < 2.0
            })
            .collect();
        let deep: Vec<&&(f64, f64, f64)> = pts
            .iter()
            .filter(|(r, _, _)| (r - 1.0f64).abs() <= 0.05)
            .collect();
        let expected = match i_nu_regime(n, nu, 1.0) {
            IRegime::AnnulusSuper => Some((n - 1) as f64 - nu),
            IRegime::AnnulusSub => Some(0.0),
            _ => None,
        };
        let mut fit = regime_fit(
            name,
            &deep
                .iter()
                .map(|(r, q, _)| ((r - 1.0f64).abs(), *q))
                .collect::<Vec<_>>(),
            &deep
                .iter()
                .map(|(r, q, e)| ((r - 1.0f64).abs(), q / e))
                .collect::<Vec<_>>(),
            expected,
        );
        let full_ratios: Vec<f64> = pts.iter().map(|(_, q, e)| q / e).collect();
        let (lo, hi) = stats(&full_ratios);
        fit.ratio_min = lo;
        fit.ratio_max = hi;
        fit.points = pts.len();
        fits.push(fit);
    }
    Ok(EnvelopeReport {
        lemma: LemmaKernel::INu,
        n,
        nu,
        fits,
        ratio_min,
        ratio_max,
        skipped,
    })
}

/// Ratio + slope verification for the smooth-kernel spherical integral on a
/// `side`×`side` log grid per regime.
pub fn verify_envelope_j(n: u32, nu: f64, side: usize) -> Result<EnvelopeReport, ProbeError> {
    let log_grid = |lo: f64, hi: f64, count: usize| -> Vec<f64> {
        (0..count)
            .map(|i| 10f64.powf(lo.log10() + (hi / lo).log10() * i as f64 / (count - 1) as f64))
            .collect()
    };
    let mut fits = Vec::new();
    let mut all_ratios = Vec::new();
    let mut skipped = 0usize;

    let mut eval_block = |pairs: &[(f64, f64)]| -> Vec<(f64, f64, f64, f64)> {
        let out: Vec<Option<(f64, f64, f64, f64)>> = pairs
            .par_iter()
            .map(|&(x, rho)| {
                let q = j_nu_quadrature(n, nu, x, rho, QUAD_TOL).ok()?;
                let e = j_nu_envelope(n, nu, x, rho);
                Some((x, rho, q, e))
            })
            .collect();
        let mut kept = Vec::new();
        for o in out {
            match o {
                Some(v) => kept.push(v),
                None => skipped += 1,
            }
        }
        kept
    };

    // region with the ⟨x⟩ power: ρ ≤ 1, x free
    let mut pairs = Vec::new();
    for &rho in &log_grid(1e-2, 1.0, side) {
        for &x in &log_grid(1e-2, 1e2, side) {
            pairs.push((x, rho));
        }
    }
    let block = eval_block(&pairs);
    all_ratios.extend(block.iter().map(|(_, _, q, e)| q / e));
    let row: Vec<(f64, f64)> = block
        .iter()
        .filter(|(x, rho, _, _)| (*rho - 0.5).abs() < 0.3 && *x >= 2.0)
        .map(|(x, _, q, _)| (bracket(*x), *q))
        .collect();
    let row_ratio: Vec<(f64, f64)> = block
        .iter()
        .filter(|(x, rho, _, _)| (*rho - 0.5).abs() < 0.3 && *x >= 2.0)
        .map(|(x, _, q, e)| (bracket(*x), q / e))
        .collect();
    fits.push(regime_fit("bracket_x", &row, &row_ratio, Some(-nu)));

    // region with the ⟨ρ⟩ power: x ≤ 1, ρ free
    let mut pairs = Vec::new();
    for &x in &log_grid(1e-2, 1.0, side) {
        for &rho in &log_grid(1e-2, 1e2, side) {
            pairs.push((x, rho));
        }
    }
    let block = eval_block(&pairs);
    all_ratios.extend(block.iter().map(|(_, _, q, e)| q / e));
    let row: Vec<(f64, f64)> = block
        .iter()
        .filter(|(x, rho, _, _)| (*x - 0.5).abs() < 0.3 && *rho >= 2.0)
        .map(|(_, rho, q, _)| (bracket(*rho), *q))
        .collect();
    let row_ratio: Vec<(f64, f64)> = block
        .iter()
        .filter(|(x, rho, _, _)| (*x - 0.5).abs() < 0.3 && *rho >= 2.0)
        .map(|(_, rho, q, e)| (bracket(*rho), q / e))
        .collect();
    fits.push(regime_fit("bracket_rho", &row, &row_ratio, Some(-nu)));

    // comparable region: ρ, |x| ≥ 1 with 1/2 ≤ |x|/ρ ≤ 2
    let mut pairs = Vec::new();
    for &rho in &log_grid(2.0, 100.0, side) {
        for &t in &log_grid(0.55, 1.9, side) {
            pairs.push((t * rho, rho));
        }
    }
    let block = eval_block(&pairs);
    all_ratios.extend(block.iter().map(|(_, _, q, e)| q / e));
    let (lo, hi) = stats(&block.iter().map(|(_, _, q, e)| q / e).collect::<Vec<_>>());

    let critical = (n - 1) as f64;
    if nu > critical {
        // offset decay at fixed large ρ: ⟨|x|−ρ⟩^{n−1−ν}; offsets start
        // past the O(1) transition scale and keep d/ρ small, since the
        // local slope carries an O(d/ρ) drift absorbed by the two-sided
        // constants but not by a power fit
        let rho0 = 1000.0;
        let offsets = log_grid(2.0, rho0 / 30.0, side);
        let pts: Vec<(f64, f64)> = offsets
            .par_iter()
            .filter_map(|&d| {
                let q = j_nu_quadrature(n, nu, rho0 + d, rho0, QUAD_TOL).ok()?;
                Some((bracket(d), q))
            })
            .collect();
        fits.push(regime_fit("diagonal_offset", &pts, &[], Some(critical - nu)));
        // diagonal decay at fixed offset: ⟨ρ⟩^{1−n}, fitted where the
        // asymptotics has set in
        let rhos = log_grid(10.0, 300.0, side);
        let pts: Vec<(f64, f64)> = rhos
            .par_iter()
            .filter_map(|&rho| {
                let q = j_nu_quadrature(n, nu, rho + 1.0, rho, QUAD_TOL).ok()?;
                Some((bracket(rho), q))
            })
            .collect();
        let mut fit = regime_fit("diagonal_decay", &pts, &[], Some(1.0 - n as f64));
        fit.ratio_min = lo;
        fit.ratio_max = hi;
        fit.points = block.len();
        fits.push(fit);
    } else {
        // sub-critical and log cases: ⟨ρ⟩^{−ν} along the exact diagonal
        let rhos = log_grid(2.0, 100.0, side);
        let raw: Vec<(f64, f64)> = rhos
            .par_iter()
            .filter_map(|&rho| {
                let q = j_nu_quadrature(n, nu, rho, rho, QUAD_TOL).ok()?;
                Some((bracket(rho), q))
            })
            .collect();
        let ratio: Vec<(f64, f64)> = rhos
            .par_iter()
            .filter_map(|&rho| {
                let q = j_nu_quadrature(n, nu, rho, rho, QUAD_TOL).ok()?;
                Some((bracket(rho), q / j_nu_envelope(n, nu, rho, rho)))
            })
            .collect();
        let expected = if nu < critical { Some(-nu) } else { None };
        let mut fit = regime_fit("diagonal", &raw, &ratio, expected);
        fit.ratio_min = fit.ratio_min.min(lo);
        fit.ratio_max = fit.ratio_max.max(hi);
        fits.push(fit);
    }

    let (ratio_min, ratio_max) = stats(&all_ratios);
    Ok(EnvelopeReport {
        lemma: LemmaKernel::JNu,
        n,
        nu,
        fits,
        ratio_min,
        ratio_max,
        skipped,
    })
}

fn regime_fit(
    name: &str,
    raw: &[(f64, f64)],
    ratio: &[(f64, f64)],
    expected_slope: Option<f64>,
) -> RegimeFit {
    let ratios: Vec<f64> = ratio.iter().map(|(_, r)| *r).collect();
    let (ratio_min, ratio_max) = if ratios.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        stats(&ratios)
    };
    RegimeFit {
        regime: name.to_string(),
        points: raw.len().max(ratio.len()),
        ratio_min,
        ratio_max,
        raw_slope: (raw.len() >= 5).then(|| fit_loglog(raw)),
        expected_slope,
        ratio_slope: (ratio.len() >= 5).then(|| fit_loglog(ratio)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_far_field_slope_matches_the_power() {
        let report = verify_envelope_i(3, 1.0, 60).unwrap();
        let far = report.fit("far");
        let slope = far.raw_slope.unwrap();
        assert!((slope - (-1.0)).abs() < 0.05, "{slope}");
        assert!(far.ratio_slope.unwrap().abs() < 0.05);
        assert!(report.ratio_max / report.ratio_min < 1e3);
    }

    #[test]
    fn i_annulus_slope_supercritical() {
        let report = verify_envelope_i(3, 3.0, 60).unwrap();
        for side in ["annulus_above", "annulus_below"] {
            let fit = report.fit(side);
            let slope = fit.raw_slope.unwrap();
            assert!((slope - (-1.0)).abs() < 0.05, "{side}: {slope}");
        }
        // reflection symmetry of the singular exponent across the sphere
        let above = report.fit("annulus_above").raw_slope.unwrap();
        let below = report.fit("annulus_below").raw_slope.unwrap();
        assert!((above - below).abs() < 0.05);
    }

    #[test]
    fn i_log_case_ratio_bounded() {
        let report = verify_envelope_i(2, 1.0, 60).unwrap();
        for side in ["annulus_above", "annulus_below"] {
            let fit = report.fit(side);
            assert!(
                fit.ratio_max / fit.ratio_min < 10.0,
                "{side}: {} .. {}",
                fit.ratio_min,
                fit.ratio_max
            );
        }
    }

    #[test]
    fn j_regimes_fit_their_powers() {
        let report = verify_envelope_j(3, 4.0, 10).unwrap();
        let bx = report.fit("bracket_x");
        assert!((bx.raw_slope.unwrap() + 4.0).abs() < 0.05, "{bx:?}");
        let br = report.fit("bracket_rho");
        assert!((br.raw_slope.unwrap() + 4.0).abs() < 0.05, "{br:?}");
        let off = report.fit("diagonal_offset");
        assert!((off.raw_slope.unwrap() + 2.0).abs() < 0.05, "{off:?}");
        let diag = report.fit("diagonal_decay");
        assert!((diag.raw_slope.unwrap() + 2.0).abs() < 0.05, "{diag:?}");
        assert!(report.ratio_max / report.ratio_min < 1e3);
    }
}
