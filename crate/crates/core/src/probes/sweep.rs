//! Sharpness sweeps: the inequality ratio along a family schedule, with a
//! fitted log-log slope and a boundedness verdict compared against the
//! exact checker.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::discretization::GridFunction;
use crate::exponents::Verdict;
use crate::operators::{make_test_function, RadialProfile, TestFamily};

use super::ratio::{estimate_ratio_full, ProbeResolution};
use super::spec::InequalitySpec;
use super::{fit_loglog, ProbeError};
use crate::discretization::{make_angular_quadrature, GridSegment, RadialGrid};

/// Fitted slope magnitude above which a sweep counts as divergent.
pub const DIVERGENCE_SLOPE: f64 = 0.05;
/// Growth factor toward the limit above which a sweep counts as divergent.
pub const DIVERGENCE_GROWTH: f64 = 10.0;
/// Total variation below which a sweep counts as bounded.
pub const BOUNDED_VARIATION: f64 = 2.0;

/// One schedule entry: the sweep parameter value and the test family to
/// evaluate there (the caller owns the coupling between the two). A point
/// may override the sweep resolution, e.g. to scale the angular rule with
/// a shrinking cap width.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub param: f64,
    pub family: TestFamily,
    pub resolution: Option<ProbeResolution>,
}

impl SweepPoint {
    pub fn new(param: f64, family: TestFamily) -> Self {
        SweepPoint {
            param,
            family,
            resolution: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Bounded,
    Divergent,
    Indeterminate,
}

/// Sweep outcome. `growth` is last/first ratio (toward the limit),
/// `variation` is max/min; the classification applies the documented
/// thresholds and `verdict_consistency` compares it with the checker
/// (boundary tuples are exempt and count as consistent).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub params: Vec<f64>,
    pub ratios: Vec<f64>,
    pub slope: f64,
    pub growth: f64,
    pub variation: f64,
    pub classification: Classification,
    pub checker_admissible: bool,
    pub boundary_exempt: bool,
    pub verdict_consistency: bool,
    /// Set when some schedule points had to be skipped (budget exhausted).
    pub partial: bool,
}

/// A tuple sits on a sharp boundary when any inequality condition other
/// than the structural range/order ones has margin exactly zero; such
/// tuples are exempt from probe-checker consistency. Scaling equalities
/// hold at margin zero by definition and do not count.
pub fn boundary_exempt(verdict: &Verdict) -> bool {
    verdict.conditions.iter().any(|c| {
        c.kind != crate::exponents::ConditionKind::Equality
            && c.margin.is_zero()
            && !matches!(
                c.id.as_str(),
                "angular_order" | "range_pq" | "range" | "range_exponents" | "p_gt_one"
            )
    })
}

/// Evaluate the ratio along the schedule and classify. Needs at least five
/// points; points whose evaluation exhausts a budget are skipped and flag
/// the report as partial.
pub fn sharpness_sweep(
    spec: &InequalitySpec,
    points: &[SweepPoint],
    res: &ProbeResolution,
) -> Result<ProbeReport, ProbeError> {
    if points.len() < 5 {
        return Err(ProbeError::Spec(format!(
            "schedule needs at least 5 points, got {}",
            points.len()
        )));
    }
    let mut params = Vec::new();
    let mut ratios = Vec::new();
    let mut partial = false;
    for point in points {
        match probe_point(spec, point, res) {
            Ok(ratio) => {
                params.push(point.param);
                ratios.push(ratio);
            }
            Err(ProbeError::UndefinedRatio) => return Err(ProbeError::UndefinedRatio),
            Err(_) => partial = true,
        }
    }
    if ratios.len() < 2 {
        return Err(ProbeError::Spec("too few evaluable schedule points".into()));
    }
    let pts: Vec<(f64, f64)> = params.iter().copied().zip(ratios.iter().copied()).collect();
    let slope = fit_loglog(&pts);
    let growth = ratios.last().unwrap() / ratios.first().unwrap();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    let variation = hi / lo;
    let classification = if growth >= DIVERGENCE_GROWTH && slope.abs() >= DIVERGENCE_SLOPE {
        Classification::Divergent
    } else if variation < BOUNDED_VARIATION {
        Classification::Bounded
    } else {
        Classification::Indeterminate
    };
    let verdict = spec.checker_verdict()?;
    let exempt = boundary_exempt(&verdict);
    let verdict_consistency = exempt
        || match classification {
            Classification::Bounded => verdict.admissible,
            Classification::Divergent => !verdict.admissible,
            Classification::Indeterminate => false,
        };
    Ok(ProbeReport {
        params,
        ratios,
        slope,
        growth,
        variation,
        classification,
        checker_admissible: verdict.admissible,
        boundary_exempt: exempt,
        verdict_consistency,
        partial,
    })
}

fn probe_point(
    spec: &InequalitySpec,
    point: &SweepPoint,
    res: &ProbeResolution,
) -> Result<f64, ProbeError> {
    let family = &point.family;
    let res = point.resolution.as_ref().unwrap_or(res);
    family
        .validate()
        .map_err(|e| ProbeError::Spec(e.to_string()))?;
    let f = sample_family(spec.dimension(), family, res)?;
    let profile_owner;
    let profile = if family.is_radial() {
        let fam = family.clone();
        profile_owner = RadialProfile::from_fn(family.radial_support(), move |rho| {
            fam.radial_factor(rho)
        });
        Some(&profile_owner)
    } else {
        None
    };
    Ok(estimate_ratio_full(spec, &f, profile, res)?.ratio)
}

/// Source-side sampling of a family: a grid spanning exactly the radial
/// support (truncation exact) at a density giving `support_panels` panels.
pub fn sample_family(
    n: u32,
    family: &TestFamily,
    res: &ProbeResolution,
) -> Result<GridFunction, ProbeError> {
    let (lo, hi) = family.radial_support();
    let span_decades = (hi / lo).log10().max(1e-3);
    let density = (((res.support_panels * 8) as f64 / span_decades).ceil() as usize).max(64);
    let grid = RadialGrid::graded(
        n,
        &[GridSegment {
            lo,
            hi,
            nodes_per_decade: density,
        }],
    )
    .map_err(|e| ProbeError::Operator(e.to_string()))?;
    let angular = make_angular_quadrature(n, if family.is_radial() { 4 } else { res.angular_resolution })
        .map_err(|e| ProbeError::Operator(e.to_string()))?;
    make_test_function(family, grid, angular).map_err(|e| ProbeError::Spec(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::{rat, MixedIndices, RecipExponent};

    fn exp(n: i64, d: i64) -> RecipExponent {
        RecipExponent::from_exponent(rat(n, d)).unwrap()
    }

    fn spec_interior() -> InequalitySpec {
        InequalitySpec::MixedSteinWeiss {
            idx: MixedIndices {
                n: 2,
                p: exp(4, 3),
                q: exp(4, 1),
                ptilde: exp(2, 1),
                qtilde: exp(2, 1),
                alpha: rat(0, 1),
                beta: rat(0, 1),
                gamma: rat(1, 1),
            },
        }
    }

    #[test]
    fn interior_spike_sweep_is_bounded() {
        let spec = spec_interior();
        let points: Vec<SweepPoint> = [1e-1, 10f64.powf(-1.5), 1e-2, 10f64.powf(-2.5), 1e-3]
            .iter()
            .map(|&eps| {
                SweepPoint::new(
                    eps,
                    TestFamily::PowerSpike {
                        s: 0.5,
                        inner: eps,
                        outer: 1.0,
                    },
                )
            })
            .collect();
        let report = sharpness_sweep(&spec, &points, &ProbeResolution::default()).unwrap();
        assert!(report.checker_admissible);
        assert_eq!(report.classification, Classification::Bounded);
        assert!(report.verdict_consistency, "report: {report:?}");
        assert!(!report.partial);
    }

    #[test]
    fn schedules_below_five_points_are_rejected() {
        let spec = spec_interior();
        let points = vec![
            SweepPoint::new(
                0.1,
                TestFamily::PowerSpike {
                    s: 0.0,
                    inner: 0.1,
                    outer: 1.0,
                },
            );
            4
        ];
        assert!(sharpness_sweep(&spec, &points, &ProbeResolution::default()).is_err());
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = ProbeReport {
            params: vec![1.0, 2.0],
            ratios: vec![0.5, 0.6],
            slope: 0.1,
            growth: 1.2,
            variation: 1.2,
            classification: Classification::Indeterminate,
            checker_admissible: true,
            boundary_exempt: false,
            verdict_consistency: false,
            partial: false,
        };
        let text = serde_json::to_string(&report).unwrap();
        let back: ProbeReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back.classification, Classification::Indeterminate);
        assert_eq!(back.ratios, report.ratios);
    }
}
