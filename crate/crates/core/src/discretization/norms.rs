//! Mixed radial-angular norm evaluation ‖ |x|^w f ‖_{L^p_{|x|} L^{p̃}_θ}.

use crate::exponents::RecipExponent;

use super::grid_function::GridFunction;
use super::DiscretizationError;

/// Inner angular L^{p̃} norm of one ring; `measure_scale` multiplies the
/// angular weights (1 for the sphere measure, 1/|S^{n−1}| for the
/// normalized probability measure). p̃ = ∞ is the exact max over nodes.
/// Values are normalized by the ring peak before powering so that large
/// dynamic ranges stay inside f64.
fn ring_norm(f: &GridFunction, radial: usize, ptilde: &RecipExponent, measure_scale: f64) -> f64 {
    ring_norm_recip(f, radial, ptilde.recip_f64(), measure_scale)
}

fn ring_norm_recip(f: &GridFunction, radial: usize, recip: f64, measure_scale: f64) -> f64 {
    let ring = f.ring(radial);
    if recip == 0.0 {
        return ring.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    }
    let power = 1.0 / recip;
    let peak = ring.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return 0.0;
    }
    let sum: f64 = ring
        .iter()
        .zip(&f.angular.weights)
        .map(|(v, w)| measure_scale * w * (v.abs() / peak).powf(power))
        .sum();
    peak * sum.powf(recip)
}

fn outer_norm(f: &GridFunction, p: &RecipExponent, weight_power: f64, inner: &[f64]) -> f64 {
    outer_norm_recip(f, p.recip_f64(), weight_power, inner)
}

/// The radial reduction runs in log domain: 0 < r < 1 quasi-norms against
/// steep power weights produce weighted values like ρ^{-150} whose peaks
/// overflow f64 even though the final norm is representable.
fn outer_norm_recip(f: &GridFunction, recip: f64, weight_power: f64, inner: &[f64]) -> f64 {
    let log_weighted = |i: usize| {
        if inner[i] == 0.0 {
            f64::NEG_INFINITY
        } else {
            weight_power * f.grid.nodes[i].ln() + inner[i].ln()
        }
    };
    let peak_log = (0..f.grid.len()).fold(f64::NEG_INFINITY, |m, i| m.max(log_weighted(i)));
    if peak_log == f64::NEG_INFINITY {
        return 0.0;
    }
    if recip == 0.0 {
        return peak_log.exp();
    }
    let power = 1.0 / recip;
    let sum: f64 = (0..f.grid.len())
        .map(|i| f.grid.volume_weight(i) * ((log_weighted(i) - peak_log) * power).exp())
        .sum();
    (peak_log + recip * sum.ln()).exp()
}

/// ‖ |x|^{weight_power} f ‖ with inner exponent p̃ over the sphere and outer
/// exponent p against ρ^{n−1}dρ; either exponent may be ∞ (exact max).
pub fn mixed_norm(
    f: &GridFunction,
    p: &RecipExponent,
    ptilde: &RecipExponent,
    weight_power: f64,
) -> f64 {
    let inner: Vec<f64> = (0..f.grid.len())
        .map(|i| ring_norm(f, i, ptilde, 1.0))
        .collect();
    outer_norm(f, p, weight_power, &inner)
}

/// Mixed (quasi-)norm with the exponents given as plain reciprocals ≥ 0;
/// reciprocal 0 means the sup and reciprocals above 1 give the exponents
/// below 1 admitted by the interpolation inequalities.
pub fn mixed_norm_recip(
    f: &GridFunction,
    recip_p: f64,
    recip_ptilde: f64,
    weight_power: f64,
) -> f64 {
    assert!(recip_p >= 0.0 && recip_ptilde >= 0.0);
    let inner: Vec<f64> = (0..f.grid.len())
        .map(|i| ring_norm_recip(f, i, recip_ptilde, 1.0))
        .collect();
    outer_norm_recip(f, recip_p, weight_power, &inner)
}

/// Same norm with the inner integral taken against the normalized measure
/// dS/|S^{n−1}|, under which the inner norm is non-decreasing in p̃.
pub fn mixed_norm_normalized(
    f: &GridFunction,
    p: &RecipExponent,
    ptilde: &RecipExponent,
    weight_power: f64,
) -> f64 {
    let scale = 1.0 / f.angular.sphere_measure();
    let inner: Vec<f64> = (0..f.grid.len())
        .map(|i| ring_norm(f, i, ptilde, scale))
        .collect();
    outer_norm(f, p, weight_power, &inner)
}

/// Whether the normalized mixed norm is monotone from p̃₁ to p̃₂ ≥ p̃₁ on
/// this sample (tiny relative slack absorbs rounding).
pub fn monotonicity_check(
    f: &GridFunction,
    p: &RecipExponent,
    ptilde1: &RecipExponent,
    ptilde2: &RecipExponent,
) -> Result<bool, DiscretizationError> {
    if ptilde1.recip() < ptilde2.recip() {
        return Err(DiscretizationError::OrderViolation);
    }
    let lo = mixed_norm_normalized(f, p, ptilde1, 0.0);
    let hi = mixed_norm_normalized(f, p, ptilde2, 0.0);
    Ok(lo <= hi * (1.0 + 1e-10) + f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::{make_angular_quadrature, GridFunction, RadialGrid};
    use crate::exponents::rat;
    use std::f64::consts::PI;

    fn exp(n: i64, d: i64) -> RecipExponent {
        RecipExponent::from_exponent(rat(n, d)).unwrap()
    }

    fn unit_ball_2d() -> GridFunction {
        let grid = RadialGrid::with_breakpoints(2, 1e-4, 1e2, 128, &[1.0]).unwrap();
        let angular = make_angular_quadrature(2, 16).unwrap();
        GridFunction::from_fn(grid, angular, |rho, _| if rho <= 1.0 { 1.0 } else { 0.0 }).unwrap()
    }

    #[test]
    fn unit_ball_l2_norm() {
        let f = unit_ball_2d();
        let norm = mixed_norm(&f, &exp(2, 1), &exp(2, 1), 0.0);
        assert!(
            (norm / PI.sqrt() - 1.0).abs() < 1e-4,
            "{norm} vs {}",
            PI.sqrt()
        );
    }

    #[test]
    fn shell_profile_l2_norm_n3() {
        // f = |x|^{-1} on 1 ≤ |x| ≤ 2 in n=3: ‖f‖_2 = √(4π).
        let grid = RadialGrid::with_breakpoints(3, 1e-2, 1e2, 128, &[1.0, 2.0]).unwrap();
        let angular = make_angular_quadrature(3, 12).unwrap();
        let f = GridFunction::from_fn(grid, angular, |rho, _| {
            if (1.0..=2.0).contains(&rho) {
                1.0 / rho
            } else {
                0.0
            }
        })
        .unwrap();
        let norm = mixed_norm(&f, &exp(2, 1), &exp(2, 1), 0.0);
        let exact = (4.0 * PI).sqrt();
        assert!((norm / exact - 1.0).abs() < 1e-4, "{norm} vs {exact}");
    }

    #[test]
    fn radial_functions_ignore_the_angular_exponent() {
        let f = unit_ball_2d();
        let base = mixed_norm_normalized(&f, &exp(2, 1), &exp(2, 1), 0.0);
        for pt in [
            RecipExponent::one(),
            exp(3, 1),
            exp(7, 2),
            RecipExponent::infinity(),
        ] {
            let v = mixed_norm_normalized(&f, &exp(2, 1), &pt, 0.0);
            assert!((v / base - 1.0).abs() < 1e-10, "{v} vs {base}");
        }
    }

    #[test]
    fn homogeneity() {
        let f = unit_ball_2d();
        let g = f.scaled(-3.5);
        for (p, pt) in [
            (exp(2, 1), exp(2, 1)),
            (exp(4, 3), RecipExponent::infinity()),
            (RecipExponent::infinity(), exp(3, 1)),
        ] {
            let a = mixed_norm(&g, &p, &pt, 0.25);
            let b = 3.5 * mixed_norm(&f, &p, &pt, 0.25);
            assert!((a / b - 1.0).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn normalized_norms_are_monotone_in_ptilde() {
        let grid = RadialGrid::with_breakpoints(2, 1e-2, 10.0, 64, &[1.0]).unwrap();
        let angular = make_angular_quadrature(2, 64).unwrap();
        // angular bump over a radial shell
        let f = GridFunction::from_fn(grid, angular, |rho, t| {
            if rho <= 1.0 {
                (1.0 + 10.0 * (1.0 - t[0])).powi(-2)
            } else {
                0.0
            }
        })
        .unwrap();
        assert!(monotonicity_check(&f, &exp(2, 1), &RecipExponent::one(), &exp(2, 1)).unwrap());
        assert!(
            monotonicity_check(&f, &exp(2, 1), &exp(2, 1), &RecipExponent::infinity()).unwrap()
        );
        assert!(
            monotonicity_check(&f, &exp(2, 1), &exp(2, 1), &RecipExponent::one()).is_err(),
            "descending exponents must be rejected"
        );
        // strict growth for a concentrated bump between p̃=1 and p̃=∞
        let l1 = mixed_norm_normalized(&f, &exp(2, 1), &RecipExponent::one(), 0.0);
        let linf = mixed_norm_normalized(&f, &exp(2, 1), &RecipExponent::infinity(), 0.0);
        assert!(linf > 2.0 * l1, "l1={l1} linf={linf}");
    }
}
