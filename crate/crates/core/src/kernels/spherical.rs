//! The spherical singular integrals I_ν and J_ν: sharp closed-form
//! envelopes, adaptive quadrature oracles, and the exact n=3 formula.
//!
//! I_ν(x) = ∫_{S^{n−1}} |x−y|^{−ν} dS(y) depends only on r = |x|; its sharp
//! behavior is ⟨x⟩^{−ν} in the far field and, on the annulus around the
//! sphere, 1 / (|log||x|−1|| + 1) / ||x|−1|^{n−1−ν} according to ν ≶ n−1.
//! J_ν(x,ρ) = ∫_{S^{n−1}} ⟨x−ρθ⟩^{−ν} dS(θ) is its non-homogeneous cousin.

use std::f64::consts::PI;

use super::quad1d::adaptive_integrate;
use super::KernelError;

/// ⟨x⟩ = (1+|x|²)^{1/2}.
pub fn bracket(x: f64) -> f64 {
    x.hypot(1.0)
}

/// Surface measure of the unit sphere S^m ⊂ ℝ^{m+1}.
pub fn unit_sphere_measure(m: u32) -> f64 {
    // |S^m| = 2 π^{(m+1)/2} / Γ((m+1)/2), Γ evaluated by recursion from
    // Γ(1/2)=√π or Γ(1)=1.
    let half_arg = (m + 1) as f64 / 2.0;
    let mut gamma = if (m + 1) % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut t = if (m + 1) % 2 == 0 { 1.0 } else { 0.5 };
    while t + 1.0 <= half_arg + 1e-9 {
        gamma *= t;
        t += 1.0;
    }
    2.0 * PI.powf(half_arg) / gamma
}

/// Envelope regimes of I_ν per the sharp estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IRegime {
    /// |x| ≥ 2: ⟨x⟩^{−ν}.
    Far,
    /// |x| ≤ 2, ν < n−1: constant.
    AnnulusSub,
    /// |x| ≤ 2, ν = n−1: |log||x|−1|| + 1.
    AnnulusLog,
    /// |x| ≤ 2, ν > n−1: ||x|−1|^{n−1−ν}.
    AnnulusSuper,
}

/// Regime classification; the far branch takes precedence on overlap.
pub fn i_nu_regime(n: u32, nu: f64, x_norm: f64) -> IRegime {
    if x_norm >= 2.0 {
        IRegime::Far
    } else if nu < (n - 1) as f64 {
        IRegime::AnnulusSub
    } else if nu == (n - 1) as f64 {
        IRegime::AnnulusLog
    } else {
        IRegime::AnnulusSuper
    }
}

/// Piecewise closed-form model of I_ν, sharp up to two-sided constants.
pub fn i_nu_envelope(n: u32, nu: f64, x_norm: f64) -> Result<f64, KernelError> {
    assert!(n >= 2, "spherical integrals need n >= 2");
    assert!(nu > 0.0 && x_norm >= 0.0);
    match i_nu_regime(n, nu, x_norm) {
        IRegime::Far => Ok(bracket(x_norm).powf(-nu)),
        IRegime::AnnulusSub => Ok(1.0),
        IRegime::AnnulusLog => {
            if x_norm == 1.0 {
                return Err(KernelError::SingularLocation { x_norm, nu });
            }
            Ok((x_norm - 1.0).abs().ln().abs() + 1.0)
        }
        IRegime::AnnulusSuper => {
            if x_norm == 1.0 {
                return Err(KernelError::SingularLocation { x_norm, nu });
            }
            Ok((x_norm - 1.0).abs().powf((n - 1) as f64 - nu))
        }
    }
}

/// Polar reduction constant: I_ν(r) = c_n ∫_0^π σ^{−ν} (sin θ)^{n−2} dθ.
fn polar_constant(n: u32) -> f64 {
    if n == 2 {
        2.0
    } else {
        unit_sphere_measure(n - 2)
    }
}

/// Adaptive-quadrature evaluation of I_ν(x) for |x| = `x_norm`, to relative
/// tolerance `tol`. Signals divergence at |x| = 1 when ν ≥ n−1.
pub fn i_nu_quadrature(n: u32, nu: f64, x_norm: f64, tol: f64) -> Result<f64, KernelError> {
    i_nu_quadrature_budget(n, nu, x_norm, tol, 200_000)
}

/// As [`i_nu_quadrature`] with an explicit node budget.
pub fn i_nu_quadrature_budget(
    n: u32,
    nu: f64,
    x_norm: f64,
    tol: f64,
    budget: usize,
) -> Result<f64, KernelError> {
    assert!(n >= 2, "spherical integrals need n >= 2");
    assert!(x_norm >= 0.0);
    if x_norm == 1.0 && nu >= (n - 1) as f64 {
        return Err(KernelError::Divergent { x_norm, nu });
    }
    let r = x_norm;
    let power = (n - 2) as f64;
    // σ² = (r−1)² + 4r sin²(θ/2) avoids cancellation for r near 1.
    let integrand = move |theta: f64| {
        let s = (theta * 0.5).sin();
        let sigma_sq = (r - 1.0) * (r - 1.0) + 4.0 * r * s * s;
        let kernel = sigma_sq.powf(-0.5 * nu);
        if power == 0.0 {
            kernel
        } else {
            kernel * theta.sin().max(0.0).powf(power)
        }
    };
    let out = adaptive_integrate(&integrand, 0.0, PI, tol, budget)?;
    Ok(polar_constant(n) * out.value)
}

/// Exact n=3 value (2π/(r(2−ν)))·((r+1)^{2−ν} − |r−1|^{2−ν}), with the log
/// form (2π/r)·ln((r+1)/|r−1|) at ν = 2. Independent oracle for the n=3
/// quadrature.
pub fn i_nu_closed_form_n3(nu: f64, r: f64) -> Result<f64, KernelError> {
    assert!(r >= 0.0);
    if r == 0.0 {
        // continuous limit: the kernel is 1 on the whole sphere
        return Ok(4.0 * PI);
    }
    if r == 1.0 && nu >= 2.0 {
        return Err(KernelError::Divergent { x_norm: r, nu });
    }
    if nu == 2.0 {
        Ok(2.0 * PI * ((r + 1.0) / (r - 1.0).abs()).ln() / r)
    } else {
        let e = 2.0 - nu;
        Ok(2.0 * PI / (r * e) * ((r + 1.0).powf(e) - (r - 1.0).abs().powf(e)))
    }
}

/// Envelope regimes of J_ν; the region tests are applied in the stated
/// order, so the ⟨x⟩ branch wins on overlaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JRegime {
    /// ρ ≤ 1 or |x| ≥ 2ρ: ⟨x⟩^{−ν}.
    BracketX,
    /// |x| ≤ 1 or ρ ≥ 2|x|: ⟨ρ⟩^{−ν}.
    BracketRho,
    /// comparable region, ν < n−1: ⟨ρ⟩^{−ν}.
    DiagonalSub,
    /// comparable region, ν = n−1: ⟨ρ⟩^{−ν} log(2⟨ρ⟩/⟨|x|−ρ⟩).
    DiagonalLog,
    /// comparable region, ν > n−1: ⟨ρ⟩^{1−n} ⟨|x|−ρ⟩^{n−1−ν}.
    DiagonalSuper,
}

pub fn j_nu_regime(n: u32, nu: f64, x_norm: f64, rho: f64) -> JRegime {
    if rho <= 1.0 || x_norm >= 2.0 * rho {
        JRegime::BracketX
    } else if x_norm <= 1.0 || rho >= 2.0 * x_norm {
        JRegime::BracketRho
    } else if nu < (n - 1) as f64 {
        JRegime::DiagonalSub
    } else if nu == (n - 1) as f64 {
        JRegime::DiagonalLog
    } else {
        JRegime::DiagonalSuper
    }
}

/// Piecewise closed-form model of J_ν, sharp up to two-sided constants.
pub fn j_nu_envelope(n: u32, nu: f64, x_norm: f64, rho: f64) -> f64 {
    assert!(n >= 2 && nu > 0.0 && x_norm >= 0.0 && rho >= 0.0);
    match j_nu_regime(n, nu, x_norm, rho) {
        JRegime::BracketX => bracket(x_norm).powf(-nu),
        JRegime::BracketRho | JRegime::DiagonalSub => bracket(rho).powf(-nu),
        JRegime::DiagonalLog => {
            bracket(rho).powf(-nu) * (2.0 * bracket(rho) / bracket(x_norm - rho)).ln()
        }
        JRegime::DiagonalSuper => {
            bracket(rho).powf(1.0 - n as f64) * bracket(x_norm - rho).powf((n - 1) as f64 - nu)
        }
    }
}

/// Adaptive-quadrature evaluation of J_ν(x, ρ); the integrand is bounded so
/// only the budget can fail.
pub fn j_nu_quadrature(n: u32, nu: f64, x_norm: f64, rho: f64, tol: f64) -> Result<f64, KernelError> {
    assert!(n >= 2 && x_norm >= 0.0 && rho >= 0.0);
    let power = (n - 2) as f64;
    let integrand = move |theta: f64| {
        let s = (theta * 0.5).sin();
        let d_sq = (x_norm - rho) * (x_norm - rho) + 4.0 * x_norm * rho * s * s;
        let kernel = (1.0 + d_sq).powf(-0.5 * nu);
        if power == 0.0 {
            kernel
        } else {
            kernel * theta.sin().max(0.0).powf(power)
        }
    };
    let out = adaptive_integrate(&integrand, 0.0, PI, tol, 200_000)?;
    Ok(polar_constant(n) * out.value)
}
