//! Inequality specifications tying an index tuple to the norms appearing on
//! each side of the estimate.

use serde::{Deserialize, Serialize};

use crate::exponents::{
    check_ckn, check_ckn_classical, check_mixed_stein_weiss, check_nonhomogeneous,
    check_weighted_sobolev, parse_rational, rational_to_f64, CknIndices, MixedIndices, MixedMode,
    Rational, RecipExponent, Verdict,
};

use super::ProbeError;

/// Norm descriptors (reciprocal exponents plus a radial weight power) for
/// one side of an inequality; derived from the indices so they always match
/// the statement.
#[derive(Debug, Clone, PartialEq)]
pub struct NormDescriptor {
    pub recip_outer: f64,
    pub recip_inner: f64,
    pub weight_power: f64,
}

/// The inequality a probe measures: kernel estimates in mixed norms, the
/// smooth-kernel variant, the Sobolev form (via the kernel substitution
/// u = T_{n−σ}φ), or the two-factor interpolation inequality.
#[derive(Debug, Clone)]
pub enum InequalitySpec {
    /// ‖|x|^{−β} T_γ φ‖_{q,q̃} ≤ C ‖|x|^{α} φ‖_{p,p̃}
    MixedSteinWeiss { idx: MixedIndices },
    /// ‖|x|^{−β} S_γ φ‖_{q,q̃} ≤ C ‖|x|^{α} φ‖_{p,p̃}
    Nonhomogeneous { idx: MixedIndices },
    /// ‖|x|^{−β} u‖_{q,q̃} ≤ C ‖|x|^{α} φ‖_{p,p̃} with u = T_{n−σ}φ
    WeightedSobolev { idx: MixedIndices, sigma: Rational },
    /// ‖|x|^{−γ} u‖_{r,r̃} ≤ C ‖|x|^{−α} φ‖^a_{p,p̃} ‖|x|^{−β} u‖^{1−a}_{q,q̃}
    Ckn { idx: CknIndices, classical: bool },
}

impl InequalitySpec {
    pub fn dimension(&self) -> u32 {
        match self {
            InequalitySpec::MixedSteinWeiss { idx } => idx.n,
            InequalitySpec::Nonhomogeneous { idx } => idx.n,
            InequalitySpec::WeightedSobolev { idx, .. } => idx.n,
            InequalitySpec::Ckn { idx, .. } => idx.n,
        }
    }

    /// Kernel power of the potential the probe applies to φ.
    pub fn kernel_power(&self) -> f64 {
        match self {
            InequalitySpec::MixedSteinWeiss { idx } | InequalitySpec::Nonhomogeneous { idx } => {
                rational_to_f64(&idx.gamma)
            }
            InequalitySpec::WeightedSobolev { idx, sigma } => {
                idx.n as f64 - rational_to_f64(sigma)
            }
            InequalitySpec::Ckn { idx, .. } => idx.n as f64 - rational_to_f64(&idx.sigma),
        }
    }

    pub fn lhs(&self) -> NormDescriptor {
        match self {
            InequalitySpec::MixedSteinWeiss { idx }
            | InequalitySpec::Nonhomogeneous { idx }
            | InequalitySpec::WeightedSobolev { idx, .. } => NormDescriptor {
                recip_outer: idx.q.recip_f64(),
                recip_inner: idx.qtilde.recip_f64(),
                weight_power: -rational_to_f64(&idx.beta),
            },
            InequalitySpec::Ckn { idx, .. } => NormDescriptor {
                recip_outer: rational_to_f64(&idx.recip_r),
                recip_inner: rational_to_f64(&idx.recip_rtilde),
                weight_power: -rational_to_f64(&idx.gamma),
            },
        }
    }

    /// Right-hand norm applied to φ itself.
    pub fn rhs(&self) -> NormDescriptor {
        match self {
            InequalitySpec::MixedSteinWeiss { idx }
            | InequalitySpec::Nonhomogeneous { idx }
            | InequalitySpec::WeightedSobolev { idx, .. } => NormDescriptor {
                recip_outer: idx.p.recip_f64(),
                recip_inner: idx.ptilde.recip_f64(),
                weight_power: rational_to_f64(&idx.alpha),
            },
            InequalitySpec::Ckn { idx, .. } => NormDescriptor {
                recip_outer: idx.p.recip_f64(),
                recip_inner: idx.ptilde.recip_f64(),
                weight_power: -rational_to_f64(&idx.alpha),
            },
        }
    }

    /// Second right-hand factor (applied to u) and the interpolation weight
    /// a; only the interpolation inequality has one.
    pub fn rhs_second(&self) -> Option<(NormDescriptor, f64)> {
        match self {
            InequalitySpec::Ckn { idx, .. } => Some((
                NormDescriptor {
                    recip_outer: idx.q.recip_f64(),
                    recip_inner: idx.qtilde.recip_f64(),
                    weight_power: -rational_to_f64(&idx.beta),
                },
                rational_to_f64(&idx.a),
            )),
            _ => None,
        }
    }

    /// The exact checker verdict this probe should agree with.
    pub fn checker_verdict(&self) -> Result<Verdict, ProbeError> {
        match self {
            InequalitySpec::MixedSteinWeiss { idx } => {
                Ok(check_mixed_stein_weiss(idx, MixedMode::General))
            }
            InequalitySpec::Nonhomogeneous { idx } => {
                Ok(check_nonhomogeneous(idx, &idx.gamma.clone()))
            }
            InequalitySpec::WeightedSobolev { idx, sigma } => Ok(check_weighted_sobolev(idx, sigma)
                .map_err(|e| ProbeError::Spec(e.to_string()))?
                .verdict),
            InequalitySpec::Ckn { idx, classical } => {
                let verdict = if *classical {
                    check_ckn_classical(idx).map_err(|e| ProbeError::Spec(e.to_string()))?
                } else {
                    check_ckn(idx, false).map_err(|e| ProbeError::Spec(e.to_string()))?
                };
                Ok(verdict)
            }
        }
    }
}

/// Wire form of an inequality spec: all rationals as strings, exponents in
/// reciprocal form.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InequalitySpecFile {
    MixedSteinWeiss {
        n: u32,
        recip_p: String,
        recip_q: String,
        recip_ptilde: String,
        recip_qtilde: String,
        alpha: String,
        beta: String,
        gamma: String,
    },
    Nonhomogeneous {
        n: u32,
        recip_p: String,
        recip_q: String,
        recip_ptilde: String,
        recip_qtilde: String,
        alpha: String,
        beta: String,
        gamma: String,
    },
    WeightedSobolev {
        n: u32,
        recip_p: String,
        recip_q: String,
        recip_ptilde: String,
        recip_qtilde: String,
        alpha: String,
        beta: String,
        sigma: String,
    },
    Ckn {
        n: u32,
        a: String,
        sigma: String,
        recip_p: String,
        recip_ptilde: String,
        recip_q: String,
        recip_qtilde: String,
        recip_r: String,
        recip_rtilde: String,
        alpha: String,
        beta: String,
        gamma: String,
        classical: bool,
    },
}

impl InequalitySpecFile {
    pub fn build(&self) -> Result<InequalitySpec, ProbeError> {
        let err = |e: &dyn std::fmt::Display| ProbeError::Spec(e.to_string());
        let rat = |s: &str| parse_rational(s).map_err(|e| err(&e));
        let recip =
            |s: &str| -> Result<RecipExponent, ProbeError> {
                RecipExponent::from_recip(parse_rational(s).map_err(|e| err(&e))?)
                    .map_err(|e| err(&e))
            };
        match self {
            InequalitySpecFile::MixedSteinWeiss {
                n,
                recip_p,
                recip_q,
                recip_ptilde,
                recip_qtilde,
                alpha,
                beta,
                gamma,
            }
            | InequalitySpecFile::Nonhomogeneous {
                n,
                recip_p,
                recip_q,
                recip_ptilde,
                recip_qtilde,
                alpha,
                beta,
                gamma,
            } => {
                let idx = MixedIndices {
                    n: *n,
                    p: recip(recip_p)?,
                    q: recip(recip_q)?,
                    ptilde: recip(recip_ptilde)?,
                    qtilde: recip(recip_qtilde)?,
                    alpha: rat(alpha)?,
                    beta: rat(beta)?,
                    gamma: rat(gamma)?,
                }
                .validated()
                .map_err(|e| err(&e))?;
                if matches!(self, InequalitySpecFile::MixedSteinWeiss { .. }) {
                    Ok(InequalitySpec::MixedSteinWeiss { idx })
                } else {
                    Ok(InequalitySpec::Nonhomogeneous { idx })
                }
            }
            InequalitySpecFile::WeightedSobolev {
                n,
                recip_p,
                recip_q,
                recip_ptilde,
                recip_qtilde,
                alpha,
                beta,
                sigma,
            } => {
                let sigma = rat(sigma)?;
                let n_rat = Rational::from_integer((*n).into());
                let gamma = n_rat - &sigma;
                let idx = MixedIndices {
                    n: *n,
                    p: recip(recip_p)?,
                    q: recip(recip_q)?,
                    ptilde: recip(recip_ptilde)?,
                    qtilde: recip(recip_qtilde)?,
                    alpha: rat(alpha)?,
                    beta: rat(beta)?,
                    gamma,
                }
                .validated()
                .map_err(|e| err(&e))?;
                Ok(InequalitySpec::WeightedSobolev { idx, sigma })
            }
            InequalitySpecFile::Ckn {
                n,
                a,
                sigma,
                recip_p,
                recip_ptilde,
                recip_q,
                recip_qtilde,
                recip_r,
                recip_rtilde,
                alpha,
                beta,
                gamma,
                classical,
            } => {
                let idx = CknIndices {
                    n: *n,
                    a: rat(a)?,
                    sigma: rat(sigma)?,
                    p: recip(recip_p)?,
                    ptilde: recip(recip_ptilde)?,
                    q: recip(recip_q)?,
                    qtilde: recip(recip_qtilde)?,
                    recip_r: rat(recip_r)?,
                    recip_rtilde: rat(recip_rtilde)?,
                    alpha: rat(alpha)?,
                    beta: rat(beta)?,
                    gamma: rat(gamma)?,
                }
                .validated()
                .map_err(|e| err(&e))?;
                Ok(InequalitySpec::Ckn {
                    idx,
                    classical: *classical,
                })
            }
        }
    }
}
