//! Region scanning: dense verdict grids over two free parameters.

use num_traits::{One, Signed, Zero};

use super::checkers::{
    check_ckn, check_ckn_classical, check_ckn_radial, check_mixed_stein_weiss,
    check_nonhomogeneous, check_radial_stein_weiss, check_stein_weiss, check_strichartz,
    check_weighted_sobolev, MixedMode, StrichartzVariant,
};
use super::indices::{n_rat, CknIndices, MixedIndices, SteinWeissIndices, StrichartzIndices};
use super::recip::{Rational, RecipExponent};
use super::verdict::Verdict;
use super::ExponentError;

/// A checker together with its full input tuple; the scan substitutes the
/// free parameters into a clone of this template.
#[derive(Debug, Clone)]
pub enum CheckTarget {
    SteinWeiss(SteinWeissIndices),
    RadialSteinWeiss(SteinWeissIndices),
    Mixed(MixedIndices, MixedMode),
    Nonhomogeneous(MixedIndices, Rational),
    WeightedSobolev(MixedIndices, Rational),
    Ckn(CknIndices, bool),
    CknClassical(CknIndices),
    CknRadial(CknIndices),
    Strichartz(StrichartzIndices, StrichartzVariant),
}

/// A substitutable field of an index tuple. Reciprocal parameters set the
/// stored value 1/p directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeParam {
    Alpha,
    Beta,
    Gamma,
    Mu,
    Sigma,
    A,
    Delta,
    Epsilon,
    RecipP,
    RecipQ,
    RecipPtilde,
    RecipQtilde,
    RecipR,
    RecipRtilde,
}

impl CheckTarget {
    /// Run the wrapped checker on the current tuple.
    pub fn run(&self) -> Result<Verdict, ExponentError> {
        match self {
            CheckTarget::SteinWeiss(idx) => Ok(check_stein_weiss(idx)),
            CheckTarget::RadialSteinWeiss(idx) => Ok(check_radial_stein_weiss(idx)),
            CheckTarget::Mixed(idx, mode) => Ok(check_mixed_stein_weiss(idx, *mode)),
            CheckTarget::Nonhomogeneous(idx, mu) => Ok(check_nonhomogeneous(idx, mu)),
            CheckTarget::WeightedSobolev(idx, sigma) => {
                check_weighted_sobolev(idx, sigma).map(|r| r.verdict)
            }
            CheckTarget::Ckn(idx, integer_sigma) => check_ckn(idx, *integer_sigma),
            CheckTarget::CknClassical(idx) => check_ckn_classical(idx),
            CheckTarget::CknRadial(idx) => Ok(check_ckn_radial(idx)),
            CheckTarget::Strichartz(idx, variant) => Ok(check_strichartz(idx, *variant)),
        }
    }

    /// Substitute one free parameter. Fails when the parameter does not
    /// exist on this tuple or a reciprocal leaves [0,1].
    pub fn set(&mut self, param: FreeParam, value: &Rational) -> Result<(), ExponentError> {
        let recip = |v: &Rational| RecipExponent::from_recip(v.clone());
        let unsupported = || ExponentError::UnsupportedParameter(format!("{param:?}"));
        match self {
            CheckTarget::SteinWeiss(idx) | CheckTarget::RadialSteinWeiss(idx) => match param {
                FreeParam::Alpha => idx.alpha = value.clone(),
                FreeParam::Beta => idx.beta = value.clone(),
                FreeParam::Gamma => idx.gamma = value.clone(),
                FreeParam::RecipP => idx.p = recip(value)?,
                FreeParam::RecipQ => idx.q = recip(value)?,
                _ => return Err(unsupported()),
            },
            CheckTarget::Mixed(idx, _) => set_mixed(idx, param, value)?,
            CheckTarget::Nonhomogeneous(idx, mu) => match param {
                FreeParam::Mu => *mu = value.clone(),
                _ => set_mixed(idx, param, value)?,
            },
            CheckTarget::WeightedSobolev(idx, sigma) => match param {
                FreeParam::Sigma => *sigma = value.clone(),
                _ => set_mixed(idx, param, value)?,
            },
            CheckTarget::Ckn(idx, _) | CheckTarget::CknRadial(idx) => {
                set_ckn(idx, param, value, false)?
            }
            // The classical checker requires matching angular exponents, so
            // moving p, q or r moves the partner too.
            CheckTarget::CknClassical(idx) => set_ckn(idx, param, value, true)?,
            CheckTarget::Strichartz(idx, _) => match param {
                FreeParam::Delta => idx.delta = value.clone(),
                FreeParam::Epsilon => idx.epsilon = value.clone(),
                FreeParam::RecipP => idx.p = recip(value)?,
                FreeParam::RecipR => idx.r = recip(value)?,
                FreeParam::RecipQ => idx.q = recip(value)?,
                FreeParam::RecipQtilde => idx.qtilde = recip(value)?,
                _ => return Err(unsupported()),
            },
        }
        Ok(())
    }

    /// Solve the family's scaling equality for the designated weight power,
    /// replacing its current value. Only the families with a scaling
    /// equality support this.
    pub fn project_to_scaling(&mut self, solve_for: FreeParam) -> Result<(), ExponentError> {
        let unsupported = || ExponentError::UnsupportedParameter(format!("{solve_for:?}"));
        let first_order = matches!(
            self,
            CheckTarget::CknClassical(_) | CheckTarget::CknRadial(_)
        );
        match self {
            CheckTarget::SteinWeiss(idx) | CheckTarget::RadialSteinWeiss(idx) => {
                let n = n_rat(idx.n);
                let target = &n + &n * idx.q.recip() - &n * idx.p.recip();
                match solve_for {
                    FreeParam::Alpha => idx.alpha = &target - &idx.beta - &idx.gamma,
                    FreeParam::Beta => idx.beta = &target - &idx.alpha - &idx.gamma,
                    FreeParam::Gamma => idx.gamma = &target - &idx.alpha - &idx.beta,
                    _ => return Err(unsupported()),
                }
            }
            CheckTarget::Mixed(idx, _) => {
                let n = n_rat(idx.n);
                let target = &n + &n * idx.q.recip() - &n * idx.p.recip();
                match solve_for {
                    FreeParam::Alpha => idx.alpha = &target - &idx.beta - &idx.gamma,
                    FreeParam::Beta => idx.beta = &target - &idx.alpha - &idx.gamma,
                    FreeParam::Gamma => idx.gamma = &target - &idx.alpha - &idx.beta,
                    _ => return Err(unsupported()),
                }
            }
            CheckTarget::WeightedSobolev(idx, sigma) => {
                let n = n_rat(idx.n);
                let target = &*sigma + &n * idx.q.recip() - &n * idx.p.recip();
                match solve_for {
                    FreeParam::Alpha => idx.alpha = &target - &idx.beta,
                    FreeParam::Beta => idx.beta = &target - &idx.alpha,
                    _ => return Err(unsupported()),
                }
            }
            CheckTarget::Ckn(idx, _)
            | CheckTarget::CknClassical(idx)
            | CheckTarget::CknRadial(idx) => {
                let sigma = if first_order {
                    Rational::one()
                } else {
                    idx.sigma.clone()
                };
                let n = n_rat(idx.n);
                let one_minus_a = Rational::one() - &idx.a;
                let delta = &idx.a * &sigma
                    + &n * (&idx.recip_r
                        - &one_minus_a * idx.q.recip()
                        - &idx.a * idx.p.recip());
                match solve_for {
                    FreeParam::Gamma => {
                        idx.gamma = &delta + &idx.a * &idx.alpha + &one_minus_a * &idx.beta;
                    }
                    FreeParam::Alpha => {
                        if idx.a.is_zero() {
                            return Err(unsupported());
                        }
                        idx.alpha = (&idx.gamma - &delta - &one_minus_a * &idx.beta) / &idx.a;
                    }
                    FreeParam::Beta => {
                        if one_minus_a.is_zero() {
                            return Err(unsupported());
                        }
                        idx.beta = (&idx.gamma - &delta - &idx.a * &idx.alpha) / one_minus_a;
                    }
                    _ => return Err(unsupported()),
                }
            }
            CheckTarget::Nonhomogeneous(_, _) | CheckTarget::Strichartz(_, _) => {
                return Err(unsupported())
            }
        }
        Ok(())
    }
}

fn set_ckn(
    idx: &mut CknIndices,
    param: FreeParam,
    value: &Rational,
    couple_angular: bool,
) -> Result<(), ExponentError> {
    let recip = |v: &Rational| RecipExponent::from_recip(v.clone());
    match param {
        FreeParam::Alpha => idx.alpha = value.clone(),
        FreeParam::Beta => idx.beta = value.clone(),
        FreeParam::Gamma => idx.gamma = value.clone(),
        FreeParam::Sigma => idx.sigma = value.clone(),
        FreeParam::A => idx.a = value.clone(),
        FreeParam::RecipP => {
            idx.p = recip(value)?;
            if couple_angular {
                idx.ptilde = idx.p.clone();
            }
        }
        FreeParam::RecipQ => {
            idx.q = recip(value)?;
            if couple_angular {
                idx.qtilde = idx.q.clone();
            }
        }
        FreeParam::RecipPtilde => idx.ptilde = recip(value)?,
        FreeParam::RecipQtilde => idx.qtilde = recip(value)?,
        FreeParam::RecipR => {
            idx.recip_r = value.clone();
            if couple_angular {
                idx.recip_rtilde = idx.recip_r.clone();
            }
        }
        FreeParam::RecipRtilde => idx.recip_rtilde = value.clone(),
        _ => return Err(ExponentError::UnsupportedParameter(format!("{param:?}"))),
    }
    Ok(())
}

fn set_mixed(idx: &mut MixedIndices, param: FreeParam, value: &Rational) -> Result<(), ExponentError> {
    let recip = |v: &Rational| RecipExponent::from_recip(v.clone());
    match param {
        FreeParam::Alpha => idx.alpha = value.clone(),
        FreeParam::Beta => idx.beta = value.clone(),
        FreeParam::Gamma => idx.gamma = value.clone(),
        FreeParam::RecipP => idx.p = recip(value)?,
        FreeParam::RecipQ => idx.q = recip(value)?,
        FreeParam::RecipPtilde => idx.ptilde = recip(value)?,
        FreeParam::RecipQtilde => idx.qtilde = recip(value)?,
        _ => return Err(ExponentError::UnsupportedParameter(format!("{param:?}"))),
    }
    Ok(())
}

/// Inclusive arithmetic range of exact rationals.
#[derive(Debug, Clone)]
pub struct GridRange {
    pub start: Rational,
    pub stop: Rational,
    pub step: Rational,
}

impl GridRange {
    pub fn values(&self) -> Result<Vec<Rational>, ExponentError> {
        if !self.step.is_positive() || self.start > self.stop {
            return Err(ExponentError::EmptyRange);
        }
        let mut out = Vec::new();
        let mut v = self.start.clone();
        while v <= self.stop {
            out.push(v.clone());
            v += &self.step;
        }
        Ok(out)
    }
}

/// One grid point of a region scan.
#[derive(Debug, Clone)]
pub struct RegionEntry {
    pub value1: Rational,
    pub value2: Rational,
    pub verdict: Verdict,
}

/// Dense verdict grid over two free parameters, row-major with the first
/// parameter in the outer loop, both ascending.
pub fn scan_region(
    template: &CheckTarget,
    param1: FreeParam,
    range1: &GridRange,
    param2: FreeParam,
    range2: &GridRange,
    project_scaling_for: Option<FreeParam>,
) -> Result<Vec<RegionEntry>, ExponentError> {
    let values1 = range1.values()?;
    let values2 = range2.values()?;
    let mut out = Vec::with_capacity(values1.len() * values2.len());
    for v1 in &values1 {
        for v2 in &values2 {
            let mut target = template.clone();
            target.set(param1, v1)?;
            target.set(param2, v2)?;
            if let Some(free) = project_scaling_for {
                target.project_to_scaling(free)?;
            }
            out.push(RegionEntry {
                value1: v1.clone(),
                value2: v2.clone(),
                verdict: target.run()?,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponents::recip::rat;

    fn mixed_template() -> CheckTarget {
        CheckTarget::Mixed(
            MixedIndices {
                n: 2,
                p: RecipExponent::from_exponent(rat(4, 3)).unwrap(),
                q: RecipExponent::from_exponent(rat(4, 1)).unwrap(),
                ptilde: RecipExponent::one(),
                qtilde: RecipExponent::from_exponent(rat(2, 1)).unwrap(),
                alpha: rat(0, 1),
                beta: rat(0, 1),
                gamma: rat(1, 1),
            },
            MixedMode::General,
        )
    }

    #[test]
    fn degenerate_grid_matches_direct_call() {
        let template = mixed_template();
        let range = GridRange {
            start: rat(0, 1),
            stop: rat(0, 1),
            step: rat(1, 1),
        };
        let entries = scan_region(
            &template,
            FreeParam::Alpha,
            &range,
            FreeParam::Beta,
            &range,
            None,
        )
        .unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].verdict, template.run().unwrap());
    }

    #[test]
    fn boundary_line_shows_as_zero_margin() {
        // Over (α, β) at n=2, p=4/3, q=4, p̃=1, q̃=2 the third-condition
        // threshold is (n−1)(1/q−1/p+1/p̃−1/q̃) = 0, so margin 0 sits on
        // the line α+β = 0.
        let template = mixed_template();
        let range = GridRange {
            start: rat(-1, 1),
            stop: rat(1, 1),
            step: rat(1, 2),
        };
        let entries = scan_region(
            &template,
            FreeParam::Alpha,
            &range,
            FreeParam::Beta,
            &range,
            Some(FreeParam::Gamma),
        )
        .unwrap();
        assert_eq!(entries.len(), 25);
        for e in &entries {
            let margin = e.verdict.margin("third_mixed").clone();
            assert_eq!(margin, &e.value1 + &e.value2);
            assert_eq!(e.verdict.margin("scaling"), &rat(0, 1));
        }
    }

    #[test]
    fn empty_range_is_an_error() {
        let bad = GridRange {
            start: rat(1, 1),
            stop: rat(0, 1),
            step: rat(1, 1),
        };
        assert!(bad.values().is_err());
    }
}
