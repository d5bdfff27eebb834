//! Index tuples for the admissibility checkers.

use num_traits::{One, Signed};

use super::recip::{Rational, RecipExponent};
use super::ExponentError;

/// Indices for the weighted fractional-integral estimate on plain Lebesgue
/// norms: dimension, exponents p ≤ q and the weight powers α, β and the
/// kernel power γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinWeissIndices {
    pub n: u32,
    pub p: RecipExponent,
    pub q: RecipExponent,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl SteinWeissIndices {
    pub fn validated(self) -> Result<Self, ExponentError> {
        if self.n < 1 {
            return Err(ExponentError::DimensionTooSmall { n: self.n, min: 1 });
        }
        Ok(self)
    }
}

/// Indices for the mixed radial-angular estimates: adds the angular
/// exponents p̃ ≤ q̃.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedIndices {
    pub n: u32,
    pub p: RecipExponent,
    pub q: RecipExponent,
    pub ptilde: RecipExponent,
    pub qtilde: RecipExponent,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl MixedIndices {
    pub fn validated(self) -> Result<Self, ExponentError> {
        if self.n < 2 {
            return Err(ExponentError::DimensionTooSmall { n: self.n, min: 2 });
        }
        Ok(self)
    }
}

/// Indices for the interpolation inequalities with weights |x|^{-γ},
/// |x|^{-α}, |x|^{-β}, interpolation weight a and derivative order σ.
///
/// The left-hand exponents r, r̃ are stored as reciprocals in (0,∞): the
/// classical theorem admits the full range 0 < r < ∞, so values 1/r > 1
/// (r < 1) are representable; the mixed-norm theorem restricts to r ≥ 1
/// through an explicit range condition instead of through the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CknIndices {
    pub n: u32,
    pub a: Rational,
    pub sigma: Rational,
    pub p: RecipExponent,
    pub ptilde: RecipExponent,
    pub q: RecipExponent,
    pub qtilde: RecipExponent,
    pub recip_r: Rational,
    pub recip_rtilde: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl CknIndices {
    pub fn validated(self) -> Result<Self, ExponentError> {
        if self.n < 2 {
            return Err(ExponentError::DimensionTooSmall { n: self.n, min: 2 });
        }
        if !self.a.is_positive() || self.a > Rational::one() {
            return Err(ExponentError::ParameterOutOfRange {
                name: "a",
                value: self.a.to_string(),
                range: "(0,1]",
            });
        }
        let n = Rational::from_integer(self.n.into());
        if !self.sigma.is_positive() || self.sigma >= n {
            return Err(ExponentError::ParameterOutOfRange {
                name: "sigma",
                value: self.sigma.to_string(),
                range: "(0,n)",
            });
        }
        if !self.recip_r.is_positive() || !self.recip_rtilde.is_positive() {
            return Err(ExponentError::ParameterOutOfRange {
                name: "1/r",
                value: format!("{}, {}", self.recip_r, self.recip_rtilde),
                range: "(0,inf)",
            });
        }
        Ok(self)
    }
}

/// Indices for the wave-equation space-time estimates. The classical and
/// radial variants use (p, r); the precised variant uses (q, q̃, δ, ε).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrichartzIndices {
    pub n: u32,
    pub q: RecipExponent,
    pub qtilde: RecipExponent,
    pub delta: Rational,
    pub epsilon: Rational,
    pub p: RecipExponent,
    pub r: RecipExponent,
}

impl StrichartzIndices {
    pub fn validated(self) -> Result<Self, ExponentError> {
        if self.n < 2 {
            return Err(ExponentError::DimensionTooSmall { n: self.n, min: 2 });
        }
        Ok(self)
    }
}

/// n as an exact rational, shared by the checkers.
pub(crate) fn n_rat(n: u32) -> Rational {
    Rational::from_integer(n.into())
}
