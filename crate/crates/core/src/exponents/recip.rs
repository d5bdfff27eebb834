//! Exact reciprocal representation of Lebesgue exponents.
//!
//! Every exponent p ∈ [1,∞] is stored as the rational 1/p ∈ [0,1], so that
//! p = ∞ is the ordinary value 0 and every admissibility condition becomes a
//! linear inequality between rationals. Sharp boundary cases (margin exactly
//! zero) are then decided without floating arithmetic.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use super::ExponentError;

/// Exact rational number used throughout the checkers.
pub type Rational = BigRational;

/// Shorthand for building a rational from an integer pair.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Convert a rational to `f64` for the numerical modules.
pub fn rational_to_f64(value: &Rational) -> f64 {
    value.to_f64().expect("rational out of f64 range")
}

/// Parse a rational written as `a` or `a/b` (optionally signed). Decimal
/// notation is rejected on purpose: sharp boundaries live at rational points.
pub fn parse_rational(text: &str) -> Result<Rational, ExponentError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ExponentError::MalformedRational(text.to_string()));
    }
    let (numer, denom) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let numer = num_bigint::BigInt::from_str(numer)
        .map_err(|_| ExponentError::MalformedRational(text.to_string()))?;
    let denom = num_bigint::BigInt::from_str(denom)
        .map_err(|_| ExponentError::MalformedRational(text.to_string()))?;
    if denom.is_zero() {
        return Err(ExponentError::MalformedRational(text.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

/// A Lebesgue exponent stored as its exact reciprocal 1/p ∈ [0,1].
///
/// The reciprocal 0 encodes p = ∞ and 1 encodes p = 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RecipExponent(Rational);

impl RecipExponent {
    /// Build from the reciprocal value 1/p; must lie in [0,1].
    pub fn from_recip(recip: Rational) -> Result<Self, ExponentError> {
        if recip.is_negative() || recip > Rational::one() {
            return Err(ExponentError::RecipOutOfRange(recip.to_string()));
        }
        Ok(RecipExponent(recip))
    }

    /// Build from the exponent p itself; must satisfy p ≥ 1.
    pub fn from_exponent(exponent: Rational) -> Result<Self, ExponentError> {
        if exponent < Rational::one() {
            return Err(ExponentError::RecipOutOfRange(format!("1/({exponent})")));
        }
        Ok(RecipExponent(exponent.recip()))
    }

    /// The exponent p = ∞ (reciprocal 0).
    pub fn infinity() -> Self {
        RecipExponent(Rational::zero())
    }

    /// The exponent p = 1 (reciprocal 1).
    pub fn one() -> Self {
        RecipExponent(Rational::one())
    }

    /// The stored reciprocal 1/p.
    pub fn recip(&self) -> &Rational {
        &self.0
    }

    /// Hölder conjugate: 1/p + 1/p' = 1.
    pub fn dual(&self) -> RecipExponent {
        RecipExponent(Rational::one() - &self.0)
    }

    /// Whether p = ∞.
    pub fn is_infinite(&self) -> bool {
        self.0.is_zero()
    }

    /// The reciprocal as `f64`.
    pub fn recip_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }

    /// The exponent p as `f64`; `f64::INFINITY` when p = ∞.
    pub fn exponent_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            1.0 / self.recip_f64()
        }
    }
}

impl fmt::Display for RecipExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0.recip())
        }
    }
}
