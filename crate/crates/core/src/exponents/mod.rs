//! Exact-arithmetic admissibility checkers for the weighted-estimate
//! condition systems, plus region scanning over parameter slices.
//!
//! All margins are exact rationals; verdicts are pure functions of the
//! inputs and safe to share across threads.

mod checkers;
mod indices;
mod recip;
mod scan;
mod verdict;

pub use checkers::{
    besov_embedding_indices, check_besov_embedding, check_ckn, check_ckn_classical,
    check_ckn_radial, check_mixed_stein_weiss, check_nonhomogeneous, check_radial_stein_weiss,
    check_stein_weiss, check_strichartz, check_weighted_sobolev, ckn_deltas, MixedMode,
    SobolevReport, StrichartzVariant,
};
pub use indices::{CknIndices, MixedIndices, SteinWeissIndices, StrichartzIndices};
pub use recip::{parse_rational, rat, rational_to_f64, Rational, RecipExponent};
pub use scan::{scan_region, CheckTarget, FreeParam, GridRange, RegionEntry};
pub use verdict::{Condition, ConditionKind, Verdict};

use thiserror::Error;

/// Errors from constructing index tuples or driving the checkers.
#[derive(Debug, Error)]
pub enum ExponentError {
    #[error("malformed rational: {0:?}")]
    MalformedRational(String),
    #[error("reciprocal exponent {0} outside [0,1]")]
    RecipOutOfRange(String),
    #[error("dimension n={n} below the minimum {min} for this family")]
    DimensionTooSmall { n: u32, min: u32 },
    #[error("parameter {name}={value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },
    #[error("angular exponents must match the radial ones for this checker")]
    AngularMismatch,
    #[error("parameter {0} is not a free parameter of this tuple")]
    UnsupportedParameter(String),
    #[error("empty or descending grid range")]
    EmptyRange,
}
