//! Shared helpers for the integration suites: deterministic random rational
//! tuples for the checker batteries.

#![allow(dead_code)]

use mixed_norm_lab::exponents::{rat, MixedIndices, Rational, RecipExponent, SteinWeissIndices};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random reciprocal k/d with d ≤ 12, spanning [0, 1].
pub fn random_recip(rng: &mut ChaCha8Rng) -> RecipExponent {
    let d = rng.gen_range(1..=12i64);
    let k = rng.gen_range(0..=d);
    RecipExponent::from_recip(rat(k, d)).unwrap()
}

/// Random ordered pair 1/q ≤ 1/p (i.e. p ≤ q).
pub fn random_recip_pair(rng: &mut ChaCha8Rng) -> (RecipExponent, RecipExponent) {
    let a = random_recip(rng);
    let b = random_recip(rng);
    if a.recip() >= b.recip() {
        (a, b)
    } else {
        (b, a)
    }
}

/// Random rational in [lo, hi] with denominator `den`.
pub fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

/// Unconstrained random tuple (scaling not enforced, orderings not
/// enforced): exercises agreement of checkers on arbitrary inputs.
pub fn random_mixed(rng: &mut ChaCha8Rng) -> MixedIndices {
    let n = if rng.gen_bool(0.5) { 2 } else { 3 };
    let (p, q) = random_recip_pair(rng);
    let (ptilde, qtilde) = random_recip_pair(rng);
    MixedIndices {
        n,
        p,
        q,
        ptilde,
        qtilde,
        alpha: random_rational(rng, -2, 2, 12),
        beta: random_rational(rng, -2, 2, 12),
        gamma: random_rational(rng, -1, 4, 12),
    }
    .validated()
    .unwrap()
}

/// Random tuple with the scaling equality enforced (γ solved from the
/// weights), so a positive fraction of draws is admissible.
pub fn random_mixed_scaled(rng: &mut ChaCha8Rng) -> MixedIndices {
    let mut idx = random_mixed(rng);
    let n = Rational::from_integer(idx.n.into());
    idx.gamma = &n + &n * idx.q.recip() - &n * idx.p.recip() - &idx.alpha - &idx.beta;
    idx
}

pub fn to_stein_weiss(idx: &MixedIndices) -> SteinWeissIndices {
    SteinWeissIndices {
        n: idx.n,
        p: idx.p.clone(),
        q: idx.q.clone(),
        alpha: idx.alpha.clone(),
        beta: idx.beta.clone(),
        gamma: idx.gamma.clone(),
    }
    .validated()
    .unwrap()
}
