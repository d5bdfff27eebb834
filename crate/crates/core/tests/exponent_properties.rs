//! Structural properties of the checkers over random rational batteries:
//! reductions between the condition systems, monotonicity of the radial
//! relaxation, the first-order specializations of the interpolation
//! checker, and reproducibility.

mod common;

use common::{random_mixed, random_mixed_scaled, random_rational, rng, to_stein_weiss};
use mixed_norm_lab::exponents::{
    check_ckn, check_ckn_classical, check_ckn_radial, check_mixed_stein_weiss,
    check_radial_stein_weiss, check_stein_weiss, ckn_deltas, rat, CknIndices, MixedMode,
    Rational, RecipExponent,
};
use num_traits::One;
use rand::Rng;

#[test]
fn equal_angular_exponents_reduce_to_the_plain_checker() {
    let mut rng = rng(7);
    for _ in 0..5_000 {
        let mut idx = random_mixed(&mut rng);
        idx.ptilde = idx.p.clone();
        idx.qtilde = idx.q.clone();
        let mixed = check_mixed_stein_weiss(&idx, MixedMode::General);
        let plain = check_stein_weiss(&to_stein_weiss(&idx));
        assert_eq!(mixed.admissible, plain.admissible, "tuple {idx:?}");
        // the third condition collapses to the sign condition exactly
        assert_eq!(mixed.margin("third_mixed"), plain.margin("nonneg"));
    }
}

#[test]
fn matching_angular_pair_reduces_to_the_radial_threshold() {
    let mut rng = rng(8);
    for _ in 0..5_000 {
        let mut idx = random_mixed(&mut rng);
        idx.qtilde = idx.ptilde.clone();
        let mixed = check_mixed_stein_weiss(&idx, MixedMode::General);
        let radial = check_radial_stein_weiss(&to_stein_weiss(&idx));
        assert_eq!(mixed.margin("third_mixed"), radial.margin("third_radial"));
        assert_eq!(mixed.admissible, radial.admissible);
    }
}

#[test]
fn plain_admissibility_implies_radial_admissibility() {
    let mut rng = rng(9);
    let mut admissible_seen = 0;
    for _ in 0..20_000 {
        let idx = to_stein_weiss(&random_mixed_scaled(&mut rng));
        let plain = check_stein_weiss(&idx);
        if plain.admissible {
            admissible_seen += 1;
            assert!(
                check_radial_stein_weiss(&idx).admissible,
                "radial relaxation must contain the plain region: {idx:?}"
            );
        }
    }
    assert!(admissible_seen > 50, "battery too sparse: {admissible_seen}");
}

/// Random first-order interpolation tuple with the scaling equality built
/// in and Δ = Δ̃ placed in [0, aσ] by construction.
fn random_first_order_ckn(rng: &mut rand_chacha::ChaCha8Rng) -> Option<CknIndices> {
    let n = if rng.gen_bool(0.5) { 2u32 } else { 3 };
    let n_rat = Rational::from_integer(n.into());
    let a = random_rational(rng, 0, 1, 12);
    if a <= rat(0, 1) {
        return None;
    }
    let p = common::random_recip(rng);
    let q = common::random_recip(rng);
    if p.is_infinite() || q.is_infinite() || p.recip().is_one() {
        return None;
    }
    // place Δ = t·a with t ∈ [0,1] by solving for 1/r
    let t = random_rational(rng, 0, 1, 8);
    let one_minus_a = Rational::one() - &a;
    let recip_r = (&t * &a - &a) / &n_rat + &one_minus_a * q.recip() + &a * p.recip();
    if recip_r <= rat(0, 1) || recip_r > Rational::one() {
        return None;
    }
    let alpha = random_rational(rng, -2, 0, 8);
    let upper = &n_rat * p.recip() - Rational::one();
    if alpha >= upper {
        return None;
    }
    let beta = &n_rat * q.recip() - random_rational(rng, 0, 2, 8) - rat(1, 8);
    let delta = &t * &a;
    let gamma = &delta + &a * &alpha + &one_minus_a * &beta;
    if gamma >= &n_rat * &recip_r {
        return None;
    }
    CknIndices {
        n,
        a,
        sigma: Rational::one(),
        p: p.clone(),
        ptilde: p,
        q: q.clone(),
        qtilde: q,
        recip_r: recip_r.clone(),
        recip_rtilde: recip_r,
        alpha,
        beta,
        gamma,
    }
    .validated()
    .ok()
}

#[test]
fn first_order_balanced_tuples_pass_the_classical_checker() {
    // With matching angular exponents, σ = 1 and Δ = Δ̃ ∈ [0, a], an
    // admissible mixed-interpolation verdict implies the classical one.
    let mut rng = rng(10);
    let mut checked = 0;
    for _ in 0..40_000 {
        let Some(idx) = random_first_order_ckn(&mut rng) else {
            continue;
        };
        let (delta, delta_tilde) = ckn_deltas(&idx);
        assert_eq!(delta, delta_tilde);
        let mixed = check_ckn(&idx, false).unwrap();
        if !mixed.admissible {
            continue;
        }
        checked += 1;
        let classical = check_ckn_classical(&idx).unwrap();
        assert!(
            classical.admissible,
            "classical must admit {idx:?}: {:?}",
            classical.failed()
        );
    }
    assert!(checked > 200, "battery too sparse: {checked}");
}

#[test]
fn classical_admissibility_contains_the_radial_window() {
    // Restricted containment: classical admissible, α < n/p − 1, Δ ≤ a,
    // 1 < p ≤ n imply the radial conditions. (Without Δ ≤ a and p ≤ n the
    // containment genuinely fails; see the unit counterexample.)
    let mut rng = rng(11);
    let mut checked = 0;
    for _ in 0..40_000 {
        let Some(idx) = random_first_order_ckn(&mut rng) else {
            continue;
        };
        let n_rat = Rational::from_integer(idx.n.into());
        let classical = check_ckn_classical(&idx).unwrap();
        let (delta, _) = ckn_deltas(&idx);
        let alpha_ok = idx.alpha < &n_rat * idx.p.recip() - Rational::one();
        let p_le_n = *idx.p.recip() >= Rational::new(1.into(), idx.n.into());
        if !(classical.admissible && alpha_ok && delta <= idx.a && p_le_n) {
            continue;
        }
        checked += 1;
        let radial = check_ckn_radial(&idx);
        assert!(
            radial.admissible,
            "radial must admit {idx:?}: {:?}",
            radial.failed()
        );
    }
    assert!(checked > 100, "battery too sparse: {checked}");
}

#[test]
fn radial_improvement_is_recovered_by_an_angular_choice() {
    // For a tuple passing the radial first-order conditions with the lower
    // bound strict, some choice of the angular exponents makes the mixed
    // checker admissible: Δ̃ = 0 via p̃ = q̃ = 1, 1/r̃ = 1/p̃ − a/n when
    // Δ ≥ 0, and Δ̃ = −Δ/(n−1) + small otherwise.
    let mut rng = rng(12);
    let mut checked = 0;
    for _ in 0..40_000 {
        let Some(mut idx) = random_first_order_ckn(&mut rng) else {
            continue;
        };
        // move Δ into the radial-only window [a(1−n/p), a] by lowering 1/r
        let n_rat = Rational::from_integer(idx.n.into());
        let (delta, _) = ckn_deltas(&idx);
        let radial = check_ckn_radial(&idx);
        if !(radial.admissible && radial.boundary.is_empty()) {
            continue;
        }
        checked += 1;
        // recover through the angular freedom
        let target = if delta >= rat(0, 1) {
            rat(0, 1)
        } else {
            // Δ̃ slightly above −Δ/(n−1) keeps the balance strict
            let floor = -&delta / (&n_rat - Rational::one());
            floor + rat(1, 1000)
        };
        idx.ptilde = RecipExponent::one();
        idx.qtilde = RecipExponent::one();
        // Δ̃ = a + n(1/r̃ − (1−a)/q̃ − a/p̃) = a + n·(1/r̃ − 1) + ... solve
        let one_minus_a = Rational::one() - &idx.a;
        let recip_rt =
            (&target - &idx.a) / &n_rat + &one_minus_a + &idx.a;
        if recip_rt <= rat(0, 1) || recip_rt > Rational::one() {
            continue;
        }
        idx.recip_rtilde = recip_rt;
        // the remark's recovery runs through the integer-σ corollary,
        // which drops the lower bound on α
        let mixed = check_ckn(&idx, true).unwrap();
        assert!(
            mixed.admissible,
            "angular recovery failed for {idx:?}: {:?}",
            mixed.failed()
        );
    }
    assert!(checked > 100, "battery too sparse: {checked}");
}

#[test]
fn verdicts_are_reproducible() {
    let mut rng = rng(13);
    for _ in 0..200 {
        let idx = random_mixed(&mut rng);
        let a = check_mixed_stein_weiss(&idx, MixedMode::General);
        let b = check_mixed_stein_weiss(&idx, MixedMode::General);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
