//! Exact admissibility checkers for the weighted-estimate condition systems.
//!
//! Every checker evaluates its full condition list on exact rationals and
//! returns a [`Verdict`] carrying one margin per condition. Stable condition
//! ids are documented in `docs/condition-ids.md`.

use num_traits::{One, Signed, Zero};

use super::indices::{n_rat, CknIndices, MixedIndices, SteinWeissIndices, StrichartzIndices};
use super::recip::{Rational, RecipExponent};
use super::verdict::{ConditionKind, Verdict, VerdictBuilder};
use super::ExponentError;

/// Range handling for the mixed checker, matching the three cases of the
/// mixed theorem: the general statement, the strict-third-condition
/// relaxation and the band-limited relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedMode {
    General,
    Strict,
    Bandlimited,
}

/// Variant selector for the wave-equation admissibility checkers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrichartzVariant {
    Classical,
    Radial,
    Precised,
}

fn n_over(n: &Rational, e: &RecipExponent) -> Rational {
    n * e.recip()
}

/// p > 1, p ≤ q, q < ∞ as one condition.
fn range_pq_strict(b: &mut VerdictBuilder, p: &RecipExponent, q: &RecipExponent) {
    b.all_of(
        "range_pq",
        &[
            (Rational::one() - p.recip(), ConditionKind::Strict),
            (p.recip() - q.recip(), ConditionKind::NonStrict),
            (q.recip().clone(), ConditionKind::Strict),
        ],
    );
}

/// The relaxed range 1 ≤ p ≤ q ≤ ∞; only the ordering can fail.
fn range_pq_relaxed(b: &mut VerdictBuilder, p: &RecipExponent, q: &RecipExponent) {
    b.non_strict("range_pq", p.recip() - q.recip());
}

fn gamma_range(b: &mut VerdictBuilder, n: &Rational, gamma: &Rational) {
    b.all_of(
        "gamma_range",
        &[
            (gamma.clone(), ConditionKind::Strict),
            (n - gamma, ConditionKind::Strict),
        ],
    );
}

/// Deviation of α+β+γ from the dilation-forced value n + n/q − n/p.
fn scaling_deviation(idx_n: &Rational, p: &RecipExponent, q: &RecipExponent, sum: Rational) -> Rational {
    sum - (idx_n + n_over(idx_n, q) - n_over(idx_n, p))
}

/// Conditions for the classical weighted estimate: integrability of the two
/// weights, 0 < γ < n, the scaling equality and α+β ≥ 0.
pub fn check_stein_weiss(idx: &SteinWeissIndices) -> Verdict {
    let n = n_rat(idx.n);
    let mut b = VerdictBuilder::new();
    range_pq_strict(&mut b, &idx.p, &idx.q);
    b.strict("beta_lt", n_over(&n, &idx.q) - &idx.beta);
    b.strict("alpha_lt", n_over(&n, &idx.p.dual()) - &idx.alpha);
    gamma_range(&mut b, &n, &idx.gamma);
    b.equality(
        "scaling",
        scaling_deviation(&n, &idx.p, &idx.q, &idx.alpha + &idx.beta + &idx.gamma),
    );
    b.non_strict("nonneg", &idx.alpha + &idx.beta);
    b.finish()
}

/// Same as [`check_stein_weiss`] with the sign condition relaxed to the
/// radial threshold α+β ≥ (n−1)(1/q − 1/p).
pub fn check_radial_stein_weiss(idx: &SteinWeissIndices) -> Verdict {
    let n = n_rat(idx.n);
    let mut b = VerdictBuilder::new();
    range_pq_strict(&mut b, &idx.p, &idx.q);
    b.strict("beta_lt", n_over(&n, &idx.q) - &idx.beta);
    b.strict("alpha_lt", n_over(&n, &idx.p.dual()) - &idx.alpha);
    gamma_range(&mut b, &n, &idx.gamma);
    b.equality(
        "scaling",
        scaling_deviation(&n, &idx.p, &idx.q, &idx.alpha + &idx.beta + &idx.gamma),
    );
    let threshold = (&n - Rational::one()) * (idx.q.recip() - idx.p.recip());
    b.non_strict("third_radial", &idx.alpha + &idx.beta - threshold);
    b.finish()
}

fn third_mixed_margin(idx: &MixedIndices) -> Rational {
    let n1 = n_rat(idx.n) - Rational::one();
    let bracket =
        idx.q.recip() - idx.p.recip() + idx.ptilde.recip() - idx.qtilde.recip();
    &idx.alpha + &idx.beta - n1 * bracket
}

/// Mixed radial-angular checker. In `General` mode the exponent range is
/// 1 < p ≤ q < ∞; the `Strict` and `Bandlimited` modes allow 1 ≤ p ≤ q ≤ ∞,
/// with `Strict` demanding strict inequality in the third condition.
pub fn check_mixed_stein_weiss(idx: &MixedIndices, mode: MixedMode) -> Verdict {
    let n = n_rat(idx.n);
    let mut b = VerdictBuilder::new();
    match mode {
        MixedMode::General => range_pq_strict(&mut b, &idx.p, &idx.q),
        MixedMode::Strict | MixedMode::Bandlimited => range_pq_relaxed(&mut b, &idx.p, &idx.q),
    }
    b.non_strict("angular_order", idx.ptilde.recip() - idx.qtilde.recip());
    b.strict("beta_lt", n_over(&n, &idx.q) - &idx.beta);
    b.strict("alpha_lt", n_over(&n, &idx.p.dual()) - &idx.alpha);
    gamma_range(&mut b, &n, &idx.gamma);
    b.equality(
        "scaling",
        scaling_deviation(&n, &idx.p, &idx.q, &idx.alpha + &idx.beta + &idx.gamma),
    );
    b.ineq(
        "third_mixed",
        third_mixed_margin(idx),
        mode == MixedMode::Strict,
    );
    b.finish()
}

/// Checker for the non-homogeneous kernel ⟨x⟩^{-μ}: the scaling equality
/// disappears and the kernel decay enters through μ. Set μ = γ to test the
/// smooth-potential corollary.
pub fn check_nonhomogeneous(idx: &MixedIndices, mu: &Rational) -> Verdict {
    let n = n_rat(idx.n);
    let mut b = VerdictBuilder::new();
    range_pq_relaxed(&mut b, &idx.p, &idx.q);
    b.non_strict("angular_order", idx.ptilde.recip() - idx.qtilde.recip());
    b.strict("beta_lt", n_over(&n, &idx.q) - &idx.beta);
    b.strict("alpha_lt", n_over(&n, &idx.p.dual()) - &idx.alpha);
    b.ineq("third_mixed", third_mixed_margin(idx), false);
    let threshold =
        -&idx.alpha - &idx.beta + &n * (Rational::one() + idx.q.recip() - idx.p.recip());
    b.strict("mu_decay", mu - threshold);
    b.finish()
}

/// Verdict for the weighted fractional Sobolev embedding, plus a flag for
/// the pointwise special case (q = ∞, α = 0, β = σ − n/p).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SobolevReport {
    pub verdict: Verdict,
    /// Whether the tuple realises the pointwise-decay form
    /// |x|^{n/p−σ}|u(x)| ≲ ‖|D|^σ u‖ with (n−1)/p̃ + 1/p < σ < n/p.
    pub pointwise_form: bool,
}

/// Weighted Sobolev checker: the scaling equality is α+β = σ + n/q − n/p.
/// The p,q range relaxes to 1 ≤ p ≤ q ≤ ∞ exactly when the third condition
/// is strict.
pub fn check_weighted_sobolev(
    idx: &MixedIndices,
    sigma: &Rational,
) -> Result<SobolevReport, ExponentError> {
    let n = n_rat(idx.n);
    if !sigma.is_positive() || *sigma >= n {
        return Err(ExponentError::ParameterOutOfRange {
            name: "sigma",
            value: sigma.to_string(),
            range: "(0,n)",
        });
    }
    let third = third_mixed_margin(idx);
    let mut b = VerdictBuilder::new();
    if third.is_positive() {
        range_pq_relaxed(&mut b, &idx.p, &idx.q);
    } else {
        range_pq_strict(&mut b, &idx.p, &idx.q);
    }
    b.non_strict("angular_order", idx.ptilde.recip() - idx.qtilde.recip());
    b.strict("beta_lt", n_over(&n, &idx.q) - &idx.beta);
    b.strict("alpha_lt", n_over(&n, &idx.p.dual()) - &idx.alpha);
    b.all_of(
        "sigma_range",
        &[
            (sigma.clone(), ConditionKind::Strict),
            (&n - sigma, ConditionKind::Strict),
        ],
    );
    let scaling_dev =
        &idx.alpha + &idx.beta - (sigma + n_over(&n, &idx.q) - n_over(&n, &idx.p));
    b.equality("scaling", scaling_dev);
    b.non_strict("third_mixed", third.clone());
    let verdict = b.finish();

    let pointwise_form = verdict.admissible
        && third.is_positive()
        && idx.q.is_infinite()
        && idx.qtilde.is_infinite()
        && idx.alpha.is_zero()
        && idx.beta == sigma - n_over(&n, &idx.p);
    Ok(SobolevReport {
        verdict,
        pointwise_form,
    })
}

/// The two balance parameters Δ = aσ + n(1/r − (1−a)/q − a/p) and its
/// angular counterpart Δ̃, both exact.
pub fn ckn_deltas(idx: &CknIndices) -> (Rational, Rational) {
    ckn_deltas_sigma(idx, &idx.sigma)
}

fn ckn_deltas_sigma(idx: &CknIndices, sigma: &Rational) -> (Rational, Rational) {
    let n = n_rat(idx.n);
    let one_minus_a = Rational::one() - &idx.a;
    let delta = &idx.a * sigma
        + &n * (&idx.recip_r - &one_minus_a * idx.q.recip() - &idx.a * idx.p.recip());
    let delta_tilde = &idx.a * sigma
        + &n * (&idx.recip_rtilde
            - &one_minus_a * idx.qtilde.recip()
            - &idx.a * idx.ptilde.recip());
    (delta, delta_tilde)
}

/// Checker for the mixed-norm interpolation inequality with fractional
/// derivatives. With `integer_sigma` set (σ ∈ {1,…,n−1}) the lower bound on
/// α is dropped. When the balance condition Δ + (n−1)Δ̃ ≥ 0 holds strictly,
/// the strict inequalities of the exponent window relax to non-strict ones.
pub fn check_ckn(idx: &CknIndices, integer_sigma: bool) -> Result<Verdict, ExponentError> {
    let n = n_rat(idx.n);
    if integer_sigma {
        let ok = idx.sigma.is_integer()
            && idx.sigma >= Rational::one()
            && idx.sigma <= &n - Rational::one();
        if !ok {
            return Err(ExponentError::ParameterOutOfRange {
                name: "sigma",
                value: idx.sigma.to_string(),
                range: "integers 1..n-1",
            });
        }
    }
    let (delta, delta_tilde) = ckn_deltas(idx);
    let balance = &delta + (&n - Rational::one()) * &delta_tilde;
    let relaxed = balance.is_positive();

    let mut b = VerdictBuilder::new();
    // Exponents in [1, +∞): p,q and their angular partners finite, r, r̃ ≥ 1.
    b.all_of(
        "range_exponents",
        &[
            (idx.p.recip().clone(), ConditionKind::Strict),
            (idx.q.recip().clone(), ConditionKind::Strict),
            (idx.ptilde.recip().clone(), ConditionKind::Strict),
            (idx.qtilde.recip().clone(), ConditionKind::Strict),
            (Rational::one() - &idx.recip_r, ConditionKind::NonStrict),
            (Rational::one() - &idx.recip_rtilde, ConditionKind::NonStrict),
        ],
    );
    b.strict("gamma_lt", &n * &idx.recip_r - &idx.gamma);
    b.strict("beta_lt", n_over(&n, &idx.q) - &idx.beta);
    b.strict("alpha_upper", n_over(&n, &idx.p) - &idx.sigma - &idx.alpha);
    if !integer_sigma {
        b.strict("alpha_lower", &idx.alpha - (n_over(&n, &idx.p) - &n));
    }
    // Scaling in the canonical form Δ = γ − aα − (1−a)β.
    let one_minus_a = Rational::one() - &idx.a;
    let weight_delta = &idx.gamma - &idx.a * &idx.alpha - &one_minus_a * &idx.beta;
    b.equality("scaling", &delta - weight_delta);
    b.non_strict("balance_sum", balance);
    b.ineq("p_gt_one", Rational::one() - idx.p.recip(), !relaxed);
    let a_sigma = &idx.a * &idx.sigma;
    let lower = &idx.a * (&idx.sigma - n_over(&n, &idx.p));
    let lower_kind = if relaxed {
        ConditionKind::NonStrict
    } else {
        ConditionKind::Strict
    };
    b.all_of(
        "delta_window",
        &[
            (&delta - lower, lower_kind),
            (&a_sigma - &delta, ConditionKind::NonStrict),
        ],
    );
    let lower_tilde = &idx.a * (&idx.sigma - n_over(&n, &idx.ptilde));
    b.all_of(
        "delta_tilde_window",
        &[
            (&delta_tilde - lower_tilde, ConditionKind::NonStrict),
            (&a_sigma - &delta_tilde, ConditionKind::NonStrict),
        ],
    );
    Ok(b.finish())
}

fn ckn_common_plain(b: &mut VerdictBuilder, idx: &CknIndices, n: &Rational) {
    b.all_of(
        "integrability",
        &[
            (n * &idx.recip_r - &idx.gamma, ConditionKind::Strict),
            (n_over(n, &idx.p) - &idx.alpha, ConditionKind::Strict),
            (n_over(n, &idx.q) - &idx.beta, ConditionKind::Strict),
        ],
    );
    b.all_of(
        "range",
        &[
            (idx.p.recip().clone(), ConditionKind::Strict),
            (idx.q.recip().clone(), ConditionKind::Strict),
        ],
    );
    // Literal first-order scaling relation γ − n/r = a(α+1−n/p) + (1−a)(β−n/q).
    let lhs = &idx.gamma - n * &idx.recip_r;
    let rhs = &idx.a * (&idx.alpha + Rational::one() - n_over(n, &idx.p))
        + (Rational::one() - &idx.a) * (&idx.beta - n_over(n, &idx.q));
    b.equality("scaling", lhs - rhs);
}

/// Checker for the first-order interpolation inequality (σ ≡ 1, plain
/// Lebesgue norms). Requires matching radial and angular exponents;
/// admissible iff Δ ≥ 0, and Δ ≤ a when γ − n/r = α + 1 − n/p.
pub fn check_ckn_classical(idx: &CknIndices) -> Result<Verdict, ExponentError> {
    if idx.p != idx.ptilde || idx.q != idx.qtilde || idx.recip_r != idx.recip_rtilde {
        return Err(ExponentError::AngularMismatch);
    }
    let n = n_rat(idx.n);
    let (delta, _) = ckn_deltas_sigma(idx, &Rational::one());
    let mut b = VerdictBuilder::new();
    ckn_common_plain(&mut b, idx, &n);
    b.non_strict("delta_nonneg", delta.clone());
    let triggered =
        &idx.gamma - &n * &idx.recip_r == &idx.alpha + Rational::one() - n_over(&n, &idx.p);
    if triggered {
        b.non_strict("slope_endpoint", &idx.a - &delta);
    } else {
        b.vacuous("slope_endpoint", &idx.a - &delta);
    }
    Ok(b.finish())
}

/// Radial first-order checker: a(1 − n/p) ≤ Δ ≤ a with the lower bound
/// strict at p = 1, and α < n/p − 1.
pub fn check_ckn_radial(idx: &CknIndices) -> Verdict {
    let n = n_rat(idx.n);
    let (delta, _) = ckn_deltas_sigma(idx, &Rational::one());
    let mut b = VerdictBuilder::new();
    ckn_common_plain(&mut b, idx, &n);
    let lower = &idx.a * (Rational::one() - n_over(&n, &idx.p));
    let p_is_one = idx.p.recip().is_one();
    let lower_kind = if p_is_one {
        ConditionKind::Strict
    } else {
        ConditionKind::NonStrict
    };
    b.all_of(
        "delta_window_radial",
        &[
            (&delta - lower, lower_kind),
            (&idx.a - &delta, ConditionKind::NonStrict),
        ],
    );
    b.strict("alpha_lt_radial", n_over(&n, &idx.p) - Rational::one() - &idx.alpha);
    b.finish()
}

/// Admissibility for the wave-equation estimates: the classical and radial
/// index conditions in (p, r), or the precised smoothing-based conditions in
/// (q, q̃, δ, ε).
pub fn check_strichartz(idx: &StrichartzIndices, variant: StrichartzVariant) -> Verdict {
    let n = n_rat(idx.n);
    let n1 = &n - Rational::one();
    let half = Rational::new(1.into(), 2.into());
    let mut b = VerdictBuilder::new();
    match variant {
        StrichartzVariant::Classical => {
            b.non_strict("p_range", &half - idx.p.recip());
            let cap = &half - rat_two() * idx.p.recip() / &n1;
            b.all_of(
                "wave_admissible",
                &[
                    (idx.r.recip().clone(), ConditionKind::Strict),
                    (&cap - idx.r.recip(), ConditionKind::NonStrict),
                ],
            );
        }
        StrichartzVariant::Radial => {
            b.non_strict("p_range", &half - idx.p.recip());
            let cap = &half - idx.p.recip() / &n1;
            b.all_of(
                "wave_admissible_radial",
                &[
                    (idx.r.recip().clone(), ConditionKind::Strict),
                    (&cap - idx.r.recip(), ConditionKind::Strict),
                ],
            );
        }
        StrichartzVariant::Precised => {
            b.all_of(
                "q_range",
                &[
                    (&half - idx.q.recip(), ConditionKind::NonStrict),
                    (idx.q.recip().clone(), ConditionKind::Strict),
                    (&half - idx.qtilde.recip(), ConditionKind::NonStrict),
                    (idx.qtilde.recip().clone(), ConditionKind::Strict),
                ],
            );
            b.strict("delta_lt", n_over(&n, &idx.q) - &idx.delta);
            b.all_of(
                "epsilon_range",
                &[
                    (idx.epsilon.clone(), ConditionKind::Strict),
                    (&n1 * &half - &idx.epsilon, ConditionKind::Strict),
                ],
            );
            let gap = idx.qtilde.recip() - (&half / &n1) - idx.q.recip();
            b.all_of(
                "angular_gap",
                &[
                    (idx.q.recip().clone(), ConditionKind::Strict),
                    (gap.clone(), ConditionKind::Strict),
                ],
            );
            b.non_strict("smoothing_transfer", &idx.delta + &n1 * gap - &idx.epsilon);
        }
    }
    b.finish()
}

/// Index check for the critical Besov-space embedding: the estimate holds
/// for all 1 < p ≤ q ≤ ∞ with smoothness 1/p − 1/q and weight power
/// (n−1)(1/p − 1/q).
pub fn check_besov_embedding(p: &RecipExponent, q: &RecipExponent) -> Verdict {
    let mut b = VerdictBuilder::new();
    b.all_of(
        "range_pq",
        &[
            (Rational::one() - p.recip(), ConditionKind::Strict),
            (p.recip() - q.recip(), ConditionKind::NonStrict),
        ],
    );
    b.finish()
}

/// The (smoothness, weight power) pair of the Besov embedding.
pub fn besov_embedding_indices(n: u32, p: &RecipExponent, q: &RecipExponent) -> (Rational, Rational) {
    let s = p.recip() - q.recip();
    let weight = (n_rat(n) - Rational::one()) * &s;
    (s, weight)
}

fn rat_two() -> Rational {
    Rational::from_integer(2.into())
}
