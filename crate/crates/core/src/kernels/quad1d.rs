//! Globally adaptive 1-D quadrature: fixed-order Gauss-Legendre panels,
//! worst-panel bisection, error estimated against the two-half refinement.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use super::KernelError;

/// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(m >= 1);
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for k in 0..m {
        // Tricomi initial guess for the k-th root.
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(m, x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(m, x);
        nodes[k] = x;
        weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=m {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    if m == 0 {
        return (1.0, 0.0);
    }
    let dp = (m as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

const PANEL_ORDER: usize = 15;

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

fn fixed_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = panel_rule();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        sum += w * f(mid + half * x);
    }
    sum * half
}

#[derive(Debug)]
struct Segment {
    a: f64,
    b: f64,
    /// Two-half refinement of the panel value (the better estimate).
    value: f64,
    left: f64,
    right: f64,
    err: f64,
}

impl Segment {
    fn new<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, coarse: f64) -> Self {
        let mid = 0.5 * (a + b);
        let left = fixed_panel(f, a, mid);
        let right = fixed_panel(f, mid, b);
        let value = left + right;
        Segment {
            a,
            b,
            value,
            left,
            right,
            err: (coarse - value).abs(),
        }
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadOutcome {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

/// Integrate `f` over [a, b] to the requested relative tolerance within the
/// node budget. Panels are bisected worst-error-first, so refinement
/// concentrates wherever the integrand is least resolved (e.g. near a
/// kernel singularity).
pub fn adaptive_integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    budget: usize,
) -> Result<QuadOutcome, KernelError> {
    assert!(b > a);
    let mut evals = 3 * PANEL_ORDER;
    let coarse = fixed_panel(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment::new(&f, a, b, coarse));

    loop {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.err).sum();
        let target = rel_tol * total.abs().max(f64::MIN_POSITIVE);
        if err <= target || err <= 1e-300 {
            return Ok(QuadOutcome {
                value: total,
                abs_error: err,
                evaluations: evals,
            });
        }
        if evals + 4 * PANEL_ORDER > budget {
            return Err(KernelError::BudgetExceeded {
                value: total,
                abs_error: err,
                budget,
            });
        }
        let worst = heap.pop().expect("heap never empty");
        let mid = 0.5 * (worst.a + worst.b);
        heap.push(Segment::new(&f, worst.a, mid, worst.left));
        heap.push(Segment::new(&f, mid, worst.b, worst.right));
        evals += 4 * PANEL_ORDER;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (nodes, weights) = gauss_legendre(8);
        // degree 15 is exact for an 8-point rule
        let value: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(x, w)| w * (x.powi(15) + 3.0 * x.powi(14) + x.powi(2)))
            .sum();
        let exact = 3.0 * 2.0 / 15.0 + 2.0 / 3.0;
        assert!((value - exact).abs() < 1e-13, "{value} vs {exact}");
        let sum: f64 = weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2, integrable singularity at 0.
        let out = adaptive_integrate(&|x: f64| x.powf(-0.5), 1e-12, 1.0, 1e-9, 100_000).unwrap();
        assert!((out.value - 2.0).abs() < 1e-5, "{}", out.value);
    }

    #[test]
    fn budget_is_enforced() {
        let spiky = |x: f64| 1.0 / (1e-14 + (x - 0.37).abs());
        let err = adaptive_integrate(&spiky, 0.0, 1.0, 1e-14, 600).unwrap_err();
        assert!(matches!(err, KernelError::BudgetExceeded { .. }));
    }
}
