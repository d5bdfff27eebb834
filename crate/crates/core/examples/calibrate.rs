use mixed_norm_lab::exponents::{rat, MixedIndices, Rational, RecipExponent};
use mixed_norm_lab::operators::TestFamily;
use mixed_norm_lab::probes::*;

fn exp(n: i64, d: i64) -> RecipExponent { RecipExponent::from_exponent(rat(n, d)).unwrap() }

fn mixed_spec(alpha: Rational, beta: Rational) -> InequalitySpec {
    let p = exp(4, 3); let q = exp(4, 1);
    let n = Rational::from_integer(2.into());
    let gamma = &n + &n * q.recip() - &n * p.recip() - &alpha - &beta;
    InequalitySpec::MixedSteinWeiss { idx: MixedIndices {
        n: 2, p, q, ptilde: exp(2, 1), qtilde: exp(2, 1), alpha, beta, gamma,
    }.validated().unwrap() }
}

fn main() {
    // one floor sweep
    let spec = mixed_spec(rat(0, 1), rat(2, 5));
    let ball = TestFamily::PowerSpike { s: 0.0, inner: 0.5, outer: 1.0 };
    let t0 = std::time::Instant::now();
    let points: Vec<SweepPoint> = [1e-1f64, 10f64.powf(-1.5), 1e-2, 10f64.powf(-2.5), 1e-3, 10f64.powf(-3.5), 1e-4]
        .iter().map(|&d| {
            let mut p = SweepPoint::new(d, ball.clone());
            p.resolution = Some(ProbeResolution { domain_override: Some((d, 1e3)), ..Default::default() });
            p
        }).collect();
    let rep = sharpness_sweep(&spec, &points, &ProbeResolution::default()).unwrap();
    println!("floor sweep: t={:?} growth={:.3} class={:?}", t0.elapsed(), rep.growth, rep.classification);

    // one cap point at each resolution
    let spec = {
        let p = exp(4, 3); let q = exp(4, 1);
        let n = Rational::from_integer(2.into());
        let (alpha, beta) = (rat(-3, 4), rat(0, 1));
        let gamma = &n + &n * q.recip() - &n * p.recip() - &alpha - &beta;
        InequalitySpec::MixedSteinWeiss { idx: MixedIndices {
            n: 2, p, q, ptilde: RecipExponent::one(), qtilde: RecipExponent::infinity(), alpha, beta, gamma,
        }.validated().unwrap() }
    };
    for k in 0..6 {
        let w = 0.45 * (0.04f64 / 0.45).powf(k as f64 / 5.0);
        let kappa = w.powi(-2);
        let m_ang = ((50.0 / w) as usize).next_power_of_two().clamp(128, 2048);
        let mut p = SweepPoint::new(kappa, TestFamily::TensorSpikeBump {
            s: 0.0, kappa, m: 4.0, inner: 1.0 - w, outer: 1.0 + w });
        p.resolution = Some(ProbeResolution { out_per_decade: 12, support_panels: 4, angular_resolution: m_ang, ..Default::default() });
        let pts = vec![p.clone(), p.clone(), p.clone(), p.clone(), p];
        let t0 = std::time::Instant::now();
        let rep = sharpness_sweep(&spec, &pts, &ProbeResolution::default()).unwrap();
        println!("cap w={w:.3} M={m_ang}: t={:?} (5 pts) ratio={:.3}", t0.elapsed(), rep.ratios[0]);
    }
}
