//! Cross-module invariants: rotation symmetry of the spherical integrals
//! against the product quadrature, and covariance properties of the
//! potential operators.

use mixed_norm_lab::discretization::{make_angular_quadrature, GridFunction, RadialGrid};
use mixed_norm_lab::kernels::i_nu_quadrature;
use mixed_norm_lab::operators::{
    bessel_like_potential, make_test_function, riesz_potential_direct, TestFamily,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn spherical_integral_is_rotation_invariant() {
    // the 1-D reduction assumes I_ν depends on |x| only; cross-check the
    // full product rule at off-axis points against the reduced value
    for (n, nu, resolution) in [(2u32, 0.7, 512usize), (2, 1.4, 512), (3, 1.2, 64), (3, 2.6, 96)] {
        let rule = make_angular_quadrature(n, resolution).unwrap();
        let points: [[f64; 3]; 3] = [
            [0.3, 0.15, 0.0],
            [-0.4, 0.6, if n == 3 { 0.5 } else { 0.0 }],
            [1.4, -2.2, if n == 3 { 0.8 } else { 0.0 }],
        ];
        for x in points {
            let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
            let direct = rule.integrate(|y| {
                let d = ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2) + (x[2] - y[2]).powi(2))
                    .sqrt();
                d.powf(-nu)
            });
            let reduced = i_nu_quadrature(n, nu, r, 1e-10).unwrap();
            assert!(
                rel(direct, reduced) < 1e-6,
                "n={n} nu={nu} |x|={r}: {direct} vs {reduced}"
            );
        }
    }
}

#[test]
fn riesz_potential_scaling_covariance() {
    // T_γ(φ(λ·))(x) = λ^{γ−n} (T_γ φ)(λx) for the dilation-closed spike
    let gamma = 1.2;
    let lambda = 4.0;
    let family = TestFamily::PowerSpike {
        s: 0.5,
        inner: 0.2,
        outer: 2.0,
    };
    let (scaled_family, amplitude) = family.dilated(lambda).unwrap();
    let angular = make_angular_quadrature(2, 32).unwrap();
    let grid = |f: &TestFamily| {
        RadialGrid::with_breakpoints(2, 1e-3, 10.0, 96, &f.radial_breakpoints()).unwrap()
    };
    let phi = make_test_function(&family, grid(&family), angular.clone()).unwrap();
    let phi_scaled =
        make_test_function(&scaled_family, grid(&scaled_family), angular).unwrap();
    for target in [[0.4, 0.1, 0.0], [1.0, -0.5, 0.0], [3.0, 0.0, 0.0]] {
        // amplitude·(scaled family) = φ(λ·), so T of it obeys the pure
        // dilation law
        let lhs = amplitude
            * riesz_potential_direct(&phi_scaled, gamma, &[target]).unwrap().values[0];
        let moved = [target[0] * lambda, target[1] * lambda, 0.0];
        let rhs = lambda.powf(gamma - 2.0)
            * riesz_potential_direct(&phi, gamma, &[moved]).unwrap().values[0];
        assert!(rel(lhs, rhs) < 1e-3, "target {target:?}: {lhs} vs {rhs}");
    }
}

#[test]
fn riesz_potential_rotation_equivariance() {
    let gamma = 0.8;
    let family = TestFamily::TensorSpikeBump {
        s: 0.3,
        kappa: 6.0,
        m: 2.0,
        inner: 0.5,
        outer: 2.0,
    };
    let angular = make_angular_quadrature(2, 256).unwrap();
    let grid = RadialGrid::with_breakpoints(2, 1e-2, 10.0, 64, &family.radial_breakpoints())
        .unwrap();
    let phi = make_test_function(&family, grid.clone(), angular.clone()).unwrap();
    let theta = std::f64::consts::PI / 3.0;
    let (c, s) = (theta.cos(), theta.sin());
    // φ∘R⁻¹ sampled directly
    let rotated = GridFunction::from_fn(grid, angular, |rho, t| {
        let back = [c * t[0] + s * t[1], -s * t[0] + c * t[1], 0.0];
        family.eval(rho, &back)
    })
    .unwrap();
    for target in [[0.9, 0.2, 0.0], [1.8, -0.7, 0.0]] {
        let image = [c * target[0] - s * target[1], s * target[0] + c * target[1], 0.0];
        let lhs = riesz_potential_direct(&rotated, gamma, &[image]).unwrap().values[0];
        let rhs = riesz_potential_direct(&phi, gamma, &[target]).unwrap().values[0];
        assert!(rel(lhs, rhs) < 1e-3, "{lhs} vs {rhs}");
    }
}

#[test]
fn potentials_preserve_positivity() {
    let family = TestFamily::AngularBump {
        kappa: 10.0,
        m: 3.0,
        inner: 0.3,
        outer: 1.5,
    };
    let angular = make_angular_quadrature(2, 64).unwrap();
    let grid = RadialGrid::with_breakpoints(2, 1e-2, 10.0, 48, &family.radial_breakpoints())
        .unwrap();
    let phi = make_test_function(&family, grid, angular).unwrap();
    let targets: Vec<[f64; 3]> = (0..24)
        .map(|k| {
            let angle = k as f64 * 0.26;
            let radius = 0.05 + 0.4 * k as f64;
            [radius * angle.cos(), radius * angle.sin(), 0.0]
        })
        .collect();
    for v in riesz_potential_direct(&phi, 1.1, &targets).unwrap().values {
        assert!(v > 0.0);
    }
    for v in bessel_like_potential(&phi, 2.5, &targets).unwrap() {
        assert!(v > 0.0);
    }
}
