//! Numerical potential operators: the fractional integral with kernel
//! |x−y|^{−γ}, its radially reduced form, and the smooth variant with
//! kernel ⟨x−y⟩^{−γ}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::discretization::GridFunction;
use crate::kernels::{
    adaptive_integrate, gauss_legendre, i_nu_closed_form_n3, i_nu_quadrature_budget,
    unit_sphere_measure, KernelError,
};

use super::OperatorError;

/// Cached log-log interpolation of s ↦ I_ν(s) for one (n, ν); the radial
/// reduction evaluates the spherical integral once per quadrature node of
/// the outer integral, so without the cache every target pays a nested
/// quadrature.
struct SphericalTable {
    log_s: Vec<f64>,
    log_i: Vec<f64>,
    nu: f64,
}

impl SphericalTable {
    fn build(n: u32, nu: f64) -> SphericalTable {
        let mut values: Vec<f64> = Vec::new();
        // global log grid plus a both-sided refinement towards s = 1
        let global = 60usize;
        for i in 0..=(14 * global) {
            values.push(10f64.powf(-7.0 + i as f64 / global as f64));
        }
        let near = 100usize;
        for i in 0..=(13 * near / 2) {
            let d = 10f64.powf(-7.0 + i as f64 / near as f64);
            if d < 0.5 {
                values.push(1.0 - d);
                values.push(1.0 + d);
            }
        }
        values.retain(|s| *s > 0.0 && (*s - 1.0).abs() > 5e-8);
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup();
        let mut log_s = Vec::with_capacity(values.len());
        let mut log_i = Vec::with_capacity(values.len());
        for s in values {
            let v = match i_nu_quadrature_budget(n, nu, s, 1e-8, 200_000) {
                Ok(v) => v,
                Err(KernelError::BudgetExceeded { value, .. }) => value,
                Err(_) => continue,
            };
            if v.is_finite() && v > 0.0 {
                log_s.push(s.ln());
                log_i.push(v.ln());
            }
        }
        SphericalTable { log_s, log_i, nu }
    }

    fn eval(&self, s: f64) -> f64 {
        let x = s.ln();
        let last = self.log_s.len() - 1;
        if x <= self.log_s[0] {
            // flat continuation: I tends to the sphere measure as s → 0
            return self.log_i[0].exp();
        }
        if x >= self.log_s[last] {
            // far field is the pure power s^{-ν}
            return (self.log_i[last] - self.nu * (x - self.log_s[last])).exp();
        }
        let hi = self.log_s.partition_point(|v| *v < x).max(1);
        let (x0, x1) = (self.log_s[hi - 1], self.log_s[hi]);
        let t = (x - x0) / (x1 - x0);
        ((1.0 - t) * self.log_i[hi - 1] + t * self.log_i[hi]).exp()
    }
}

fn spherical_table(n: u32, nu: f64) -> Arc<SphericalTable> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u64), Arc<SphericalTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, nu.to_bits());
    if let Some(table) = cache.lock().unwrap().get(&key) {
        return table.clone();
    }
    let table = Arc::new(SphericalTable::build(n, nu));
    cache.lock().unwrap().insert(key, table.clone());
    table
}

/// Potential values per target plus a per-target accuracy flag: a target is
/// flagged when the singular-cell correction amounts to more than 5% of the
/// result, i.e. the grid does not resolve the kernel there.
#[derive(Debug, Clone)]
pub struct PotentialValues {
    pub values: Vec<f64>,
    pub flagged: Vec<bool>,
}

/// Fraction of the result above which the local correction flags a target.
const ACCURACY_FLAG_FRACTION: f64 = 0.05;
/// Subdivision factor for panels within two mesh lengths of a target.
const REFINE: usize = 8;

struct SourceTables {
    /// (position, weight·sample) for the non-zero samples.
    points: Vec<([f64; 3], f64)>,
    /// Per (panel, angular cell): radial node range and angular index.
    cells: Vec<Cell>,
}

struct Cell {
    /// log-space radial bounds of the panel
    u_lo: f64,
    u_hi: f64,
    /// angular patch bounds: arc [phi_lo, phi_hi] for n=2, (t, phi) box for n=3
    patch: Patch,
    /// flat sample indices (radial index, angular index) of the cell's nodes
    nodes: Vec<(usize, usize)>,
    /// mean sample value weighted by the volume weights
    mean: f64,
    /// linear mesh scale at the cell (max of radial and angular extents)
    mesh: f64,
    center: [f64; 3],
}

enum Patch {
    Arc { phi_lo: f64, phi_hi: f64 },
    Box { t_lo: f64, t_hi: f64, phi_lo: f64, phi_hi: f64 },
}

fn build_tables(phi: &GridFunction) -> SourceTables {
    let n = phi.grid.n;
    let n_ang = phi.angular.len();
    let mut points = Vec::new();
    for i in 0..phi.grid.len() {
        let rho = phi.grid.nodes[i];
        let wv = phi.grid.volume_weight(i);
        for j in 0..n_ang {
            let v = phi.value(i, j);
            if v != 0.0 {
                let d = phi.angular.nodes[j];
                points.push((
                    [rho * d[0], rho * d[1], rho * d[2]],
                    wv * phi.angular.weights[j] * v,
                ));
            }
        }
    }

    // angular patch bounds
    let patches: Vec<Patch> = match n {
        2 => {
            let m = phi.angular.len() as f64;
            let width = 2.0 * std::f64::consts::PI / m;
            (0..phi.angular.len())
                .map(|j| {
                    let center = 2.0 * std::f64::consts::PI * j as f64 / m;
                    Patch::Arc {
                        phi_lo: center - 0.5 * width,
                        phi_hi: center + 0.5 * width,
                    }
                })
                .collect()
        }
        _ => {
            let l = phi.angular.resolution;
            let (_, tw) = gauss_legendre(l);
            let mut t_edges = vec![-1.0];
            for w in &tw {
                t_edges.push(t_edges.last().unwrap() + w);
            }
            let m_az = 2 * l;
            let dphi = 2.0 * std::f64::consts::PI / m_az as f64;
            let mut out = Vec::with_capacity(l * m_az);
            for k in 0..l {
                for a in 0..m_az {
                    let phi_c = 2.0 * std::f64::consts::PI * a as f64 / m_az as f64;
                    out.push(Patch::Box {
                        t_lo: t_edges[k],
                        t_hi: t_edges[k + 1],
                        phi_lo: phi_c - 0.5 * dphi,
                        phi_hi: phi_c + 0.5 * dphi,
                    });
                }
            }
            out
        }
    };

    // group radial nodes by panel and cross with the angular cells,
    // keeping only cells holding at least one non-zero sample
    let mut panel_ranges: Vec<(usize, usize)> = Vec::new();
    let mut start = 0usize;
    for i in 1..=phi.grid.len() {
        if i == phi.grid.len() || phi.grid.panel_of[i] != phi.grid.panel_of[start] {
            panel_ranges.push((start, i));
            start = i;
        }
    }
    let mut cells = Vec::new();
    for &(lo, hi) in &panel_ranges {
        let panel = phi.grid.panel_of[lo];
        let u_lo = phi.grid.panel_edges[panel];
        let u_hi = phi.grid.panel_edges[panel + 1];
        let rho_mid = (0.5 * (u_lo + u_hi)).exp();
        for (j, patch) in patches.iter().enumerate() {
            let mut mass = 0.0;
            let mut weight = 0.0;
            let mut nodes = Vec::new();
            for i in lo..hi {
                let v = phi.value(i, j);
                let wv = phi.grid.volume_weight(i);
                weight += wv;
                if v != 0.0 {
                    mass += wv * v;
                }
                nodes.push((i, j));
            }
            if mass == 0.0 {
                continue;
            }
            let d = phi.angular.nodes[j];
            let angular_extent = match patch {
                Patch::Arc { phi_lo, phi_hi } => rho_mid * (phi_hi - phi_lo),
                Patch::Box {
                    t_lo,
                    t_hi,
                    phi_lo,
                    phi_hi,
                } => {
                    let sin_theta = (1.0 - d[2] * d[2]).max(0.0).sqrt();
                    rho_mid * (t_hi - t_lo).max(sin_theta * (phi_hi - phi_lo))
                }
            };
            cells.push(Cell {
                u_lo,
                u_hi,
                patch: clone_patch(patch),
                nodes,
                mean: mass / weight,
                mesh: (rho_mid * (u_hi - u_lo)).max(angular_extent),
                center: [rho_mid * d[0], rho_mid * d[1], rho_mid * d[2]],
            });
        }
    }
    SourceTables { points, cells }
}

fn clone_patch(p: &Patch) -> Patch {
    match p {
        Patch::Arc { phi_lo, phi_hi } => Patch::Arc {
            phi_lo: *phi_lo,
            phi_hi: *phi_hi,
        },
        Patch::Box {
            t_lo,
            t_hi,
            phi_lo,
            phi_hi,
        } => Patch::Box {
            t_lo: *t_lo,
            t_hi: *t_hi,
            phi_lo: *phi_lo,
            phi_hi: *phi_hi,
        },
    }
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let dz = a[2] - b[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Midpoint integral of |x−y|^{−γ} times the constant cell mean over a
/// subdivided cell; the sub-cell containing the target is replaced by the
/// exact kernel integral over the measure-equivalent ball.
fn refined_cell_integral(cell: &Cell, x: &[f64; 3], gamma: f64, n: u32) -> f64 {
    let du = (cell.u_hi - cell.u_lo) / REFINE as f64;
    let mut total = 0.0;
    match &cell.patch {
        Patch::Arc { phi_lo, phi_hi } => {
            let dphi = (phi_hi - phi_lo) / REFINE as f64;
            for a in 0..REFINE {
                let u = cell.u_lo + (a as f64 + 0.5) * du;
                let rho = u.exp();
                for b in 0..REFINE {
                    let ang = phi_lo + (b as f64 + 0.5) * dphi;
                    let y = [rho * ang.cos(), rho * ang.sin(), 0.0];
                    let measure = rho * rho * du * dphi;
                    total += sub_contribution(x, &y, measure, gamma, n);
                }
            }
        }
        Patch::Box {
            t_lo,
            t_hi,
            phi_lo,
            phi_hi,
        } => {
            let dt = (t_hi - t_lo) / REFINE as f64;
            let dphi = (phi_hi - phi_lo) / REFINE as f64;
            for a in 0..REFINE {
                let u = cell.u_lo + (a as f64 + 0.5) * du;
                let rho = u.exp();
                for b in 0..REFINE {
                    let t = t_lo + (b as f64 + 0.5) * dt;
                    let sin_theta = (1.0 - t * t).max(0.0).sqrt();
                    for c in 0..REFINE {
                        let ang = phi_lo + (c as f64 + 0.5) * dphi;
                        let y = [rho * sin_theta * ang.cos(), rho * sin_theta * ang.sin(), rho * t];
                        let measure = rho.powi(3) * du * dt * dphi;
                        total += sub_contribution(x, &y, measure, gamma, n);
                    }
                }
            }
        }
    }
    cell.mean * total
}

fn sub_contribution(x: &[f64; 3], y: &[f64; 3], measure: f64, gamma: f64, n: u32) -> f64 {
    let d = dist(x, y);
    let scale = if n == 2 {
        (measure / std::f64::consts::PI).sqrt()
    } else {
        (3.0 * measure / (4.0 * std::f64::consts::PI)).cbrt()
    };
    if d > 0.75 * scale {
        measure * d.powf(-gamma)
    } else {
        // exact kernel mass of the measure-equivalent ball centred at y
        let s = unit_sphere_measure(n - 1);
        s * scale.powf(n as f64 - gamma) / (n as f64 - gamma)
    }
}

/// Evaluate the fractional integral of `phi` with kernel power γ ∈ (0, n)
/// at the given targets. Panels within two mesh lengths of a target are
/// re-integrated on an 8× subdivision with the sample replaced by its
/// panel mean.
pub fn riesz_potential_direct(
    phi: &GridFunction,
    gamma: f64,
    targets: &[[f64; 3]],
) -> Result<PotentialValues, OperatorError> {
    let n = phi.grid.n;
    if !(gamma > 0.0 && gamma < n as f64) {
        return Err(OperatorError::GammaOutOfRange {
            gamma,
            n,
            inclusive: false,
        });
    }
    let tables = build_tables(phi);
    let results: Vec<(f64, bool)> = targets
        .par_iter()
        .map(|x| {
            let mut value: f64 = tables
                .points
                .iter()
                .map(|(y, w)| w * dist(x, y).powf(-gamma))
                .sum();
            let mut correction = 0.0;
            for cell in &tables.cells {
                if dist(x, &cell.center) >= 2.0 * cell.mesh + 0.5 * cell.mesh {
                    continue;
                }
                let naive: f64 = cell
                    .nodes
                    .iter()
                    .map(|&(i, j)| {
                        let v = phi.value(i, j);
                        if v == 0.0 {
                            return 0.0;
                        }
                        let d = phi.angular.nodes[j];
                        let rho = phi.grid.nodes[i];
                        let y = [rho * d[0], rho * d[1], rho * d[2]];
                        phi.grid.volume_weight(i) * phi.angular.weights[j] * v
                            * dist(x, &y).powf(-gamma)
                    })
                    .sum();
                let refined = refined_cell_integral(cell, x, gamma, n);
                value += refined - naive;
                correction += (refined - naive).abs();
            }
            (value, correction > ACCURACY_FLAG_FRACTION * value.abs())
        })
        .collect();
    let (values, flagged) = results.into_iter().unzip();
    Ok(PotentialValues { values, flagged })
}

/// Fast n=2 evaluation on the tensor grid (output radii × the source's
/// uniform circle rule): at each radius pair the angular sum is an exact
/// circular convolution, carried out by FFT, after which the same
/// singular-panel corrections as in [`riesz_potential_direct`] are applied.
/// Up to roundoff the result equals the direct sum at every grid point.
pub fn riesz_potential_circle_grid(
    phi: &GridFunction,
    gamma: f64,
    radial_out: &crate::discretization::RadialGrid,
) -> Result<PotentialValues, OperatorError> {
    use rustfft::num_complex::Complex;
    use rustfft::FftPlanner;

    let n = phi.grid.n;
    if n != 2 {
        return Err(OperatorError::BadFamily(
            "circle-grid fast path needs n = 2".into(),
        ));
    }
    if !(gamma > 0.0 && gamma < 2.0) {
        return Err(OperatorError::GammaOutOfRange {
            gamma,
            n,
            inclusive: false,
        });
    }
    let m = phi.angular.len();
    let kern = move |d_sq: f64| d_sq.max(1e-280).powf(-0.5 * gamma);

    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(m);
    let ifft = planner.plan_fft_inverse(m);

    // weighted source-ring spectra
    let mut ring_spectra: Vec<(usize, Vec<Complex<f64>>)> = Vec::new();
    for i in 0..phi.grid.len() {
        let ring = phi.ring(i);
        if ring.iter().all(|v| *v == 0.0) {
            continue;
        }
        let wv = phi.grid.volume_weight(i);
        let mut buf: Vec<Complex<f64>> = ring
            .iter()
            .zip(&phi.angular.weights)
            .map(|(v, w)| Complex::new(wv * w * v, 0.0))
            .collect();
        fft.process(&mut buf);
        ring_spectra.push((i, buf));
    }

    let two_pi = 2.0 * std::f64::consts::PI;
    let mut values: Vec<f64> = radial_out
        .nodes
        .par_iter()
        .flat_map(|&r| {
            let mut acc = vec![Complex::new(0.0, 0.0); m];
            let mut kernel = vec![Complex::new(0.0, 0.0); m];
            let fft = fft.clone();
            for (i, spectrum) in &ring_spectra {
                let rho = phi.grid.nodes[*i];
                for (j, slot) in kernel.iter_mut().enumerate() {
                    let angle = two_pi * j as f64 / m as f64;
                    let d_sq = r * r + rho * rho - 2.0 * r * rho * angle.cos();
                    *slot = Complex::new(kern(d_sq), 0.0);
                }
                fft.process(&mut kernel);
                for (a, (k, s)) in acc.iter_mut().zip(kernel.iter().zip(spectrum)) {
                    *a += k * s;
                }
            }
            ifft.process(&mut acc);
            acc.into_iter().map(|c| c.re / m as f64).collect::<Vec<f64>>()
        })
        .collect();

    // singular-panel corrections, identical to the direct path
    let tables = build_tables(phi);
    let mut corrections = vec![0.0f64; values.len()];
    for cell in &tables.cells {
        let reach = 2.5 * cell.mesh;
        let rho_c = (cell.center[0] * cell.center[0] + cell.center[1] * cell.center[1]).sqrt();
        let phi_c = cell.center[1].atan2(cell.center[0]);
        for (k, &r) in radial_out.nodes.iter().enumerate() {
            if (r - rho_c).abs() >= reach {
                continue;
            }
            for j in 0..m {
                let angle = two_pi * j as f64 / m as f64;
                let x = [r * angle.cos(), r * angle.sin(), 0.0];
                let mut delta = (angle - phi_c).abs() % two_pi;
                if delta > std::f64::consts::PI {
                    delta = two_pi - delta;
                }
                // quick angular reject before the exact distance test
                if rho_c.min(r) * delta > reach + 1e-12 {
                    continue;
                }
                if dist(&x, &cell.center) >= reach {
                    continue;
                }
                let naive: f64 = cell
                    .nodes
                    .iter()
                    .map(|&(i, jj)| {
                        let v = phi.value(i, jj);
                        if v == 0.0 {
                            return 0.0;
                        }
                        let d = phi.angular.nodes[jj];
                        let rho = phi.grid.nodes[i];
                        let y = [rho * d[0], rho * d[1], 0.0];
                        let dd = (x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2);
                        phi.grid.volume_weight(i) * phi.angular.weights[jj] * v * kern(dd)
                    })
                    .sum();
                let refined = refined_cell_integral(cell, &x, gamma, 2);
                values[k * m + j] += refined - naive;
                corrections[k * m + j] += (refined - naive).abs();
            }
        }
    }
    let flagged = corrections
        .iter()
        .zip(&values)
        .map(|(c, v)| *c > ACCURACY_FLAG_FRACTION * v.abs())
        .collect();
    Ok(PotentialValues { values, flagged })
}

/// A radial source profile: a support interval and point evaluation.
pub struct RadialProfile<'a> {
    pub support: (f64, f64),
    eval: Box<dyn Fn(f64) -> f64 + Sync + 'a>,
}

impl<'a> RadialProfile<'a> {
    pub fn from_fn<F: Fn(f64) -> f64 + Sync + 'a>(support: (f64, f64), f: F) -> Self {
        RadialProfile {
            support,
            eval: Box::new(f),
        }
    }

    /// Piecewise-linear interpolation (in log ρ) of radial samples; zero
    /// outside the sampled range.
    pub fn from_samples(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self, OperatorError> {
        if nodes.len() != values.len() || nodes.len() < 2 {
            return Err(OperatorError::BadFamily("need at least two radial samples".into()));
        }
        let support = (nodes[0], nodes[nodes.len() - 1]);
        let logs: Vec<f64> = nodes.iter().map(|x| x.ln()).collect();
        Ok(RadialProfile {
            support,
            eval: Box::new(move |rho: f64| {
                let u = rho.ln();
                if u < logs[0] || u > logs[logs.len() - 1] {
                    return 0.0;
                }
                let k = logs.partition_point(|&l| l < u).clamp(1, logs.len() - 1);
                let t = (u - logs[k - 1]) / (logs[k] - logs[k - 1]);
                values[k - 1] * (1.0 - t) + values[k] * t
            }),
        })
    }

    pub fn value(&self, rho: f64) -> f64 {
        (self.eval)(rho)
    }
}

/// Radially reduced fractional integral: for radial φ,
/// Tφ(r) = ∫ φ(ρ) ρ^{n−1−γ} I_γ(r/ρ) dρ, with the spherical integral
/// evaluated by the exact n=3 formula or by quadrature for n=2.
pub fn riesz_potential_radial_reduced(
    profile: &RadialProfile,
    n: u32,
    gamma: f64,
    target_radius: f64,
) -> Result<f64, OperatorError> {
    if !(gamma > 0.0 && gamma < n as f64) {
        return Err(OperatorError::GammaOutOfRange {
            gamma,
            n,
            inclusive: false,
        });
    }
    let (a, b) = profile.support;
    if !(a > 0.0 && b > a) {
        return Err(OperatorError::BadFamily("empty radial support".into()));
    }
    let table = if n == 3 { None } else { Some(spherical_table(n, gamma)) };
    let inner = move |s: f64| -> f64 {
        match &table {
            None => match i_nu_closed_form_n3(gamma, s) {
                Ok(v) => v,
                Err(_) => f64::INFINITY,
            },
            Some(table) => table.eval(s),
        }
    };
    let integrand = |u: f64| -> f64 {
        let rho = u.exp();
        let v = profile.value(rho);
        if v == 0.0 {
            return 0.0;
        }
        v * rho.powf(n as f64 - gamma) * inner(target_radius / rho)
    };
    // split at the kernel's singular radius ρ = r
    let (ulo, uhi) = (a.ln(), b.ln());
    let mut cuts = vec![ulo, uhi];
    if target_radius > a && target_radius < b {
        cuts.insert(1, target_radius.ln());
    }
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let out = match adaptive_integrate(&integrand, w[0], w[1], 1e-6, 400_000) {
            Ok(o) => o.value,
            Err(KernelError::BudgetExceeded { value, .. }) => value,
            Err(e) => return Err(OperatorError::Kernel(e.to_string())),
        };
        total += out;
    }
    Ok(total)
}

/// Potential with the bounded smooth kernel ⟨x−y⟩^{−γ}; no singularity
/// handling is needed.
pub fn bessel_like_potential(
    phi: &GridFunction,
    gamma: f64,
    targets: &[[f64; 3]],
) -> Result<Vec<f64>, OperatorError> {
    if gamma <= 0.0 {
        return Err(OperatorError::GammaOutOfRange {
            gamma,
            n: phi.grid.n,
            inclusive: true,
        });
    }
    let tables = build_tables(phi);
    Ok(targets
        .par_iter()
        .map(|x| {
            tables
                .points
                .iter()
                .map(|(y, w)| {
                    let d = dist(x, y);
                    w * (1.0 + d * d).powf(-0.5 * gamma)
                })
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discretization::{make_angular_quadrature, GridFunction, RadialGrid};
    use std::f64::consts::PI;

    fn unit_ball(n: u32, per_decade: usize, resolution: usize) -> GridFunction {
        let grid = RadialGrid::with_breakpoints(n, 1e-3, 4.0, per_decade, &[1.0]).unwrap();
        let angular = make_angular_quadrature(n, resolution).unwrap();
        GridFunction::from_fn(grid, angular, |rho, _| if rho <= 1.0 { 1.0 } else { 0.0 }).unwrap()
    }

    #[test]
    fn ball_potential_at_origin_is_exact() {
        // T_γ(1_B)(0) = |S^{n−1}|/(n−γ)
        let phi = unit_ball(3, 48, 12);
        let out = riesz_potential_direct(&phi, 1.0, &[[0.0, 0.0, 0.0]]).unwrap();
        let exact = 4.0 * PI / 2.0;
        assert!(
            (out.values[0] / exact - 1.0).abs() < 1e-3,
            "{} vs {exact}",
            out.values[0]
        );
        assert!(!out.flagged[0]);
    }

    #[test]
    fn ball_potential_far_field_n2() {
        // far field ≈ area/|x| = π/10 within 2%
        let phi = unit_ball(2, 48, 32);
        let out = riesz_potential_direct(&phi, 1.0, &[[10.0, 0.0, 0.0]]).unwrap();
        let approx = PI / 10.0;
        assert!(
            (out.values[0] / approx - 1.0).abs() < 0.02,
            "{} vs {approx}",
            out.values[0]
        );
    }

    #[test]
    fn linearity() {
        let grid = RadialGrid::with_breakpoints(2, 1e-2, 4.0, 32, &[1.0, 2.0]).unwrap();
        let angular = make_angular_quadrature(2, 16).unwrap();
        let f1 = GridFunction::from_fn(grid.clone(), angular.clone(), |rho, _| {
            if rho <= 1.0 {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let f2 = GridFunction::from_fn(grid.clone(), angular.clone(), |rho, t| {
            if rho <= 2.0 {
                1.0 + 0.5 * t[0]
            } else {
                0.0
            }
        })
        .unwrap();
        let combo = GridFunction::from_fn(grid, angular, |rho, t| {
            2.0 * (if rho <= 1.0 { 1.0 } else { 0.0 })
                + 3.0 * (if rho <= 2.0 { 1.0 + 0.5 * t[0] } else { 0.0 })
        })
        .unwrap();
        let targets = [[0.3, 0.2, 0.0], [1.5, -0.4, 0.0], [5.0, 0.0, 0.0]];
        let v1 = riesz_potential_direct(&f1, 0.7, &targets).unwrap().values;
        let v2 = riesz_potential_direct(&f2, 0.7, &targets).unwrap().values;
        let vc = riesz_potential_direct(&combo, 0.7, &targets).unwrap().values;
        for k in 0..targets.len() {
            let expect = 2.0 * v1[k] + 3.0 * v2[k];
            assert!((vc[k] / expect - 1.0).abs() < 1e-10, "{} vs {expect}", vc[k]);
        }
    }

    #[test]
    fn radial_reduced_matches_exact_center_value() {
        let profile = RadialProfile::from_fn((1e-6, 1.0), |_| 1.0);
        let v = riesz_potential_radial_reduced(&profile, 3, 1.0, 0.0).unwrap();
        assert!((v / (2.0 * PI) - 1.0).abs() < 1e-4, "{v}");
    }

    #[test]
    fn radial_reduced_agrees_with_direct() {
        let phi = unit_ball(3, 48, 12);
        let profile = RadialProfile::from_fn((1e-3, 1.0), |_| 1.0);
        for r in [0.5, 2.0] {
            let direct = riesz_potential_direct(&phi, 1.0, &[[r, 0.0, 0.0]])
                .unwrap()
                .values[0];
            let reduced = riesz_potential_radial_reduced(&profile, 3, 1.0, r).unwrap();
            assert!(
                (direct / reduced - 1.0).abs() < 1e-3,
                "r={r}: {direct} vs {reduced}"
            );
        }
    }

    #[test]
    fn smooth_kernel_pointwise_domination_and_value() {
        let phi = unit_ball(3, 32, 10);
        let targets = [[0.0, 0.0, 0.0], [0.7, 0.1, 0.2], [3.0, 0.0, 0.0]];
        let s = bessel_like_potential(&phi, 1.0, &targets).unwrap();
        let t = riesz_potential_direct(&phi, 1.0, &targets).unwrap().values;
        for k in 0..targets.len() {
            assert!(s[k] <= t[k] * (1.0 + 1e-10), "{} vs {}", s[k], t[k]);
            assert!(s[k] > 0.0);
        }
        // 4π ∫_0^1 ρ²(1+ρ²)^{-2} dρ = 4π(π/8 − 1/4)
        let v = bessel_like_potential(&phi, 4.0, &[[0.0, 0.0, 0.0]]).unwrap()[0];
        let exact = 4.0 * PI * (PI / 8.0 - 0.25);
        assert!((v / exact - 1.0).abs() < 1e-3, "{v} vs {exact}");
        // radial input gives radial output
        let rot = bessel_like_potential(&phi, 4.0, &[[0.6, 0.0, 0.0], [0.0, 0.6, 0.0], [0.0, 0.0, -0.6]]).unwrap();
        assert!((rot[0] / rot[1] - 1.0).abs() < 1e-10);
        assert!((rot[0] / rot[2] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn circle_grid_path_matches_direct() {
        let grid = RadialGrid::with_breakpoints(2, 0.5, 2.0, 32, &[1.0]).unwrap();
        let angular = make_angular_quadrature(2, 64).unwrap();
        let phi = GridFunction::from_fn(grid, angular, |rho, t| {
            if rho <= 1.0 {
                (1.0 + 5.0 * (1.0 - t[0])).powi(-3)
            } else {
                0.0
            }
        })
        .unwrap();
        let out = RadialGrid::log_spaced(2, 0.2, 5.0, 24).unwrap();
        let fast = riesz_potential_circle_grid(&phi, 1.25, &out).unwrap();
        let mut targets = Vec::new();
        for &r in &out.nodes {
            for node in &phi.angular.nodes {
                targets.push([r * node[0], r * node[1], 0.0]);
            }
        }
        let direct = riesz_potential_direct(&phi, 1.25, &targets).unwrap();
        for (a, b) in fast.values.iter().zip(&direct.values) {
            assert!((a - b).abs() <= 1e-8 * b.abs(), "{a} vs {b}");
        }
        assert_eq!(fast.flagged, direct.flagged);
    }

    #[test]
    fn gamma_domain_is_enforced() {
        let phi = unit_ball(2, 16, 8);
        assert!(riesz_potential_direct(&phi, 0.0, &[[0.0; 3]]).is_err());
        assert!(riesz_potential_direct(&phi, 2.0, &[[0.0; 3]]).is_err());
        assert!(bessel_like_potential(&phi, -1.0, &[[0.0; 3]]).is_err());
        assert!(bessel_like_potential(&phi, 5.0, &[[0.0; 3]]).is_ok());
    }
}
