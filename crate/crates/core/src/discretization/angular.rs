//! Angular quadrature on S^{n−1} for n = 2, 3.

use std::f64::consts::PI;

use crate::kernels::{gauss_legendre, unit_sphere_measure};

use super::DiscretizationError;

/// Quadrature nodes (unit vectors) and positive weights summing to the
/// sphere measure. For n = 2 the rule is the uniform circle rule, exact for
/// trigonometric polynomials of degree < resolution; for n = 3 it is a
/// Gauss-Legendre × uniform-azimuth product rule with `resolution` polar
/// nodes and `2·resolution` azimuthal nodes, exact up to degree
/// 2·resolution − 1.
#[derive(Debug, Clone)]
pub struct AngularQuadrature {
    pub n: u32,
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
    pub resolution: usize,
}

/// Build the angular rule; n must be 2 or 3 and resolution ≥ 4.
pub fn make_angular_quadrature(
    n: u32,
    resolution: usize,
) -> Result<AngularQuadrature, DiscretizationError> {
    if resolution < 4 {
        return Err(DiscretizationError::ResolutionTooSmall(resolution));
    }
    match n {
        2 => {
            let weight = 2.0 * PI / resolution as f64;
            let (nodes, weights) = (0..resolution)
                .map(|j| {
                    let phi = 2.0 * PI * j as f64 / resolution as f64;
                    ([phi.cos(), phi.sin(), 0.0], weight)
                })
                .unzip();
            Ok(AngularQuadrature {
                n,
                nodes,
                weights,
                resolution,
            })
        }
        3 => {
            let (t_nodes, t_weights) = gauss_legendre(resolution);
            let m_azimuth = 2 * resolution;
            let azimuth_weight = 2.0 * PI / m_azimuth as f64;
            let mut nodes = Vec::with_capacity(resolution * m_azimuth);
            let mut weights = Vec::with_capacity(resolution * m_azimuth);
            for (t, tw) in t_nodes.iter().zip(&t_weights) {
                let sin_theta = (1.0 - t * t).max(0.0).sqrt();
                for k in 0..m_azimuth {
                    let phi = 2.0 * PI * k as f64 / m_azimuth as f64;
                    nodes.push([sin_theta * phi.cos(), sin_theta * phi.sin(), *t]);
                    weights.push(tw * azimuth_weight);
                }
            }
            Ok(AngularQuadrature {
                n,
                nodes,
                weights,
                resolution,
            })
        }
        other => Err(DiscretizationError::UnsupportedDimension(other)),
    }
}

impl AngularQuadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫_{S^{n−1}} f dS by the rule.
    pub fn integrate<F: Fn(&[f64; 3]) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(node, w)| w * f(node))
            .sum()
    }

    /// Total measure |S^{n−1}| the weights should reproduce.
    pub fn sphere_measure(&self) -> f64 {
        unit_sphere_measure(self.n - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_circle_rule() {
        let q = make_angular_quadrature(2, 8).unwrap();
        assert_eq!(q.len(), 8);
        for w in &q.weights {
            assert!((w - PI / 4.0).abs() < 1e-15);
        }
        let sum: f64 = q.weights.iter().sum();
        assert!((sum - 2.0 * PI).abs() < 1e-12);
        // exact for low trigonometric degree
        let v = q.integrate(|x| x[0] * x[0]);
        assert!((v - PI).abs() < 1e-13);
        let v = q.integrate(|x| x[0] * x[1] * x[1]);
        assert!(v.abs() < 1e-13);
    }

    #[test]
    fn sphere_product_rule() {
        let q = make_angular_quadrature(3, 16).unwrap();
        assert_eq!(q.len(), 16 * 32);
        let sum: f64 = q.weights.iter().sum();
        assert!((sum / (4.0 * PI) - 1.0).abs() < 1e-12);
        // ∫ z² = 4π/3, ∫ x² y² = 4π/15, odd moments vanish
        let v = q.integrate(|x| x[2] * x[2]);
        assert!((v - 4.0 * PI / 3.0).abs() < 1e-10);
        let v = q.integrate(|x| x[0] * x[0] * x[1] * x[1]);
        assert!((v - 4.0 * PI / 15.0).abs() < 1e-10);
        let v = q.integrate(|x| x[0] * x[1] * x[2]);
        assert!(v.abs() < 1e-12);
        let v = q.integrate(|_| 1.0);
        assert!((v - 4.0 * PI).abs() < 1e-11);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_angular_quadrature(4, 16).is_err());
        assert!(make_angular_quadrature(2, 3).is_err());
    }
}
