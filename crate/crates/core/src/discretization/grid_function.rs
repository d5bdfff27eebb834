//! Sampled functions on a radial × angular product grid, with a CSV
//! interchange format (see `docs/formats.md`).

use std::io::{BufRead, Write};

use super::angular::{make_angular_quadrature, AngularQuadrature};
use super::radial::{GridSegment, RadialGrid};
use super::DiscretizationError;

/// Samples indexed by (radial node, angular node); immutable after
/// construction.
#[derive(Debug, Clone)]
pub struct GridFunction {
    pub grid: RadialGrid,
    pub angular: AngularQuadrature,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(
        grid: RadialGrid,
        angular: AngularQuadrature,
        values: Vec<f64>,
    ) -> Result<Self, DiscretizationError> {
        if grid.n != angular.n {
            return Err(DiscretizationError::DimensionMismatch);
        }
        if values.len() != grid.len() * angular.len() {
            return Err(DiscretizationError::DimensionMismatch);
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(DiscretizationError::InvalidValues);
        }
        Ok(GridFunction {
            grid,
            angular,
            values,
        })
    }

    /// Sample f(ρ, θ) at every grid point.
    pub fn from_fn<F: Fn(f64, &[f64; 3]) -> f64>(
        grid: RadialGrid,
        angular: AngularQuadrature,
        f: F,
    ) -> Result<Self, DiscretizationError> {
        let mut values = Vec::with_capacity(grid.len() * angular.len());
        for &rho in &grid.nodes {
            for node in &angular.nodes {
                values.push(f(rho, node));
            }
        }
        Self::new(grid, angular, values)
    }

    pub fn value(&self, radial: usize, angular: usize) -> f64 {
        self.values[radial * self.angular.len() + angular]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Samples on the radial ring `radial`.
    pub fn ring(&self, radial: usize) -> &[f64] {
        let m = self.angular.len();
        &self.values[radial * m..(radial + 1) * m]
    }

    /// Pointwise scaling by a constant; the only mutation-shaped operation,
    /// returning a fresh function.
    pub fn scaled(&self, c: f64) -> GridFunction {
        GridFunction {
            grid: self.grid.clone(),
            angular: self.angular.clone(),
            values: self.values.iter().map(|v| c * v).collect(),
        }
    }

    /// Whether the samples are constant on every ring (radial function).
    pub fn is_radial(&self, tol: f64) -> bool {
        (0..self.grid.len()).all(|i| {
            let ring = self.ring(i);
            let first = ring[0];
            ring.iter().all(|v| (v - first).abs() <= tol * first.abs().max(1.0))
        })
    }

    /// Write the documented CSV form: `n`, the radial segments, the angular
    /// resolution, then one `rho_index,theta_index,value` row per sample.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<(), DiscretizationError> {
        let io = |e: std::io::Error| DiscretizationError::Io(e.to_string());
        writeln!(out, "n,{}", self.grid.n).map_err(io)?;
        let segments: Vec<String> = self
            .grid
            .segments
            .iter()
            .map(|s| format!("{:e}:{:e}:{}", s.lo, s.hi, s.nodes_per_decade))
            .collect();
        writeln!(out, "radial,{}", segments.join(";")).map_err(io)?;
        writeln!(out, "angular,{}", self.angular.resolution).map_err(io)?;
        writeln!(out, "rho_index,theta_index,value").map_err(io)?;
        for i in 0..self.grid.len() {
            for j in 0..self.angular.len() {
                writeln!(out, "{},{},{:e}", i, j, self.value(i, j)).map_err(io)?;
            }
        }
        Ok(())
    }

    /// Read the CSV form back; the grids are reconstructed from the header.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self, DiscretizationError> {
        let bad = |msg: &str| DiscretizationError::Csv(msg.to_string());
        let mut lines = input.lines();
        let mut next_line = || -> Result<String, DiscretizationError> {
            lines
                .next()
                .ok_or_else(|| bad("truncated header"))?
                .map_err(|e| DiscretizationError::Io(e.to_string()))
        };
        let n_line = next_line()?;
        let n: u32 = n_line
            .strip_prefix("n,")
            .ok_or_else(|| bad("expected n,<dim>"))?
            .trim()
            .parse()
            .map_err(|_| bad("bad dimension"))?;
        let radial_line = next_line()?;
        let spec = radial_line
            .strip_prefix("radial,")
            .ok_or_else(|| bad("expected radial,<segments>"))?;
        let mut segments = Vec::new();
        for part in spec.split(';') {
            let fields: Vec<&str> = part.split(':').collect();
            if fields.len() != 3 {
                return Err(bad("segment must be lo:hi:nodes_per_decade"));
            }
            segments.push(GridSegment {
                lo: fields[0].parse().map_err(|_| bad("bad segment lo"))?,
                hi: fields[1].parse().map_err(|_| bad("bad segment hi"))?,
                nodes_per_decade: fields[2].parse().map_err(|_| bad("bad segment density"))?,
            });
        }
        let angular_line = next_line()?;
        let resolution: usize = angular_line
            .strip_prefix("angular,")
            .ok_or_else(|| bad("expected angular,<resolution>"))?
            .trim()
            .parse()
            .map_err(|_| bad("bad angular resolution"))?;
        next_line()?; // column header

        let grid = RadialGrid::graded(n, &segments)?;
        let angular = make_angular_quadrature(n, resolution)?;
        let mut values = vec![f64::NAN; grid.len() * angular.len()];
        for line in lines {
            let line = line.map_err(|e| DiscretizationError::Io(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(bad("data rows must be rho_index,theta_index,value"));
            }
            let i: usize = fields[0].trim().parse().map_err(|_| bad("bad rho_index"))?;
            let j: usize = fields[1].trim().parse().map_err(|_| bad("bad theta_index"))?;
            let v: f64 = fields[2].trim().parse().map_err(|_| bad("bad value"))?;
            let idx = i * angular.len() + j;
            if idx >= values.len() {
                return Err(bad("index out of range"));
            }
            values[idx] = v;
        }
        GridFunction::new(grid, angular, values)
    }
}
