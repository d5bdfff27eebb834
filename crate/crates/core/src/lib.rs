//! mixed-norm-lab: numerical toolkit for weighted fractional integrals in
//! mixed radial-angular Lebesgue norms.
//!
//! The crate has three layers:
//!
//! * [`exponents`] — exact rational checkers for every admissibility system
//!   (weighted fractional integrals, their radial and mixed refinements,
//!   non-homogeneous kernels, weighted Sobolev embeddings, interpolation
//!   inequalities, wave-equation admissibility), plus region scans.
//! * [`kernels`], [`discretization`], [`operators`] — sharp spherical-kernel
//!   envelopes with quadrature oracles, angular/radial grids with mixed-norm
//!   evaluation, and the potential operators with test-function families.
//! * [`probes`] — empirical sharpness sweeps tying the numerics back to the
//!   exact checkers.

pub mod discretization;
pub mod exponents;
pub mod kernels;
pub mod operators;
pub mod probes;
