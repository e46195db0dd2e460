//! Boundary element solver for the Laplace-Beltrami equation on the unit
//! sphere.
//!
//! A Dirichlet problem on a region of the sphere bounded by a smooth closed
//! curve is reformulated as a first-kind integral equation for a
//! single-layer density, with a zero-mean constraint enforced by a Lagrange
//! multiplier, and discretized by Galerkin's method with piecewise-constant
//! densities. A second-kind double-layer formulation is provided as well.
//!
//! ```
//! use sphere_bem::{BoundaryCurve, DirichletData, SphericalPoint};
//! use sphere_bem::{eval_single_layer, solve_dirichlet_single_layer};
//!
//! let equator = BoundaryCurve::latitude_circle(std::f64::consts::FRAC_PI_2)?;
//! let sol = solve_dirichlet_single_layer(&equator, &DirichletData::sine(1), 80)?;
//! let u = eval_single_layer(&sol, &SphericalPoint::new(1.0, 2.0)?)?;
//! assert!((u - (1.0f64).tan().recip() * 1.0f64.sin()).abs() < 1e-4);
//! # Ok::<(), sphere_bem::BemError>(())
//! ```

pub mod data;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod kernels;
pub mod operators;
pub mod potential;
pub mod quadrature;
pub mod reference;

#[cfg(test)]
mod oracle;

pub use data::{hat_data, DataKind, DirichletData};
pub use error::{BemError, Result};
pub use geometry::{
    panelize, BoundaryCurve, CurveKind, CurveSample, Orientation, Panelization, SphericalPoint,
    TangentVector, Vec3,
};
pub use harness::{
    emit_csv, emit_field_grid, l2_error_on_latitude, run_convergence, ConvergenceReport,
    ConvergenceRow, CurveSpec, DataSpec, ExperimentConfig, GridSpec,
};
pub use kernels::{
    curl_fundamental, double_layer_kernel, fundamental_solution, single_layer_kernel,
};
pub use operators::{
    assemble_constraint, assemble_k, assemble_v, galerkin_rhs, solve_dirichlet_double_layer,
    solve_dirichlet_single_layer, BorderedSystem, DensitySolution, DoubleLayerSolution,
};
pub use potential::{
    eval_double_layer, eval_single_layer, harmonicity_defect, laplace_beltrami_fd, layer_potential,
    FieldSample, Layer,
};
pub use quadrature::{gauss_legendre, gauss_log, periodic_trapezoid, LogSplit, QuadratureRule};
pub use reference::{harmonic_mode, harmonic_mode_cos, poisson_hemisphere};
