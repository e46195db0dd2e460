//! Galerkin boundary operators with piecewise-constant densities and the
//! resulting dense linear systems.

mod double_layer;
mod single_layer;

pub use double_layer::{
    assemble_k, assemble_k_with, solve_dirichlet_double_layer, DoubleLayerSolution,
};
pub use single_layer::{assemble_constraint, assemble_v, assemble_v_with, GalerkinQuadrature};

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, DVector};

use crate::data::DirichletData;
use crate::error::{BemError, Result};
use crate::geometry::{panelize, BoundaryCurve, Panelization, PANEL_GAUSS_POINTS};
use crate::quadrature::gauss_legendre;

/// Pivot ratios above this are reported as a singular system.
const SINGULAR_PIVOT_RATIO: f64 = 1e14;
const KINK_SCAN_POINTS: usize = 32;

/// The saddle-point system `[[V, L], [L^T, 0]] [sigma; p] = [b; 0]`.
#[derive(Debug, Clone)]
pub struct BorderedSystem {
    pub matrix: DMatrix<f64>,
    pub rhs: DVector<f64>,
}

impl BorderedSystem {
    pub fn new(v: &DMatrix<f64>, lengths: &DVector<f64>, load: &DVector<f64>) -> Self {
        let n = v.nrows();
        let mut matrix = DMatrix::zeros(n + 1, n + 1);
        matrix.view_mut((0, 0), (n, n)).copy_from(v);
        for i in 0..n {
            matrix[(i, n)] = lengths[i];
            matrix[(n, i)] = lengths[i];
        }
        let mut rhs = DVector::zeros(n + 1);
        rhs.rows_mut(0, n).copy_from(load);
        Self { matrix, rhs }
    }

    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    /// Dense LU with partial pivoting. Returns the solution and the ratio of
    /// largest to smallest pivot magnitude as a condition estimate.
    pub fn solve(&self) -> Result<(DVector<f64>, f64)> {
        solve_dense(self.matrix.clone(), &self.rhs)
    }
}

pub(crate) fn solve_dense(matrix: DMatrix<f64>, rhs: &DVector<f64>) -> Result<(DVector<f64>, f64)> {
    let size = rhs.len();
    let lu = matrix.lu();
    let pivots = lu.u().diagonal().map(f64::abs);
    let condition = pivots.max() / pivots.min();
    if !condition.is_finite() || condition > SINGULAR_PIVOT_RATIO {
        return Err(BemError::SingularSystem { size, condition });
    }
    let x = lu
        .solve(rhs)
        .ok_or(BemError::SingularSystem { size, condition })?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(BemError::SingularSystem { size, condition });
    }
    Ok((x, condition))
}

/// Piecewise-constant single-layer density and the Lagrange multiplier,
/// which is the additive constant of the solution.
#[derive(Debug, Clone)]
pub struct DensitySolution {
    pub coefficients: Vec<f64>,
    pub multiplier: f64,
    pub panelization: Panelization,
    pub condition_estimate: f64,
}

impl DensitySolution {
    /// `sum_i sigma_i |Omega_i|`, zero up to round-off.
    pub fn total_charge(&self) -> f64 {
        self.coefficients
            .iter()
            .zip(self.panelization.panel_lengths())
            .map(|(s, l)| s * l)
            .sum()
    }
}

/// Azimuth of the curve at parameter `s`.
fn azimuth(curve: &BoundaryCurve, s: f64) -> f64 {
    curve.param(s).phi()
}

/// Signed angular offset of `phi` from `k`, in `(-pi, pi]`.
fn angle_offset(phi: f64, k: f64) -> f64 {
    let d = (phi - k).rem_euclid(TAU);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Parameter values inside `(a, b)` where the curve azimuth passes a data kink.
pub(crate) fn kink_parameters(curve: &BoundaryCurve, a: f64, b: f64, kinks: &[f64]) -> Vec<f64> {
    let mut found = Vec::new();
    if kinks.is_empty() {
        return found;
    }
    let step = (b - a) / KINK_SCAN_POINTS as f64;
    for &k in kinks {
        let off = |s: f64| angle_offset(azimuth(curve, s), k);
        let mut lo = a;
        let mut f_lo = off(lo);
        for q in 1..=KINK_SCAN_POINTS {
            let hi = if q == KINK_SCAN_POINTS {
                b
            } else {
                a + q as f64 * step
            };
            let f_hi = off(hi);
            if f_hi == 0.0 {
                found.push(hi);
            } else if f_lo != 0.0 && f_lo.signum() != f_hi.signum() && (f_lo - f_hi).abs() < PI {
                // A genuine crossing, not the wrap from pi to -pi.
                let (mut l, mut h) = (lo, hi);
                for _ in 0..200 {
                    let mid = 0.5 * (l + h);
                    if mid <= l || mid >= h {
                        break;
                    }
                    let fm = off(mid);
                    if fm == 0.0 {
                        (l, h) = (mid, mid);
                        break;
                    }
                    if fm.signum() == f_lo.signum() {
                        l = mid;
                    } else {
                        h = mid;
                    }
                }
                found.push(0.5 * (l + h));
            }
            lo = hi;
            f_lo = f_hi;
        }
    }
    found.retain(|&s| s > a && s < b);
    found.sort_by(f64::total_cmp);
    found.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    found
}

/// Load vector `<g, chi_i>` by 12-point Gauss on each panel, split at the
/// data kinks that fall inside a panel.
pub fn galerkin_rhs(pan: &Panelization, g: &DirichletData) -> DVector<f64> {
    let curve = pan.curve();
    let unit = gauss_legendre(PANEL_GAUSS_POINTS, 0.0, 1.0);
    DVector::from_iterator(
        pan.n_panels(),
        (0..pan.n_panels()).map(|i| {
            let (a, b) = pan.panel(i);
            let mut cuts = vec![a];
            cuts.extend(kink_parameters(curve, a, b, g.kinks()));
            cuts.push(b);
            cuts.windows(2)
                .map(|w| {
                    unit.mapped_from_unit(w[0], w[1])
                        .integrate(|s| g.eval(azimuth(curve, s)) * curve.speed(s))
                })
                .sum()
        }),
    )
}

/// Assembles and solves the bordered first-kind system for the Dirichlet
/// problem in the domain bounded by `curve`.
pub fn solve_dirichlet_single_layer(
    curve: &BoundaryCurve,
    g: &DirichletData,
    n: usize,
) -> Result<DensitySolution> {
    let pan = panelize(curve, n)?;
    solve_single_layer_on(pan, g)
}

pub fn solve_single_layer_on(pan: Panelization, g: &DirichletData) -> Result<DensitySolution> {
    let v = assemble_v(&pan);
    let lengths = assemble_constraint(&pan);
    let load = galerkin_rhs(&pan, g);
    let system = BorderedSystem::new(&v, &lengths, &load);
    let (x, condition_estimate) = system.solve()?;
    let n = pan.n_panels();
    Ok(DensitySolution {
        coefficients: x.rows(0, n).iter().copied().collect(),
        multiplier: x[n],
        panelization: pan,
        condition_estimate,
    })
}
