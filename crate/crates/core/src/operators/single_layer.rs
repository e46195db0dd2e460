//! Galerkin matrix of the single-layer operator for piecewise constants.
//!
//! Entries are `V_ij = int_{Omega_i} int_{Omega_j} U*(x(s), y(t)) |x'(s)| |y'(t)| dt ds`.
//! On identical and neighbouring panels the kernel is split as
//! `U* = -(1/2pi) log|s - t| + R(s, t)` with `R` smooth; the diagonal is
//! removed by a triangle (Duffy-type) change of variables and the remaining
//! one-dimensional log factor is integrated with a log-weighted Gauss rule.
//! Separated panels use a tensor Gauss rule.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::geometry::{CurveSample, Panelization, PANEL_GAUSS_POINTS};
use crate::kernels::fundamental_cartesian;
use crate::quadrature::{gauss_legendre, gauss_log, QuadratureRule};

const INV_2PI: f64 = 0.5 / PI;

/// Relative position of two panels on the closed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PanelPair {
    Identical,
    /// Panel `j` directly follows panel `i`.
    Next,
    /// Panel `j` directly precedes panel `i`.
    Previous,
    Separated,
}

pub(crate) fn classify(i: usize, j: usize, n: usize) -> PanelPair {
    let k = (j + n - i) % n;
    match k {
        0 => PanelPair::Identical,
        1 => PanelPair::Next,
        _ if k == n - 1 => PanelPair::Previous,
        _ => PanelPair::Separated,
    }
}

/// Quadrature settings for Galerkin double integrals.
#[derive(Debug, Clone)]
pub struct GalerkinQuadrature {
    pub(crate) gauss: QuadratureRule,
    pub(crate) log_rule: QuadratureRule,
}

impl Default for GalerkinQuadrature {
    fn default() -> Self {
        Self::with_order(PANEL_GAUSS_POINTS)
    }
}

impl GalerkinQuadrature {
    /// `order` points per direction for both the smooth and log-weighted parts.
    pub fn with_order(order: usize) -> Self {
        Self {
            gauss: gauss_legendre(order, 0.0, 1.0),
            log_rule: gauss_log(order),
        }
    }

    fn samples(&self, pan: &Panelization, i: usize) -> Vec<CurveSample> {
        if self.gauss.len() == PANEL_GAUSS_POINTS {
            return pan.nodes(i).samples.clone();
        }
        let (a, b) = pan.panel(i);
        self.gauss
            .nodes
            .iter()
            .map(|&x| pan.curve().sample(a + (b - a) * x))
            .collect()
    }
}

/// Single-layer Galerkin matrix with the default quadrature.
pub fn assemble_v(pan: &Panelization) -> DMatrix<f64> {
    assemble_v_with(pan, &GalerkinQuadrature::default())
}

pub fn assemble_v_with(pan: &Panelization, quad: &GalerkinQuadrature) -> DMatrix<f64> {
    let n = pan.n_panels();
    let samples: Vec<Vec<CurveSample>> = (0..n).map(|i| quad.samples(pan, i)).collect();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| match classify(i, j, n) {
                    PanelPair::Identical => identical_panel(pan, quad, i),
                    PanelPair::Next => neighbour_panels(pan, quad, i),
                    PanelPair::Previous => neighbour_panels(pan, quad, j),
                    PanelPair::Separated => {
                        separated_panels(quad, &samples[i], &samples[j], pan.width())
                    }
                })
                .collect()
        })
        .collect();
    let mut v = DMatrix::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (k, val) in row.into_iter().enumerate() {
            v[(i, i + k)] = val;
            v[(i + k, i)] = val;
        }
    }
    v
}

/// Galerkin pairing of each basis function with the constant 1: the panel lengths.
pub fn assemble_constraint(pan: &Panelization) -> DVector<f64> {
    DVector::from_column_slice(pan.panel_lengths())
}

fn separated_panels(
    quad: &GalerkinQuadrature,
    si: &[CurveSample],
    sj: &[CurveSample],
    h: f64,
) -> f64 {
    let w = &quad.gauss.weights;
    let mut acc = 0.0;
    for (p, x) in si.iter().enumerate() {
        let mut inner = 0.0;
        for (q, y) in sj.iter().enumerate() {
            inner += w[q] * y.speed * fundamental_cartesian(&x.pos, &y.pos);
        }
        acc += w[p] * x.speed * inner;
    }
    acc * h * h
}

/// `U*(x(s), y(t)) + log(r)/(2pi)` where `|s - t| = h r`: the kernel with
/// the logarithmic singularity removed, up to the constant `log(h)/(2pi)`.
#[inline]
fn regular_part(x: &CurveSample, y: &CurveSample, r: f64) -> f64 {
    fundamental_cartesian(&x.pos, &y.pos) + r.ln() * INV_2PI
}

fn identical_panel(pan: &Panelization, quad: &GalerkinQuadrature, i: usize) -> f64 {
    let curve = pan.curve();
    let (a, _) = pan.panel(i);
    let h = pan.width();
    let g = &quad.gauss;
    // Lower triangle t < s: s = a + h (y + r), t = a + h y, y = (1 - r) v.
    let inner = |r: f64, f: &dyn Fn(&CurveSample, &CurveSample) -> f64| -> f64 {
        g.nodes
            .iter()
            .zip(&g.weights)
            .map(|(&v, &wv)| {
                let y = (1.0 - r) * v;
                let ps = curve.sample(a + h * (y + r));
                let pt = curve.sample(a + h * y);
                wv * ps.speed * pt.speed * f(&ps, &pt)
            })
            .sum::<f64>()
            * (1.0 - r)
    };
    let smooth: f64 = g
        .nodes
        .iter()
        .zip(&g.weights)
        .map(|(&r, &wr)| wr * inner(r, &|x, y| regular_part(x, y, r)))
        .sum();
    let singular: f64 = quad
        .log_rule
        .nodes
        .iter()
        .zip(&quad.log_rule.weights)
        .map(|(&r, &wr)| wr * inner(r, &|_, _| 1.0))
        .sum();
    // The upper triangle contributes the same by symmetry of the kernel.
    2.0 * h * h * (smooth + INV_2PI * singular)
}

/// Entry for panel `i` and its successor, sharing the corner `c`.
fn neighbour_panels(pan: &Panelization, quad: &GalerkinQuadrature, i: usize) -> f64 {
    let curve = pan.curve();
    let (_, c) = pan.panel(i);
    let h = pan.width();
    let g = &quad.gauss;
    let mut total = 0.0;
    // s = c - h x on panel i, t = c + h y on panel i + 1, |s - t| = h (x + y).
    // Each triangle collapses onto the corner: (long, long * u).
    for swap in [false, true] {
        let point = |long: f64, u: f64| {
            let (x, y) = if swap {
                (long * u, long)
            } else {
                (long, long * u)
            };
            (curve.sample(c - h * x), curve.sample(c + h * y))
        };
        let inner = |long: f64, regular: bool| -> f64 {
            g.nodes
                .iter()
                .zip(&g.weights)
                .map(|(&u, &wu)| {
                    let (ps, pt) = point(long, u);
                    let ker = if regular {
                        // log|s - t| = log h + log(long) + log(1 + u); keep the first
                        // two outside, integrate log(1 + u) here.
                        fundamental_cartesian(&ps.pos, &pt.pos) + long.ln() * INV_2PI
                    } else {
                        1.0
                    };
                    wu * ps.speed * pt.speed * ker
                })
                .sum::<f64>()
                * long
        };
        let smooth: f64 = g
            .nodes
            .iter()
            .zip(&g.weights)
            .map(|(&x, &wx)| wx * inner(x, true))
            .sum();
        let singular: f64 = quad
            .log_rule
            .nodes
            .iter()
            .zip(&quad.log_rule.weights)
            .map(|(&x, &wx)| wx * inner(x, false))
            .sum();
        total += smooth + INV_2PI * singular;
    }
    h * h * total
}
