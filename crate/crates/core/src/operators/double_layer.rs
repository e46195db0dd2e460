//! Galerkin matrix of the double-layer operator and the second-kind solve.
//!
//! For a smooth curve the kernel `curl_S U*(x, y) . t(y)` has a removable
//! singularity on the diagonal, so every entry is a smooth double integral.
//! Identical panels are folded onto triangles so that no quadrature node
//! lands on `x = y`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::single_layer::{classify, GalerkinQuadrature, PanelPair};
use super::{galerkin_rhs, solve_dense};
use crate::data::DirichletData;
use crate::error::Result;
use crate::geometry::{panelize, BoundaryCurve, CurveSample, Panelization, PANEL_GAUSS_POINTS};
use crate::kernels::double_layer_cartesian;

/// Piecewise-constant double-layer density.
#[derive(Debug, Clone)]
pub struct DoubleLayerSolution {
    pub coefficients: Vec<f64>,
    pub panelization: Panelization,
    pub condition_estimate: f64,
}

/// `K_ij = int_{Omega_i} int_{Omega_j} curl_S U*(x, y) . t(y) ds_y ds_x`, with the
/// tangent oriented so that the domain lies on its left.
pub fn assemble_k(pan: &Panelization) -> DMatrix<f64> {
    assemble_k_with(pan, &GalerkinQuadrature::default())
}

pub fn assemble_k_with(pan: &Panelization, quad: &GalerkinQuadrature) -> DMatrix<f64> {
    let n = pan.n_panels();
    let h = pan.width();
    let curve = pan.curve();
    let samples: Vec<Vec<CurveSample>> = (0..n)
        .map(|i| {
            if quad.gauss.len() == PANEL_GAUSS_POINTS {
                pan.nodes(i).samples.clone()
            } else {
                let (a, _) = pan.panel(i);
                quad.gauss
                    .nodes
                    .iter()
                    .map(|&x| curve.sample(a + h * x))
                    .collect()
            }
        })
        .collect();
    let w = &quad.gauss.weights;
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| {
                    if classify(i, j, n) == PanelPair::Identical {
                        return identical_panel(pan, quad, i);
                    }
                    let mut acc = 0.0;
                    for (p, x) in samples[i].iter().enumerate() {
                        let inner: f64 = samples[j]
                            .iter()
                            .zip(w)
                            .map(|(y, wq)| {
                                wq * double_layer_cartesian(&x.pos, &y.pos, &y.oriented_vel)
                            })
                            .sum();
                        acc += w[p] * x.speed * inner;
                    }
                    acc * h * h
                })
                .collect()
        })
        .collect();
    DMatrix::from_fn(n, n, |i, j| rows[i][j])
}

fn identical_panel(pan: &Panelization, quad: &GalerkinQuadrature, i: usize) -> f64 {
    let curve = pan.curve();
    let (a, _) = pan.panel(i);
    let h = pan.width();
    let g = &quad.gauss;
    let mut acc = 0.0;
    // Offset r = |s - t| / h, position v along the remaining strip.
    for (&r, &wr) in g.nodes.iter().zip(&g.weights) {
        let mut inner = 0.0;
        for (&v, &wv) in g.nodes.iter().zip(&g.weights) {
            let lo = a + h * (1.0 - r) * v;
            let hi = lo + h * r;
            let (p, q) = (curve.sample(lo), curve.sample(hi));
            // Both triangles: x below y and x above y.
            let k = p.speed * double_layer_cartesian(&p.pos, &q.pos, &q.oriented_vel)
                + q.speed * double_layer_cartesian(&q.pos, &p.pos, &p.oriented_vel);
            inner += wv * k;
        }
        acc += wr * (1.0 - r) * inner;
    }
    acc * h * h
}

/// Solves `(1/2 I + K) mu = g` in Galerkin form: the interior trace of the
/// double-layer potential equals `g`.
pub fn solve_dirichlet_double_layer(
    curve: &BoundaryCurve,
    g: &DirichletData,
    n: usize,
) -> Result<DoubleLayerSolution> {
    let pan = panelize(curve, n)?;
    let mut m = assemble_k(&pan);
    for (i, l) in pan.panel_lengths().iter().enumerate() {
        m[(i, i)] += 0.5 * l;
    }
    let load: DVector<f64> = galerkin_rhs(&pan, g);
    let (mu, condition_estimate) = solve_dense(m, &load)?;
    Ok(DoubleLayerSolution {
        coefficients: mu.iter().copied().collect(),
        panelization: pan,
        condition_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Orientation, SphericalPoint, TangentVector};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI, TAU};

    #[test]
    fn vanishes_on_the_equator() {
        let pan = panelize(&BoundaryCurve::latitude_circle(FRAC_PI_2).unwrap(), 16).unwrap();
        assert!(assemble_k(&pan).amax() < 1e-15);
    }

    #[test]
    fn cap_row_sums_follow_the_constant_identity() {
        // K 1 = 1/2 - |S2| / (4 pi); for theta0 = pi/3 the domain has area 3 pi.
        let cap = BoundaryCurve::latitude_circle(PI / 3.0).unwrap();
        for n in [8, 32] {
            let pan = panelize(&cap, n).unwrap();
            let k = assemble_k(&pan);
            for i in 0..n {
                let row: f64 = k.row(i).sum();
                assert_abs_diff_eq!(row / pan.panel_lengths()[i], -0.25, epsilon = 1e-12);
                for j in 0..n {
                    assert_abs_diff_eq!(k[(i, j)], k[(0, (j + n - i) % n)], epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn quadrature_order_does_not_matter() {
        // An ellipse-like smooth curve with non-uniform speed.
        let eps = 0.25;
        let param = move |s: f64| {
            let p = TAU * s;
            SphericalPoint::new(p + 0.3 * p.sin(), FRAC_PI_2 + eps * p.cos()).unwrap()
        };
        let vel = move |s: f64| {
            let p = TAU * s;
            let base = param(s);
            let dphi = TAU * (1.0 + 0.3 * p.cos());
            let dtheta = -TAU * eps * p.sin();
            TangentVector::new(base, base.theta().sin() * dphi, dtheta).unwrap()
        };
        let curve = BoundaryCurve::custom(param, vel, Orientation::DomainOnRight);
        let pan = panelize(&curve, 24).unwrap();
        let a = assemble_k_with(&pan, &GalerkinQuadrature::with_order(12));
        let b = assemble_k_with(&pan, &GalerkinQuadrature::with_order(24));
        assert!((&a - &b).amax() < 1e-12, "{}", (&a - &b).amax());
        // Row sums still obey the constant identity.
        let area = {
            let q = crate::quadrature::gauss_legendre(400, 0.0, 1.0);
            // Southern domain theta > theta(s): area = int (1 + cos theta(s)) dphi(s).
            q.integrate(|s| {
                let p = TAU * s;
                let theta = FRAC_PI_2 + eps * p.cos();
                (1.0 + theta.cos()) * TAU * (1.0 + 0.3 * p.cos())
            })
        };
        let expected = 0.5 - area / (4.0 * PI);
        for i in 0..24 {
            assert_abs_diff_eq!(
                a.row(i).sum() / pan.panel_lengths()[i],
                expected,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn second_kind_solutions() {
        let eq = BoundaryCurve::latitude_circle(FRAC_PI_2).unwrap();
        let sol = solve_dirichlet_double_layer(&eq, &DirichletData::constant(1.0), 20).unwrap();
        for mu in &sol.coefficients {
            assert_abs_diff_eq!(*mu, 2.0, epsilon = 1e-13);
        }
        let sol = solve_dirichlet_double_layer(&eq, &DirichletData::sine(1), 40).unwrap();
        // mu = 2 g exactly, so the coefficients are twice the panel means of sin.
        let h = TAU / 40.0;
        for (mu, m) in sol.coefficients.iter().zip(sol.panelization.midpoints()) {
            let mean = (TAU * m).sin() * (h / 2.0).sin() / (h / 2.0);
            assert_abs_diff_eq!(*mu, 2.0 * mean, epsilon = 1e-13);
        }
        let cap = BoundaryCurve::latitude_circle(PI / 3.0).unwrap();
        for n in [16, 64] {
            let sol = solve_dirichlet_double_layer(&cap, &DirichletData::constant(1.0), n).unwrap();
            for mu in &sol.coefficients {
                assert_abs_diff_eq!(*mu, 4.0, epsilon = 1e-11);
            }
        }
    }
}
