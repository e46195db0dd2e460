//! Layer potentials evaluated off the curve, and a finite-difference
//! Laplace-Beltrami check.

use rayon::prelude::*;

use crate::error::{BemError, Result};
use crate::geometry::{CurveSample, Panelization, SphericalPoint, Vec3, PANEL_GAUSS_POINTS};
use crate::kernels::{double_layer_cartesian, fundamental_cartesian};
use crate::operators::{DensitySolution, DoubleLayerSolution};
use crate::quadrature::{gauss_legendre, QuadratureRule};

/// Points closer than this to the curve are refused.
pub const STAND_OFF: f64 = 1e-8;
/// Maximum number of bisections of a panel close to the target.
pub const MAX_NEAR_LEVELS: u32 = 10;
/// A (sub)panel is refined while the target is within this many panel lengths.
const NEAR_FACTOR: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub point: SphericalPoint,
    pub value: f64,
}

/// Which layer kernel to integrate against the density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    Single,
    Double,
}

impl Layer {
    #[inline]
    fn kernel(self, x: &Vec3, y: &CurveSample) -> f64 {
        match self {
            // ds_y = |y'| dt.
            Layer::Single => fundamental_cartesian(x, &y.pos) * y.speed,
            // t ds_y = oriented y' dt.
            Layer::Double => double_layer_cartesian(x, &y.pos, &y.oriented_vel),
        }
    }
}

struct Evaluator<'a> {
    pan: &'a Panelization,
    unit: QuadratureRule,
}

impl<'a> Evaluator<'a> {
    fn new(pan: &'a Panelization) -> Self {
        Self {
            pan,
            unit: gauss_legendre(PANEL_GAUSS_POINTS, 0.0, 1.0),
        }
    }

    /// Whether `[a, b]` counts as near `x`: the chord to its midpoint, less
    /// half its length, is below `NEAR_FACTOR` lengths.
    fn is_near(&self, x: &Vec3, a: f64, b: f64) -> bool {
        let mid = self.pan.curve().sample(0.5 * (a + b));
        let len = mid.speed * (b - a);
        (mid.pos - x).norm() - 0.5 * len < NEAR_FACTOR * len
    }

    fn gauss(&self, layer: Layer, x: &Vec3, a: f64, b: f64) -> f64 {
        let curve = self.pan.curve();
        let w = b - a;
        self.unit
            .nodes
            .iter()
            .zip(&self.unit.weights)
            .map(|(&t, &wt)| wt * layer.kernel(x, &curve.sample(a + w * t)))
            .sum::<f64>()
            * w
    }

    fn refine(&self, layer: Layer, x: &Vec3, a: f64, b: f64, level: u32) -> f64 {
        if level < MAX_NEAR_LEVELS && self.is_near(x, a, b) {
            let m = 0.5 * (a + b);
            self.refine(layer, x, a, m, level + 1) + self.refine(layer, x, m, b, level + 1)
        } else {
            self.gauss(layer, x, a, b)
        }
    }

    fn panel(&self, layer: Layer, x: &Vec3, i: usize) -> f64 {
        let (a, b) = self.pan.panel(i);
        if self.is_near(x, a, b) {
            return self.refine(layer, x, a, b, 0);
        }
        let nodes = self.pan.nodes(i);
        nodes
            .samples
            .iter()
            .zip(&nodes.weights)
            .map(|(y, w)| w * layer.kernel(x, y))
            .sum()
    }

    fn potential(&self, layer: Layer, coefficients: &[f64], x: &SphericalPoint) -> Result<f64> {
        let pos = x.to_cartesian();
        let distance = self.pan.distance_to(&pos);
        if distance < STAND_OFF {
            return Err(BemError::StandOff {
                distance,
                standoff: STAND_OFF,
            });
        }
        Ok(coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| c * self.panel(layer, &pos, i))
            .sum())
    }
}

/// `sum_i c_i int_{Omega_i} K(x, y) ds_y` for a piecewise-constant density.
pub fn layer_potential(
    pan: &Panelization,
    layer: Layer,
    coefficients: &[f64],
    x: &SphericalPoint,
) -> Result<f64> {
    if coefficients.len() != pan.n_panels() {
        return Err(BemError::Config(format!(
            "{} density values for {} panels",
            coefficients.len(),
            pan.n_panels()
        )));
    }
    Evaluator::new(pan).potential(layer, coefficients, x)
}

/// `u(x) = int U*(x, y) sigma(y) ds_y + p`.
pub fn eval_single_layer(sol: &DensitySolution, x: &SphericalPoint) -> Result<f64> {
    Ok(layer_potential(&sol.panelization, Layer::Single, &sol.coefficients, x)? + sol.multiplier)
}

/// `W mu (x) = int curl_S U*(x, y) . t(y) mu(y) ds_y`.
pub fn eval_double_layer(sol: &DoubleLayerSolution, x: &SphericalPoint) -> Result<f64> {
    layer_potential(&sol.panelization, Layer::Double, &sol.coefficients, x)
}

/// Single-layer field at many points, evaluated in parallel; output order
/// follows `points`.
pub fn eval_single_layer_many(
    sol: &DensitySolution,
    points: &[SphericalPoint],
) -> Result<Vec<FieldSample>> {
    points
        .par_iter()
        .map(|p| eval_single_layer(sol, p).map(|value| FieldSample { point: *p, value }))
        .collect()
}

/// Five-point finite-difference Laplace-Beltrami operator of `f(phi, theta)`.
pub fn laplace_beltrami_fd(f: impl Fn(f64, f64) -> f64, phi: f64, theta: f64, h: f64) -> f64 {
    match stencil(
        |p, t| Ok::<f64, std::convert::Infallible>(f(p, t)),
        phi,
        theta,
        h,
    ) {
        Ok(v) => v,
        Err(e) => match e {},
    }
}

fn stencil<E>(
    mut f: impl FnMut(f64, f64) -> std::result::Result<f64, E>,
    phi: f64,
    theta: f64,
    h: f64,
) -> std::result::Result<f64, E> {
    let c = f(phi, theta)?;
    let st = theta.sin();
    let azimuthal = (f(phi + h, theta)? - 2.0 * c + f(phi - h, theta)?) / (st * st * h * h);
    let polar = ((theta + 0.5 * h).sin() * (f(phi, theta + h)? - c)
        - (theta - 0.5 * h).sin() * (c - f(phi, theta - h)?))
        / (st * h * h);
    Ok(azimuthal + polar)
}

/// `|Delta_S u(x)|` by finite differences with step `h`. When `boundary`
/// is given, the stencil must stay clear of it.
pub fn harmonicity_defect<F>(
    u: F,
    x: &SphericalPoint,
    h: f64,
    boundary: Option<&Panelization>,
) -> Result<f64>
where
    F: Fn(&SphericalPoint) -> Result<f64>,
{
    let (phi, theta) = (x.phi(), x.theta());
    if h.is_nan() || h <= 0.0 || theta - h <= 0.0 || theta + h >= std::f64::consts::PI {
        return Err(BemError::Domain(format!(
            "stencil of width {h} at theta = {theta} reaches a pole"
        )));
    }
    if let Some(pan) = boundary {
        let d = pan.distance_to(&x.to_cartesian());
        // The stencil reaches at most h / sin(theta) in azimuth and h in theta.
        let reach = h * (1.0 / theta.sin()).max(1.0);
        if d <= reach {
            return Err(BemError::Domain(format!(
                "stencil of reach {reach:e} crosses the curve at distance {d:e}"
            )));
        }
    }
    let value = stencil(
        |p, t| SphericalPoint::new(p, t).and_then(|q| u(&q)),
        phi,
        theta,
        h,
    )?;
    Ok(value.abs())
}
