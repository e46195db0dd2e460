//! Closed-form and quadrature reference solutions for the southern
//! hemisphere `theta > pi/2`, whose boundary is the equator.
//!
//! Under `r = cot(theta/2)` the hemisphere maps onto the unit disk and the
//! Laplace-Beltrami problem becomes the planar Laplace problem, so the
//! reference is the disk Poisson integral written in spherical angles:
//! `u(phi, theta) = (1/2pi) int cos(theta) / (-1 + cos(phi - psi) sin(theta)) g(psi) dpsi`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::data::DirichletData;
use crate::error::{BemError, Result};
use crate::geometry::normalize_azimuth;
use crate::quadrature::{gauss_legendre, periodic_trapezoid};

const MIN_TRAPEZOID_POINTS: usize = 2048;
const MAX_TRAPEZOID_POINTS: usize = 1 << 20;
const KINK_GAUSS_POINTS: usize = 20;

fn poisson_kernel(phi: f64, theta: f64, psi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    ct / (TAU * ((phi - psi).cos() * st - 1.0))
}

/// Harmonic extension of `g` from the equator into the southern hemisphere.
///
/// Smooth data use the periodic trapezoid rule, with enough points that the
/// geometric convergence rate `r^m` reaches round-off. Data with kinks use
/// composite Gauss rules between consecutive kinks.
pub fn poisson_hemisphere(g: &DirichletData, phi: f64, theta: f64) -> Result<f64> {
    if !(theta > FRAC_PI_2 && theta <= PI) {
        return Err(BemError::Domain(format!(
            "reference solution needs theta in (pi/2, pi], got {theta}"
        )));
    }
    let r = (0.5 * theta).tan().recip();
    let f = |psi: f64| poisson_kernel(phi, theta, psi) * g.eval(psi);
    if g.is_smooth() {
        let needed = if r > 0.0 {
            (-40.0 / r.ln()).ceil()
        } else {
            0.0
        };
        let m = (needed as usize).clamp(MIN_TRAPEZOID_POINTS, MAX_TRAPEZOID_POINTS);
        return Ok(periodic_trapezoid(f, m));
    }
    // Pieces no wider than the kernel's peak width 1 - r.
    let max_width = (TAU / 256.0).min(0.5 * (1.0 - r)).max(1e-6);
    let mut cuts: Vec<f64> = g.kinks().iter().map(|&k| normalize_azimuth(k)).collect();
    cuts.push(normalize_azimuth(phi));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let first = cuts[0];
    cuts.push(first + TAU);
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let pieces = ((b - a) / max_width).ceil().max(1.0) as usize;
        let h = (b - a) / pieces as f64;
        for k in 0..pieces {
            let lo = a + k as f64 * h;
            total += gauss_legendre(KINK_GAUSS_POINTS, lo, lo + h).integrate(f);
        }
    }
    Ok(total)
}

/// `cot(theta/2)^m sin(m phi)`: harmonic in the southern hemisphere with
/// trace `sin(m phi)` on the equator. For `m = 0` this is the constant 1.
pub fn harmonic_mode(m: u32, phi: f64, theta: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    radial(m, theta) * (m as f64 * phi).sin()
}

/// `cot(theta/2)^m cos(m phi)`.
pub fn harmonic_mode_cos(m: u32, phi: f64, theta: f64) -> f64 {
    radial(m, theta) * (m as f64 * phi).cos()
}

fn radial(m: u32, theta: f64) -> f64 {
    (0.5 * theta).tan().recip().powi(m as i32)
}
