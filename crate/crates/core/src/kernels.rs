//! Fundamental solution of the Laplace-Beltrami operator on the unit sphere
//! and the layer kernels derived from it.
//!
//! `U*(x, y) = -(1/4pi) log(1 - <x, y>)` satisfies
//! `Delta_S U*(., y) = 1/(4pi)` away from `y`. The double-layer kernel is the
//! surface rotation of `U*` taken in the curve variable `y`, dotted with the
//! curve tangent at `y`.

use std::f64::consts::PI;

use crate::error::{BemError, Result};
use crate::geometry::{SphericalPoint, TangentVector, Vec3};

/// Values of `1 - <x, y>` below this are treated as coincident points.
pub const COINCIDENCE_GAP: f64 = 1e-15;

const INV_4PI: f64 = 0.25 / PI;

/// `U*(x, x0) = -(1/4pi) log(1 - <x, x0>)`.
pub fn fundamental_solution(x: &SphericalPoint, x0: &SphericalPoint) -> Result<f64> {
    let gap = 0.5 * x.chordal_distance_sq(x0);
    if gap < COINCIDENCE_GAP {
        return Err(BemError::Singularity { gap });
    }
    Ok(-INV_4PI * gap.ln())
}

/// Kernel of the single layer potential; identical to [`fundamental_solution`].
pub fn single_layer_kernel(x: &SphericalPoint, y: &SphericalPoint) -> Result<f64> {
    fundamental_solution(x, y)
}

/// Surface rotation of `U*(x, .)` evaluated at the curve point `xt`.
///
/// With `A = 1 - <x, xt>` the components are
/// `e_phi: (cos theta sin theta~ - cos(phi - phi~) sin theta cos theta~) / (4 pi A)` and
/// `e_theta: sin(phi - phi~) sin theta / (4 pi A)`.
pub fn curl_fundamental(x: &SphericalPoint, xt: &SphericalPoint) -> Result<TangentVector> {
    let gap = 0.5 * x.chordal_distance_sq(xt);
    if gap < COINCIDENCE_GAP {
        return Err(BemError::Singularity { gap });
    }
    let (st, ct) = x.theta().sin_cos();
    let (stt, ctt) = xt.theta().sin_cos();
    let (sd, cd) = (x.phi() - xt.phi()).sin_cos();
    let scale = INV_4PI / gap;
    TangentVector::new(*xt, scale * (ct * stt - cd * st * ctt), scale * sd * st)
}

/// `curl_S U*(x, yt) . tangent`, the double-layer kernel.
pub fn double_layer_kernel(
    x: &SphericalPoint,
    yt: &SphericalPoint,
    tangent: &TangentVector,
) -> Result<f64> {
    Ok(curl_fundamental(x, yt)?.dot(tangent))
}

/// `U*` from Cartesian points, `-(1/4pi) log(|x - y|^2 / 2)`. No coincidence guard.
#[inline]
pub fn fundamental_cartesian(x: &Vec3, y: &Vec3) -> f64 {
    -INV_4PI * (0.5 * (x - y).norm_squared()).ln()
}

/// Double-layer kernel from Cartesian data: `(x - y) . (y x tau) / (2 pi |x - y|^2)`,
/// where `tau` is a tangent vector at `y`. No coincidence guard.
#[inline]
pub fn double_layer_cartesian(x: &Vec3, y: &Vec3, tau: &Vec3) -> f64 {
    let d = x - y;
    d.dot(&y.cross(tau)) / (2.0 * PI * d.norm_squared())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::laplace_beltrami_fd;
    use approx::assert_abs_diff_eq;
    use nalgebra::Rotation3;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, TAU};

    fn pt(phi: f64, theta: f64) -> SphericalPoint {
        SphericalPoint::new(phi, theta).unwrap()
    }

    #[test]
    fn fundamental_solution_special_values() {
        let e1 = pt(0.0, FRAC_PI_2);
        let e2 = pt(FRAC_PI_2, FRAC_PI_2);
        assert_abs_diff_eq!(
            fundamental_solution(&e1, &e2).unwrap(),
            0.0,
            epsilon = 1e-16
        );
        let anti = pt(PI, FRAC_PI_2);
        let v = fundamental_solution(&e1, &anti).unwrap();
        assert_abs_diff_eq!(v, -(2f64.ln()) / (4.0 * PI), epsilon = 1e-15);
        assert_abs_diff_eq!(v, -0.055_158_9, epsilon = 1e-7);
        // Planar log potential of the chord plus a constant.
        for (a, b) in [(e1, e2), (pt(0.3, 1.0), pt(2.0, 2.5))] {
            let chord = (a.to_cartesian() - b.to_cartesian()).norm();
            let planar = -chord.ln() / TAU + 2f64.ln() / (4.0 * PI);
            assert_abs_diff_eq!(
                fundamental_solution(&a, &b).unwrap(),
                planar,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                single_layer_kernel(&a, &b).unwrap(),
                planar,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                fundamental_cartesian(&a.to_cartesian(), &b.to_cartesian()),
                planar,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn coincident_points_are_rejected() {
        let a = pt(1.0, 1.0);
        assert!(matches!(
            fundamental_solution(&a, &a),
            Err(BemError::Singularity { .. })
        ));
        assert!(curl_fundamental(&a, &a).is_err());
        let near = pt(1.0, 1.0 + 1e-7);
        assert!(fundamental_solution(&a, &near).is_ok());
    }

    #[test]
    fn laplace_beltrami_of_fundamental_solution_is_uniform() {
        let x0 = pt(0.4, 1.2);
        for (phi, theta) in [(2.0, 1.0), (4.0, 2.2), (1.0, 0.5)] {
            let f = |p: f64, t: f64| fundamental_solution(&pt(p, t), &x0).unwrap();
            let d1 = (laplace_beltrami_fd(f, phi, theta, 1e-3) - INV_4PI).abs();
            let d2 = (laplace_beltrami_fd(f, phi, theta, 5e-4) - INV_4PI).abs();
            assert!(d1 < 1e-5, "defect {d1}");
            let ratio = d1 / d2;
            assert!((3.5..4.5).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn curl_matches_finite_differences() {
        let h = 1e-5;
        for (x, y) in [
            (pt(0.3, 1.1), pt(2.0, 0.7)),
            (pt(5.0, 2.8), pt(1.0, 1.9)),
            (pt(1.0, 0.2), pt(1.3, 0.25)),
        ] {
            let u = |p: f64, t: f64| fundamental_solution(&x, &pt(p, t)).unwrap();
            let (p, t) = (y.phi(), y.theta());
            let du_dt = (u(p, t + h) - u(p, t - h)) / (2.0 * h);
            let du_dp = (u(p + h, t) - u(p - h, t)) / (2.0 * h);
            let c = curl_fundamental(&x, &y).unwrap();
            assert_abs_diff_eq!(c.v_phi, -du_dt, epsilon = 1e-8);
            assert_abs_diff_eq!(c.v_theta, du_dp / t.sin(), epsilon = 1e-8);
        }
    }

    #[test]
    fn curl_around_the_pole() {
        let north = pt(0.0, 0.0);
        for theta_eps in [0.5, 0.1, 0.01] {
            let c = curl_fundamental(&north, &pt(1.7, theta_eps)).unwrap();
            let expected = theta_eps.sin() / (4.0 * PI * (1.0 - theta_eps.cos()));
            assert_abs_diff_eq!(c.v_phi, expected, epsilon = 1e-12 * expected);
            assert_abs_diff_eq!(c.v_theta, 0.0, epsilon = 1e-14);
        }
        // The tangent basis is undefined at a pole.
        assert!(curl_fundamental(&pt(1.0, 1.0), &north).is_err());
    }

    #[test]
    fn double_layer_vanishes_on_the_equator() {
        let x = pt(0.4, FRAC_PI_2);
        for phi in [0.0, 1.0, 2.5, 5.0] {
            let y = pt(phi, FRAC_PI_2);
            let c = curl_fundamental(&x, &y).unwrap();
            assert_abs_diff_eq!(c.v_phi, 0.0, epsilon = 1e-15);
            let t = TangentVector::new(y, 1.0, 0.0).unwrap();
            assert_abs_diff_eq!(
                double_layer_kernel(&x, &y, &t).unwrap(),
                0.0,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn double_layer_is_linear_in_tangent() {
        let (x, y) = (pt(0.3, 1.1), pt(2.0, 0.7));
        let t = TangentVector::new(y, 0.6, -0.8).unwrap();
        let k = double_layer_kernel(&x, &y, &t).unwrap();
        for c in [-2.0, 0.5, 3.0] {
            assert_abs_diff_eq!(
                double_layer_kernel(&x, &y, &t.scaled(c)).unwrap(),
                c * k,
                epsilon = 1e-14
            );
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_rotation_invariant(
            p1 in 0.0..TAU, t1 in 0.05..3.1f64, p2 in 0.0..TAU, t2 in 0.05..3.1f64,
            ax in -1.0..1.0f64, ay in -1.0..1.0f64, az in -1.0..1.0f64, angle in 0.0..TAU,
        ) {
            let (a, b) = (pt(p1, t1), pt(p2, t2));
            prop_assume!(a.chordal_distance_sq(&b) > 1e-6);
            let u = fundamental_solution(&a, &b).unwrap();
            prop_assert!((u - fundamental_solution(&b, &a).unwrap()).abs() < 1e-14);
            let axis = nalgebra::Vector3::new(ax, ay, az);
            prop_assume!(axis.norm() > 1e-3);
            let rot = Rotation3::new(axis.normalize() * angle);
            let ra = SphericalPoint::from_cartesian(&(rot * a.to_cartesian()));
            let rb = SphericalPoint::from_cartesian(&(rot * b.to_cartesian()));
            prop_assert!((u - fundamental_solution(&ra, &rb).unwrap()).abs() < 1e-13);
        }

        #[test]
        fn spherical_and_cartesian_double_layer_agree(
            p1 in 0.0..TAU, t1 in 0.05..3.1f64, p2 in 0.0..TAU, t2 in 0.05..3.1f64,
            vp in -1.0..1.0f64, vt in -1.0..1.0f64,
        ) {
            let (x, y) = (pt(p1, t1), pt(p2, t2));
            prop_assume!(x.chordal_distance_sq(&y) > 1e-4);
            let t = TangentVector::new(y, vp, vt).unwrap();
            let spherical = double_layer_kernel(&x, &y, &t).unwrap();
            let cart = double_layer_cartesian(&x.to_cartesian(), &y.to_cartesian(), &t.to_cartesian());
            prop_assert!((spherical - cart).abs() < 1e-11 * (1.0 + spherical.abs()));
        }
    }
}
