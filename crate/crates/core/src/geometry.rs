//! Points, tangent vectors and boundary curves on the unit sphere.
//!
//! Points are stored in angle coordinates `(phi, theta)` with `phi` the
//! azimuth and `theta` the polar angle measured from the north pole. Most
//! numerical work happens on the Cartesian image, which [`SphericalPoint`]
//! and [`Panelization`] cache where it matters.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::Arc;

use nalgebra::Vector3;

use crate::error::{BemError, Result};
use crate::quadrature::gauss_legendre;

pub type Vec3 = Vector3<f64>;

/// Polar angles closer than this to 0 or pi count as a pole for tangent bases.
const POLE_EPS: f64 = 1e-12;

/// Points of the Gauss rule used for panel arc lengths.
const LENGTH_GAUSS_POINTS: usize = 8;

/// Points of the Gauss rule cached on every panel for layer integrals.
pub const PANEL_GAUSS_POINTS: usize = 12;

/// A point on the unit sphere in angle coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    phi: f64,
    theta: f64,
}

impl SphericalPoint {
    /// Builds a point, reducing `phi` into `[0, 2pi)` and rejecting polar
    /// angles outside `[0, pi]`.
    pub fn new(phi: f64, theta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(BemError::PolarAngleOutOfRange(theta));
        }
        Ok(Self {
            phi: normalize_azimuth(phi),
            theta,
        })
    }

    /// Inverse of [`to_cartesian`](Self::to_cartesian); the input is normalized first.
    pub fn from_cartesian(v: &Vec3) -> Self {
        let n = v.norm();
        let z = (v.z / n).clamp(-1.0, 1.0);
        let theta = z.acos();
        let phi = normalize_azimuth(v.y.atan2(v.x));
        Self { phi, theta }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_cartesian(&self) -> Vec3 {
        let (sp, cp) = self.phi.sin_cos();
        let (st, ct) = self.theta.sin_cos();
        Vec3::new(cp * st, sp * st, ct)
    }

    /// Euclidean inner product of the Cartesian images.
    pub fn inner(&self, other: &SphericalPoint) -> f64 {
        (self.phi - other.phi).cos() * self.theta.sin() * other.theta.sin()
            + self.theta.cos() * other.theta.cos()
    }

    /// `|x - y|^2 = 2 (1 - <x, y>)`, evaluated in haversine form so that it
    /// keeps full relative accuracy for nearby points.
    pub fn chordal_distance_sq(&self, other: &SphericalPoint) -> f64 {
        let dt = (0.5 * (self.theta - other.theta)).sin();
        let dp = (0.5 * (self.phi - other.phi)).sin();
        4.0 * (dt * dt + self.theta.sin() * other.theta.sin() * dp * dp)
    }

    /// Great-circle distance in radians.
    pub fn geodesic_distance(&self, other: &SphericalPoint) -> f64 {
        geodesic_from_chord_sq(self.chordal_distance_sq(other))
    }

    pub fn is_pole(&self) -> bool {
        self.theta < POLE_EPS || PI - self.theta < POLE_EPS
    }

    /// Unit vectors `(e_phi, e_theta, e_r)`; `(e_r, e_theta, e_phi)` is right-handed.
    pub fn tangent_basis(&self) -> Result<(Vec3, Vec3, Vec3)> {
        if self.is_pole() {
            return Err(BemError::PoleTangent { theta: self.theta });
        }
        let (sp, cp) = self.phi.sin_cos();
        let (st, ct) = self.theta.sin_cos();
        let e_phi = Vec3::new(-sp, cp, 0.0);
        let e_theta = Vec3::new(ct * cp, ct * sp, -st);
        let e_r = Vec3::new(cp * st, sp * st, ct);
        Ok((e_phi, e_theta, e_r))
    }
}

impl fmt::Display for SphericalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(phi={}, theta={})", self.phi, self.theta)
    }
}

pub(crate) fn normalize_azimuth(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

pub(crate) fn geodesic_from_chord_sq(chord_sq: f64) -> f64 {
    2.0 * (0.5 * chord_sq.max(0.0).sqrt()).min(1.0).asin()
}

/// A tangent vector in the `(e_phi, e_theta)` frame of its base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub v_phi: f64,
    pub v_theta: f64,
    pub base: SphericalPoint,
}

impl TangentVector {
    pub fn new(base: SphericalPoint, v_phi: f64, v_theta: f64) -> Result<Self> {
        if base.is_pole() {
            return Err(BemError::PoleTangent { theta: base.theta });
        }
        Ok(Self {
            v_phi,
            v_theta,
            base,
        })
    }

    /// Projects a Cartesian vector onto the tangent plane at `base`.
    pub fn from_cartesian(base: SphericalPoint, v: &Vec3) -> Result<Self> {
        let (e_phi, e_theta, _) = base.tangent_basis()?;
        Ok(Self {
            v_phi: v.dot(&e_phi),
            v_theta: v.dot(&e_theta),
            base,
        })
    }

    pub fn to_cartesian(&self) -> Vec3 {
        // Constructors reject poles, so the basis exists.
        let (e_phi, e_theta, _) = self
            .base
            .tangent_basis()
            .expect("tangent vector based at a pole");
        e_phi * self.v_phi + e_theta * self.v_theta
    }

    pub fn norm(&self) -> f64 {
        self.v_phi.hypot(self.v_theta)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self {
            v_phi: c * self.v_phi,
            v_theta: c * self.v_theta,
            base: self.base,
        }
    }

    pub fn dot(&self, other: &TangentVector) -> f64 {
        self.v_phi * other.v_phi + self.v_theta * other.v_theta
    }
}

/// Which side of the curve the solution domain lies on, walking in the
/// direction of increasing parameter and viewed from outside the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    DomainOnLeft,
    DomainOnRight,
}

impl Orientation {
    /// Factor mapping the parametrization velocity onto the tangent that
    /// keeps the domain on its left.
    pub fn sign(self) -> f64 {
        match self {
            Orientation::DomainOnLeft => 1.0,
            Orientation::DomainOnRight => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::DomainOnLeft => Orientation::DomainOnRight,
            Orientation::DomainOnRight => Orientation::DomainOnLeft,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// The circle `theta = theta0`, solution domain `theta > theta0`.
    Latitude {
        theta0: f64,
    },
    Custom,
}

type ParamFn = Arc<dyn Fn(f64) -> SphericalPoint + Send + Sync>;
type VelocityFn = Arc<dyn Fn(f64) -> TangentVector + Send + Sync>;

/// A closed, smooth curve `s in [0, 1) -> C` with its derivative.
#[derive(Clone)]
pub struct BoundaryCurve {
    param: ParamFn,
    velocity: VelocityFn,
    kind: CurveKind,
    orientation: Orientation,
}

impl fmt::Debug for BoundaryCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryCurve")
            .field("kind", &self.kind)
            .field("orientation", &self.orientation)
            .finish()
    }
}

impl BoundaryCurve {
    /// The latitude circle `phi = 2 pi s`, `theta = theta0`, bounding the
    /// domain `theta > theta0`.
    pub fn latitude_circle(theta0: f64) -> Result<Self> {
        if !(theta0 > POLE_EPS && theta0 < PI - POLE_EPS) {
            return Err(BemError::DegenerateCurve(format!(
                "latitude circle at theta0 = {theta0} collapses to a pole or leaves the sphere"
            )));
        }
        let speed = TAU * theta0.sin();
        let param = move |s: f64| SphericalPoint {
            phi: normalize_azimuth(TAU * s),
            theta: theta0,
        };
        Ok(Self {
            param: Arc::new(param),
            velocity: Arc::new(move |s| TangentVector {
                v_phi: speed,
                v_theta: 0.0,
                base: param(s),
            }),
            kind: CurveKind::Latitude { theta0 },
            // Increasing phi keeps the north cap on the left.
            orientation: Orientation::DomainOnRight,
        })
    }

    /// A user-supplied curve. `param` must be 1-periodic and `velocity` its
    /// derivative with respect to `s`.
    pub fn custom<P, V>(param: P, velocity: V, orientation: Orientation) -> Self
    where
        P: Fn(f64) -> SphericalPoint + Send + Sync + 'static,
        V: Fn(f64) -> TangentVector + Send + Sync + 'static,
    {
        Self {
            param: Arc::new(param),
            velocity: Arc::new(velocity),
            kind: CurveKind::Custom,
            orientation,
        }
    }

    /// Same point set with the solution domain moved to the other side.
    pub fn with_flipped_orientation(&self) -> Self {
        let mut c = self.clone();
        c.orientation = self.orientation.flipped();
        c
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Periodic evaluation: `param(s + 1) == param(s)`.
    pub fn param(&self, s: f64) -> SphericalPoint {
        (self.param)(s.rem_euclid(1.0))
    }

    pub fn velocity(&self, s: f64) -> TangentVector {
        (self.velocity)(s.rem_euclid(1.0))
    }

    pub fn speed(&self, s: f64) -> f64 {
        self.velocity(s).norm()
    }

    /// Unit tangent oriented so that the domain lies on its left.
    pub fn oriented_unit_tangent(&self, s: f64) -> TangentVector {
        let v = self.velocity(s);
        v.scaled(self.orientation.sign() / v.norm())
    }

    pub fn sample(&self, s: f64) -> CurveSample {
        let point = self.param(s);
        let pos = point.to_cartesian();
        let vel = self.velocity(s).to_cartesian();
        let speed = vel.norm();
        CurveSample {
            s,
            pos,
            vel,
            speed,
            oriented_vel: vel * self.orientation.sign(),
        }
    }

    /// Arc length of the parameter interval `[a, b]` by composite Gauss rules.
    pub fn arc_length(&self, a: f64, b: f64, pieces: usize) -> f64 {
        let pieces = pieces.max(1);
        let h = (b - a) / pieces as f64;
        (0..pieces)
            .map(|k| {
                let lo = a + k as f64 * h;
                gauss_legendre(LENGTH_GAUSS_POINTS, lo, lo + h).integrate(|s| self.speed(s))
            })
            .sum()
    }

    pub fn length(&self) -> f64 {
        self.arc_length(0.0, 1.0, 64)
    }
}

/// A curve point with its Cartesian position and derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub s: f64,
    pub pos: Vec3,
    pub vel: Vec3,
    pub speed: f64,
    /// `vel` times the orientation sign.
    pub oriented_vel: Vec3,
}

/// Quadrature nodes cached on one panel.
#[derive(Debug, Clone)]
pub struct PanelNodes {
    pub samples: Vec<CurveSample>,
    /// Gauss weights in the parameter variable (they sum to the panel width).
    pub weights: Vec<f64>,
}

/// Uniform partition of the curve parameter into `N` panels.
#[derive(Debug, Clone)]
pub struct Panelization {
    curve: BoundaryCurve,
    breakpoints: Vec<f64>,
    midpoints: Vec<f64>,
    panel_lengths: Vec<f64>,
    nodes: Vec<PanelNodes>,
}

impl Panelization {
    pub fn new(curve: &BoundaryCurve, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(BemError::TooCoarse(n));
        }
        let h = 1.0 / n as f64;
        let breakpoints: Vec<f64> = (0..=n).map(|i| i as f64 * h).collect();
        let midpoints: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) * h).collect();
        let length_rule = gauss_legendre(LENGTH_GAUSS_POINTS, 0.0, h);
        let node_rule = gauss_legendre(PANEL_GAUSS_POINTS, 0.0, h);
        let mut panel_lengths = Vec::with_capacity(n);
        let mut nodes = Vec::with_capacity(n);
        for &a in &breakpoints[..n] {
            panel_lengths.push(length_rule.integrate(|t| curve.speed(a + t)));
            let samples: Vec<CurveSample> = node_rule
                .nodes
                .iter()
                .map(|&t| curve.sample(a + t))
                .collect();
            if let Some(bad) = samples
                .iter()
                .find(|c| c.speed <= 0.0 || !c.speed.is_finite())
            {
                return Err(BemError::DegenerateCurve(format!(
                    "non-positive speed {} at s = {}",
                    bad.speed, bad.s
                )));
            }
            nodes.push(PanelNodes {
                samples,
                weights: node_rule.weights.clone(),
            });
        }
        Ok(Self {
            curve: curve.clone(),
            breakpoints,
            midpoints,
            panel_lengths,
            nodes,
        })
    }

    pub fn curve(&self) -> &BoundaryCurve {
        &self.curve
    }

    pub fn n_panels(&self) -> usize {
        self.midpoints.len()
    }

    /// Parameter width `1/N` of every panel.
    pub fn width(&self) -> f64 {
        1.0 / self.n_panels() as f64
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn midpoints(&self) -> &[f64] {
        &self.midpoints
    }

    pub fn panel_lengths(&self) -> &[f64] {
        &self.panel_lengths
    }

    pub fn total_length(&self) -> f64 {
        self.panel_lengths.iter().sum()
    }

    /// Parameter interval of panel `i`.
    pub fn panel(&self, i: usize) -> (f64, f64) {
        (self.breakpoints[i], self.breakpoints[i + 1])
    }

    pub fn nodes(&self, i: usize) -> &PanelNodes {
        &self.nodes[i]
    }

    /// Largest panel arc length.
    pub fn mesh_size(&self) -> f64 {
        self.panel_lengths.iter().cloned().fold(0.0, f64::max)
    }

    /// Great-circle distance from `x` to the curve.
    pub fn distance_to(&self, x: &Vec3) -> f64 {
        let mut best_s = 0.0;
        let mut best = f64::INFINITY;
        for (i, panel) in self.nodes.iter().enumerate() {
            let ends = [self.breakpoints[i]];
            let cands = panel
                .samples
                .iter()
                .map(|c| (c.s, (c.pos - x).norm_squared()))
                .chain(
                    ends.iter()
                        .map(|&s| (s, (self.curve.sample(s).pos - x).norm_squared())),
                );
            for (s, d) in cands {
                if d < best {
                    best = d;
                    best_s = s;
                }
            }
        }
        // Golden-section refinement around the nearest sample.
        let dist = |s: f64| (self.curve.sample(s).pos - x).norm_squared();
        let half = 0.25 * self.width();
        let (mut lo, mut hi) = (best_s - half, best_s + half);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = hi - g * (hi - lo);
        let mut d = lo + g * (hi - lo);
        let (mut fc, mut fd) = (dist(c), dist(d));
        for _ in 0..80 {
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - g * (hi - lo);
                fc = dist(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + g * (hi - lo);
                fd = dist(d);
            }
        }
        geodesic_from_chord_sq(best.min(fc).min(fd))
    }
}

/// Uniform panelization of `curve` into `n` panels.
pub fn panelize(curve: &BoundaryCurve, n: usize) -> Result<Panelization> {
    Panelization::new(curve, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn pt(phi: f64, theta: f64) -> SphericalPoint {
        SphericalPoint::new(phi, theta).unwrap()
    }

    #[test]
    fn cartesian_axis_points() {
        assert_abs_diff_eq!(
            pt(0.0, FRAC_PI_2).to_cartesian(),
            Vec3::new(1.0, 0.0, 0.0),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            pt(FRAC_PI_2, FRAC_PI_2).to_cartesian(),
            Vec3::new(0.0, 1.0, 0.0),
            epsilon = 1e-15
        );
        for phi in [0.0, 1.0, 4.0] {
            assert_abs_diff_eq!(
                pt(phi, 0.0).to_cartesian(),
                Vec3::new(0.0, 0.0, 1.0),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn inner_and_chord_special_pairs() {
        let a = pt(0.3, 1.1);
        let anti = SphericalPoint::from_cartesian(&(-a.to_cartesian()));
        assert_abs_diff_eq!(a.inner(&a), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.inner(&anti), -1.0, epsilon = 1e-14);
        let e1 = pt(0.0, FRAC_PI_2);
        let e2 = pt(FRAC_PI_2, FRAC_PI_2);
        assert_abs_diff_eq!(e1.inner(&e2), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.chordal_distance_sq(&a), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a.chordal_distance_sq(&anti), 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e1.chordal_distance_sq(&e2), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn azimuth_is_normalized_and_theta_rejected() {
        let p = pt(-FRAC_PI_2, 1.0);
        assert_abs_diff_eq!(p.phi(), 1.5 * PI, epsilon = 1e-15);
        assert!(pt(7.0 * TAU, 1.0).phi() < TAU);
        assert!(pt(-1e-18, 1.0).phi() < TAU);
        assert!(matches!(
            SphericalPoint::new(0.0, -0.1),
            Err(BemError::PolarAngleOutOfRange(_))
        ));
        assert!(SphericalPoint::new(0.0, PI + 1e-9).is_err());
    }

    #[test]
    fn tangent_basis_rejects_poles() {
        assert!(pt(0.0, 0.0).tangent_basis().is_err());
        assert!(pt(1.0, PI).tangent_basis().is_err());
        assert!(TangentVector::new(pt(0.0, 0.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn latitude_circle_points_and_lengths() {
        let eq = BoundaryCurve::latitude_circle(FRAC_PI_2).unwrap();
        let p = eq.param(0.25);
        assert_abs_diff_eq!(p.phi(), FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(p.theta(), FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(eq.length(), TAU, epsilon = 1e-13);
        let v = eq.velocity(0.1);
        assert_abs_diff_eq!(v.v_phi, TAU, epsilon = 1e-15);
        assert_eq!(v.v_theta, 0.0);

        // Quadrature oracle: independent composite midpoint rule on the speed.
        let cap = BoundaryCurve::latitude_circle(PI / 3.0).unwrap();
        let m = 1000;
        let midpoint: f64 = (0..m)
            .map(|k| cap.speed((k as f64 + 0.5) / m as f64))
            .sum::<f64>()
            / m as f64;
        assert_abs_diff_eq!(cap.length(), midpoint, epsilon = 1e-12);
        assert_abs_diff_eq!(cap.length(), 5.441398092702653, epsilon = 1e-12);
    }

    #[test]
    fn latitude_rejects_poles() {
        assert!(matches!(
            BoundaryCurve::latitude_circle(0.0),
            Err(BemError::DegenerateCurve(_))
        ));
        assert!(BoundaryCurve::latitude_circle(PI).is_err());
    }

    #[test]
    fn latitude_orientation_keeps_southern_domain_on_left() {
        // Left of the oriented tangent is e_r x t; it must point toward larger theta.
        let c = BoundaryCurve::latitude_circle(1.0).unwrap();
        let s = 0.37;
        let sample = c.sample(s);
        let left = sample.pos.cross(&sample.oriented_vel);
        let (_, e_theta, _) = c.param(s).tangent_basis().unwrap();
        assert!(left.dot(&e_theta) > 0.0);
        let flipped = c.with_flipped_orientation().sample(s);
        assert!(sample.pos.cross(&flipped.oriented_vel).dot(&e_theta) < 0.0);
    }

    #[test]
    fn panelize_lengths() {
        let eq = BoundaryCurve::latitude_circle(FRAC_PI_2).unwrap();
        let p4 = panelize(&eq, 4).unwrap();
        for &l in p4.panel_lengths() {
            assert_abs_diff_eq!(l, FRAC_PI_2, epsilon = 1e-14);
        }
        let p20 = panelize(&eq, 20).unwrap();
        assert_abs_diff_eq!(p20.total_length(), TAU, epsilon = 1e-12);
        assert_eq!(p20.breakpoints().len(), 21);
        assert_abs_diff_eq!(p20.midpoints()[3], 3.5 / 20.0, epsilon = 1e-16);

        let cap = BoundaryCurve::latitude_circle(PI / 3.0).unwrap();
        let p8 = panelize(&cap, 8).unwrap();
        let expected = TAU * (PI / 3.0).sin() / 8.0;
        for &l in p8.panel_lengths() {
            assert_abs_diff_eq!(l, expected, epsilon = 1e-14);
        }
        assert!(matches!(panelize(&eq, 3), Err(BemError::TooCoarse(3))));
    }

    #[test]
    fn custom_curve_with_zero_speed_is_rejected() {
        let c = BoundaryCurve::custom(
            |_| SphericalPoint::new(0.0, 1.0).unwrap(),
            |s| TangentVector::new(SphericalPoint::new(0.0, 1.0).unwrap(), 0.0 * s, 0.0).unwrap(),
            Orientation::DomainOnLeft,
        );
        assert!(matches!(panelize(&c, 8), Err(BemError::DegenerateCurve(_))));
    }

    #[test]
    fn distance_to_latitude_circle() {
        let c = BoundaryCurve::latitude_circle(1.0).unwrap();
        let p = panelize(&c, 16).unwrap();
        let x = pt(0.123, 1.3).to_cartesian();
        assert_abs_diff_eq!(p.distance_to(&x), 0.3, epsilon = 1e-9);
        let on = pt(2.0, 1.0).to_cartesian();
        assert!(p.distance_to(&on) < 1e-8);
    }

    proptest! {
        #[test]
        fn chord_matches_cartesian(phi1 in 0.0..TAU, t1 in 0.0..PI, phi2 in 0.0..TAU, t2 in 0.0..PI) {
            let (a, b) = (pt(phi1, t1), pt(phi2, t2));
            let d = (a.to_cartesian() - b.to_cartesian()).norm_squared();
            prop_assert!((a.chordal_distance_sq(&b) - d).abs() < 1e-13);
            prop_assert!((a.inner(&b) - a.to_cartesian().dot(&b.to_cartesian())).abs() < 1e-14);
            prop_assert!((a.to_cartesian().norm() - 1.0).abs() < 1e-14);
        }

        #[test]
        fn basis_is_right_handed(phi in 0.0..TAU, theta in 0.01..(PI - 0.01)) {
            let (ep, et, er) = pt(phi, theta).tangent_basis().unwrap();
            // (e_r, e_theta, e_phi) is the standard right-handed spherical frame.
            prop_assert!((er.cross(&et) - ep).norm() < 1e-14);
            prop_assert!(ep.dot(&et).abs() < 1e-14);
            prop_assert!((ep.norm() - 1.0).abs() < 1e-14 && (et.norm() - 1.0).abs() < 1e-14);
        }

        #[test]
        fn latitude_velocity_is_tangent(theta0 in 0.1..3.0f64, s in 0.0..1.0f64) {
            let c = BoundaryCurve::latitude_circle(theta0).unwrap();
            let sample = c.sample(s);
            prop_assert!(sample.vel.dot(&sample.pos).abs() < 1e-12);
        }

        #[test]
        fn latitude_lengths_shift_invariant(theta0 in 0.2..2.9f64, shift in 0.0..1.0f64) {
            let c = BoundaryCurve::latitude_circle(theta0).unwrap();
            let w = 1.0 / 10.0;
            let base = c.arc_length(0.0, w, 1);
            prop_assert!((c.arc_length(shift, shift + w, 1) - base).abs() < 1e-12);
        }
    }
}
