//! The three one-parameter groups of Lorentz rotations and the four rotational
//! parametrizations built from a generating profile `z(u)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::autodiff::{Real, Taylor2};
use crate::curvature::{curvature_oriented, locate, CurvatureData, Domain, Jet2, Orientation, SurfacePatch};
use crate::error::{Error, Result};
use crate::minkowski::MVec3;
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxisKind {
    /// Axis e3; `X = (u cos v, u sin v, z(u))`.
    TimelikeAxis,
    /// Axis e1; `X = (u, z(u) sinh v, z(u) cosh v)`.
    SpacelikeAxisI,
    /// Axis e1; `X = (u, z(u) cosh v, z(u) sinh v)`. Always timelike.
    SpacelikeAxisII,
    /// Axis (0, 1, 1); `X = (−2uv, z + u − uv², z − u − uv²)`.
    LightlikeAxis,
}

impl AxisKind {
    pub const ALL: [AxisKind; 4] = [
        AxisKind::TimelikeAxis,
        AxisKind::SpacelikeAxisI,
        AxisKind::SpacelikeAxisII,
        AxisKind::LightlikeAxis,
    ];

    /// Spacelike-axis profiles are graphs over the axis and must avoid z = 0.
    pub fn forbids_zero_height(self) -> bool {
        matches!(self, AxisKind::SpacelikeAxisI | AxisKind::SpacelikeAxisII)
    }

    pub fn default_v_range(self) -> (f64, f64) {
        match self {
            AxisKind::TimelikeAxis => (0.0, 2.0 * PI),
            _ => (-1.5, 1.5),
        }
    }

    /// Generating curve α(u) with X(u, v) = R(v)·α(u).
    pub fn generating_point(self, u: f64, z: f64) -> MVec3 {
        match self {
            AxisKind::TimelikeAxis | AxisKind::SpacelikeAxisI => MVec3::new(u, 0.0, z),
            AxisKind::SpacelikeAxisII => MVec3::new(u, z, 0.0),
            AxisKind::LightlikeAxis => MVec3::new(0.0, u + z, z - u),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxisKind::TimelikeAxis => "timelike",
            AxisKind::SpacelikeAxisI => "spacelike-i",
            AxisKind::SpacelikeAxisII => "spacelike-ii",
            AxisKind::LightlikeAxis => "lightlike",
        }
    }
}

impl fmt::Display for AxisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxisKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        AxisKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown axis `{s}` (expected timelike, spacelike-i, spacelike-ii, lightlike)"))
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub fn apply(&self, p: MVec3) -> MVec3 {
        let m = &self.0;
        MVec3::new(
            m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
            m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
            m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z,
        )
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        crate::minkowski::det3(MVec3::from(m[0]), MVec3::from(m[1]), MVec3::from(m[2]))
    }
}

/// Lorentz rotation by parameter `v` about the canonical axis of `kind`.
pub fn rotation_matrix(kind: AxisKind, v: f64) -> Mat3 {
    match kind {
        AxisKind::TimelikeAxis => {
            let (s, c) = v.sin_cos();
            Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        }
        AxisKind::SpacelikeAxisI | AxisKind::SpacelikeAxisII => {
            let (s, c) = (v.sinh(), v.cosh());
            Mat3([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])
        }
        AxisKind::LightlikeAxis => {
            let h = 0.5 * v * v;
            Mat3([[1.0, -v, v], [v, 1.0 - h, h], [v, -h, 1.0 + h]])
        }
    }
}

/// Orbit `v ↦ R(v)·p` of a point off the axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Orbit {
    pub kind: AxisKind,
    pub point: MVec3,
}

impl Orbit {
    pub fn at(&self, v: f64) -> MVec3 {
        rotation_matrix(self.kind, v).apply(self.point)
    }
}

pub fn orbit(kind: AxisKind, p: MVec3) -> Result<Orbit> {
    let degenerate = match kind {
        AxisKind::TimelikeAxis => p.x == 0.0 && p.y == 0.0,
        AxisKind::SpacelikeAxisI | AxisKind::SpacelikeAxisII => p.y == 0.0 && p.z == 0.0,
        AxisKind::LightlikeAxis => p.y == p.z,
    };
    if degenerate {
        Err(Error::FixedPoint)
    } else {
        Ok(Orbit { kind, point: p })
    }
}

/// Height, slope, and second derivative of a profile at one abscissa.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ProfilePoint {
    pub z: f64,
    pub zp: f64,
    pub zpp: f64,
}

/// A generating curve `u ↦ z(u)` with analytic first and second derivatives.
pub trait Profile {
    fn eval(&self, u: f64) -> Result<ProfilePoint>;
    fn interval(&self) -> (f64, f64);
}

impl<P: Profile + ?Sized> Profile for &P {
    fn eval(&self, u: f64) -> Result<ProfilePoint> {
        (**self).eval(u)
    }
    fn interval(&self) -> (f64, f64) {
        (**self).interval()
    }
}

impl<P: Profile + ?Sized> Profile for Box<P> {
    fn eval(&self, u: f64) -> Result<ProfilePoint> {
        (**self).eval(u)
    }
    fn interval(&self) -> (f64, f64) {
        (**self).interval()
    }
}

/// A height function written once for any [`Real`] scalar.
pub trait HeightFn {
    fn height<T: Real>(&self, u: T) -> T;
}

/// Profile whose derivatives come from forward-mode differentiation of a [`HeightFn`].
#[derive(Clone, Debug)]
pub struct AnalyticProfile<F> {
    pub height: F,
    pub interval: (f64, f64),
}

impl<F: HeightFn> AnalyticProfile<F> {
    pub fn new(height: F, interval: (f64, f64)) -> Self {
        AnalyticProfile { height, interval }
    }
}

impl<F: HeightFn> Profile for AnalyticProfile<F> {
    fn eval(&self, u: f64) -> Result<ProfilePoint> {
        let t = self.height.height(Taylor2::var_u(u));
        if !(t.val.is_finite() && t.du.is_finite() && t.duu.is_finite()) {
            return Err(Error::DomainViolation { what: "profile formula undefined".into(), at: u });
        }
        Ok(ProfilePoint { z: t.val, zp: t.du, zpp: t.duu })
    }

    fn interval(&self) -> (f64, f64) {
        self.interval
    }
}

/// `z(u) = slope·u + intercept`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineProfile {
    pub slope: f64,
    pub intercept: f64,
    pub interval: (f64, f64),
}

impl Profile for LineProfile {
    fn eval(&self, u: f64) -> Result<ProfilePoint> {
        Ok(ProfilePoint { z: self.slope * u + self.intercept, zp: self.slope, zpp: 0.0 })
    }
    fn interval(&self) -> (f64, f64) {
        self.interval
    }
}

/// Multiplies `z` and its derivatives by a constant factor.
#[derive(Clone, Debug)]
pub struct ScaledProfile<P> {
    pub inner: P,
    pub factor: f64,
}

impl<P: Profile> Profile for ScaledProfile<P> {
    fn eval(&self, u: f64) -> Result<ProfilePoint> {
        let p = self.inner.eval(u)?;
        Ok(ProfilePoint { z: p.z * self.factor, zp: p.zp * self.factor, zpp: p.zpp * self.factor })
    }
    fn interval(&self) -> (f64, f64) {
        self.inner.interval()
    }
}

/// Surface of revolution of a profile about one of the canonical axes.
#[derive(Clone, Debug)]
pub struct RotationalPatch<P> {
    pub kind: AxisKind,
    pub profile: P,
    pub v_range: (f64, f64),
}

pub fn revolve<P: Profile>(kind: AxisKind, profile: P) -> Result<RotationalPatch<P>> {
    let (lo, hi) = profile.interval();
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidDomain(format!("profile interval [{lo}, {hi}] is empty")));
    }
    if lo <= 0.0 && hi >= 0.0 {
        return Err(Error::InvalidDomain(format!("profile interval [{lo}, {hi}] contains u = 0")));
    }
    Ok(RotationalPatch { kind, profile, v_range: kind.default_v_range() })
}

impl<P> RotationalPatch<P> {
    pub fn with_v_range(mut self, v_range: (f64, f64)) -> Self {
        self.v_range = v_range;
        self
    }
}

/// Jet of the rotational parametrization at `(u, v)` assembled from the profile values.
pub fn rotational_jet(kind: AxisKind, u: f64, v: f64, p: ProfilePoint) -> Jet2 {
    let ProfilePoint { z, zp, zpp } = p;
    let m = MVec3::new;
    match kind {
        AxisKind::TimelikeAxis => {
            let (s, c) = v.sin_cos();
            Jet2 {
                x: m(u * c, u * s, z),
                xu: m(c, s, zp),
                xv: m(-u * s, u * c, 0.0),
                xuu: m(0.0, 0.0, zpp),
                xuv: m(-s, c, 0.0),
                xvv: m(-u * c, -u * s, 0.0),
            }
        }
        AxisKind::SpacelikeAxisI => {
            let (s, c) = (v.sinh(), v.cosh());
            Jet2 {
                x: m(u, z * s, z * c),
                xu: m(1.0, zp * s, zp * c),
                xv: m(0.0, z * c, z * s),
                xuu: m(0.0, zpp * s, zpp * c),
                xuv: m(0.0, zp * c, zp * s),
                xvv: m(0.0, z * s, z * c),
            }
        }
        AxisKind::SpacelikeAxisII => {
            let (s, c) = (v.sinh(), v.cosh());
            Jet2 {
                x: m(u, z * c, z * s),
                xu: m(1.0, zp * c, zp * s),
                xv: m(0.0, z * s, z * c),
                xuu: m(0.0, zpp * c, zpp * s),
                xuv: m(0.0, zp * s, zp * c),
                xvv: m(0.0, z * c, z * s),
            }
        }
        AxisKind::LightlikeAxis => {
            let v2 = v * v;
            Jet2 {
                x: m(-2.0 * u * v, z + u - u * v2, z - u - u * v2),
                xu: m(-2.0 * v, zp + 1.0 - v2, zp - 1.0 - v2),
                xv: m(-2.0 * u, -2.0 * u * v, -2.0 * u * v),
                xuu: m(0.0, zpp, zpp),
                xuv: m(-2.0, -2.0 * v, -2.0 * v),
                xvv: m(0.0, -2.0 * u, -2.0 * u),
            }
        }
    }
}

/// Sign relating the generator normal to the parametrization normal.
///
/// The coordinate that scales `Xv` is `u` for timelike and lightlike axes and
/// `z` for the spacelike ones. About a lightlike axis and a spacelike axis of
/// the second kind the profile equations carry an extra factor ε on H.
pub fn generator_sign(kind: AxisKind, u: f64, z: f64, epsilon: Sign) -> f64 {
    let (s, factor) = match kind {
        AxisKind::TimelikeAxis => (u, 1.0),
        AxisKind::SpacelikeAxisI => (z, 1.0),
        AxisKind::SpacelikeAxisII => (z, epsilon.value()),
        AxisKind::LightlikeAxis => (u, epsilon.value()),
    };
    if s < 0.0 {
        -factor
    } else {
        factor
    }
}

impl<P: Profile> RotationalPatch<P> {
    fn point(&self, u: f64) -> Result<ProfilePoint> {
        if u == 0.0 {
            return Err(Error::InvalidDomain("u = 0 is excluded".into()));
        }
        let p = self.profile.eval(u)?;
        if self.kind.forbids_zero_height() && p.z == 0.0 {
            return Err(Error::DomainViolation { what: "profile touches the axis (z = 0)".into(), at: u });
        }
        Ok(p)
    }
}

impl<P: Profile> SurfacePatch for RotationalPatch<P> {
    fn jet(&self, u: f64, v: f64) -> Result<Jet2> {
        Ok(rotational_jet(self.kind, u, v, self.point(u)?))
    }

    fn domain(&self) -> Domain {
        Domain::new(self.profile.interval(), self.v_range)
    }

    fn curvature_at(&self, u: f64, v: f64, orientation: Orientation) -> Result<CurvatureData> {
        let p = self.point(u)?;
        let jet = rotational_jet(self.kind, u, v, p);
        let mut c = curvature_oriented(&jet, orientation).map_err(|e| locate(e, u, v))?;
        if orientation == Orientation::Generator && generator_sign(self.kind, u, p.z, c.epsilon) < 0.0 {
            c.h = -c.h;
            c.normal = -c.normal;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::{classify_patch, jets_from_map, Grid, JetMode, SurfaceMap};
    use crate::minkowski::{lorentz_dot, CausalCharacter};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    struct Poly(f64, f64, f64);
    impl HeightFn for Poly {
        fn height<T: Real>(&self, u: T) -> T {
            u * u * self.2 + u * self.1 + self.0
        }
    }

    struct Sqrt1PlusU2;
    impl HeightFn for Sqrt1PlusU2 {
        fn height<T: Real>(&self, u: T) -> T {
            (u * u + 1.0).sqrt()
        }
    }

    struct Wavy;
    impl HeightFn for Wavy {
        fn height<T: Real>(&self, u: T) -> T {
            (u * 0.7).sin() * 0.3 + 2.0 + u * 0.1
        }
    }

    /// The rotational map written directly, as an AD oracle for the assembled jets.
    struct RevolvedMap(AxisKind);
    impl SurfaceMap for RevolvedMap {
        fn eval<T: Real>(&self, u: T, v: T) -> [T; 3] {
            let z = Wavy.height(u);
            match self.0 {
                AxisKind::TimelikeAxis => [u * v.cos(), u * v.sin(), z],
                AxisKind::SpacelikeAxisI => [u, z * v.sinh(), z * v.cosh()],
                AxisKind::SpacelikeAxisII => [u, z * v.cosh(), z * v.sinh()],
                AxisKind::LightlikeAxis => [u * v * -2.0, z + u - u * v * v, z - u - u * v * v],
            }
        }
    }

    fn arb_kind() -> impl Strategy<Value = AxisKind> {
        prop_oneof![
            Just(AxisKind::TimelikeAxis),
            Just(AxisKind::SpacelikeAxisI),
            Just(AxisKind::SpacelikeAxisII),
            Just(AxisKind::LightlikeAxis)
        ]
    }

    fn arb_vec() -> impl Strategy<Value = MVec3> {
        (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(x, y, z)| MVec3::new(x, y, z))
    }

    #[test]
    fn identity_at_zero() {
        for kind in AxisKind::ALL {
            assert_eq!(rotation_matrix(kind, 0.0), Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]));
        }
    }

    #[test]
    fn lightlike_rotation_fixes_null_axis() {
        let axis = MVec3::new(0.0, 1.0, 1.0);
        for v in [-2.0, 0.3, 5.0] {
            assert!((rotation_matrix(AxisKind::LightlikeAxis, v).apply(axis) - axis).max_abs() <= 1e-15);
        }
    }

    #[test]
    fn timelike_orbit_is_a_circle() {
        let o = orbit(AxisKind::TimelikeAxis, MVec3::new(1.0, 0.0, 5.0)).unwrap();
        for v in [0.0, 1.0, 2.5, 4.0] {
            let p = o.at(v);
            assert_abs_diff_eq!(p.x * p.x + p.y * p.y, 1.0, epsilon = 1e-14);
            assert_eq!(p.z, 5.0);
        }
    }

    #[test]
    fn spacelike_orbit_is_a_hyperbola() {
        let p0 = MVec3::new(0.5, 2.0, -0.5);
        let o = orbit(AxisKind::SpacelikeAxisI, p0).unwrap();
        for v in [-1.0, 0.4, 2.0] {
            let p = o.at(v);
            assert_abs_diff_eq!(p.y * p.y - p.z * p.z, p0.y * p0.y - p0.z * p0.z, epsilon = 1e-12);
            assert_eq!(p.x, p0.x);
        }
    }

    #[test]
    fn lightlike_orbit_is_a_parabola_in_its_plane() {
        let p0 = MVec3::new(0.7, 2.0, -1.0);
        let o = orbit(AxisKind::LightlikeAxis, p0).unwrap();
        for v in [-1.0, 0.5, 3.0] {
            let p = o.at(v);
            assert_abs_diff_eq!(p.y - p.z, p0.y - p0.z, epsilon = 1e-12);
            // Closed form of the orbit.
            let d = p0.y - p0.z;
            let expect = MVec3::new(p0.x - d * v, p0.x * v + p0.y - d * v * v / 2.0, p0.x * v + p0.z - d * v * v / 2.0);
            assert_abs_diff_eq!((p - expect).max_abs(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn degenerate_orbits_are_rejected() {
        assert_eq!(orbit(AxisKind::LightlikeAxis, MVec3::new(1.0, 2.0, 2.0)), Err(Error::FixedPoint));
        assert_eq!(orbit(AxisKind::TimelikeAxis, MVec3::new(0.0, 0.0, 3.0)), Err(Error::FixedPoint));
        assert_eq!(orbit(AxisKind::SpacelikeAxisI, MVec3::new(3.0, 0.0, 0.0)), Err(Error::FixedPoint));
    }

    #[test]
    fn revolve_rejects_interval_through_origin() {
        let p = AnalyticProfile::new(Poly(0.0, 0.0, 0.0), (-1.0, 1.0));
        assert!(matches!(revolve(AxisKind::TimelikeAxis, p), Err(Error::InvalidDomain(_))));
    }

    #[test]
    fn flat_profile_gives_flat_plane() {
        let patch = revolve(AxisKind::TimelikeAxis, AnalyticProfile::new(Poly(0.0, 0.0, 0.0), (0.5, 2.0))).unwrap();
        let c = patch.curvature_at(1.0, 0.3, Orientation::Canonical).unwrap();
        assert_eq!((c.h, c.k), (0.0, 0.0));
    }

    #[test]
    fn quadratic_profile_second_derivative() {
        let patch = revolve(AxisKind::TimelikeAxis, AnalyticProfile::new(Poly(0.0, 0.0, 1.0), (0.5, 2.0))).unwrap();
        let j = patch.jet(1.3, 0.0).unwrap();
        assert_eq!(j.xuu, MVec3::new(0.0, 0.0, 2.0));
    }

    #[test]
    fn spacelike_axis_hyperboloid() {
        let patch = revolve(AxisKind::SpacelikeAxisI, AnalyticProfile::new(Sqrt1PlusU2, (0.2, 2.0))).unwrap();
        for (u, v) in patch.domain().sample(Grid::new(7, 5)) {
            let x = patch.jet(u, v).unwrap().x;
            assert_abs_diff_eq!(lorentz_dot(x, x), -1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn assembled_jets_match_autodiff() {
        for kind in AxisKind::ALL {
            let patch = revolve(kind, AnalyticProfile::new(Wavy, (0.3, 2.0))).unwrap();
            for (u, v) in [(0.5, 0.2), (1.7, -1.1), (1.0, 1.4)] {
                let a = patch.jet(u, v).unwrap();
                let b = jets_from_map(&RevolvedMap(kind), u, v, JetMode::AutoDiff);
                for (p, q) in [(a.x, b.x), (a.xu, b.xu), (a.xv, b.xv), (a.xuu, b.xuu), (a.xuv, b.xuv), (a.xvv, b.xvv)] {
                    assert!((p - q).max_abs() <= 1e-10 * q.max_abs().max(1.0), "{kind}: {p} vs {q}");
                }
            }
        }
    }

    #[test]
    fn revolve_agrees_with_rotating_the_generating_curve() {
        for kind in AxisKind::ALL {
            let patch = revolve(kind, AnalyticProfile::new(Wavy, (0.3, 2.0))).unwrap();
            for (u, v) in [(0.5, 0.2), (1.7, -1.1), (1.0, 1.4)] {
                let z = patch.profile.eval(u).unwrap().z;
                let rotated = rotation_matrix(kind, v).apply(kind.generating_point(u, z));
                let x = patch.jet(u, v).unwrap().x;
                assert!((rotated - x).max_abs() <= 1e-12 * x.max_abs().max(1.0));
            }
        }
    }

    #[test]
    fn classify_rot1_profiles() {
        let classify = |slope: f64| {
            let p = LineProfile { slope, intercept: 0.0, interval: (1.0, 2.0) };
            classify_patch(&revolve(AxisKind::TimelikeAxis, p).unwrap(), Grid::new(10, 8))
        };
        assert_eq!(classify(0.5).unwrap().character, CausalCharacter::Spacelike);
        assert_eq!(classify(2.0).unwrap().character, CausalCharacter::Timelike);
        assert!(matches!(classify(1.0), Err(Error::MixedCausality { .. })));
    }

    // Per-axis curvature formulas in the parametrization orientation.
    fn closed_hk(kind: AxisKind, u: f64, p: ProfilePoint, eps: f64) -> (f64, f64) {
        let ProfilePoint { z, zp, zpp } = p;
        match kind {
            AxisKind::TimelikeAxis => {
                let q = eps * (1.0 - zp * zp);
                let h = -0.5 * (eps * zp / (u * q.sqrt()) + zpp / q.powf(1.5));
                let k = -zp * zpp / (u * (1.0 - zp * zp).powi(2));
                (h, k)
            }
            AxisKind::SpacelikeAxisI => {
                let q = eps * (1.0 - zp * zp);
                let h = -0.5 * (eps / (z * q.sqrt()) + zpp / q.powf(1.5));
                let k = -zpp / (z * (1.0 - zp * zp).powi(2));
                (h, k)
            }
            AxisKind::SpacelikeAxisII => {
                let q = 1.0 + zp * zp;
                let h = 0.5 * (-1.0 / (z * q.sqrt()) + zpp / q.powf(1.5));
                let k = -zpp / (z * q * q);
                (h, k)
            }
            AxisKind::LightlikeAxis => {
                let q = eps * zp;
                let h = 0.5 * (1.0 / (2.0 * u * q.sqrt()) - eps * zpp / (4.0 * q.powf(1.5)));
                let k = zpp / (8.0 * u * zp * zp);
                (h, k)
            }
        }
    }

    struct Fixed(ProfilePoint);
    impl Profile for Fixed {
        fn eval(&self, _u: f64) -> Result<ProfilePoint> {
            Ok(self.0)
        }
        fn interval(&self) -> (f64, f64) {
            (-2.0, 2.0)
        }
    }

    #[test]
    fn generic_engine_matches_per_axis_formulas() {
        let cases = [
            (AxisKind::TimelikeAxis, ProfilePoint { z: 0.4, zp: 0.3, zpp: -0.8 }, 1.0),
            (AxisKind::TimelikeAxis, ProfilePoint { z: 0.4, zp: 1.7, zpp: 0.6 }, -1.0),
            (AxisKind::SpacelikeAxisI, ProfilePoint { z: 1.4, zp: 0.3, zpp: -0.8 }, 1.0),
            (AxisKind::SpacelikeAxisI, ProfilePoint { z: 0.9, zp: -1.7, zpp: 0.6 }, -1.0),
            (AxisKind::SpacelikeAxisI, ProfilePoint { z: -0.9, zp: -0.2, zpp: 0.6 }, 1.0),
            (AxisKind::SpacelikeAxisII, ProfilePoint { z: 1.4, zp: 0.3, zpp: -0.8 }, -1.0),
            (AxisKind::SpacelikeAxisII, ProfilePoint { z: -0.6, zp: -2.3, zpp: 0.4 }, -1.0),
            (AxisKind::LightlikeAxis, ProfilePoint { z: 0.1, zp: 0.5, zpp: 0.9 }, 1.0),
            (AxisKind::LightlikeAxis, ProfilePoint { z: 0.1, zp: -0.5, zpp: 0.9 }, -1.0),
        ];
        for (kind, p, eps) in cases {
            for u in [0.7, 1.9, -1.1] {
                for v in [0.0, 0.6] {
                    let patch = RotationalPatch { kind, profile: Fixed(p), v_range: (-1.0, 1.0) };
                    let c = patch.curvature_at(u, v, Orientation::Generator).unwrap();
                    assert_eq!(c.epsilon.value(), eps, "{kind}");
                    let (h, k) = closed_hk(kind, u, p, eps);
                    assert_abs_diff_eq!(c.h, h, epsilon = 1e-12 * h.abs().max(1.0));
                    assert_abs_diff_eq!(c.k, k, epsilon = 1e-12 * k.abs().max(1.0));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rotations_are_lorentz_isometries(kind in arb_kind(), v in -3.0f64..3.0, p in arb_vec(), q in arb_vec()) {
            let r = rotation_matrix(kind, v);
            let lhs = lorentz_dot(r.apply(p), r.apply(q));
            let scale = (1.0 + v * v).powi(2).max(v.cosh().powi(2)) * p.max_abs().max(1.0) * q.max_abs().max(1.0);
            prop_assert!((lhs - lorentz_dot(p, q)).abs() <= 1e-12 * scale);
            prop_assert!((r.det() - 1.0).abs() <= 1e-12 * scale);
        }

        #[test]
        fn curvature_is_rotation_invariant(kind in arb_kind(), u in 0.4f64..1.8, v in -1.2f64..1.2) {
            let patch = revolve(kind, AnalyticProfile::new(Wavy, (0.3, 2.0))).unwrap();
            let a = patch.curvature_at(u, 0.0, Orientation::Parametrization).unwrap();
            let b = patch.curvature_at(u, v, Orientation::Parametrization).unwrap();
            prop_assert!((a.h - b.h).abs() <= 1e-8);
            prop_assert!((a.k - b.k).abs() <= 1e-8);
        }
    }
}
