//! Fundamental forms, Gauss map, and the mean and Gauss curvature of a
//! non-degenerate parametrized patch in Minkowski space.

use crate::autodiff::{Real, Taylor2};
use crate::error::{Error, Result};
use crate::minkowski::{det3, lorentz_cross, lorentz_dot, CausalCharacter, MVec3};
use crate::sign::Sign;

/// Position and first and second partials of a map ℝ² → ℝ³ at one parameter point.
/// Producers guarantee `xuv` is the symmetric mixed partial.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Jet2 {
    pub x: MVec3,
    pub xu: MVec3,
    pub xv: MVec3,
    pub xuu: MVec3,
    pub xuv: MVec3,
    pub xvv: MVec3,
}

impl Jet2 {
    /// Non-degeneracy threshold for `W = EG − F²`.
    pub fn tol_w(&self) -> f64 {
        1e-10 * (self.xu.euclid_norm_sq() * self.xv.euclid_norm_sq()).max(1.0)
    }

    pub fn metric_determinant(&self) -> f64 {
        let e = lorentz_dot(self.xu, self.xu);
        let f = lorentz_dot(self.xu, self.xv);
        let g = lorentz_dot(self.xv, self.xv);
        e * g - f * f
    }
}

/// Coefficients of the first (`E, F, G`) and second (`e, f, g`) fundamental forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalForms {
    /// E = ⟨Xu, Xu⟩
    pub e_first: f64,
    /// F = ⟨Xu, Xv⟩
    pub f_first: f64,
    /// G = ⟨Xv, Xv⟩
    pub g_first: f64,
    /// e = ⟨N, Xuu⟩
    pub e_second: f64,
    /// f = ⟨N, Xuv⟩
    pub f_second: f64,
    /// g = ⟨N, Xvv⟩
    pub g_second: f64,
    /// W = EG − F²
    pub w: f64,
    /// `Plus` on spacelike patches (W > 0), `Minus` on timelike ones.
    pub epsilon: Sign,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureData {
    pub h: f64,
    pub k: f64,
    /// Unit normal with ⟨N, N⟩ = −ε.
    pub normal: MVec3,
    pub epsilon: Sign,
}

/// Which of the two unit normals the curvature is measured against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// Future-directed normal (⟨N, E3⟩ < 0) on spacelike patches; on timelike
    /// patches the normal with ⟨N, e1⟩ ≥ 0, ties broken by ⟨N, e2⟩ ≥ 0.
    #[default]
    Canonical,
    /// N = Xu × Xv / √|W|, the normal induced by the parametrization. The first
    /// integrals of rotational Weingarten profiles are stated for this choice.
    Parametrization,
    /// Normal built from Xu and the unit rotation generator: `sign(s)·Xu × Xv / √|W|`
    /// where `s` is `u` for timelike and lightlike axes and `z` for spacelike axes.
    /// Rotational Weingarten profiles satisfy their first integrals in this
    /// orientation. Coincides with `Parametrization` on non-rotational patches.
    Generator,
}

fn oriented_normal(jet: &Jet2, orientation: Orientation) -> Result<(MVec3, f64, Sign)> {
    let w = jet.metric_determinant();
    let tol = jet.tol_w();
    if !(w.abs() > tol) {
        return Err(Error::DegeneratePatch { u: f64::NAN, v: f64::NAN, w });
    }
    let epsilon = Sign::of(w);
    let mut n = (1.0 / w.abs().sqrt()) * lorentz_cross(jet.xu, jet.xv);
    if orientation == Orientation::Canonical {
        let flip = match epsilon {
            Sign::Plus => lorentz_dot(n, MVec3::E3) > 0.0,
            Sign::Minus => n.x < 0.0 || (n.x == 0.0 && n.y < 0.0),
        };
        if flip {
            n = -n;
        }
    }
    Ok((n, w, epsilon))
}

/// Fundamental forms with the second form measured against the parametrization normal,
/// i.e. `e = det(Xu, Xv, Xuu) / √(εW)` and likewise for `f`, `g`.
pub fn fundamental_forms(jet: &Jet2) -> Result<FundamentalForms> {
    fundamental_forms_oriented(jet, Orientation::Parametrization)
}

pub fn fundamental_forms_oriented(jet: &Jet2, orientation: Orientation) -> Result<FundamentalForms> {
    let (n, w, epsilon) = oriented_normal(jet, orientation)?;
    Ok(FundamentalForms {
        e_first: lorentz_dot(jet.xu, jet.xu),
        f_first: lorentz_dot(jet.xu, jet.xv),
        g_first: lorentz_dot(jet.xv, jet.xv),
        e_second: lorentz_dot(n, jet.xuu),
        f_second: lorentz_dot(n, jet.xuv),
        g_second: lorentz_dot(n, jet.xvv),
        w,
        epsilon,
    })
}

/// Mean and Gauss curvature with the canonical normal.
pub fn curvature(jet: &Jet2) -> Result<CurvatureData> {
    curvature_oriented(jet, Orientation::Canonical)
}

pub fn curvature_oriented(jet: &Jet2, orientation: Orientation) -> Result<CurvatureData> {
    let (normal, _, _) = oriented_normal(jet, orientation)?;
    let ff = fundamental_forms_oriented(jet, orientation)?;
    let eps = ff.epsilon.value();
    let trace = ff.e_second * ff.g_first - 2.0 * ff.f_second * ff.f_first + ff.g_second * ff.e_first;
    let h = -0.5 * eps * trace / ff.w;
    let k = -eps * (ff.e_second * ff.g_second - ff.f_second * ff.f_second) / ff.w;
    Ok(CurvatureData { h, k, normal, epsilon: ff.epsilon })
}

/// Determinant form of the curvature: `K = −(d_uu d_vv − d_uv²)/W²` with
/// `d_ij = det(Xu, Xv, X_ij)`. Orientation independent; used as a cross-check.
pub fn gauss_curvature_by_determinants(jet: &Jet2) -> f64 {
    let d_uu = det3(jet.xu, jet.xv, jet.xuu);
    let d_uv = det3(jet.xu, jet.xv, jet.xuv);
    let d_vv = det3(jet.xu, jet.xv, jet.xvv);
    let w = jet.metric_determinant();
    -(d_uu * d_vv - d_uv * d_uv) / (w * w)
}

/// Rectangular parameter domain `[u0, u1] × [v0, v1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub u: (f64, f64),
    pub v: (f64, f64),
}

/// Uniform sampling with both endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub nu: usize,
    pub nv: usize,
}

impl Grid {
    pub const fn new(nu: usize, nv: usize) -> Self {
        Grid { nu, nv }
    }
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if n == 1 {
            0.5 * (lo + hi)
        } else if i == n - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

impl Domain {
    pub fn new(u: (f64, f64), v: (f64, f64)) -> Self {
        Domain { u, v }
    }

    /// Grid points in row-major order (u outer, v inner).
    pub fn sample(&self, grid: Grid) -> Vec<(f64, f64)> {
        let vs: Vec<f64> = linspace(self.v.0, self.v.1, grid.nv).collect();
        linspace(self.u.0, self.u.1, grid.nu)
            .flat_map(|u| vs.iter().map(move |&v| (u, v)))
            .collect()
    }
}

/// A parametrized surface that can report its 2-jet anywhere in its domain.
pub trait SurfacePatch {
    fn jet(&self, u: f64, v: f64) -> Result<Jet2>;
    fn domain(&self) -> Domain;

    fn curvature_at(&self, u: f64, v: f64, orientation: Orientation) -> Result<CurvatureData> {
        let jet = self.jet(u, v)?;
        curvature_oriented(&jet, orientation).map_err(|e| locate(e, u, v))
    }
}

pub(crate) fn locate(err: Error, u: f64, v: f64) -> Error {
    match err {
        Error::DegeneratePatch { w, .. } => Error::DegeneratePatch { u, v, w },
        other => other,
    }
}

/// A smooth map (u, v) ↦ ℝ³ written once for any [`Real`] scalar.
pub trait SurfaceMap {
    fn eval<T: Real>(&self, u: T, v: T) -> [T; 3];
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JetMode {
    AutoDiff,
    CentralDifference { h: f64 },
}

pub fn jets_from_map<M: SurfaceMap + ?Sized>(map: &M, u: f64, v: f64, mode: JetMode) -> Jet2 {
    match mode {
        JetMode::AutoDiff => {
            let [x, y, z] = map.eval(Taylor2::var_u(u), Taylor2::var_v(v));
            let pick = |f: fn(&Taylor2) -> f64| MVec3::new(f(&x), f(&y), f(&z));
            Jet2 {
                x: pick(|t| t.val),
                xu: pick(|t| t.du),
                xv: pick(|t| t.dv),
                xuu: pick(|t| t.duu),
                xuv: pick(|t| t.duv),
                xvv: pick(|t| t.dvv),
            }
        }
        JetMode::CentralDifference { h } => {
            let f = |du: f64, dv: f64| MVec3::from(map.eval(u + du, v + dv));
            let c = f(0.0, 0.0);
            let (up, um, vp, vm) = (f(h, 0.0), f(-h, 0.0), f(0.0, h), f(0.0, -h));
            let cross = f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h);
            Jet2 {
                x: c,
                xu: (0.5 / h) * (up - um),
                xv: (0.5 / h) * (vp - vm),
                xuu: (1.0 / (h * h)) * (up - 2.0 * c + um),
                xuv: (0.25 / (h * h)) * cross,
                xvv: (1.0 / (h * h)) * (vp - 2.0 * c + vm),
            }
        }
    }
}

/// A [`SurfaceMap`] restricted to a domain, with its jets computed in the chosen mode.
#[derive(Clone, Debug)]
pub struct MapPatch<M> {
    pub map: M,
    pub domain: Domain,
    pub mode: JetMode,
}

impl<M: SurfaceMap> MapPatch<M> {
    pub fn new(map: M, domain: Domain) -> Self {
        MapPatch { map, domain, mode: JetMode::AutoDiff }
    }

    pub fn with_mode(mut self, mode: JetMode) -> Self {
        self.mode = mode;
        self
    }
}

impl<M: SurfaceMap> SurfacePatch for MapPatch<M> {
    fn jet(&self, u: f64, v: f64) -> Result<Jet2> {
        Ok(jets_from_map(&self.map, u, v, self.mode))
    }

    fn domain(&self) -> Domain {
        self.domain
    }
}

/// Range of W = EG − F² over a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CausalSummary {
    pub character: CausalCharacter,
    pub min_w: f64,
    pub max_w: f64,
}

/// Causal character of a patch sampled on `grid`; `MixedCausality` if W changes
/// sign or comes within tolerance of zero anywhere.
pub fn classify_patch<P: SurfacePatch + ?Sized>(patch: &P, grid: Grid) -> Result<CausalSummary> {
    if grid.nu == 0 || grid.nv == 0 {
        return Err(Error::InvalidDomain("empty sampling grid".into()));
    }
    let (mut min_w, mut max_w) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut all_pos, mut all_neg) = (true, true);
    for (u, v) in patch.domain().sample(grid) {
        let jet = patch.jet(u, v)?;
        let w = jet.metric_determinant();
        let tol = jet.tol_w();
        min_w = min_w.min(w);
        max_w = max_w.max(w);
        all_pos &= w > tol;
        all_neg &= w < -tol;
    }
    let character = match (all_pos, all_neg) {
        (true, _) => CausalCharacter::Spacelike,
        (_, true) => CausalCharacter::Timelike,
        _ => return Err(Error::MixedCausality { min_w, max_w }),
    };
    Ok(CausalSummary { character, min_w, max_w })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    struct Plane;
    impl SurfaceMap for Plane {
        fn eval<T: Real>(&self, u: T, v: T) -> [T; 3] {
            [u, v, T::cst(0.0)]
        }
    }

    struct TimelikePlane;
    impl SurfaceMap for TimelikePlane {
        fn eval<T: Real>(&self, u: T, v: T) -> [T; 3] {
            [u, T::cst(0.0), v]
        }
    }

    /// Upper sheet of ℍ^{2,1}(r; p0).
    struct Hyperbolic {
        r: f64,
        p0: MVec3,
    }
    impl SurfaceMap for Hyperbolic {
        fn eval<T: Real>(&self, s: T, t: T) -> [T; 3] {
            [
                s.sinh() * t.cos() * self.r + self.p0.x,
                s.sinh() * t.sin() * self.r + self.p0.y,
                s.cosh() * self.r + self.p0.z,
            ]
        }
    }

    /// 𝕊^{2,1}(r; p0) parametrized so that x − x0 > 0 for |t| < π/2.
    struct DeSitter {
        r: f64,
        p0: MVec3,
    }
    impl SurfaceMap for DeSitter {
        fn eval<T: Real>(&self, s: T, t: T) -> [T; 3] {
            [
                s.cosh() * t.cos() * self.r + self.p0.x,
                s.cosh() * t.sin() * self.r + self.p0.y,
                s.sinh() * self.r + self.p0.z,
            ]
        }
    }

    fn jet_of<M: SurfaceMap>(m: &M, u: f64, v: f64) -> Jet2 {
        jets_from_map(m, u, v, JetMode::AutoDiff)
    }

    #[test]
    fn spacelike_plane_forms() {
        let j = jet_of(&Plane, 0.3, -0.7);
        assert_eq!(j.xu, MVec3::E1);
        assert_eq!(j.xuu, MVec3::ZERO);
        let ff = fundamental_forms(&j).unwrap();
        assert_eq!((ff.e_first, ff.f_first, ff.g_first), (1.0, 0.0, 1.0));
        assert_eq!((ff.e_second, ff.f_second, ff.g_second), (0.0, 0.0, 0.0));
        assert_eq!(ff.epsilon, Sign::Plus);
        let c = curvature(&j).unwrap();
        assert_eq!((c.h, c.k), (0.0, 0.0));
    }

    #[test]
    fn timelike_plane_forms() {
        let ff = fundamental_forms(&jet_of(&TimelikePlane, 1.0, 2.0)).unwrap();
        assert_eq!((ff.e_first, ff.f_first, ff.g_first), (1.0, 0.0, -1.0));
        assert_eq!(ff.epsilon, Sign::Minus);
    }

    #[test]
    fn lightlike_plane_is_degenerate() {
        struct Null;
        impl SurfaceMap for Null {
            fn eval<T: Real>(&self, u: T, v: T) -> [T; 3] {
                [u, v, v]
            }
        }
        let err = curvature(&jet_of(&Null, 0.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::DegeneratePatch { .. }));
    }

    #[test]
    fn pseudo_quadric_curvatures() {
        let p0 = MVec3::new(0.4, -1.0, 2.5);
        for r in [0.5, 1.0, 2.0] {
            let hyp = Hyperbolic { r, p0 };
            let ds = DeSitter { r, p0 };
            for (s, t) in [(0.3, 0.1), (1.2, -0.8), (0.7, 1.0)] {
                let c = curvature(&jet_of(&hyp, s, t)).unwrap();
                assert_eq!(c.epsilon, Sign::Plus);
                assert_abs_diff_eq!(c.h, 1.0 / r, epsilon = 1e-10);
                assert_abs_diff_eq!(c.k, -1.0 / (r * r), epsilon = 1e-10);
                assert!(lorentz_dot(c.normal, MVec3::E3) < 0.0);
                assert_abs_diff_eq!(lorentz_dot(c.normal, c.normal), -1.0, epsilon = 1e-10);

                let c = curvature(&jet_of(&ds, s, t)).unwrap();
                assert_eq!(c.epsilon, Sign::Minus);
                assert_abs_diff_eq!(c.h, -1.0 / r, epsilon = 1e-10);
                assert_abs_diff_eq!(c.k, 1.0 / (r * r), epsilon = 1e-10);
                assert_abs_diff_eq!(lorentz_dot(c.normal, c.normal), 1.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn normal_is_orthogonal_to_tangents() {
        let ds = DeSitter { r: 1.3, p0: MVec3::ZERO };
        let j = jet_of(&ds, 0.4, 0.2);
        let n = curvature(&j).unwrap().normal;
        assert_abs_diff_eq!(lorentz_dot(n, j.xu), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(lorentz_dot(n, j.xv), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn determinant_form_of_gauss_curvature_agrees() {
        let hyp = Hyperbolic { r: 0.7, p0: MVec3::new(1.0, 2.0, 3.0) };
        let j = jet_of(&hyp, 0.9, 0.3);
        assert_abs_diff_eq!(gauss_curvature_by_determinants(&j), curvature(&j).unwrap().k, epsilon = 1e-10);
    }

    #[test]
    fn orientation_only_flips_mean_curvature() {
        let hyp = Hyperbolic { r: 2.0, p0: MVec3::ZERO };
        let j = jet_of(&hyp, 0.5, 0.5);
        let a = curvature_oriented(&j, Orientation::Canonical).unwrap();
        let b = curvature_oriented(&j, Orientation::Parametrization).unwrap();
        assert_abs_diff_eq!(a.h.abs(), b.h.abs(), epsilon = 1e-14);
        assert_abs_diff_eq!(a.k, b.k, epsilon = 1e-14);
    }

    #[test]
    fn ad_and_central_differences_agree() {
        let hyp = Hyperbolic { r: 1.0, p0: MVec3::ZERO };
        let ad = curvature(&jet_of(&hyp, 0.8, 0.4)).unwrap();
        let fd = curvature(&jets_from_map(&hyp, 0.8, 0.4, JetMode::CentralDifference { h: 1e-4 })).unwrap();
        assert!((ad.h - fd.h).abs() <= 1e-5 * ad.h.abs());
        assert!((ad.k - fd.k).abs() <= 1e-5 * ad.k.abs());
    }

    #[test]
    fn grid_includes_endpoints() {
        let d = Domain::new((0.0, 1.0), (2.0, 3.0));
        let pts = d.sample(Grid::new(3, 2));
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], (0.0, 2.0));
        assert_eq!(pts[5], (1.0, 3.0));
    }

    #[test]
    fn classify_planes() {
        let d = Domain::new((-1.0, 1.0), (-1.0, 1.0));
        let s = classify_patch(&MapPatch::new(Plane, d), Grid::new(4, 4)).unwrap();
        assert_eq!(s.character, CausalCharacter::Spacelike);
        let t = classify_patch(&MapPatch::new(TimelikePlane, d), Grid::new(4, 4)).unwrap();
        assert_eq!(t.character, CausalCharacter::Timelike);
    }
}
