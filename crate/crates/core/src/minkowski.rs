//! Lorentzian linear algebra on ℝ³ with signature (+,+,−).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A point or vector of Minkowski 3-space. The metric weights are (+1, +1, −1).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MVec3 {
    pub const ZERO: MVec3 = MVec3::new(0.0, 0.0, 0.0);
    pub const E1: MVec3 = MVec3::new(1.0, 0.0, 0.0);
    pub const E2: MVec3 = MVec3::new(0.0, 1.0, 0.0);
    pub const E3: MVec3 = MVec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        MVec3 { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: MVec3) -> f64 {
        lorentz_dot(self, other)
    }

    pub fn cross(self, other: MVec3) -> MVec3 {
        lorentz_cross(self, other)
    }

    /// Squared Euclidean norm, used only for scaling tolerances.
    pub fn euclid_norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for MVec3 {
    type Output = MVec3;
    fn add(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for MVec3 {
    type Output = MVec3;
    fn sub(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for MVec3 {
    type Output = MVec3;
    fn neg(self) -> MVec3 {
        MVec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<MVec3> for f64 {
    type Output = MVec3;
    fn mul(self, v: MVec3) -> MVec3 {
        MVec3::new(self * v.x, self * v.y, self * v.z)
    }
}

impl Mul<f64> for MVec3 {
    type Output = MVec3;
    fn mul(self, s: f64) -> MVec3 {
        s * self
    }
}

impl From<[f64; 3]> for MVec3 {
    fn from(a: [f64; 3]) -> Self {
        MVec3::new(a[0], a[1], a[2])
    }
}

impl fmt::Display for MVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CausalCharacter::Spacelike => "Spacelike",
            CausalCharacter::Timelike => "Timelike",
            CausalCharacter::Lightlike => "Lightlike",
        };
        f.write_str(s)
    }
}

pub fn lorentz_dot(u: MVec3, v: MVec3) -> f64 {
    u.x * v.x + u.y * v.y - u.z * v.z
}

/// Default causal tolerance for `v`: `1e-10 · max(1, ‖v‖²)` in the Euclidean norm.
pub fn default_causal_tol(v: MVec3) -> f64 {
    1e-10 * v.euclid_norm_sq().max(1.0)
}

/// Causal character of `v`. The zero vector counts as spacelike.
pub fn causal_character(v: MVec3, tol: f64) -> CausalCharacter {
    debug_assert!(tol >= 0.0);
    let q = lorentz_dot(v, v);
    if v == MVec3::ZERO || q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Lightlike
    }
}

/// Lorentzian cross product: the unique `p` with `⟨p, w⟩ = det(u, v, w)` for every `w`.
///
/// Componentwise this is the Euclidean cross product with the third component negated.
pub fn lorentz_cross(u: MVec3, v: MVec3) -> MVec3 {
    MVec3::new(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        -(u.x * v.y - u.y * v.x),
    )
}

/// Determinant of the 3×3 matrix with rows `u`, `v`, `w`.
pub fn det3(u: MVec3, v: MVec3, w: MVec3) -> f64 {
    u.x * (v.y * w.z - v.z * w.y) - u.y * (v.x * w.z - v.z * w.x) + u.z * (v.x * w.y - v.y * w.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vec3() -> impl Strategy<Value = MVec3> {
        (-10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0).prop_map(|(x, y, z)| MVec3::new(x, y, z))
    }

    #[test]
    fn dot_examples() {
        assert_eq!(lorentz_dot(MVec3::E3, MVec3::E3), -1.0);
        assert_eq!(lorentz_dot(MVec3::E1, MVec3::E3), 0.0);
        let ones = MVec3::new(1.0, 1.0, 1.0);
        assert_eq!(lorentz_dot(ones, ones), 1.0);
    }

    #[test]
    fn causal_examples() {
        let c = |v: MVec3| causal_character(v, default_causal_tol(v));
        assert_eq!(c(MVec3::E1), CausalCharacter::Spacelike);
        assert_eq!(c(MVec3::new(0.0, 1.0, 1.0)), CausalCharacter::Lightlike);
        assert_eq!(c(MVec3::new(0.0, 0.0, 2.0)), CausalCharacter::Timelike);
        assert_eq!(c(MVec3::ZERO), CausalCharacter::Spacelike);
    }

    #[test]
    fn cross_of_basis_vectors() {
        // Solving ⟨p, e_i⟩ = det(e1, e2, e_i): p.x = 0, p.y = 0, −p.z = 1.
        assert_eq!(lorentz_cross(MVec3::E1, MVec3::E2), MVec3::new(0.0, 0.0, -1.0));
        let u = MVec3::new(0.3, -2.0, 1.5);
        assert_eq!(lorentz_cross(u, u), MVec3::ZERO);
    }

    proptest! {
        #[test]
        fn cross_matches_determinant(u in vec3(), v in vec3(), w in vec3()) {
            let scale = u.max_abs().max(v.max_abs()).max(w.max_abs()).max(1.0);
            let lhs = lorentz_dot(lorentz_cross(u, v), w);
            prop_assert!((lhs - det3(u, v, w)).abs() <= 1e-12 * scale.powi(3));
        }

        #[test]
        fn cross_is_orthogonal_and_antisymmetric(u in vec3(), v in vec3()) {
            let p = lorentz_cross(u, v);
            let scale = u.max_abs().max(v.max_abs()).max(1.0);
            prop_assert!(lorentz_dot(p, u).abs() <= 1e-12 * scale.powi(3));
            prop_assert!(lorentz_dot(p, v).abs() <= 1e-12 * scale.powi(3));
            prop_assert_eq!(p, -lorentz_cross(v, u));
        }

        #[test]
        fn dot_is_bilinear(u in vec3(), v in vec3(), w in vec3(), s in -5.0f64..5.0, t in -5.0f64..5.0) {
            let lhs = lorentz_dot(s * u + t * v, w);
            let rhs = s * lorentz_dot(u, w) + t * lorentz_dot(v, w);
            let mag = (s * u).max_abs().max((t * v).max_abs()).max(1.0) * w.max_abs().max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * mag * 3.0);
        }
    }
}
