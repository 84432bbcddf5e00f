use crate::autodiff::{Real, Taylor2};
use crate::curvature::{curvature_oriented, Orientation};
use crate::error::{Error, Result};
use crate::rotational::{generator_sign, rotational_jet, AxisKind, ProfilePoint};
use crate::sign::Sign;

use super::WeingartenProblem;

/// First integral evaluated at `(u, z, z′)`, arranged so that solutions give the value λ.
///
/// Timelike axis: `εauz′/√(ε(1−z′²)) + b/(1−z′²) + cu²`.
/// Spacelike I: `εaz/√(ε(1−z′²)) + b/(1−z′²) + cz²`.
/// Spacelike II: `−az/√(1+z′²) + b/(1+z′²) − cz²`.
/// Lightlike: `(a/4)u/√(εz′) − b/(8z′) − (c/2)u²`.
pub fn first_integral_lhs_generic<T: Real>(p: &WeingartenProblem, u: T, z: T, zp: T) -> T {
    let (a, b, c, eps) = (p.a, p.b, p.c, p.eps());
    let one_minus = -(zp * zp) + 1.0;
    match p.axis {
        AxisKind::TimelikeAxis => u * zp * (eps * a) / (one_minus * eps).sqrt() + one_minus.recip() * b + u * u * c,
        AxisKind::SpacelikeAxisI => z * (eps * a) / (one_minus * eps).sqrt() + one_minus.recip() * b + z * z * c,
        AxisKind::SpacelikeAxisII => {
            let one_plus = zp * zp + 1.0;
            -(z * a / one_plus.sqrt()) + one_plus.recip() * b - z * z * c
        }
        AxisKind::LightlikeAxis => u * (a / 4.0) / (zp * eps).sqrt() - zp.recip() * (b / 8.0) - u * u * (c / 2.0),
    }
}

pub fn first_integral_lhs(p: &WeingartenProblem, u: f64, z: f64, zp: f64) -> Result<f64> {
    let eps = p.eps();
    let radicand = match p.axis {
        AxisKind::TimelikeAxis | AxisKind::SpacelikeAxisI => eps * (1.0 - zp * zp),
        AxisKind::SpacelikeAxisII => 1.0,
        AxisKind::LightlikeAxis => eps * zp,
    };
    if !(radicand > 0.0) {
        return Err(Error::DomainViolation { what: format!("first integral radicand {radicand:e} is not positive"), at: u });
    }
    Ok(first_integral_lhs_generic(p, u, z, zp))
}

/// The quadratic `A φ² + B φ + C = 0` satisfied by the φ-substitute at abscissa `s`
/// (`s = u` for timelike and lightlike axes, `s = z` for spacelike ones).
///
/// Its discriminant is `scale² · (α s² + β)`, kept in grouped form so that the
/// zero-discriminant families evaluate it exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiQuadratic {
    pub quad: f64,
    pub lin: f64,
    pub cst: f64,
    pub alpha: f64,
    pub beta: f64,
    pub scale: f64,
}

struct Coeffs<T> {
    quad: T,
    lin: T,
    cst: T,
}

fn snap(x: f64, magnitude: f64) -> f64 {
    if x.abs() <= 1e-12 * magnitude {
        0.0
    } else {
        x
    }
}

impl PhiQuadratic {
    fn grouped(p: &WeingartenProblem) -> (f64, f64, f64) {
        let (a, b, c, eps, lam) = (p.a, p.b, p.c, p.eps(), p.lambda);
        let mag = a * a + (4.0 * b * c).abs();
        let alpha = snap(p.discriminant_coefficient(), mag);
        let (beta, beta_mag, scale) = match p.axis {
            AxisKind::TimelikeAxis => (4.0 * b * eps * (lam - b), 4.0 * b.abs() * (lam.abs() + b.abs()), 1.0),
            AxisKind::SpacelikeAxisI => (4.0 * b * eps * lam, 0.0, 1.0),
            AxisKind::SpacelikeAxisII => (4.0 * b * lam, 0.0, 1.0),
            AxisKind::LightlikeAxis => (-8.0 * b * eps * lam, 0.0, 2.0),
        };
        (alpha, snap(beta, beta_mag), scale)
    }

    fn coeffs<T: Real>(p: &WeingartenProblem, s: T) -> Coeffs<T> {
        let (a, b, c, eps, lam) = (p.a, p.b, p.c, p.eps(), p.lambda);
        match p.axis {
            AxisKind::TimelikeAxis => Coeffs { quad: T::cst(b), lin: s * a, cst: (s * s * c + (b - lam)) * eps },
            AxisKind::SpacelikeAxisI => Coeffs { quad: T::cst(b), lin: s * a, cst: (s * s * c - lam) * eps },
            AxisKind::SpacelikeAxisII => Coeffs { quad: T::cst(b), lin: s * -a, cst: -(s * s * c + lam) },
            AxisKind::LightlikeAxis => Coeffs { quad: (s * s * c + 2.0 * lam) * (4.0 * eps), lin: s * (-2.0 * a * eps), cst: T::cst(b) },
        }
    }

    pub fn at(p: &WeingartenProblem, s: f64) -> PhiQuadratic {
        let k = Self::coeffs(p, s);
        let (alpha, beta, scale) = Self::grouped(p);
        PhiQuadratic { quad: k.quad, lin: k.lin, cst: k.cst, alpha, beta, scale }
    }

    pub fn residual(&self, phi: f64) -> f64 {
        self.quad * phi * phi + self.lin * phi + self.cst
    }
}

/// The quadratic degenerates to a linear equation for every `s`.
fn is_linear(p: &WeingartenProblem) -> bool {
    match p.axis {
        AxisKind::LightlikeAxis => p.c == 0.0 && p.lambda == 0.0,
        _ => p.b == 0.0,
    }
}

fn phi_generic<T: Real>(p: &WeingartenProblem, s: T) -> Result<T> {
    let at = s.value();
    let k = PhiQuadratic::coeffs(p, s);
    if is_linear(p) {
        if k.lin.value() == 0.0 {
            return Err(Error::ZeroDenominator { at });
        }
        return Ok(-(k.cst / k.lin));
    }
    if k.quad.value() == 0.0 {
        return Err(Error::ZeroDenominator { at });
    }
    let (alpha, beta, scale) = PhiQuadratic::grouped(p);
    let root = if alpha == 0.0 && beta == 0.0 {
        T::cst(0.0)
    } else {
        let d = s * s * alpha + beta;
        let dv = d.value();
        if dv < 0.0 {
            return Err(Error::NegativeDiscriminant { value: dv, at });
        }
        d.sqrt() * (scale * p.branch.value())
    };
    // Pick the algebraically equivalent form that avoids cancellation.
    let minus_lin = -k.lin;
    if minus_lin.value() * root.value() >= 0.0 {
        Ok((minus_lin + root) / (k.quad * 2.0))
    } else {
        let den = minus_lin - root;
        if den.value() == 0.0 {
            return Err(Error::ZeroDenominator { at });
        }
        Ok(k.cst * 2.0 / den)
    }
}

/// Selected root of the φ-quadratic at `s`: the substitute `z′/√(ε(1−z′²))`
/// (timelike axis), `1/√(ε(1−z′²))` (spacelike I), `1/√(1+z′²)` (spacelike II),
/// or `√(εz′)` (lightlike).
pub fn solve_phi(p: &WeingartenProblem, s: f64) -> Result<f64> {
    phi_generic(p, s)
}

fn invert_generic<T: Real>(axis: AxisKind, epsilon: Sign, phi: T, slope_sign: Sign, at: f64) -> Result<T> {
    let eps = epsilon.value();
    let f = phi.value();
    let bad = |what: &str| Err(Error::DomainViolation { what: format!("{what} (phi = {f})"), at });
    match axis {
        AxisKind::TimelikeAxis => {
            let r = phi * phi + eps;
            if !(r.value() > 0.0) {
                return bad("phi^2 + epsilon must be positive");
            }
            Ok(phi / r.sqrt())
        }
        AxisKind::SpacelikeAxisI => {
            if !(f > 0.0) || (epsilon == Sign::Plus && f < 1.0) {
                return bad("phi out of range for a spacelike axis");
            }
            let sq = -(phi * phi).recip() * eps + 1.0;
            Ok(sq.sqrt() * slope_sign.value())
        }
        AxisKind::SpacelikeAxisII => {
            if !(f > 0.0 && f <= 1.0) {
                return bad("phi must lie in (0, 1]");
            }
            let sq = (phi * phi).recip() - 1.0;
            Ok(sq.sqrt() * slope_sign.value())
        }
        AxisKind::LightlikeAxis => {
            if !(f >= 0.0) {
                return bad("sqrt(epsilon z') must be non-negative");
            }
            Ok(phi * phi * eps)
        }
    }
}

/// Recovers z′ from the φ-substitute. Where only z′² is determined the sign
/// comes from `slope_sign`.
pub fn invert_phi(axis: AxisKind, epsilon: Sign, phi: f64, slope_sign: Sign) -> Result<f64> {
    invert_generic(axis, epsilon, phi, slope_sign, f64::NAN)
}

/// The φ-substitute of a slope; inverse of [`invert_phi`].
pub fn forward_phi(axis: AxisKind, epsilon: Sign, zp: f64) -> Result<f64> {
    let eps = epsilon.value();
    let r = match axis {
        AxisKind::TimelikeAxis | AxisKind::SpacelikeAxisI => eps * (1.0 - zp * zp),
        AxisKind::SpacelikeAxisII => 1.0 + zp * zp,
        AxisKind::LightlikeAxis => eps * zp,
    };
    if !(r > 0.0) || (axis == AxisKind::LightlikeAxis && r < 0.0) {
        return Err(Error::DomainViolation { what: "slope outside the causal domain".into(), at: f64::NAN });
    }
    Ok(match axis {
        AxisKind::TimelikeAxis => zp / r.sqrt(),
        AxisKind::SpacelikeAxisI | AxisKind::SpacelikeAxisII => 1.0 / r.sqrt(),
        AxisKind::LightlikeAxis => r.sqrt(),
    })
}

/// z′ at abscissa `s` together with dz′/ds.
pub fn slope_jet(p: &WeingartenProblem, s: f64) -> Result<(f64, f64)> {
    let phi = phi_generic(p, Taylor2::var_u(s))?;
    let zp = invert_generic(p.axis, p.epsilon, phi, p.slope_sign, s)?;
    Ok((zp.val, zp.du))
}

pub fn slope(p: &WeingartenProblem, s: f64) -> Result<f64> {
    let phi = phi_generic(p, s)?;
    invert_generic(p.axis, p.epsilon, phi, p.slope_sign, s)
}

/// z″ from the second-order equation `aH + bK = c` itself, measured in the
/// generator orientation. H and K are affine in z″, so two curvature
/// evaluations determine it. Independent of the first integral.
pub fn ode_second_derivative(p: &WeingartenProblem, u: f64, z: f64, zp: f64) -> Result<f64> {
    let eval = |zpp: f64| -> Result<f64> {
        let jet = rotational_jet(p.axis, u, 0.0, ProfilePoint { z, zp, zpp });
        let cd = curvature_oriented(&jet, Orientation::Parametrization)?;
        let h = cd.h * generator_sign(p.axis, u, z, cd.epsilon);
        Ok(p.a * h + p.b * cd.k - p.c)
    };
    let r0 = eval(0.0)?;
    let r1 = eval(1.0)?;
    let slope = r1 - r0;
    if slope == 0.0 {
        return Err(Error::ZeroDenominator { at: u });
    }
    Ok(-r0 / slope)
}
