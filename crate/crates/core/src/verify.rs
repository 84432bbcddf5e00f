//! Independent checks: pointwise Weingarten residuals, pseudo-quadric fits, and
//! profile comparison.

use std::fmt::Write as _;

use crate::curvature::{classify_patch, Domain, Grid, Orientation, SurfacePatch};
use crate::error::{Error, Result};
use crate::minkowski::{lorentz_dot, CausalCharacter, MVec3};
use crate::rotational::Profile;
use crate::solver::QuadricKind;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualPoint {
    pub u: f64,
    pub v: f64,
    pub residual: f64,
}

/// |aH + bK − c| aggregated over a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub coefficients: (f64, f64, f64),
    pub domain: Domain,
    pub grid: Grid,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub causal_class: CausalCharacter,
    /// Largest residuals first, at most ten.
    pub worst: Vec<ResidualPoint>,
}

pub const WORST_POINTS: usize = 10;

pub fn weingarten_residual<P: SurfacePatch + ?Sized>(
    patch: &P,
    (a, b, c): (f64, f64, f64),
    grid: Grid,
    orientation: Orientation,
) -> Result<ResidualReport> {
    let summary = classify_patch(patch, grid)?;
    let domain = patch.domain();
    let mut points = Vec::with_capacity(grid.nu * grid.nv);
    for (u, v) in domain.sample(grid) {
        let cd = patch.curvature_at(u, v, orientation)?;
        let residual = (a * cd.h + b * cd.k - c).abs();
        if !residual.is_finite() {
            return Err(Error::DomainViolation { what: format!("non-finite curvature at v = {v}"), at: u });
        }
        points.push(ResidualPoint { u, v, residual });
    }
    let max_residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
    let mean_residual = points.iter().map(|p| p.residual).sum::<f64>() / points.len() as f64;
    // Stable sort keeps grid order among ties, so the report is deterministic.
    points.sort_by(|x, y| y.residual.total_cmp(&x.residual));
    points.truncate(WORST_POINTS);
    Ok(ResidualReport {
        coefficients: (a, b, c),
        domain,
        grid,
        max_residual,
        mean_residual,
        causal_class: summary.character,
        worst: points,
    })
}

impl ResidualReport {
    /// Line-oriented `key=value` records: one summary line, then one line per
    /// worst point.
    pub fn to_report(&self) -> String {
        let (a, b, c) = self.coefficients;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "record=summary a={a:?} b={b:?} c={c:?} u_min={:?} u_max={:?} v_min={:?} v_max={:?} nu={} nv={} causal_class={} max_residual={:?} mean_residual={:?}",
            self.domain.u.0,
            self.domain.u.1,
            self.domain.v.0,
            self.domain.v.1,
            self.grid.nu,
            self.grid.nv,
            self.causal_class,
            self.max_residual,
            self.mean_residual
        );
        for (rank, p) in self.worst.iter().enumerate() {
            let _ = writeln!(out, "record=worst rank={} u={:?} v={:?} residual={:?}", rank + 1, p.u, p.v, p.residual);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadricFit {
    /// `None` when no pseudo-quadric fits within tolerance.
    pub kind: Option<QuadricKind>,
    pub center: MVec3,
    pub radius: f64,
    pub rms_deviation: f64,
}

/// Solves a 4×4 system by Gaussian elimination with partial pivoting.
fn solve4(mut m: [[f64; 4]; 4], mut rhs: [f64; 4]) -> Option<[f64; 4]> {
    let norm = m.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-13 * norm {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..4 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let tail: f64 = (row + 1..4).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    Some(x)
}

/// Least-squares fit of `⟨p − p₀, p − p₀⟩ = s`. The model is linear in
/// `(p₀, s − ⟨p₀, p₀⟩)`; the sign of `s` decides the kind. `tol` bounds the rms
/// of the fitted identity and defaults to `1e−6·scale²`.
pub fn identify_quadric(points: &[MVec3], tol: Option<f64>) -> Result<QuadricFit> {
    const NEEDED: usize = 10;
    if points.len() < NEEDED {
        return Err(Error::InsufficientPoints { needed: NEEDED, got: points.len() });
    }
    let n = points.len() as f64;
    let centroid = (1.0 / n) * points.iter().fold(MVec3::ZERO, |acc, &p| acc + p);
    let scale = points.iter().map(|&p| (p - centroid).euclid_norm_sq()).fold(0.0, f64::max).sqrt();
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidDomain("points do not span a region".into()));
    }
    let local: Vec<MVec3> = points.iter().map(|&p| (1.0 / scale) * (p - centroid)).collect();

    let mut ata = [[0.0; 4]; 4];
    let mut atb = [0.0; 4];
    for q in &local {
        let row = [2.0 * q.x, 2.0 * q.y, -2.0 * q.z, 1.0];
        let rhs = lorentz_dot(*q, *q);
        for i in 0..4 {
            for j in 0..4 {
                ata[i][j] += row[i] * row[j];
            }
            atb[i] += row[i] * rhs;
        }
    }
    let tol = tol.unwrap_or(1e-6 * scale * scale);
    let Some([x0, y0, z0, k]) = solve4(ata, atb) else {
        return Ok(QuadricFit { kind: None, center: centroid, radius: 0.0, rms_deviation: f64::INFINITY });
    };
    let p0 = MVec3::new(x0, y0, z0);
    let s = k + lorentz_dot(p0, p0);
    let rms = (local.iter().map(|&q| (lorentz_dot(q - p0, q - p0) - s).powi(2)).sum::<f64>() / n).sqrt();
    let rms_deviation = rms * scale * scale;
    let center = centroid + scale * p0;
    let radius = s.abs().sqrt() * scale;
    let kind = if rms_deviation > tol || s == 0.0 || !s.is_finite() {
        None
    } else if s < 0.0 {
        Some(QuadricKind::PseudoHyperbolic)
    } else {
        Some(QuadricKind::PseudoSphere)
    };
    Ok(QuadricFit { kind, center, radius, rms_deviation })
}

/// Sup-norm distance of two profiles on `n` uniform samples of `interval`,
/// after removing the mean difference (which absorbs the translation constant).
pub fn compare_profiles<P: Profile + ?Sized, Q: Profile + ?Sized>(p1: &P, p2: &Q, interval: (f64, f64), n: usize) -> Result<f64> {
    let (lo, hi) = interval;
    if !(lo < hi) || n == 0 {
        return Err(Error::InvalidDomain(format!("empty comparison interval [{lo}, {hi}]")));
    }
    let diffs = crate::curvature::linspace(lo, hi, n)
        .map(|u| Ok(p1.eval(u)?.z - p2.eval(u)?.z))
        .collect::<Result<Vec<f64>>>()?;
    let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
    Ok(diffs.iter().map(|d| (d - mean).abs()).fold(0.0, f64::max))
}
