use std::fmt;

use crate::error::{Error, Result};
use crate::rotational::{AxisKind, Profile, ProfilePoint};

use super::first_integral::{first_integral_lhs, slope, slope_jet};
use super::ode::{DormandPrince, OdeError, Tolerances};
use super::WeingartenProblem;

/// |z′² − 1| at or below this is treated as a light-like tangent.
pub const CAUSAL_DEGENERATION_TOL: f64 = 1e-8;
/// About a lightlike axis W = 16u²z′, so z′ must stay away from zero.
pub const LIGHTLIKE_SLOPE_TOL: f64 = 1e-12;
const AXIS_CONTACT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl {
    pub atol: f64,
    pub rtol: f64,
    /// Defaults to a fiftieth of the requested interval.
    pub max_step: Option<f64>,
    /// Number of uniformly spaced output samples over the requested interval.
    pub samples: usize,
    /// Height at the starting abscissa; defaults to μ. Required in practice for
    /// spacelike axes, where the profile must stay off z = 0.
    pub z_start: Option<f64>,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl { atol: 1e-10, rtol: 1e-10, max_step: None, samples: 200, z_start: None }
    }
}

impl StepControl {
    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_z_start(mut self, z: f64) -> Self {
        self.z_start = Some(z);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum StopReason {
    Completed,
    /// The discriminant of the φ-quadratic reached zero; continuing would switch branch.
    DiscriminantZero,
    /// The tangent became light-like (or z′ → 0 about a lightlike axis).
    CausalDegeneration,
    /// The profile reached z = 0 about a spacelike axis.
    AxisContact,
    /// Any other loss of the φ-substitution or step control.
    Domain(String),
}

impl StopReason {
    pub fn name(&self) -> &'static str {
        match self {
            StopReason::Completed => "completed",
            StopReason::DiscriminantZero => "discriminant_zero",
            StopReason::CausalDegeneration => "causal_degeneration",
            StopReason::AxisContact => "axis_contact",
            StopReason::Domain(_) => "domain",
        }
    }
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StopReason::Domain(msg) => write!(f, "domain: {msg}"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub u: f64,
    pub z: f64,
    pub zp: f64,
    /// Value of the first integral at this sample; equals λ on an exact solution.
    pub first_integral: f64,
}

/// Numerically integrated generating curve. Samples are strictly monotone in u.
#[derive(Clone, Debug)]
pub struct GeneratingCurve {
    pub problem: WeingartenProblem,
    pub samples: Vec<CurveSample>,
    /// The u-interval actually integrated, in integration order.
    pub validity: (f64, f64),
    pub requested: (f64, f64),
    pub stop: StopReason,
    control: StepControl,
}

fn uses_height(axis: AxisKind) -> bool {
    matches!(axis, AxisKind::SpacelikeAxisI | AxisKind::SpacelikeAxisII)
}

/// z′ at `(u, z)` with the stopping conditions applied.
fn guarded_slope(p: &WeingartenProblem, u: f64, z: f64) -> std::result::Result<f64, StopReason> {
    let s = if uses_height(p.axis) {
        if z.abs() <= AXIS_CONTACT_TOL {
            return Err(StopReason::AxisContact);
        }
        z
    } else {
        u
    };
    let zp = slope(p, s).map_err(|e| match e {
        Error::NegativeDiscriminant { .. } => StopReason::DiscriminantZero,
        other => StopReason::Domain(other.to_string()),
    })?;
    let degenerate = match p.axis {
        AxisKind::LightlikeAxis => zp.abs() <= LIGHTLIKE_SLOPE_TOL,
        AxisKind::SpacelikeAxisII => false,
        _ => (zp * zp - 1.0).abs() <= CAUSAL_DEGENERATION_TOL,
    };
    if degenerate {
        return Err(StopReason::CausalDegeneration);
    }
    if !zp.is_finite() {
        return Err(StopReason::Domain("non-finite slope".into()));
    }
    Ok(zp)
}

fn solver(control: &StepControl, span: f64) -> DormandPrince {
    DormandPrince::new(Tolerances {
        atol: control.atol,
        rtol: control.rtol,
        max_step: Some(control.max_step.unwrap_or(span / 50.0)),
        min_step: 1e-14 * span.max(1.0),
    })
}

fn sample_at(p: &WeingartenProblem, u: f64, z: f64, zp: f64) -> CurveSample {
    let first_integral = first_integral_lhs(p, u, z, zp).unwrap_or(f64::NAN);
    CurveSample { u, z, zp, first_integral }
}

/// Classifies a halt of the step controller from the state where it happened.
fn underflow_reason(p: &WeingartenProblem, u: f64, z: f64) -> StopReason {
    match guarded_slope(p, u, z) {
        Err(reason) => reason,
        Ok(_) => {
            let s = if uses_height(p.axis) { z } else { u };
            let q = super::PhiQuadratic::at(p, s);
            let d = q.alpha * s * s + q.beta;
            if d.abs() <= 1e-6 * (q.alpha * s * s).abs().max(q.beta.abs()).max(1e-300) {
                StopReason::DiscriminantZero
            } else {
                StopReason::Domain(format!("step size underflow at u = {u}"))
            }
        }
    }
}

/// Integrates z′ = f(u, z) from `u_start` towards `u_end`, sampling uniformly.
/// Halts early, recording the reason, where the φ-substitution breaks down.
pub fn integrate_profile(p: &WeingartenProblem, u_start: f64, u_end: f64, control: &StepControl) -> Result<GeneratingCurve> {
    p.validate()?;
    if !(u_start.is_finite() && u_end.is_finite()) || u_start == u_end {
        return Err(Error::InvalidDomain(format!("empty interval [{u_start}, {u_end}]")));
    }
    if u_start.min(u_end) <= 0.0 && u_start.max(u_end) >= 0.0 {
        return Err(Error::InvalidDomain(format!("interval [{u_start}, {u_end}] contains u = 0")));
    }
    if control.samples < 2 {
        return Err(Error::InvalidDomain("at least two samples are required".into()));
    }
    let z0 = control.z_start.unwrap_or(p.mu);
    let zp0 = match guarded_slope(p, u_start, z0) {
        Ok(zp) => zp,
        Err(reason) => {
            let inner = slope(p, if uses_height(p.axis) { z0 } else { u_start }).err().unwrap_or(Error::DomainViolation {
                what: reason.to_string(),
                at: u_start,
            });
            return Err(Error::ImmediateDomainViolation(Box::new(inner)));
        }
    };

    let span = (u_end - u_start).abs();
    let dp = solver(control, span);
    let n = control.samples;
    let mut samples = vec![sample_at(p, u_start, z0, zp0)];
    let (mut u, mut z) = (u_start, z0);
    let mut h = span / 1000.0;
    let mut stop = StopReason::Completed;
    for i in 1..n {
        let target = if i == n - 1 { u_end } else { u_start + (u_end - u_start) * i as f64 / (n - 1) as f64 };
        let rhs = |t: f64, y: &[f64; 1]| guarded_slope(p, t, y[0]).map(|zp| [zp]);
        match dp.integrate(rhs, u, [z], target, h) {
            Ok((y, hn)) => {
                u = target;
                z = y[0];
                h = hn;
                match guarded_slope(p, u, z) {
                    Ok(zp) => samples.push(sample_at(p, u, z, zp)),
                    Err(reason) => {
                        stop = reason;
                        break;
                    }
                }
            }
            Err(err) => {
                let (t, y, reason) = match err {
                    OdeError::Rhs { t, y, error } => (t, y, error),
                    OdeError::StepUnderflow { t, y } => (t, y, underflow_reason(p, t, y[0])),
                };
                if t != u {
                    if let Ok(zp) = guarded_slope(p, t, y[0]) {
                        samples.push(sample_at(p, t, y[0], zp));
                    }
                }
                stop = reason;
                break;
            }
        }
    }
    let last = samples.last().map(|s| s.u).unwrap_or(u_start);
    Ok(GeneratingCurve {
        problem: *p,
        samples,
        validity: (u_start, last),
        requested: (u_start, u_end),
        stop,
        control: *control,
    })
}

impl GeneratingCurve {
    pub fn axis(&self) -> AxisKind {
        self.problem.axis
    }

    pub fn completed(&self) -> bool {
        self.stop == StopReason::Completed
    }

    /// Largest |first integral − λ| over the samples.
    pub fn conservation_error(&self) -> f64 {
        self.samples.iter().map(|s| (s.first_integral - self.problem.lambda).abs()).fold(0.0, f64::max)
    }

    /// z″ at a sample point, from differentiating the slope relation.
    fn point(&self, u: f64, z: f64) -> Result<ProfilePoint> {
        let p = &self.problem;
        if uses_height(p.axis) {
            let (zp, dzp) = slope_jet(p, z)?;
            Ok(ProfilePoint { z, zp, zpp: dzp * zp })
        } else {
            let (zp, dzp) = slope_jet(p, u)?;
            Ok(ProfilePoint { z, zp, zpp: dzp })
        }
    }
}

impl Profile for GeneratingCurve {
    fn eval(&self, u: f64) -> Result<ProfilePoint> {
        let (lo, hi) = self.interval();
        let slack = 1e-12 * (hi - lo);
        if !(u >= lo - slack && u <= hi + slack) {
            return Err(Error::DomainViolation { what: format!("outside the integrated interval [{lo}, {hi}]"), at: u });
        }
        let nearest = self
            .samples
            .iter()
            .min_by(|a, b| (a.u - u).abs().total_cmp(&(b.u - u).abs()))
            .expect("a generating curve has at least one sample");
        let z = if nearest.u == u {
            nearest.z
        } else {
            let p = self.problem;
            let dp = solver(&self.control, (self.requested.1 - self.requested.0).abs());
            let rhs = |t: f64, y: &[f64; 1]| guarded_slope(&p, t, y[0]).map(|zp| [zp]);
            let h0 = (u - nearest.u).abs();
            match dp.integrate(rhs, nearest.u, [nearest.z], u, h0) {
                Ok((y, _)) => y[0],
                Err(_) => return Err(Error::DomainViolation { what: "profile cannot be continued".into(), at: u }),
            }
        };
        self.point(u, z)
    }

    fn interval(&self) -> (f64, f64) {
        let (a, b) = self.validity;
        (a.min(b), a.max(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{closed_form, ode_second_derivative, ClosedFormCase};
    use crate::sign::Sign::{self, Minus, Plus};
    use AxisKind::*;

    fn problem(axis: AxisKind, abc: (f64, f64, f64), eps: Sign, lambda: f64, branch: Sign) -> WeingartenProblem {
        WeingartenProblem::new(axis, abc.0, abc.1, abc.2, eps, lambda).with_branch(branch)
    }

    #[test]
    fn reproduces_the_pseudo_hyperbolic_profile() {
        let p = problem(TimelikeAxis, (2.0, 1.0, 0.0), Plus, 1.0, Minus).with_mu(0.25);
        let exact = |u: f64| -(1.0 + 4.0 * u * u).sqrt() / 2.0 + 0.25;
        let ctl = StepControl::default().with_z_start(exact(0.5));
        let curve = integrate_profile(&p, 0.5, 3.0, &ctl).unwrap();
        assert!(curve.completed());
        assert_eq!(curve.samples.len(), 200);
        for s in &curve.samples {
            assert!((s.z - exact(s.u)).abs() <= 1e-8, "u={} dz={}", s.u, s.z - exact(s.u));
        }
        assert!(curve.conservation_error() <= 1e-7 * 2.0);
        // Between samples as well.
        let pt = curve.eval(1.2345).unwrap();
        assert!((pt.z - exact(1.2345)).abs() <= 1e-8);
    }

    #[test]
    fn matches_both_timelike_families_where_they_coincide() {
        // λ = b and a² − 4bcε = 0 at once.
        let p = problem(TimelikeAxis, (2.0, 1.0, 1.0), Plus, 1.0, Plus);
        let a = closed_form(ClosedFormCase::TimelikeLambdaEqB, &p, (0.5, 3.0)).unwrap();
        let b = closed_form(ClosedFormCase::TimelikeZeroDiscriminant, &p, (0.5, 3.0)).unwrap();
        let ctl = StepControl::default().with_z_start(a.height(0.5));
        let curve = integrate_profile(&p, 0.5, 3.0, &ctl).unwrap();
        let shift = b.height(0.5) - a.height(0.5);
        for s in &curve.samples {
            assert!((s.z - a.height(s.u)).abs() <= 1e-8);
            assert!((s.z + shift - b.height(s.u)).abs() <= 1e-8);
        }
    }

    #[test]
    fn negative_discriminant_at_start_is_immediate() {
        let p = problem(TimelikeAxis, (0.0, 1.0, 1.0), Plus, 0.0, Plus);
        assert!(matches!(
            integrate_profile(&p, 1.0, 2.0, &StepControl::default()),
            Err(Error::ImmediateDomainViolation(inner)) if matches!(*inner, Error::NegativeDiscriminant { .. })
        ));
    }

    #[test]
    fn stops_where_the_discriminant_vanishes() {
        // D = 12 − 3u² vanishes at u = 2.
        let p = problem(TimelikeAxis, (1.0, 1.0, 1.0), Plus, 4.0, Plus);
        let curve = integrate_profile(&p, 0.5, 3.0, &StepControl::default()).unwrap();
        assert_eq!(curve.stop, StopReason::DiscriminantZero);
        let end = curve.validity.1;
        assert!(end < 2.0 && end > 2.0 - 1e-6, "stopped at {end}");
        assert!(curve.conservation_error() <= 1e-7 * 5.0);
        assert!(curve.samples.windows(2).all(|w| w[1].u > w[0].u));
    }

    #[test]
    fn integrates_backwards_and_on_negative_abscissae() {
        let p = problem(LightlikeAxis, (2.0, 0.0, 1.0), Plus, 0.0, Plus);
        let curve = integrate_profile(&p, 3.0, 0.5, &StepControl::default().with_z_start(-1.0 / 3.0)).unwrap();
        assert!(curve.completed());
        for s in &curve.samples {
            assert!((s.z + 1.0 / s.u).abs() <= 1e-8);
        }
        assert!(curve.samples.windows(2).all(|w| w[1].u < w[0].u));
        assert!(matches!(integrate_profile(&p, -1.0, 1.0, &StepControl::default()), Err(Error::InvalidDomain(_))));
    }

    #[test]
    fn spacelike_profile_tracks_height() {
        // Spacelike I, λ = 0, C = 1/2: z = √(4 + u²).
        let p = problem(SpacelikeAxisI, (1.0, 2.0, -1.0), Plus, 0.0, Plus);
        let ctl = StepControl::default().with_z_start(5f64.sqrt());
        let curve = integrate_profile(&p, 1.0, 3.0, &ctl).unwrap();
        assert!(curve.completed());
        for s in &curve.samples {
            assert!((s.z - (4.0 + s.u * s.u).sqrt()).abs() <= 1e-8);
        }
    }

    #[test]
    fn sampled_second_derivative_satisfies_the_equation() {
        let cases = [
            (problem(TimelikeAxis, (2.0, 1.0, 1.0), Plus, 2.0, Plus), 0.3, (0.2, 0.9)),
            (problem(TimelikeAxis, (1.5, -0.5, 2.0), Minus, 3.0, Minus), 0.0, (0.5, 1.5)),
            (problem(SpacelikeAxisI, (2.0, 1.0, 1.0), Plus, 1.0, Plus).with_slope_sign(Minus), -0.5, (0.5, 2.0)),
            (problem(SpacelikeAxisII, (1.0, 2.0, 1.0), Minus, 0.5, Plus), 0.4, (0.1, 0.5)),
            (problem(LightlikeAxis, (2.0, -1.0, -1.0), Plus, 1.0, Plus), 0.0, (0.2, 1.3)),
        ];
        for (p, z0, (lo, hi)) in cases {
            let curve = integrate_profile(&p, lo, hi, &StepControl::default().with_samples(30).with_z_start(z0))
                .unwrap_or_else(|e| panic!("{p:?}: {e}"));
            assert!(curve.samples.len() > 5, "{p:?} stopped early: {}", curve.stop);
            for s in &curve.samples {
                let pt = curve.eval(s.u).unwrap();
                let zpp = ode_second_derivative(&p, s.u, s.z, s.zp).unwrap();
                assert!((pt.zpp - zpp).abs() <= 1e-6 * zpp.abs().max(1.0), "{p:?} u={}", s.u);
            }
        }
    }
}
