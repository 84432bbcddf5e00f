//! Explicit profiles: the λ = b / λ = 0 pseudo-quadric families and the
//! zero-discriminant families for every axis, plus the four items of the
//! classification for a² − 4bcε = 0 with their sign choices left explicit.

use std::fmt;

use crate::autodiff::{Real, Taylor2};
use crate::curvature::{curvature_oriented, Orientation};
use crate::error::{Error, Result};
use crate::minkowski::MVec3;
use crate::rotational::{generator_sign, rotational_jet, AxisKind, Profile, ProfilePoint};
use crate::sign::Sign;

use super::WeingartenProblem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormCase {
    TimelikeLambdaEqB,
    TimelikeZeroDiscriminant,
    SpacelikeILambdaZero,
    SpacelikeIZeroDiscriminant,
    SpacelikeIILambdaZero,
    SpacelikeIIZeroDiscriminant,
    LightlikeLambdaZero,
    LightlikeZeroDiscriminant,
}

impl ClosedFormCase {
    pub const ALL: [ClosedFormCase; 8] = [
        ClosedFormCase::TimelikeLambdaEqB,
        ClosedFormCase::TimelikeZeroDiscriminant,
        ClosedFormCase::SpacelikeILambdaZero,
        ClosedFormCase::SpacelikeIZeroDiscriminant,
        ClosedFormCase::SpacelikeIILambdaZero,
        ClosedFormCase::SpacelikeIIZeroDiscriminant,
        ClosedFormCase::LightlikeLambdaZero,
        ClosedFormCase::LightlikeZeroDiscriminant,
    ];

    pub fn axis(self) -> AxisKind {
        use ClosedFormCase::*;
        match self {
            TimelikeLambdaEqB | TimelikeZeroDiscriminant => AxisKind::TimelikeAxis,
            SpacelikeILambdaZero | SpacelikeIZeroDiscriminant => AxisKind::SpacelikeAxisI,
            SpacelikeIILambdaZero | SpacelikeIIZeroDiscriminant => AxisKind::SpacelikeAxisII,
            LightlikeLambdaZero | LightlikeZeroDiscriminant => AxisKind::LightlikeAxis,
        }
    }

    pub fn name(self) -> &'static str {
        use ClosedFormCase::*;
        match self {
            TimelikeLambdaEqB => "timelike-lambda-eq-b",
            TimelikeZeroDiscriminant => "timelike-zero-discriminant",
            SpacelikeILambdaZero => "spacelike-i-lambda-zero",
            SpacelikeIZeroDiscriminant => "spacelike-i-zero-discriminant",
            SpacelikeIILambdaZero => "spacelike-ii-lambda-zero",
            SpacelikeIIZeroDiscriminant => "spacelike-ii-zero-discriminant",
            LightlikeLambdaZero => "lightlike-lambda-zero",
            LightlikeZeroDiscriminant => "lightlike-zero-discriminant",
        }
    }
}

impl fmt::Display for ClosedFormCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which constant C the lightlike item of the classification is evaluated with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LightlikeConstant {
    /// C = 2√(bε(λ − b)), as carried over from the timelike item.
    TimelikeAnalogue,
    /// C = √(−8bελ), the constant of the lightlike zero-discriminant derivation.
    LightlikeDerivation,
}

/// Items of the classification of rotational surfaces with a² − 4bcε = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RadicalFamily {
    /// Timelike axis: z = ±√(4εb²/a² + (C/a ± u)²) + μ, C = 2√(bε(λ − b)).
    Timelike,
    /// Spacelike axis, first kind: z = ±C/a ± √(4εb²/a² ± (u ± μ)²), C = 2√(bελ).
    SpacelikeI,
    /// Spacelike axis, second kind: z = −C/a ± √(4b²/a² ± (u ± μ)²), C = 2√(bλ).
    SpacelikeII,
    /// Lightlike axis, in the 1/48-prefactor form with arctanh coefficient
    /// (cC² + 2a²λ)/√(−2cλ). Does not solve the equation; kept for comparison.
    Lightlike(LightlikeConstant),
}

impl RadicalFamily {
    pub fn axis(self) -> AxisKind {
        match self {
            RadicalFamily::Timelike => AxisKind::TimelikeAxis,
            RadicalFamily::SpacelikeI => AxisKind::SpacelikeAxisI,
            RadicalFamily::SpacelikeII => AxisKind::SpacelikeAxisII,
            RadicalFamily::Lightlike(_) => AxisKind::LightlikeAxis,
        }
    }

    /// The sign slots that the formula leaves free.
    fn free_slots(self) -> &'static [Slot] {
        match self {
            RadicalFamily::Timelike => &[Slot::Outer, Slot::Inner],
            RadicalFamily::SpacelikeI => &[Slot::Offset, Slot::Outer, Slot::Square, Slot::Shift],
            RadicalFamily::SpacelikeII => &[Slot::Outer, Slot::Square, Slot::Shift],
            RadicalFamily::Lightlike(_) => &[],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Offset,
    Outer,
    Inner,
    Square,
    Shift,
}

/// Sign choices in `z = offset·C/a + outer·√(k + square·(u + shift·μ)²)` and
/// `(C/a + inner·u)²`. Unused slots are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RadicalSigns {
    pub offset: Sign,
    pub outer: Sign,
    pub inner: Sign,
    pub square: Sign,
    pub shift: Sign,
}

impl Default for RadicalSigns {
    fn default() -> Self {
        RadicalSigns { offset: Sign::Plus, outer: Sign::Plus, inner: Sign::Plus, square: Sign::Plus, shift: Sign::Plus }
    }
}

impl RadicalSigns {
    fn set(mut self, slot: Slot, s: Sign) -> Self {
        match slot {
            Slot::Offset => self.offset = s,
            Slot::Outer => self.outer = s,
            Slot::Inner => self.inner = s,
            Slot::Square => self.square = s,
            Slot::Shift => self.shift = s,
        }
        self
    }
}

impl fmt::Display for RadicalSigns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "offset={} outer={} inner={} square={} shift={}",
            self.offset, self.outer, self.inner, self.square, self.shift
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricKind {
    /// ⟨p − p₀, p − p₀⟩ = −r².
    PseudoHyperbolic,
    /// ⟨p − p₀, p − p₀⟩ = r².
    PseudoSphere,
}

impl fmt::Display for QuadricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadricKind::PseudoHyperbolic => "pseudo-hyperbolic",
            QuadricKind::PseudoSphere => "pseudo-sphere",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpectedQuadric {
    pub kind: QuadricKind,
    pub center: MVec3,
    pub radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Source {
    Case(ClosedFormCase),
    Radical(RadicalFamily),
}

/// `center + outer·√(k + square·(u − u0)²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Radical {
    center: f64,
    outer: f64,
    k: f64,
    square: f64,
    u0: f64,
}

/// `prefactor·[(n0 + n1·u)/(εcλ(2λ + cu²)) + ε·coef·atanh(√(−c/(2λ))·u)] + μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Rational {
    prefactor: f64,
    n0: f64,
    n1: f64,
    coef: f64,
    eps: f64,
    c: f64,
    lambda: f64,
    mu: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Formula {
    Radical(Radical),
    /// `−εC²/u + μ`.
    Reciprocal { eps: f64, c2: f64, mu: f64 },
    Rational(Rational),
}

impl Formula {
    fn height<T: Real>(&self, u: T) -> T {
        match *self {
            Formula::Radical(r) => {
                let d = u - r.u0;
                (d * d * r.square + r.k).sqrt() * r.outer + r.center
            }
            Formula::Reciprocal { eps, c2, mu } => -(u.recip() * (eps * c2)) + mu,
            Formula::Rational(r) => {
                let den = (u * u * r.c + 2.0 * r.lambda) * (r.eps * r.c * r.lambda);
                let mut body = (u * r.n1 + r.n0) / den;
                if r.coef != 0.0 {
                    body = body + (u * (-r.c / (2.0 * r.lambda)).sqrt()).atanh() * (r.eps * r.coef);
                }
                body * r.prefactor + r.mu
            }
        }
    }
}

/// An explicit profile, evaluated with forward-mode derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedForm {
    source: Source,
    pub problem: WeingartenProblem,
    pub signs: RadicalSigns,
    /// The constant C of the family.
    pub constant: f64,
    pub interval: (f64, f64),
    formula: Formula,
}

fn inapplicable<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InapplicableCase(msg.into()))
}

fn near_zero(x: f64, scale: f64) -> bool {
    x.abs() <= 1e-12 * scale.max(1.0)
}

fn sqrt_nonneg(x: f64, what: &str) -> Result<f64> {
    if x < 0.0 {
        return inapplicable(format!("{what} = {x} is negative"));
    }
    Ok(x.sqrt())
}

/// Root C of `b C² + a C + εc = 0` (λ = b about a timelike axis, λ = 0 about spacelike I).
fn quadric_constant(p: &WeingartenProblem) -> Result<f64> {
    let (a, b, c, eps) = (p.a, p.b, p.c, p.eps());
    let c_const = match p.axis {
        AxisKind::SpacelikeAxisII => {
            // b C² − a C − c = 0
            if b == 0.0 {
                -c / a
            } else {
                (a + p.branch.value() * sqrt_nonneg(a * a + 4.0 * b * c, "a^2 + 4bc")?) / (2.0 * b)
            }
        }
        AxisKind::LightlikeAxis => {
            // 4εc C² − 2aε C + b = 0
            if c == 0.0 {
                return inapplicable("the lambda = 0 lightlike family needs c != 0");
            }
            (a + p.branch.value() * eps * sqrt_nonneg(a * a - 4.0 * b * c * eps, "a^2 - 4bc epsilon")?) / (4.0 * c)
        }
        _ => {
            if b == 0.0 {
                -eps * c / a
            } else {
                (-a + p.branch.value() * sqrt_nonneg(a * a - 4.0 * b * c * eps, "a^2 - 4bc epsilon")?) / (2.0 * b)
            }
        }
    };
    if !(c_const.is_finite() && c_const != 0.0) {
        return inapplicable(format!("degenerate constant C = {c_const}"));
    }
    Ok(c_const)
}

fn require_axis(p: &WeingartenProblem, axis: AxisKind) -> Result<()> {
    if p.axis != axis {
        return inapplicable(format!("problem is posed about the {} axis, not the {axis} axis", p.axis));
    }
    Ok(())
}

fn require_zero_discriminant(p: &WeingartenProblem) -> Result<()> {
    if !p.has_zero_discriminant() {
        return inapplicable(format!("discriminant coefficient {} is not zero", p.discriminant_coefficient()));
    }
    if p.a == 0.0 {
        return inapplicable("the zero-discriminant family needs a != 0");
    }
    Ok(())
}

fn require_lambda(p: &WeingartenProblem, target: f64) -> Result<()> {
    if !near_zero(p.lambda - target, target.abs()) {
        return inapplicable(format!("lambda = {} but the family needs lambda = {target}", p.lambda));
    }
    Ok(())
}

/// The lightlike zero-discriminant evaluator with prefactor 1/64.
fn lightlike_rational(p: &WeingartenProblem, c_const: f64, prefactor: f64, with_arctanh: bool) -> Result<Formula> {
    let (a, c, lam, eps) = (p.a, p.c, p.lambda, p.eps());
    if c == 0.0 || lam == 0.0 {
        return inapplicable("the lightlike zero-discriminant formula divides by c*lambda");
    }
    let c2 = c_const * c_const;
    let plus = c * c2 + 2.0 * a * a * lam;
    let plus = if near_zero(plus, (c * c2).abs() + (2.0 * a * a * lam).abs()) { 0.0 } else { plus };
    let (n0, n1, coef) = if with_arctanh {
        let root = (-2.0 * c * lam).sqrt();
        (-4.0 * a * c * lam, c * c2 - 2.0 * a * a * lam, if plus == 0.0 { 0.0 } else { plus / root })
    } else {
        let sigma = p.branch.value();
        let root = (-2.0 * c * c * c * lam * lam * lam).sqrt();
        (-sigma * eps * 4.0 * a * c_const * lam, c * c2 - 2.0 * a * a * lam, if plus == 0.0 { 0.0 } else { plus / root })
    };
    if coef != 0.0 && !(c * lam < 0.0) {
        return inapplicable("arctanh term needs c*lambda < 0");
    }
    Ok(Formula::Rational(Rational { prefactor, n0, n1, coef, eps, c, lambda: lam, mu: p.mu }))
}

fn case_formula(case: ClosedFormCase, p: &WeingartenProblem, signs: &RadicalSigns) -> Result<(f64, Formula)> {
    use ClosedFormCase::*;
    require_axis(p, case.axis())?;
    p.validate()?;
    let (a, b, eps, mu) = (p.a, p.b, p.eps(), p.mu);
    let shift = signs.shift.value();
    let root = p.branch.value();
    Ok(match case {
        TimelikeLambdaEqB => {
            require_lambda(p, b)?;
            let cc = quadric_constant(p)?;
            (cc, Formula::Radical(Radical { center: mu, outer: cc.signum(), k: eps / (cc * cc), square: 1.0, u0: 0.0 }))
        }
        TimelikeZeroDiscriminant => {
            require_zero_discriminant(p)?;
            let cc = 2.0 * sqrt_nonneg(b * eps * (p.lambda - b), "b epsilon (lambda - b)")?;
            let k = 4.0 * eps * b * b / (a * a);
            (cc, Formula::Radical(Radical { center: mu, outer: -(a * b).signum(), k, square: 1.0, u0: root * cc / a }))
        }
        SpacelikeILambdaZero => {
            require_lambda(p, 0.0)?;
            let cc = quadric_constant(p)?;
            (cc, Formula::Radical(Radical { center: 0.0, outer: cc.signum(), k: eps / (cc * cc), square: 1.0, u0: -shift * cc * mu }))
        }
        SpacelikeIZeroDiscriminant => {
            require_zero_discriminant(p)?;
            let cc = 2.0 * sqrt_nonneg(b * eps * p.lambda, "b epsilon lambda")?;
            let k = 4.0 * eps * b * b / (a * a);
            (cc, Formula::Radical(Radical { center: root * cc / a, outer: -(a * b).signum(), k, square: 1.0, u0: -shift * mu }))
        }
        SpacelikeIILambdaZero => {
            require_lambda(p, 0.0)?;
            let cc = quadric_constant(p)?;
            (cc, Formula::Radical(Radical { center: 0.0, outer: cc.signum(), k: 1.0 / (cc * cc), square: -1.0, u0: -shift * cc * mu }))
        }
        SpacelikeIIZeroDiscriminant => {
            require_zero_discriminant(p)?;
            let cc = 2.0 * sqrt_nonneg(b * p.lambda, "b lambda")?;
            let k = 4.0 * b * b / (a * a);
            (cc, Formula::Radical(Radical { center: -root * cc / a, outer: (a * b).signum(), k, square: -1.0, u0: -shift * mu }))
        }
        LightlikeLambdaZero => {
            require_lambda(p, 0.0)?;
            let cc = quadric_constant(p)?;
            (cc, Formula::Reciprocal { eps, c2: cc * cc, mu })
        }
        LightlikeZeroDiscriminant => {
            require_zero_discriminant(p)?;
            let cc = sqrt_nonneg(-8.0 * b * eps * p.lambda, "-8 b epsilon lambda")?;
            (cc, lightlike_rational(p, cc, 1.0 / 64.0, false)?)
        }
    })
}

fn radical_formula(item: RadicalFamily, p: &WeingartenProblem, signs: &RadicalSigns) -> Result<(f64, Formula)> {
    require_axis(p, item.axis())?;
    p.validate()?;
    require_zero_discriminant(p)?;
    let (a, b, eps, lam, mu) = (p.a, p.b, p.eps(), p.lambda, p.mu);
    let shift = signs.shift.value();
    Ok(match item {
        RadicalFamily::Timelike => {
            let cc = 2.0 * sqrt_nonneg(b * eps * (lam - b), "b epsilon (lambda - b)")?;
            let k = 4.0 * eps * b * b / (a * a);
            let u0 = -signs.inner.value() * cc / a;
            // (C/a + inner·u)² = (u + inner·C/a)²
            (cc, Formula::Radical(Radical { center: mu, outer: signs.outer.value(), k, square: 1.0, u0 }))
        }
        RadicalFamily::SpacelikeI => {
            let cc = 2.0 * sqrt_nonneg(b * eps * lam, "b epsilon lambda")?;
            let k = 4.0 * eps * b * b / (a * a);
            let center = signs.offset.value() * cc / a;
            (cc, Formula::Radical(Radical { center, outer: signs.outer.value(), k, square: signs.square.value(), u0: -shift * mu }))
        }
        RadicalFamily::SpacelikeII => {
            let cc = 2.0 * sqrt_nonneg(b * lam, "b lambda")?;
            let k = 4.0 * b * b / (a * a);
            (cc, Formula::Radical(Radical { center: -cc / a, outer: signs.outer.value(), k, square: signs.square.value(), u0: -shift * mu }))
        }
        RadicalFamily::Lightlike(constant) => {
            let cc = match constant {
                LightlikeConstant::TimelikeAnalogue => 2.0 * sqrt_nonneg(b * eps * (lam - b), "b epsilon (lambda - b)")?,
                LightlikeConstant::LightlikeDerivation => sqrt_nonneg(-8.0 * b * eps * lam, "-8 b epsilon lambda")?,
            };
            (cc, lightlike_rational(p, cc, 1.0 / 48.0, true)?)
        }
    })
}

fn check_interval(interval: (f64, f64)) -> Result<()> {
    let (lo, hi) = interval;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidDomain(format!("empty interval [{lo}, {hi}]")));
    }
    Ok(())
}

/// Closed-form profile of `case` for `problem`; `problem.branch` selects the
/// ± of the constant C (or of the φ-root in the zero-discriminant families).
pub fn closed_form(case: ClosedFormCase, problem: &WeingartenProblem, interval: (f64, f64)) -> Result<ClosedForm> {
    ClosedForm::for_case(case, problem, RadicalSigns::default(), interval)
}

/// Evaluator of one item of the classification with explicit sign choices.
pub fn radical_profile(
    item: RadicalFamily,
    problem: &WeingartenProblem,
    signs: RadicalSigns,
    interval: (f64, f64),
) -> Result<ClosedForm> {
    check_interval(interval)?;
    let (constant, formula) = radical_formula(item, problem, &signs)?;
    Ok(ClosedForm { source: Source::Radical(item), problem: *problem, signs, constant, interval, formula })
}

/// Largest |aH + bK − c| of a profile at `n` abscissae (the residual is
/// independent of the rotation angle).
pub(crate) fn profile_residual<P: Profile>(p: &WeingartenProblem, profile: &P, n: usize) -> Result<f64> {
    let (lo, hi) = profile.interval();
    let mut worst = 0.0f64;
    for i in 0..n {
        let u = lo + (hi - lo) * (i as f64 + 0.5) / n as f64;
        let pt = profile.eval(u)?;
        let jet = rotational_jet(p.axis, u, 0.0, pt);
        let cd = curvature_oriented(&jet, Orientation::Parametrization)?;
        let h = cd.h * generator_sign(p.axis, u, pt.z, cd.epsilon);
        let r = p.a * h + p.b * cd.k - p.c;
        if !r.is_finite() {
            return Err(Error::DomainViolation { what: "non-finite residual".into(), at: u });
        }
        // A profile of the wrong causal character is not a solution of this problem.
        if cd.epsilon != p.epsilon {
            return Ok(f64::INFINITY);
        }
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

/// Sign assignments of `item` whose profile solves the equation on `interval`
/// (residual at most `tol` at 40 abscissae, correct causal character).
pub fn admissible_radical_signs(item: RadicalFamily, problem: &WeingartenProblem, interval: (f64, f64), tol: f64) -> Vec<RadicalSigns> {
    let slots = item.free_slots();
    let mut out = Vec::new();
    for mask in 0..(1u32 << slots.len()) {
        let mut signs = RadicalSigns::default();
        for (i, slot) in slots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                signs = signs.set(*slot, Sign::Minus);
            }
        }
        let Ok(profile) = radical_profile(item, problem, signs, interval) else { continue };
        if matches!(profile_residual(problem, &profile, 40), Ok(r) if r <= tol) {
            out.push(signs);
        }
    }
    out
}

impl ClosedForm {
    pub fn for_case(case: ClosedFormCase, problem: &WeingartenProblem, signs: RadicalSigns, interval: (f64, f64)) -> Result<ClosedForm> {
        check_interval(interval)?;
        let (constant, formula) = case_formula(case, problem, &signs)?;
        Ok(ClosedForm { source: Source::Case(case), problem: *problem, signs, constant, interval, formula })
    }

    pub fn case(&self) -> Option<ClosedFormCase> {
        match self.source {
            Source::Case(c) => Some(c),
            Source::Radical(_) => None,
        }
    }

    pub fn radical_family(&self) -> Option<RadicalFamily> {
        match self.source {
            Source::Radical(t) => Some(t),
            Source::Case(_) => None,
        }
    }

    pub fn with_interval(mut self, interval: (f64, f64)) -> Result<Self> {
        check_interval(interval)?;
        self.interval = interval;
        Ok(self)
    }

    pub fn height(&self, u: f64) -> f64 {
        self.formula.height(u)
    }

    /// Pseudo-quadric the surface lies on, for the λ = b and λ = 0 families.
    pub fn expected_quadric(&self) -> Option<ExpectedQuadric> {
        let by_eps = if self.problem.epsilon == Sign::Plus { QuadricKind::PseudoHyperbolic } else { QuadricKind::PseudoSphere };
        let cc = self.constant;
        let mu = self.problem.mu;
        let Formula::Radical(r) = self.formula else {
            return match self.case()? {
                ClosedFormCase::LightlikeLambdaZero => {
                    Some(ExpectedQuadric { kind: by_eps, center: MVec3::new(0.0, mu, mu), radius: 2.0 * cc.abs() })
                }
                _ => None,
            };
        };
        match self.case()? {
            ClosedFormCase::TimelikeLambdaEqB => Some(ExpectedQuadric { kind: by_eps, center: MVec3::new(0.0, 0.0, mu), radius: 1.0 / cc.abs() }),
            ClosedFormCase::SpacelikeILambdaZero => Some(ExpectedQuadric { kind: by_eps, center: MVec3::new(r.u0, 0.0, 0.0), radius: 1.0 / cc.abs() }),
            ClosedFormCase::SpacelikeIILambdaZero => {
                Some(ExpectedQuadric { kind: QuadricKind::PseudoSphere, center: MVec3::new(r.u0, 0.0, 0.0), radius: 1.0 / cc.abs() })
            }
            _ => None,
        }
    }
}

impl Profile for ClosedForm {
    fn eval(&self, u: f64) -> Result<ProfilePoint> {
        let t: Taylor2 = self.formula.height(Taylor2::var_u(u));
        if !(t.val.is_finite() && t.du.is_finite() && t.duu.is_finite()) {
            return Err(Error::DomainViolation { what: "closed form undefined".into(), at: u });
        }
        Ok(ProfilePoint { z: t.val, zp: t.du, zpp: t.duu })
    }

    fn interval(&self) -> (f64, f64) {
        self.interval
    }
}
