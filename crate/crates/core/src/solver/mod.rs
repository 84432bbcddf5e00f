//! Rotational linear Weingarten profiles: first integrals, the φ-substitution,
//! numerical integration of the generating curve, and closed-form solutions.

mod closed_form;
mod first_integral;
mod integrate;
mod ode;
mod problem;

pub use closed_form::{
    closed_form, radical_profile, admissible_radical_signs, ClosedForm, ClosedFormCase, ExpectedQuadric, QuadricKind,
    LightlikeConstant, RadicalSigns, RadicalFamily,
};
pub use first_integral::{
    first_integral_lhs, first_integral_lhs_generic, forward_phi, invert_phi, ode_second_derivative, slope,
    slope_jet, solve_phi, PhiQuadratic,
};
pub use integrate::{integrate_profile, CAUSAL_DEGENERATION_TOL, LIGHTLIKE_SLOPE_TOL, CurveSample, GeneratingCurve, StepControl, StopReason};
pub use ode::{DormandPrince, OdeError, Tolerances};
pub use problem::WeingartenProblem;
