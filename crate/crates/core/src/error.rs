use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate patch at (u={u}, v={v}): |EG-F^2| = {w:e} is below tolerance")]
    DegeneratePatch { u: f64, v: f64, w: f64 },

    #[error("mixed causal character on grid: W ranges over [{min_w:e}, {max_w:e}]")]
    MixedCausality { min_w: f64, max_w: f64 },

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("point lies on the rotation axis or its degenerate orbit plane")]
    FixedPoint,

    #[error("domain violation at s={at}: {what}")]
    DomainViolation { what: String, at: f64 },

    #[error("negative discriminant {value:e} at s={at}")]
    NegativeDiscriminant { value: f64, at: f64 },

    #[error("zero denominator at s={at}")]
    ZeroDenominator { at: f64 },

    #[error("problem is not admissible at the starting point: {0}")]
    ImmediateDomainViolation(Box<Error>),

    #[error("closed form not applicable: {0}")]
    InapplicableCase(String),

    #[error("need at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
