use crate::error::{Error, Result};
use crate::rotational::AxisKind;
use crate::sign::Sign;

/// Coefficients and integration constants of one rotational instance of `aH + bK = c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeingartenProblem {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `Plus` for spacelike surfaces, `Minus` for timelike ones.
    pub epsilon: Sign,
    pub axis: AxisKind,
    /// Constant of the first integral.
    pub lambda: f64,
    /// Root of the φ-quadratic; fixed for a whole integration.
    pub branch: Sign,
    /// Translation constant: a vertical shift for timelike and lightlike axes,
    /// a shift along the axis for spacelike ones.
    pub mu: f64,
    /// Sign of z′ where only z′² is determined (spacelike axes).
    pub slope_sign: Sign,
}

impl WeingartenProblem {
    pub fn new(axis: AxisKind, a: f64, b: f64, c: f64, epsilon: Sign, lambda: f64) -> Self {
        WeingartenProblem {
            a,
            b,
            c,
            epsilon,
            axis,
            lambda,
            branch: Sign::Plus,
            mu: 0.0,
            slope_sign: Sign::Plus,
        }
    }

    pub fn with_branch(mut self, branch: Sign) -> Self {
        self.branch = branch;
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_slope_sign(mut self, slope_sign: Sign) -> Self {
        self.slope_sign = slope_sign;
        self
    }

    pub fn eps(&self) -> f64 {
        self.epsilon.value()
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.a, self.b, self.c, self.lambda, self.mu];
        if vals.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidProblem("coefficients must be finite".into()));
        }
        if self.a == 0.0 && self.b == 0.0 {
            return Err(Error::InvalidProblem("a and b cannot both vanish".into()));
        }
        if self.axis == AxisKind::SpacelikeAxisII && self.epsilon != Sign::Minus {
            return Err(Error::InvalidProblem("surfaces about a spacelike axis of the second kind are timelike (epsilon = -1)".into()));
        }
        Ok(())
    }

    /// a² − 4bcε, or a² + 4bc about a spacelike axis of the second kind.
    pub fn discriminant_coefficient(&self) -> f64 {
        match self.axis {
            AxisKind::SpacelikeAxisII => self.a * self.a + 4.0 * self.b * self.c,
            _ => self.a * self.a - 4.0 * self.b * self.c * self.eps(),
        }
    }

    /// Whether the discriminant coefficient vanishes to rounding.
    pub fn has_zero_discriminant(&self) -> bool {
        let scale = self.a * self.a + (4.0 * self.b * self.c).abs();
        self.discriminant_coefficient().abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE)
    }
}
