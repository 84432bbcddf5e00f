//! Dormand–Prince 5(4) with error control and a fallible right-hand side.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub atol: f64,
    pub rtol: f64,
    /// Upper bound on |h|; `None` leaves it unbounded.
    pub max_step: Option<f64>,
    /// Below this |h| a rejected step is fatal.
    pub min_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { atol: 1e-10, rtol: 1e-10, max_step: None, min_step: 1e-14 }
    }
}

/// Why integration stopped before reaching the requested end point. The state
/// at `t` is the last accepted one.
#[derive(Clone, Debug, PartialEq)]
pub enum OdeError<E, const N: usize> {
    /// The right-hand side kept failing as the step shrank below the minimum.
    Rhs { t: f64, y: [f64; N], error: E },
    /// Error control could not be satisfied with a step above the minimum.
    StepUnderflow { t: f64, y: [f64; N] },
}

impl<E: fmt::Display, const N: usize> fmt::Display for OdeError<E, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OdeError::Rhs { t, error, .. } => write!(f, "right-hand side failed near t={t}: {error}"),
            OdeError::StepUnderflow { t, .. } => write!(f, "step size underflow at t={t}"),
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Fifth-order weights are the last row of A; these are fifth minus fourth.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Copy, Debug, Default)]
pub struct DormandPrince {
    pub tol: Tolerances,
}

impl DormandPrince {
    pub fn new(tol: Tolerances) -> Self {
        DormandPrince { tol }
    }

    fn try_step<F, Er, const N: usize>(&self, f: &mut F, t: f64, y: &[f64; N], h: f64) -> Result<([f64; N], f64), Er>
    where
        F: FnMut(f64, &[f64; N]) -> Result<[f64; N], Er>,
    {
        let mut k = [[0.0; N]; 7];
        for s in 0..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for i in 0..N {
                    ys[i] += h * A[s][j] * kj[i];
                }
            }
            if s == 6 {
                // Stage 7 is evaluated at the fifth-order solution (FSAL).
                k[6] = f(t + h, &ys)?;
                let mut err = 0.0f64;
                for i in 0..N {
                    let e: f64 = (0..7).map(|j| E[j] * k[j][i]).sum::<f64>() * h;
                    let sc = self.tol.atol + self.tol.rtol * y[i].abs().max(ys[i].abs());
                    err = err.max((e / sc).abs());
                }
                return Ok((ys, err));
            }
            k[s] = f(t + C[s] * h, &ys)?;
        }
        unreachable!()
    }

    /// Integrates `y′ = f(t, y)` from `(t0, y0)` to `t1` (either direction).
    /// `h0` is the initial step magnitude; returns the final state and the
    /// step magnitude the controller would take next.
    pub fn integrate<F, Er, const N: usize>(
        &self,
        mut f: F,
        t0: f64,
        y0: [f64; N],
        t1: f64,
        h0: f64,
    ) -> Result<([f64; N], f64), OdeError<Er, N>>
    where
        F: FnMut(f64, &[f64; N]) -> Result<[f64; N], Er>,
    {
        let dir = if t1 >= t0 { 1.0 } else { -1.0 };
        let span = (t1 - t0).abs();
        let max_step = self.tol.max_step.unwrap_or(f64::INFINITY).min(span.max(self.tol.min_step));
        let mut h = h0.abs().min(max_step).max(self.tol.min_step);
        let (mut t, mut y) = (t0, y0);
        while dir * (t1 - t) > 0.0 {
            let remaining = (t1 - t).abs();
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            match self.try_step(&mut f, t, &y, dir * step) {
                Ok((ynew, err)) if err <= 1.0 && ynew.iter().all(|v| v.is_finite()) => {
                    t = if last { t1 } else { t + dir * step };
                    y = ynew;
                    let grow = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                    h = (step * grow).min(max_step);
                }
                Ok((_, err)) => {
                    let shrink = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.5) } else { 0.25 };
                    h = step * shrink;
                    if h < self.tol.min_step {
                        return Err(OdeError::StepUnderflow { t, y });
                    }
                }
                Err(error) => {
                    h = step * 0.25;
                    if h < self.tol.min_step {
                        return Err(OdeError::Rhs { t, y, error });
                    }
                }
            }
        }
        Ok((y, h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_growth() {
        let dp = DormandPrince::default();
        let (y, _) = dp.integrate(|_, y: &[f64; 1]| Ok::<_, ()>([y[0]]), 0.0, [1.0], 2.0, 0.1).unwrap();
        assert_relative_eq!(y[0], 2f64.exp(), max_relative = 1e-9);
    }

    #[test]
    fn backwards_harmonic_oscillator() {
        let dp = DormandPrince::default();
        let f = |_, y: &[f64; 2]| Ok::<_, ()>([y[1], -y[0]]);
        let (y, _) = dp.integrate(f, 0.0, [0.0, 1.0], -3.0, 0.1).unwrap();
        assert_relative_eq!(y[0], (-3f64).sin(), epsilon = 1e-9);
        assert_relative_eq!(y[1], (-3f64).cos(), epsilon = 1e-9);
    }

    #[test]
    fn failing_rhs_reports_last_good_state() {
        let dp = DormandPrince::default();
        let f = |t: f64, _: &[f64; 1]| if t < 1.0 { Ok([1.0]) } else { Err("wall") };
        match dp.integrate(f, 0.0, [0.0], 2.0, 0.1) {
            Err(OdeError::Rhs { t, y, error }) => {
                assert_eq!(error, "wall");
                assert!(t < 1.0 && t > 1.0 - 1e-12);
                assert_relative_eq!(y[0], t, epsilon = 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn square_root_quadrature() {
        let dp = DormandPrince::new(Tolerances { max_step: Some(0.05), ..Default::default() });
        let (y, _) = dp.integrate(|t: f64, _: &[f64; 1]| Ok::<_, ()>([t.sqrt()]), 1.0, [0.0], 4.0, 0.01).unwrap();
        assert_relative_eq!(y[0], (8.0 - 1.0) * 2.0 / 3.0, max_relative = 1e-10);
    }
}
