//! Second-order forward-mode automatic differentiation in two variables.
//!
//! [`Taylor2`] carries a value together with its gradient and Hessian with
//! respect to two seed variables `(u, v)`. Code written against [`Real`] runs
//! unchanged on `f64` and on `Taylor2`, which is how surface maps and profile
//! formulas get exact second derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar operations needed by surface maps, profiles, and first integrals.
pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn cst(x: f64) -> Self;
    fn value(self) -> f64;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn atanh(self) -> Self;
    fn recip(self) -> Self;

    fn powi(self, n: i32) -> Self {
        let mut acc = Self::cst(1.0);
        let base = if n < 0 { self.recip() } else { self };
        for _ in 0..n.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn value(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn atanh(self) -> Self {
        f64::atanh(self)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
}

/// Truncated second-order Taylor expansion in `(u, v)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Taylor2 {
    pub val: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Taylor2 {
    pub const fn constant(val: f64) -> Self {
        Taylor2 { val, du: 0.0, dv: 0.0, duu: 0.0, duv: 0.0, dvv: 0.0 }
    }

    /// Seed for the first variable.
    pub const fn var_u(val: f64) -> Self {
        Taylor2 { val, du: 1.0, dv: 0.0, duu: 0.0, duv: 0.0, dvv: 0.0 }
    }

    /// Seed for the second variable.
    pub const fn var_v(val: f64) -> Self {
        Taylor2 { val, du: 0.0, dv: 1.0, duu: 0.0, duv: 0.0, dvv: 0.0 }
    }

    /// Chain rule for a scalar function with value `f0`, slope `f1`, and curvature `f2` at `self.val`.
    fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Taylor2 {
            val: f0,
            du: f1 * self.du,
            dv: f1 * self.dv,
            duu: f2 * self.du * self.du + f1 * self.duu,
            duv: f2 * self.du * self.dv + f1 * self.duv,
            dvv: f2 * self.dv * self.dv + f1 * self.dvv,
        }
    }
}

impl Add for Taylor2 {
    type Output = Taylor2;
    fn add(self, o: Taylor2) -> Taylor2 {
        Taylor2 {
            val: self.val + o.val,
            du: self.du + o.du,
            dv: self.dv + o.dv,
            duu: self.duu + o.duu,
            duv: self.duv + o.duv,
            dvv: self.dvv + o.dvv,
        }
    }
}

impl Sub for Taylor2 {
    type Output = Taylor2;
    fn sub(self, o: Taylor2) -> Taylor2 {
        self + (-o)
    }
}

impl Neg for Taylor2 {
    type Output = Taylor2;
    fn neg(self) -> Taylor2 {
        self * -1.0
    }
}

impl Mul for Taylor2 {
    type Output = Taylor2;
    fn mul(self, o: Taylor2) -> Taylor2 {
        Taylor2 {
            val: self.val * o.val,
            du: self.du * o.val + self.val * o.du,
            dv: self.dv * o.val + self.val * o.dv,
            duu: self.duu * o.val + 2.0 * self.du * o.du + self.val * o.duu,
            duv: self.duv * o.val + self.du * o.dv + self.dv * o.du + self.val * o.duv,
            dvv: self.dvv * o.val + 2.0 * self.dv * o.dv + self.val * o.dvv,
        }
    }
}

impl Div for Taylor2 {
    type Output = Taylor2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Taylor2) -> Taylor2 {
        self * o.recip()
    }
}

impl Add<f64> for Taylor2 {
    type Output = Taylor2;
    fn add(mut self, s: f64) -> Taylor2 {
        self.val += s;
        self
    }
}

impl Sub<f64> for Taylor2 {
    type Output = Taylor2;
    fn sub(mut self, s: f64) -> Taylor2 {
        self.val -= s;
        self
    }
}

impl Mul<f64> for Taylor2 {
    type Output = Taylor2;
    fn mul(self, s: f64) -> Taylor2 {
        Taylor2 {
            val: self.val * s,
            du: self.du * s,
            dv: self.dv * s,
            duu: self.duu * s,
            duv: self.duv * s,
            dvv: self.dvv * s,
        }
    }
}

impl Div<f64> for Taylor2 {
    type Output = Taylor2;
    fn div(self, s: f64) -> Taylor2 {
        self * (1.0 / s)
    }
}

impl Real for Taylor2 {
    fn cst(x: f64) -> Self {
        Taylor2::constant(x)
    }
    fn value(self) -> f64 {
        self.val
    }
    fn sqrt(self) -> Self {
        let s = self.val.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.val))
    }
    fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }
    fn ln(self) -> Self {
        let x = self.val;
        self.chain(x.ln(), 1.0 / x, -1.0 / (x * x))
    }
    fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }
    fn sinh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(s, c, s)
    }
    fn cosh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(c, s, c)
    }
    fn atanh(self) -> Self {
        let x = self.val;
        let d = 1.0 / (1.0 - x * x);
        self.chain(x.atanh(), d, 2.0 * x * d * d)
    }
    fn recip(self) -> Self {
        let x = self.val;
        let r = 1.0 / x;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }
}
