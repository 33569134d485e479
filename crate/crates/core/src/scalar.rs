//! Scalar algebra shared by every metric formula.
//!
//! All geometry in this crate is written against [`Real`], so the same code
//! path evaluates plain `f64` values and, through [`Dual`], exact first
//! derivatives with respect to one parameter (forward-mode differentiation).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Field operations and elementary functions needed by the trigonometric laws.
pub trait Real:
    Copy
    + Debug
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
    /// Lifts a constant.
    fn cst(x: f64) -> Self;
    /// Real part, dropping any infinitesimal component.
    fn value(self) -> f64;

    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn acos(self) -> Self;
    fn atanh(self) -> Self;
    /// Inverse hyperbolic cosine, accurate for arguments close to 1.
    fn acosh(self) -> Self;
    fn atan2(self, x: Self) -> Self;

    fn powi(self, k: i32) -> Self {
        let mut acc = Self::cst(1.0);
        let base = if k < 0 { Self::cst(1.0) / self } else { self };
        for _ in 0..k.unsigned_abs() {
            acc = acc * base;
        }
        acc
    }
}

/// `acosh` through `ln_1p`, which keeps full relative accuracy as `x -> 1+`.
pub fn acosh_stable(x: f64) -> f64 {
    let y = x - 1.0;
    (y + (y * (x + 1.0)).sqrt()).ln_1p()
}

impl Real for f64 {
    #[inline]
    fn cst(x: f64) -> Self {
        x
    }
    #[inline]
    fn value(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn sin(self) -> Self {
        f64::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        f64::cos(self)
    }
    #[inline]
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    #[inline]
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    #[inline]
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    #[inline]
    fn acos(self) -> Self {
        f64::acos(self)
    }
    #[inline]
    fn atanh(self) -> Self {
        f64::atanh(self)
    }
    #[inline]
    fn acosh(self) -> Self {
        acosh_stable(self)
    }
    #[inline]
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    #[inline]
    fn powi(self, k: i32) -> Self {
        f64::powi(self, k)
    }
}

/// A first-order dual number `re + eps·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Dual {
    pub re: f64,
    pub eps: f64,
}

impl Dual {
    pub const fn new(re: f64, eps: f64) -> Self {
        Dual { re, eps }
    }

    /// The independent variable: value `x`, unit derivative.
    pub const fn variable(x: f64) -> Self {
        Dual { re: x, eps: 1.0 }
    }

    pub const fn constant(x: f64) -> Self {
        Dual { re: x, eps: 0.0 }
    }

    /// Applies a scalar function given its value and derivative at `re`.
    #[inline]
    fn chain(self, f: f64, df: f64) -> Self {
        Dual {
            re: f,
            eps: df * self.eps,
        }
    }
}

impl From<f64> for Dual {
    fn from(x: f64) -> Self {
        Dual::constant(x)
    }
}

impl Add for Dual {
    type Output = Dual;
    #[inline]
    fn add(self, rhs: Dual) -> Dual {
        Dual::new(self.re + rhs.re, self.eps + rhs.eps)
    }
}

impl Sub for Dual {
    type Output = Dual;
    #[inline]
    fn sub(self, rhs: Dual) -> Dual {
        Dual::new(self.re - rhs.re, self.eps - rhs.eps)
    }
}

impl Mul for Dual {
    type Output = Dual;
    #[inline]
    fn mul(self, rhs: Dual) -> Dual {
        Dual::new(self.re * rhs.re, self.re * rhs.eps + self.eps * rhs.re)
    }
}

impl Div for Dual {
    type Output = Dual;
    #[inline]
    fn div(self, rhs: Dual) -> Dual {
        let q = self.re / rhs.re;
        Dual::new(q, (self.eps - q * rhs.eps) / rhs.re)
    }
}

impl Neg for Dual {
    type Output = Dual;
    #[inline]
    fn neg(self) -> Dual {
        Dual::new(-self.re, -self.eps)
    }
}

impl Add<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn add(self, rhs: f64) -> Dual {
        Dual::new(self.re + rhs, self.eps)
    }
}

impl Sub<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn sub(self, rhs: f64) -> Dual {
        Dual::new(self.re - rhs, self.eps)
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn mul(self, rhs: f64) -> Dual {
        Dual::new(self.re * rhs, self.eps * rhs)
    }
}

impl Div<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn div(self, rhs: f64) -> Dual {
        Dual::new(self.re / rhs, self.eps / rhs)
    }
}

impl Real for Dual {
    fn cst(x: f64) -> Self {
        Dual::constant(x)
    }
    fn value(self) -> f64 {
        self.re
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, 0.5 / s)
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    fn ln(self) -> Self {
        self.chain(self.re.ln(), 1.0 / self.re)
    }
    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }
    fn sinh(self) -> Self {
        self.chain(self.re.sinh(), self.re.cosh())
    }
    fn cosh(self) -> Self {
        self.chain(self.re.cosh(), self.re.sinh())
    }
    fn tanh(self) -> Self {
        let t = self.re.tanh();
        self.chain(t, 1.0 - t * t)
    }
    fn acos(self) -> Self {
        self.chain(self.re.acos(), -1.0 / (1.0 - self.re * self.re).sqrt())
    }
    fn atanh(self) -> Self {
        self.chain(self.re.atanh(), 1.0 / (1.0 - self.re * self.re))
    }
    fn acosh(self) -> Self {
        let x = self.re;
        self.chain(acosh_stable(x), 1.0 / ((x - 1.0) * (x + 1.0)).sqrt())
    }
    fn atan2(self, x: Self) -> Self {
        let r2 = self.re * self.re + x.re * x.re;
        Dual::new(
            self.re.atan2(x.re),
            (x.re * self.eps - self.re * x.eps) / r2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn central(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-6;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn zero_derivative_part_behaves_as_real() {
        let x = Dual::constant(0.7);
        let y = (x.sinh() * x.cos() + x.sqrt()) / x.tanh();
        let r = (0.7f64.sinh() * 0.7f64.cos() + 0.7f64.sqrt()) / 0.7f64.tanh();
        assert_eq!(y.re, r);
        assert_eq!(y.eps, 0.0);
    }

    #[test]
    fn elementary_derivatives_match_central_differences() {
        let x0 = 1.3;
        type Pair = (fn(Dual) -> Dual, fn(f64) -> f64);
        let cases: Vec<Pair> = vec![
            (|x| x.sqrt(), f64::sqrt),
            (|x| x.exp(), f64::exp),
            (|x| x.ln(), f64::ln),
            (|x| x.sin(), f64::sin),
            (|x| x.cos(), f64::cos),
            (|x| x.sinh(), f64::sinh),
            (|x| x.cosh(), f64::cosh),
            (|x| x.tanh(), f64::tanh),
            (|x| x.acosh(), acosh_stable),
            (|x| (x * 0.5).acos(), |x| (x * 0.5).acos()),
            (|x| (x * 0.5).atanh(), |x| (x * 0.5).atanh()),
            (|x| x.atan2(Dual::constant(0.4)), |x| x.atan2(0.4)),
            (|x| Dual::constant(0.4).atan2(x), |x| 0.4f64.atan2(x)),
            (|x| x.powi(-3), |x| x.powi(-3)),
        ];
        for (df, f) in cases {
            let d = df(Dual::variable(x0));
            assert_relative_eq!(d.re, f(x0), max_relative = 1e-15);
            assert_relative_eq!(d.eps, central(f, x0), max_relative = 1e-8);
        }
    }

    #[test]
    fn product_and_quotient_rules() {
        let x = Dual::variable(2.0);
        let y = x * x * 3.0 / (x + 1.0);
        // d/dx 3x²/(x+1) = 3x(x+2)/(x+1)²
        assert_relative_eq!(y.eps, 3.0 * 2.0 * 4.0 / 9.0, max_relative = 1e-15);
    }

    #[test]
    fn stable_acosh_near_one() {
        let x = 1.0 + 1e-12;
        // acosh(1 + e) ≈ sqrt(2e)(1 - e/12)
        let expected = (2e-12f64).sqrt();
        assert_relative_eq!(acosh_stable(x), expected, max_relative = 1e-4);
        assert_eq!(acosh_stable(1.0), 0.0);
        assert_relative_eq!(
            acosh_stable(4.0 / 3.0),
            (4.0f64 / 3.0).acosh(),
            max_relative = 1e-15
        );
    }
}
