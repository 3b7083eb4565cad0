//! Forward-mode automatic differentiation over intervals.
//!
//! A `Dual<N>` carries an enclosure of a value together with enclosures of
//! its `N` partial derivatives over the same input box. Where a derivative
//! does not exist or cannot be enclosed (e.g. `sqrt` at 0) the partials are
//! replaced by the entire real line, so the value part stays valid while the
//! derivative information is simply useless.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::Result;
use crate::interval::Interval;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<const N: usize> {
    pub v: Interval,
    pub d: [Interval; N],
}

pub type Dual1 = Dual<1>;

const ZERO: Interval = Interval::raw_const(0.0, 0.0);

impl<const N: usize> Dual<N> {
    pub fn constant(v: impl Into<Interval>) -> Self {
        Dual { v: v.into(), d: [ZERO; N] }
    }

    /// The `i`-th independent variable ranging over `v`.
    pub fn var(v: Interval, i: usize) -> Self {
        let mut d = [ZERO; N];
        d[i] = Interval::point(1.0);
        Dual { v, d }
    }

    /// Applies the chain rule for an outer function with value `v` and
    /// derivative enclosure `dv`.
    fn chain(self, v: Interval, dv: Interval) -> Self {
        let mut d = self.d;
        for di in d.iter_mut() {
            *di = *di * dv;
        }
        Dual { v, d }
    }

    fn chain_or_entire(self, v: Interval, dv: Result<Interval>) -> Self {
        self.chain(v, dv.unwrap_or(Interval::entire()))
    }

    pub fn sqr(self) -> Self {
        self.chain(self.v.sqr(), self.v * 2.0)
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e)
    }

    pub fn ln(self) -> Result<Self> {
        let l = self.v.ln()?;
        Ok(self.chain_or_entire(l, self.v.recip()))
    }

    pub fn sqrt(self) -> Result<Self> {
        let r = self.v.sqrt()?;
        Ok(self.chain_or_entire(r, (r * 2.0).recip()))
    }

    pub fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }

    pub fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin())
    }

    pub fn tan(self) -> Result<Self> {
        let t = self.v.tan()?;
        Ok(self.chain(t, t.sqr() + 1.0))
    }

    pub fn acos(self) -> Result<Self> {
        let a = self.v.acos()?;
        let dv = (1.0 - self.v.sqr()).max(Interval::point(0.0)).sqrt().and_then(|s| s.recip()).map(|r| -r);
        Ok(self.chain_or_entire(a, dv))
    }

    pub fn atan(self) -> Self {
        let dv = (self.v.sqr() + 1.0).recip().unwrap_or(Interval::entire());
        self.chain(self.v.atan(), dv)
    }

    pub fn abs(self) -> Self {
        if self.v.lo() >= 0.0 {
            self
        } else if self.v.hi() <= 0.0 {
            -self
        } else {
            let mut d = self.d;
            for di in d.iter_mut() {
                *di = di.hull(&-*di);
            }
            Dual { v: self.v.abs(), d }
        }
    }

    pub fn recip(self) -> Result<Self> {
        let r = self.v.recip()?;
        Ok(self.chain(r, -r.sqr()))
    }

    pub fn powi(self, n: i32) -> Result<Self> {
        let v = self.v.powi(n)?;
        let dv = if n == 0 { Ok(ZERO) } else { self.v.powi(n - 1).map(|x| x * f64::from(n)) };
        Ok(self.chain_or_entire(v, dv))
    }

    /// `x^s` for a constant exponent `s`.
    pub fn pow(self, s: Interval) -> Result<Self> {
        let v = self.v.pow(s)?;
        let dv = self.v.pow(s - 1.0).map(|x| x * s);
        Ok(self.chain_or_entire(v, dv))
    }

    /// `x^s` with both base and exponent varying; requires `x > 0`.
    pub fn powd(self, s: Dual<N>) -> Result<Self> {
        Ok((s * self.ln()?).exp())
    }

    pub fn value(&self) -> Interval {
        self.v
    }
}

impl<const N: usize> From<Interval> for Dual<N> {
    fn from(v: Interval) -> Self {
        Dual::constant(v)
    }
}

impl<const N: usize> From<f64> for Dual<N> {
    fn from(v: f64) -> Self {
        Dual::constant(Interval::point(v))
    }
}

impl<const N: usize> Add for Dual<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a = *a + b;
        }
        Dual { v: self.v + rhs.v, d }
    }
}

impl<const N: usize> Sub for Dual<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a = *a - b;
        }
        Dual { v: self.v - rhs.v, d }
    }
}

impl<const N: usize> Neg for Dual<N> {
    type Output = Self;
    fn neg(self) -> Self {
        let mut d = self.d;
        for a in d.iter_mut() {
            *a = -*a;
        }
        Dual { v: -self.v, d }
    }
}

impl<const N: usize> Mul for Dual<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut d = self.d;
        for (a, b) in d.iter_mut().zip(rhs.d) {
            *a = *a * rhs.v + self.v * b;
        }
        Dual { v: self.v * rhs.v, d }
    }
}

impl<const N: usize> Div for Dual<N> {
    type Output = Result<Self>;
    fn div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.recip()?)
    }
}

macro_rules! mixed_ops {
    ($t:ty) => {
        impl<const N: usize> Add<$t> for Dual<N> {
            type Output = Self;
            fn add(self, rhs: $t) -> Self {
                Dual { v: self.v + rhs, d: self.d }
            }
        }
        impl<const N: usize> Add<Dual<N>> for $t {
            type Output = Dual<N>;
            fn add(self, rhs: Dual<N>) -> Dual<N> {
                rhs + self
            }
        }
        impl<const N: usize> Sub<$t> for Dual<N> {
            type Output = Self;
            fn sub(self, rhs: $t) -> Self {
                Dual { v: self.v - rhs, d: self.d }
            }
        }
        impl<const N: usize> Sub<Dual<N>> for $t {
            type Output = Dual<N>;
            fn sub(self, rhs: Dual<N>) -> Dual<N> {
                -rhs + self
            }
        }
        impl<const N: usize> Mul<$t> for Dual<N> {
            type Output = Self;
            fn mul(self, rhs: $t) -> Self {
                let mut d = self.d;
                for a in d.iter_mut() {
                    *a = *a * rhs;
                }
                Dual { v: self.v * rhs, d }
            }
        }
        impl<const N: usize> Mul<Dual<N>> for $t {
            type Output = Dual<N>;
            fn mul(self, rhs: Dual<N>) -> Dual<N> {
                rhs * self
            }
        }
        impl<const N: usize> Div<$t> for Dual<N> {
            type Output = Result<Self>;
            fn div(self, rhs: $t) -> Result<Self> {
                let r = Interval::from(rhs).recip()?;
                Ok(self * r)
            }
        }
        impl<const N: usize> Div<Dual<N>> for $t {
            type Output = Result<Dual<N>>;
            fn div(self, rhs: Dual<N>) -> Result<Dual<N>> {
                Ok(rhs.recip()? * self)
            }
        }
    };
}
mixed_ops!(Interval);
mixed_ops!(f64);
