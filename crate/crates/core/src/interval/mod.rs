//! Closed real intervals with outward-rounded endpoints.
//!
//! Basic arithmetic uses exact directed rounding (see [`round`]). Elementary
//! functions take the platform libm result and step it outward by
//! [`ELEM_ULPS`] ulps; glibc documents errors below 1 ulp for every function
//! used here, and the point-containment tests compare against a 256-bit
//! reference.

mod elem;
pub mod round;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use round::*;

/// Outward widening applied to libm results, in ulps.
pub const ELEM_ULPS: u32 = 2;

/// A closed interval `[lo, hi]` of the extended reals.
///
/// `lo` may be `-inf` and `hi` may be `+inf`; `lo <= hi` always holds and
/// empty intervals cannot be constructed.
#[derive(Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Builds `[lo, hi]`, rejecting NaN, reversed bounds and the degenerate
    /// points at infinity.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    ///
    /// # Panics
    /// If `x` is not finite.
    pub fn point(x: f64) -> Self {
        assert!(x.is_finite(), "Interval::point needs a finite value, got {x}");
        Interval { lo: x, hi: x }
    }

    pub const fn entire() -> Self {
        Interval { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub(crate) const fn raw_const(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    /// Internal constructor; callers guarantee the invariants.
    #[inline]
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "raw interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Hull of two possibly unordered values.
    pub fn hull_of(a: f64, b: f64) -> Result<Self> {
        Interval::new(a.min(b), a.max(b))
    }

    /// Rigorous enclosure of the rational `num/den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("ratio", "zero denominator"));
        }
        let n = Interval::exact_int(num);
        let d = Interval::exact_int(den);
        n / d
    }

    fn exact_int(v: i64) -> Interval {
        let f = v as f64;
        if f as i64 == v && f.abs() < 9.007_199_254_740_992e15 {
            Interval::point(f)
        } else {
            Interval::raw(f.next_down(), f.next_up())
        }
    }

    pub fn pi() -> Self {
        Interval::raw(std::f64::consts::PI, std::f64::consts::PI.next_up())
    }

    pub fn half_pi() -> Self {
        Interval::raw(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2.next_up())
    }

    /// Euler's constant 0.5772156649...
    pub fn euler_gamma() -> Self {
        #[allow(clippy::excessive_precision)]
        let g = 0.577_215_664_901_532_860_6_f64;
        Interval::raw(g.next_down(), g.next_up())
    }

    pub fn sqrt2() -> Self {
        Interval::raw(sqrt_down(2.0), sqrt_up(2.0))
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// A point inside the interval (the midpoint when bounded).
    pub fn mid(&self) -> f64 {
        match (self.lo.is_finite(), self.hi.is_finite()) {
            (true, true) => {
                let m = 0.5 * self.lo + 0.5 * self.hi;
                m.clamp(self.lo, self.hi)
            }
            (false, true) => {
                if self.hi > 0.0 {
                    0.0
                } else {
                    (2.0 * self.hi - 1.0).max(f64::MIN)
                }
            }
            (true, false) => {
                if self.lo < 0.0 {
                    0.0
                } else {
                    (2.0 * self.lo + 1.0).min(f64::MAX)
                }
            }
            (false, false) => 0.0,
        }
    }

    /// Upper bound on `hi - lo`.
    pub fn width(&self) -> f64 {
        sub_up(self.hi, self.lo)
    }

    /// Upper bound on `max(|lo|, |hi|)`.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on `min |x|` over the interval.
    pub fn mig(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Intersection when nonempty, otherwise `self`.
    ///
    /// Used to combine two valid enclosures of the same quantity, which can
    /// only be disjoint through a bug; the fallback keeps the result valid.
    pub fn tighten(&self, other: &Interval) -> Interval {
        self.intersect(other).unwrap_or(*self)
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (Interval::raw(self.lo, m), Interval::raw(m, self.hi))
    }

    /// Splits a bounded interval into `n` consecutive pieces sharing endpoints.
    pub fn split(&self, n: usize) -> Vec<Interval> {
        assert!(n >= 1 && self.is_bounded());
        let mut edges = Vec::with_capacity(n + 1);
        edges.push(self.lo);
        for i in 1..n {
            let t = i as f64 / n as f64;
            let e = self.lo + (self.hi - self.lo) * t;
            edges.push(e.clamp(*edges.last().unwrap(), self.hi));
        }
        edges.push(self.hi);
        edges.windows(2).map(|w| Interval::raw(w[0], w[1])).collect()
    }

    pub fn sqr(self) -> Interval {
        let a = self.abs();
        Interval::raw(mul_down(a.lo, a.lo), mul_up(a.hi, a.hi))
    }

    /// `1/x`; fails when the interval contains zero.
    pub fn recip(self) -> Result<Interval> {
        Interval::point(1.0) / self
    }

    /// Integer power with exact sign handling.
    pub fn powi(self, n: i32) -> Result<Interval> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        if n == 0 {
            return Ok(Interval::point(1.0));
        }
        let n = n as u32;
        let up = |x: f64| pow_nonneg(x, n, mul_up);
        let down = |x: f64| pow_nonneg(x, n, mul_down);
        if n % 2 == 0 {
            let a = self.abs();
            Ok(Interval::raw(down(a.lo), up(a.hi)))
        } else {
            let lo = if self.lo >= 0.0 { down(self.lo) } else { -up(-self.lo) };
            let hi = if self.hi >= 0.0 { up(self.hi) } else { -down(-self.hi) };
            Ok(Interval::raw(lo, hi))
        }
    }

    /// `x^s` for `x ≥ 0`, with `0^σ = 0` for `σ > 0`.
    pub fn pow(self, s: Interval) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::domain("pow", format!("negative base {self}")));
        }
        if s.is_point() && s.lo.fract() == 0.0 && s.lo.abs() <= 64.0 {
            return self.powi(s.lo as i32);
        }
        if self.lo > 0.0 {
            return Ok((s * self.ln()?).exp());
        }
        if s.lo <= 0.0 {
            return Err(Error::domain("pow", format!("base {self} touches 0 with exponent {s} not > 0")));
        }
        if self.hi == 0.0 {
            return Ok(Interval::point(0.0));
        }
        let top = Interval::point(self.hi).pow(s)?;
        Ok(Interval::raw(0.0, top.hi))
    }

    pub fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            Interval::raw(-self.hi, -self.lo)
        } else {
            Interval::raw(0.0, (-self.lo).max(self.hi))
        }
    }

    pub fn min(self, other: Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.min(other.hi))
    }

    pub fn max(self, other: Interval) -> Interval {
        Interval::raw(self.lo.max(other.lo), self.hi.max(other.hi))
    }

    /// Certainly `> 0`.
    pub fn is_pos(&self) -> bool {
        self.lo > 0.0
    }

    /// Certainly `< 0`.
    pub fn is_neg(&self) -> bool {
        self.hi < 0.0
    }

    /// Certainly `>= other` pointwise for every pair of members.
    pub fn certainly_ge(&self, other: &Interval) -> bool {
        self.lo >= other.hi
    }

    /// Certainly `< other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }
}

fn pow_nonneg(x: f64, n: u32, mul: fn(f64, f64) -> f64) -> f64 {
    let mut base = x;
    let mut e = n;
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(base, base);
        }
    }
    acc
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = f.precision() {
            write!(f, "[{:.*e}, {:.*e}]", p, self.lo, p, self.hi)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Interval::point(x)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, rhs: Interval) -> Interval {
        Interval::raw(add_down(self.lo, rhs.lo), add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, rhs: Interval) -> Interval {
        Interval::raw(sub_down(self.lo, rhs.hi), sub_up(self.hi, rhs.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, rhs: Interval) -> Interval {
        let (a, b) = (self, rhs);
        if a.lo >= 0.0 && b.lo >= 0.0 {
            return Interval::raw(mul_down(a.lo, b.lo), mul_up(a.hi, b.hi));
        }
        let cands = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in cands {
            lo = lo.min(mul_down(x, y));
            hi = hi.max(mul_up(x, y));
        }
        Interval::raw(lo, hi)
    }
}

impl Div for Interval {
    type Output = Result<Interval>;
    fn div(self, rhs: Interval) -> Result<Interval> {
        if rhs.contains(0.0) {
            return Err(Error::domain("div", format!("divisor {rhs} contains 0")));
        }
        let (a, b) = (self, rhs);
        let cands = [(a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi)];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (x, y) in cands {
            if x.is_infinite() && y.is_infinite() {
                continue;
            }
            lo = lo.min(div_down(x, y));
            hi = hi.max(div_up(x, y));
        }
        if a.lo.is_infinite() && a.hi.is_infinite() {
            return Ok(Interval::entire());
        }
        Interval::new(lo, hi)
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<f64> for Interval {
            type Output = Interval;
            fn $m(self, rhs: f64) -> Interval { $tr::$m(self, Interval::point(rhs)) }
        }
        impl $tr<Interval> for f64 {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { $tr::$m(Interval::point(self), rhs) }
        }
    )*};
}
scalar_ops!(Add add, Sub sub, Mul mul);

impl Div<f64> for Interval {
    type Output = Result<Interval>;
    fn div(self, rhs: f64) -> Result<Interval> {
        self / Interval::point(rhs)
    }
}

impl Div<Interval> for f64 {
    type Output = Result<Interval>;
    fn div(self, rhs: Interval) -> Result<Interval> {
        Interval::point(self) / rhs
    }
}

impl std::iter::Sum for Interval {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Interval {
        iter.fold(Interval::point(0.0), |a, b| a + b)
    }
}
