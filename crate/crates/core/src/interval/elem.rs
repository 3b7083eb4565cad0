//! Elementary functions on intervals.

use super::round::{sqrt_down, sqrt_up, widen_down, widen_up};
use super::{Interval, ELEM_ULPS};
use crate::error::{Error, Result};

#[inline]
fn down(x: f64) -> f64 {
    widen_down(x, ELEM_ULPS)
}

#[inline]
fn up(x: f64) -> f64 {
    widen_up(x, ELEM_ULPS)
}

/// Enclosure of a libm value `f(x)` at a single point.
fn point_enclosure(f: fn(f64) -> f64, x: f64) -> (f64, f64) {
    let y = f(x);
    (down(y), up(y))
}

/// Whether some multiple `j * base` with `j ≡ r (mod m)` may lie in `[lo, hi]`.
fn hits_multiple(lo: f64, hi: f64, base: Interval, m: i64, r: i64) -> bool {
    let b = base.lo();
    let j0 = (lo / b).floor() as i64 - 2;
    let j1 = (hi / b).ceil() as i64 + 2;
    (j0..=j1).any(|j| {
        if j.rem_euclid(m) != r {
            return false;
        }
        let p = base * (j as f64);
        p.hi() >= lo && p.lo() <= hi
    })
}

impl Interval {
    pub fn exp(self) -> Interval {
        let lo = if self.lo == 0.0 {
            1.0
        } else if self.lo == f64::NEG_INFINITY {
            0.0
        } else {
            down(self.lo.exp()).max(0.0)
        };
        let hi = if self.hi == 0.0 {
            1.0
        } else if self.hi == f64::INFINITY {
            f64::INFINITY
        } else {
            up(self.hi.exp())
        };
        Interval::raw(lo, hi)
    }

    pub fn ln(self) -> Result<Interval> {
        if self.lo <= 0.0 {
            return Err(Error::domain("ln", format!("argument {self} not > 0")));
        }
        let lo = if self.lo == 1.0 { 0.0 } else { down(self.lo.ln()) };
        let hi = if self.hi == 1.0 {
            0.0
        } else if self.hi == f64::INFINITY {
            f64::INFINITY
        } else {
            up(self.hi.ln())
        };
        Ok(Interval::raw(lo, hi))
    }

    pub fn sqrt(self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::domain("sqrt", format!("argument {self} not >= 0")));
        }
        Ok(Interval::raw(sqrt_down(self.lo), sqrt_up(self.hi)))
    }

    pub fn cos(self) -> Interval {
        if !self.is_bounded() || self.width() > 7.0 {
            return Interval::raw(-1.0, 1.0);
        }
        if self.lo == 0.0 && self.hi == 0.0 {
            return Interval::point(1.0);
        }
        let (a_lo, a_hi) = point_enclosure(f64::cos, self.lo);
        let (b_lo, b_hi) = point_enclosure(f64::cos, self.hi);
        let mut lo = a_lo.min(b_lo);
        let mut hi = a_hi.max(b_hi);
        let pi = Interval::pi();
        if hits_multiple(self.lo, self.hi, pi, 2, 0) {
            hi = 1.0;
        }
        if hits_multiple(self.lo, self.hi, pi, 2, 1) {
            lo = -1.0;
        }
        Interval::raw(lo.max(-1.0), hi.min(1.0))
    }

    pub fn sin(self) -> Interval {
        if !self.is_bounded() || self.width() > 7.0 {
            return Interval::raw(-1.0, 1.0);
        }
        if self.lo == 0.0 && self.hi == 0.0 {
            return Interval::point(0.0);
        }
        let (a_lo, a_hi) = point_enclosure(f64::sin, self.lo);
        let (b_lo, b_hi) = point_enclosure(f64::sin, self.hi);
        let mut lo = a_lo.min(b_lo);
        let mut hi = a_hi.max(b_hi);
        let half_pi = Interval::half_pi();
        if hits_multiple(self.lo, self.hi, half_pi, 4, 1) {
            hi = 1.0;
        }
        if hits_multiple(self.lo, self.hi, half_pi, 4, 3) {
            lo = -1.0;
        }
        Interval::raw(lo.max(-1.0), hi.min(1.0))
    }

    /// `tan` on a subset of `(-π/2, π/2)`.
    pub fn tan(self) -> Result<Interval> {
        let h = Interval::half_pi().lo();
        if !(self.lo > -h && self.hi < h) {
            return Err(Error::domain("tan", format!("argument {self} not inside (-pi/2, pi/2)")));
        }
        let lo = if self.lo == 0.0 { 0.0 } else { down(self.lo.tan()) };
        let hi = if self.hi == 0.0 { 0.0 } else { up(self.hi.tan()) };
        Ok(Interval::raw(lo, hi))
    }

    /// `arccos` on a subset of `[-1, 1]`; decreasing.
    pub fn acos(self) -> Result<Interval> {
        if self.lo < -1.0 || self.hi > 1.0 {
            return Err(Error::domain("acos", format!("argument {self} not inside [-1, 1]")));
        }
        let pi = Interval::pi();
        let lo = if self.hi == 1.0 { 0.0 } else { down(self.hi.acos()).max(0.0) };
        let hi = if self.lo == -1.0 {
            pi.hi()
        } else if self.lo == 1.0 {
            0.0
        } else {
            up(self.lo.acos()).min(pi.hi())
        };
        Ok(Interval::raw(lo, hi))
    }

    /// `arctan`; increasing.
    pub fn atan(self) -> Interval {
        let h = Interval::half_pi().hi();
        let lo = if self.lo == 0.0 { 0.0 } else { down(self.lo.atan()).max(-h) };
        let hi = if self.hi == 0.0 { 0.0 } else { up(self.hi.atan()).min(h) };
        Interval::raw(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn exact_special_values() {
        assert_eq!(Interval::point(0.0).cos(), Interval::point(1.0));
        assert_eq!(Interval::point(1.0).acos().unwrap(), Interval::point(0.0));
        assert_eq!(Interval::point(0.0).exp(), Interval::point(1.0));
        assert_eq!(Interval::point(1.0).ln().unwrap(), Interval::point(0.0));
    }

    #[test]
    fn trig_extrema_are_captured() {
        let c = iv(-0.1, 0.1).cos();
        assert_eq!(c.hi(), 1.0);
        let c = iv(3.0, 3.3).cos();
        assert_eq!(c.lo(), -1.0);
        let s = iv(1.5, 1.7).sin();
        assert_eq!(s.hi(), 1.0);
        let s = iv(4.6, 4.8).sin();
        assert_eq!(s.lo(), -1.0);
        let c = iv(1.0, 2.0).cos();
        assert!(c.lo() > -1.0 && c.hi() < 1.0);
        assert!(c.contains(1.0f64.cos()) && c.contains(2.0f64.cos()));
    }

    #[test]
    fn large_arguments_stay_enclosing() {
        let k = 3000.0;
        let x = k * std::f64::consts::PI;
        let c = iv(x - 1e-3, x + 1e-3).cos();
        assert_eq!(c.hi(), 1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(iv(0.0, 1.0).ln().is_err());
        assert!(iv(-2.0, 0.0).acos().is_err());
        assert!(iv(-1.0, 4.0).sqrt().is_err());
        assert!(iv(0.0, 1.6).tan().is_err());
    }

    #[test]
    fn acos_at_minus_one_contains_pi() {
        let a = Interval::point(-1.0).acos().unwrap();
        assert!(a.contains(std::f64::consts::PI));
    }
}
