//! Directed rounding for the four basic operations and sqrt.
//!
//! Each operation computes the round-to-nearest result and recovers the sign
//! of the rounding error exactly with an error-free transform (TwoSum for
//! addition, an FMA residual for product, quotient and square root). The
//! nearest result is stepped one ulp in the requested direction only when
//! the exact value lies on the other side, so the bounds are as tight as
//! true directed rounding.
//!
//! The residual is exact only while it is representable; below `TINY` the
//! result is widened unconditionally.

const TINY: f64 = 1e-280;

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
fn overflow_fix_down(r: f64, exact_finite: bool) -> f64 {
    if r == f64::INFINITY && exact_finite {
        f64::MAX
    } else {
        r
    }
}

#[inline]
fn overflow_fix_up(r: f64, exact_finite: bool) -> f64 {
    if r == f64::NEG_INFINITY && exact_finite {
        f64::MIN
    } else {
        r
    }
}

pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return overflow_fix_down(s, a.is_finite() && b.is_finite());
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return overflow_fix_up(s, a.is_finite() && b.is_finite());
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

/// Sign of `a*b - p` where `p` is the rounded product, or `None` when the
/// residual cannot be trusted.
#[inline]
fn mul_residual(a: f64, b: f64, p: f64) -> Option<f64> {
    if p.abs() < TINY {
        None
    } else {
        Some(a.mul_add(b, -p))
    }
}

pub fn mul_down(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return overflow_fix_down(p, a.is_finite() && b.is_finite());
    }
    match mul_residual(a, b, p) {
        Some(e) if e >= 0.0 => p,
        _ => p.next_down(),
    }
}

pub fn mul_up(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let p = a * b;
    if !p.is_finite() {
        return overflow_fix_up(p, a.is_finite() && b.is_finite());
    }
    match mul_residual(a, b, p) {
        Some(e) if e <= 0.0 => p,
        _ => p.next_up(),
    }
}

/// Sign of `a/b - q`, or `None` when it cannot be determined exactly.
#[inline]
fn div_error_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if q.abs() < TINY || b.abs() < TINY {
        return None;
    }
    let r = (-q).mul_add(b, a);
    Some(if b > 0.0 { r } else { -r })
}

pub fn div_down(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if b.is_infinite() || a.is_infinite() {
        return q;
    }
    if !q.is_finite() {
        return overflow_fix_down(q, true);
    }
    match div_error_sign(a, b, q) {
        Some(e) if e >= 0.0 => q,
        _ => q.next_down(),
    }
}

pub fn div_up(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    let q = a / b;
    if b.is_infinite() || a.is_infinite() {
        return q;
    }
    if !q.is_finite() {
        return overflow_fix_up(q, true);
    }
    match div_error_sign(a, b, q) {
        Some(e) if e <= 0.0 => q,
        _ => q.next_up(),
    }
}

pub fn sqrt_down(a: f64) -> f64 {
    let r = a.sqrt();
    if r == 0.0 || r.is_infinite() {
        return r;
    }
    if a < TINY {
        return r.next_down().max(0.0);
    }
    if (-r).mul_add(r, a) < 0.0 {
        r.next_down()
    } else {
        r
    }
}

pub fn sqrt_up(a: f64) -> f64 {
    let r = a.sqrt();
    if r.is_infinite() {
        return r;
    }
    if a == 0.0 {
        return 0.0;
    }
    if a < TINY {
        return r.next_up();
    }
    if (-r).mul_add(r, a) > 0.0 {
        r.next_up()
    } else {
        r
    }
}

/// Steps `n` ulps toward −∞ (finite values only).
pub fn widen_down(x: f64, n: u32) -> f64 {
    let mut y = x;
    for _ in 0..n {
        if !y.is_finite() {
            break;
        }
        y = y.next_down();
    }
    y
}

/// Steps `n` ulps toward +∞ (finite values only).
pub fn widen_up(x: f64, n: u32) -> f64 {
    let mut y = x;
    for _ in 0..n {
        if !y.is_finite() {
            break;
        }
        y = y.next_up();
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_operations_are_not_widened() {
        assert_eq!(add_down(1.0, 2.0), 3.0);
        assert_eq!(add_up(1.0, 2.0), 3.0);
        assert_eq!(mul_down(3.0, 0.5), 1.5);
        assert_eq!(div_up(1.0, 4.0), 0.25);
        assert_eq!(sqrt_down(9.0), 3.0);
        assert_eq!(sqrt_up(9.0), 3.0);
    }

    #[test]
    fn inexact_operations_bracket() {
        let lo = div_down(1.0, 3.0);
        let hi = div_up(1.0, 3.0);
        assert_eq!(hi, lo.next_up());
        assert!(lo * 3.0 <= 1.0);
        let s_lo = add_down(0.1, 0.2);
        let s_hi = add_up(0.1, 0.2);
        assert!(s_lo < s_hi);
        assert!(sqrt_down(2.0) < sqrt_up(2.0));
        assert!(sqrt_down(2.0) * sqrt_down(2.0) <= 2.0);
    }

    #[test]
    fn overflow_stays_finite_for_finite_operands() {
        assert_eq!(mul_down(f64::MAX, 2.0), f64::MAX);
        assert_eq!(mul_up(f64::MAX, 2.0), f64::INFINITY);
        assert_eq!(add_up(f64::MIN, f64::MIN), f64::MIN);
    }
}
