//! Cancellation-free forms of the expressions that vanish to high order at
//! the origin, evaluated on [`Dual`] numbers.
//!
//! Each function combines a truncated power series with a rigorous bound on
//! the omitted terms (and their derivative) and, away from the origin, the
//! direct elementary-function expression; the two enclosures are
//! intersected.

use std::sync::OnceLock;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::specfun::{bernoulli_abs, neg_ln_cos_coefficient, rational_enclosure, NEG_LN_COS_TERMS};

/// Below this the direct expressions lose too much to cancellation.
const DIRECT_FROM: f64 = 0.3;

/// Componentwise intersection of two enclosures of the same function.
pub fn meet<const N: usize>(a: Dual<N>, b: Dual<N>) -> Dual<N> {
    let mut d = a.d;
    for (x, y) in d.iter_mut().zip(b.d) {
        *x = x.tighten(&y);
    }
    Dual { v: a.v.tighten(&b.v), d }
}

/// `Σ_j a_j t^{2j}` where the omitted terms satisfy
/// `|a_j| <= c · rho2^j` for `j >= coeffs.len()` and all share the sign of
/// `sign`.
fn even_series<const N: usize>(t: Dual<N>, coeffs: &[Interval], c: f64, rho2: f64, sign: f64) -> Result<Dual<N>> {
    let tm = t.v.mag();
    let r = Interval::point(rho2) * Interval::point(tm).sqr();
    if r.hi() >= 1.0 {
        return Err(Error::domain("even_series", format!("t = {} outside the disc", t.v)));
    }
    let u = t.sqr();
    let mut acc = Dual::constant(*coeffs.last().unwrap());
    for a in coeffs.iter().rev().skip(1) {
        acc = acc * u + *a;
    }
    let k = coeffs.len() as i32 - 1;
    let one_minus = 1.0 - r;
    let tail_v = (Interval::point(c) * r.powi(k + 1)? / one_minus)?.hi();
    let kf = f64::from(k);
    let tail_d = (Interval::point(2.0 * c * rho2) * Interval::point(tm) * r.powi(k)? * ((kf + 1.0) - r * kf)
        / one_minus.sqr())?
    .hi();
    let (v_rng, d_rng) = if sign > 0.0 {
        (Interval::new(0.0, tail_v)?, Interval::new(0.0, tail_d)?)
    } else {
        (Interval::new(-tail_v, 0.0)?, Interval::new(-tail_d, 0.0)?)
    };
    // For t < 0 the derivative of an even function flips sign.
    let d_rng = if t.v.lo() < 0.0 { d_rng.hull(&-d_rng) } else { d_rng };
    let mut d = acc.d;
    for (x, td) in d.iter_mut().zip(t.d) {
        *x = *x + d_rng * td;
    }
    Ok(Dual { v: acc.v + v_rng, d })
}

fn ratio_coeffs() -> &'static [Interval] {
    static C: OnceLock<Vec<Interval>> = OnceLock::new();
    C.get_or_init(|| (1..=NEG_LN_COS_TERMS).map(|k| rational_enclosure(&neg_ln_cos_coefficient(k).unwrap())).collect())
}

fn four_over_pi_sq() -> Interval {
    (4.0 / Interval::pi().sqr()).unwrap()
}

/// `L(t) = -ln(cos t) / t²` for `|t| < π/2`, with `L(0) = 1/2`.
///
/// Series: `L = Σ_{k>=1} c_k t^{2k-2}` with
/// `c_k = (4^k - 1) ζ(2k) / (k π^{2k}) <= ζ(2k) (4/π²)^k / k`.
pub fn neg_ln_cos_ratio<const N: usize>(t: Dual<N>) -> Result<Dual<N>> {
    let k = NEG_LN_COS_TERMS as f64;
    let rho2 = four_over_pi_sq().hi();
    // ζ(2k) <= 1 + 2^{1-2k} for the omitted k > NEG_LN_COS_TERMS.
    let c = (Interval::point(1.0 + 1e-12) * four_over_pi_sq() / (k + 1.0))?.hi();
    let series = even_series(t, ratio_coeffs(), c, rho2, 1.0);
    if t.v.lo() < DIRECT_FROM {
        return series;
    }
    let direct = (-t.cos().ln()? / t.sqr())?;
    Ok(match series {
        Ok(s) => meet(s, direct),
        Err(_) => direct,
    })
}

/// `(L(t) - 1/2) / t² = Σ_{k>=2} c_k t^{2k-4}`, equal to `1/12` at 0.
pub fn neg_ln_cos_ratio_remainder<const N: usize>(t: Dual<N>) -> Result<Dual<N>> {
    let k = NEG_LN_COS_TERMS as f64;
    let rho2 = four_over_pi_sq().hi();
    let c = (Interval::point(1.0 + 1e-12) * four_over_pi_sq().sqr() / (k + 1.0))?.hi();
    let series = even_series(t, &ratio_coeffs()[1..], c, rho2, 1.0);
    if t.v.lo() < DIRECT_FROM {
        return series;
    }
    let direct = ((neg_ln_cos_ratio(t)? - 0.5) / t.sqr())?;
    Ok(match series {
        Ok(s) => meet(s, direct),
        Err(_) => direct,
    })
}

fn cot_coeffs() -> &'static [Interval] {
    static C: OnceLock<Vec<Interval>> = OnceLock::new();
    C.get_or_init(|| {
        let mut v = vec![Interval::point(1.0)];
        let mut fact = num_bigint::BigInt::from(1);
        let mut pow4 = num_bigint::BigInt::from(1);
        for j in 1..=NEG_LN_COS_TERMS {
            let n = 2 * j as u32;
            fact = fact * num_bigint::BigInt::from(n - 1) * num_bigint::BigInt::from(n);
            pow4 = pow4 * 4;
            let b = bernoulli_abs(j).unwrap() * num_rational::BigRational::new(pow4.clone(), fact.clone());
            v.push(-rational_enclosure(&b));
        }
        v
    })
}

/// `t cot t` for `|t| < π`, with value 1 at 0.
///
/// Series: `1 - Σ_{j>=1} b_j t^{2j}`, `b_j = 4^j |B_{2j}| / (2j)! = 2ζ(2j)/π^{2j}`.
pub fn t_cot_t<const N: usize>(t: Dual<N>) -> Result<Dual<N>> {
    let inv_pi2 = Interval::pi().sqr().recip()?;
    let series = even_series(t, cot_coeffs(), 2.0 + 1e-11, inv_pi2.hi(), -1.0);
    if t.v.lo() < DIRECT_FROM {
        return series;
    }
    let direct = ((t * t.cos()) / t.sin())?;
    Ok(match series {
        Ok(s) => meet(s, direct),
        Err(_) => direct,
    })
}

/// `Σ_k a_k x^k + [-e, e] + x.d · [-ed, ed]` for small `|x|`.
fn power_series<const N: usize>(x: Dual<N>, coeffs: &[Interval], e: f64, ed: f64) -> Result<Dual<N>> {
    let mut acc = Dual::constant(*coeffs.last().unwrap());
    for a in coeffs.iter().rev().skip(1) {
        acc = acc * x + *a;
    }
    let mut d = acc.d;
    let er = Interval::new(-ed, ed)?;
    for (y, xd) in d.iter_mut().zip(x.d) {
        *y = *y + er * xd;
    }
    Ok(Dual { v: acc.v + Interval::new(-e, e)?, d })
}

/// `Σ_{k<n} (-x)^k / (k + shift)!` plus bounds on the omitted terms for
/// `|x| <= 1/2`: the tail alternates with decreasing terms, so it is below
/// the first omitted term, and its derivative below twice the derivative of
/// that term.
fn alternating<const N: usize>(x: Dual<N>, shift: i64, n: usize) -> Result<Dual<N>> {
    let xm = x.v.mag();
    if xm > 0.5 {
        return Err(Error::domain("alternating", format!("x = {} not small", x.v)));
    }
    let mut coeffs = Vec::with_capacity(n);
    let mut f: i64 = (1..=shift).product();
    for k in 0..n as i64 {
        let c = Interval::ratio(1, f)?;
        coeffs.push(if k % 2 == 0 { c } else { -c });
        f *= k + shift + 1;
    }
    let first_omitted = (f as f64) * (1.0 - 1e-15);
    let e = xm.powi(n as i32) / first_omitted;
    let ed = 2.0 * (n as f64) * xm.powi(n as i32 - 1) / first_omitted;
    power_series(x, &coeffs, e * (1.0 + 1e-12), ed * (1.0 + 1e-12))
}

/// `(1 - e^{-x}) / x` for `x >= 0`, equal to 1 at 0.
pub fn one_minus_exp_neg_over<const N: usize>(x: Dual<N>) -> Result<Dual<N>> {
    if x.v.lo() < 0.0 {
        return Err(Error::domain("one_minus_exp_neg_over", format!("x = {} < 0", x.v)));
    }
    let series = if x.v.hi() <= 0.5 { Some(alternating(x, 1, 18)?) } else { None };
    if x.v.lo() < 0.25 {
        return series.ok_or_else(|| Error::domain("one_minus_exp_neg_over", "wide argument"));
    }
    let direct = ((1.0 - (-x).exp()) / x)?;
    Ok(series.map_or(direct, |s| meet(s, direct)))
}

/// `(e^{-x} - 1 + x) / x²` for `x >= 0`, equal to 1/2 at 0.
pub fn exp_second_remainder<const N: usize>(x: Dual<N>) -> Result<Dual<N>> {
    if x.v.lo() < 0.0 {
        return Err(Error::domain("exp_second_remainder", format!("x = {} < 0", x.v)));
    }
    let series = if x.v.hi() <= 0.5 { Some(alternating(x, 2, 18)?) } else { None };
    if x.v.lo() < 0.25 {
        return series.ok_or_else(|| Error::domain("exp_second_remainder", "wide argument"));
    }
    let direct = (((-x).exp() - 1.0 + x) / x.sqr())?;
    Ok(series.map_or(direct, |s| meet(s, direct)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(x: f64) -> Dual<1> {
        Dual::var(Interval::point(x), 0)
    }

    #[test]
    fn ratio_matches_direct_values() {
        for &t in &[1e-8, 0.1, 0.5, 1.0, 1.4, 1.5] {
            let l = neg_ln_cos_ratio(d(t)).unwrap();
            let want = if t < 1e-4 { 0.5 } else { -(t.cos().ln()) / (t * t) };
            assert!((l.v.mid() - want).abs() < 1e-9 * want.max(1.0), "t={t} {:?}", l.v);
            assert!(l.v.width() < 1e-6, "t={t} {:?}", l.v);
        }
        let l0 = neg_ln_cos_ratio(d(0.0)).unwrap();
        assert!(l0.v.contains(0.5) && l0.d[0].contains(0.0));
    }

    #[test]
    fn ratio_derivative() {
        let t = 0.2;
        let h = 1e-6;
        let f = |x: f64| neg_ln_cos_ratio(d(x)).unwrap().v.mid();
        let fd = (f(t + h) - f(t - h)) / (2.0 * h);
        assert!(
            neg_ln_cos_ratio(d(t)).unwrap().d[0].contains(fd)
                || (neg_ln_cos_ratio(d(t)).unwrap().d[0].mid() - fd).abs() < 1e-7
        );
    }

    #[test]
    fn ratio_remainder() {
        for &t in &[0.0, 0.01, 0.29, 0.31, 0.8, 1.5] {
            let r = neg_ln_cos_ratio_remainder(d(t)).unwrap();
            let want = if t < 0.05 { 1.0 / 12.0 + t * t / 45.0 } else { (-(t.cos().ln()) / (t * t) - 0.5) / (t * t) };
            assert!((r.v.mid() - want).abs() < 1e-7, "t={t} {:?} {want}", r.v);
        }
    }

    #[test]
    fn cot_series() {
        for &t in &[0.0, 1e-3, 0.3, 0.9, 1.2, 1.5] {
            let c = t_cot_t(d(t)).unwrap();
            let want = if t == 0.0 { 1.0 } else { t / t.tan() };
            assert!((c.v.mid() - want).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn exp_remainders() {
        for &x in &[0.0, 1e-9, 0.1, 0.3, 0.49, 2.0] {
            let a = one_minus_exp_neg_over(d(x)).unwrap();
            let b = exp_second_remainder(d(x)).unwrap();
            let wa = if x == 0.0 { 1.0 } else { -(-x).exp_m1() / x };
            let wb = if x < 1e-6 { 0.5 - x / 6.0 } else { ((-x).exp_m1() + x) / (x * x) };
            assert!((a.v.mid() - wa).abs() < 1e-12, "x={x}");
            assert!((b.v.mid() - wb).abs() < 1e-9, "x={x} {:?} {wb}", b.v);
        }
    }
}
