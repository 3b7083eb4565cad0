//! Certified enclosures of the special functions used by the verifier:
//! the power series of `-ln cos`, the exponential, sine and cosine
//! integrals, ζ partial sums and the Khintchine constants `A_p`, `B_p`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Truncation policy for the power series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesPolicy {
    pub max_terms: usize,
    /// Multiplier applied to every tail bound.
    pub tail_safety: f64,
}

impl SeriesPolicy {
    pub fn new(max_terms: usize, tail_safety: f64) -> Result<Self> {
        if max_terms < 8 {
            return Err(Error::InvalidArgument(format!("max_terms {max_terms} < 8")));
        }
        if !(tail_safety >= 1.0) {
            return Err(Error::InvalidArgument(format!("tail_safety {tail_safety} < 1")));
        }
        Ok(SeriesPolicy { max_terms, tail_safety })
    }
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy { max_terms: 200, tail_safety: 1.0 }
    }
}

/// Enclosure of an exact rational.
pub fn rational_enclosure(r: &BigRational) -> Interval {
    let f = r.to_f64().unwrap_or(f64::NAN);
    if !f.is_finite() {
        return if r.is_positive() {
            Interval::new(f64::MAX, f64::INFINITY).unwrap()
        } else {
            Interval::new(f64::NEG_INFINITY, f64::MIN).unwrap()
        };
    }
    match BigRational::from_float(f) {
        Some(q) if q == *r => Interval::point(f),
        Some(q) if q < *r => Interval::new(f, f.next_up()).unwrap(),
        _ => Interval::new(f.next_down(), f).unwrap(),
    }
}

/// `|B_{2k}|` for `k = 1..=20` as (numerator, denominator).
const BERNOULLI_ABS: [(u128, u128); 20] = [
    (1, 6),
    (1, 30),
    (1, 42),
    (1, 30),
    (5, 66),
    (691, 2730),
    (7, 6),
    (3617, 510),
    (43867, 798),
    (174611, 330),
    (854513, 138),
    (236364091, 2730),
    (8553103, 6),
    (23749461029, 870),
    (8615841276005, 14322),
    (7709321041217, 510),
    (2577687858367, 6),
    (26315271553053477373, 1919190),
    (2929993913841559, 6),
    (261082718496449122051, 13530),
];

/// Number of `-ln cos` coefficients available from the Bernoulli table.
pub const NEG_LN_COS_TERMS: usize = BERNOULLI_ABS.len();

/// `|B_{2k}|` as an exact rational, `1 <= k <= 20`.
pub fn bernoulli_abs(k: usize) -> Option<BigRational> {
    let (n, d) = *BERNOULLI_ABS.get(k.checked_sub(1)?)?;
    Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact coefficient `c_k` of `t^{2k}` in `-ln cos t = Σ c_k t^{2k}`:
/// `c_k = 2^{2k} (2^{2k} - 1) |B_{2k}| / (2k (2k)!)`.
pub fn neg_ln_cos_coefficient(k: usize) -> Option<BigRational> {
    let b = bernoulli_abs(k)?;
    let two_k = 2 * k as u32;
    let p = BigInt::one() << two_k;
    let num = &p * (&p - BigInt::one());
    let den = BigInt::from(two_k) * factorial(two_k);
    Some(b * BigRational::new(num, den))
}

fn neg_ln_cos_coefficients() -> &'static [Interval] {
    static C: OnceLock<Vec<Interval>> = OnceLock::new();
    C.get_or_init(|| (1..=NEG_LN_COS_TERMS).map(|k| rational_enclosure(&neg_ln_cos_coefficient(k).unwrap())).collect())
}

fn check_neg_ln_cos_domain(op: &'static str, t: Interval) -> Result<()> {
    if t.lo() < 0.0 || t.hi() > 1.55 {
        return Err(Error::domain(op, format!("t = {t} not inside [0, 1.55]")));
    }
    Ok(())
}

/// The partial sum `Σ_{k<=K} c_k t^{2k}` of the `-ln cos` series.
///
/// All coefficients are positive, so this is a lower bound for `-ln cos t`.
/// Only the first [`NEG_LN_COS_TERMS`] coefficients are tabulated; larger
/// `K` is clamped to that.
pub fn neg_ln_cos_lower(t: Interval, k: usize) -> Result<Interval> {
    check_neg_ln_cos_domain("neg_ln_cos_lower", t)?;
    if k == 0 {
        return Err(Error::InvalidArgument("K must be >= 1".into()));
    }
    let k = k.min(NEG_LN_COS_TERMS);
    let u = t.sqr();
    let c = neg_ln_cos_coefficients();
    let mut acc = Interval::point(0.0);
    for ck in c[..k].iter().rev() {
        acc = acc * u + *ck;
    }
    Ok(acc * u)
}

/// Two-sided enclosure of `-ln cos t` on `[0, 1.55]`.
pub fn neg_ln_cos(t: Interval) -> Result<Interval> {
    check_neg_ln_cos_domain("neg_ln_cos", t)?;
    let direct = -t.cos().ln()?;
    let lower = neg_ln_cos_lower(t, NEG_LN_COS_TERMS)?;
    Ok(Interval::new(direct.lo().max(lower.lo()), direct.hi().max(lower.lo())).unwrap())
}

/// The chain of upper bounds for `cos t`:
/// `exp(-t²/2) >= exp(-t²/2 - t⁴/12) >= exp(-t²/2 - t⁴/12 - t⁶/45) >= cos t`.
pub fn cos_upper_bounds(t: Interval) -> Result<[Interval; 3]> {
    if t.lo() < 0.0 || t.hi() >= Interval::half_pi().lo() {
        return Err(Error::domain("cos_upper_bounds", format!("t = {t} not inside [0, pi/2)")));
    }
    let u = t.sqr();
    let c = neg_ln_cos_coefficients();
    let s1 = c[0] * u;
    let s2 = (c[1] * u + c[0]) * u;
    let s3 = ((c[2] * u + c[1]) * u + c[0]) * u;
    Ok([(-s1).exp(), (-s2).exp(), (-s3).exp()])
}

/// Sums a power series given by its first term and a term ratio.
///
/// `ratio(k)` must enclose `term_{k+1} / term_k` and its magnitude must be
/// nonincreasing in `k`. Once `|ratio| <= 1/2` the remaining tail is bounded
/// by twice the first omitted term.
fn sum_series(
    op: &'static str,
    first: Interval,
    ratio: impl Fn(usize) -> Interval,
    policy: &SeriesPolicy,
) -> Result<Interval> {
    let mut sum = Interval::point(0.0);
    let mut term = first;
    for k in 1..=policy.max_terms {
        sum = sum + term;
        let r = ratio(k);
        let next = term * r;
        if r.mag() <= 0.5 {
            let bound = next.mag() * 2.0 * policy.tail_safety;
            let small = bound <= 1e-17 * sum.mig().max(1e-300) || bound < 1e-300;
            if small || k == policy.max_terms {
                let tail = Interval::new(-bound, bound).unwrap();
                return Ok(sum + tail);
            }
        }
        term = next;
    }
    Err(Error::NoConvergence { op, terms: policy.max_terms })
}

/// Enclosure of `E1(y)` from `½e^{-y}ln(1+2/y) < E1(y) < e^{-y}ln(1+1/y)`.
fn e1_bounds(y: Interval) -> Result<Interval> {
    let e = (-y).exp();
    let lower = e * (2.0 / y)?.ln_1p()? * 0.5;
    let upper = e * (1.0 / y)?.ln_1p()?;
    Ok(Interval::new(lower.lo(), upper.hi()).unwrap())
}

impl Interval {
    /// `ln(1 + x)` for `x > -1`.
    fn ln_1p(self) -> Result<Interval> {
        (self + 1.0).ln()
    }
}

fn ei_neg_point(x: f64, policy: &SeriesPolicy) -> Result<Interval> {
    let xi = Interval::point(x);
    let series = sum_series(
        "ei_neg",
        xi,
        |k| {
            let k = k as f64;
            (xi * k / ((k + 1.0) * (k + 1.0))).unwrap()
        },
        policy,
    )?;
    let value = Interval::euler_gamma() + (-xi).ln()? + series;
    let bounds = -e1_bounds(-xi)?;
    Ok(value.tighten(&bounds))
}

/// `Ei(x)` for `x ⊂ [-30, -1e-6]`.
///
/// Computed from the power series at the interval endpoints (Ei is
/// decreasing on `x < 0`) and intersected with the classical bounds
/// `½e^{-y}ln(1+2/y) < E1(y) < e^{-y}ln(1+1/y)`, `E1(y) = -Ei(-y)`.
pub fn ei_neg(x: Interval) -> Result<Interval> {
    ei_neg_with(x, &SeriesPolicy::default())
}

pub fn ei_neg_with(x: Interval, policy: &SeriesPolicy) -> Result<Interval> {
    if x.hi() >= 0.0 {
        return Err(Error::domain("ei_neg", format!("x = {x} not < 0")));
    }
    if x.lo() < -30.0 || x.hi() > -1e-6 {
        return Err(Error::domain("ei_neg", format!("x = {x} not inside [-30, -1e-6]")));
    }
    let at_hi = ei_neg_point(x.hi(), policy)?;
    if x.is_point() {
        return Ok(at_hi);
    }
    let at_lo = ei_neg_point(x.lo(), policy)?;
    Ok(Interval::new(at_hi.lo(), at_lo.hi()).unwrap())
}

/// Which trigonometric integral to evaluate.
#[derive(Clone, Copy, PartialEq, Eq)]
enum TrigIntegral {
    Si,
    Ci,
}

fn si_series(x: Interval, policy: &SeriesPolicy) -> Result<Interval> {
    let u = x.sqr();
    let series = sum_series(
        "si",
        x,
        |k| {
            let n = (2 * k - 1) as f64;
            -(u * n / ((n + 2.0) * (n + 2.0) * (n + 1.0))).unwrap()
        },
        policy,
    )?;
    Ok(series - Interval::half_pi())
}

fn ci_series(x: Interval, policy: &SeriesPolicy) -> Result<Interval> {
    let u = x.sqr();
    let first = -(u / 4.0)?;
    let series = sum_series(
        "ci",
        first,
        |k| {
            let n = (2 * k) as f64;
            -(u * n / ((n + 2.0) * (n + 2.0) * (n + 1.0))).unwrap()
        },
        policy,
    )?;
    Ok(Interval::euler_gamma() + x.ln()? + series)
}

/// Asymptotic expansion from repeated integration by parts of
/// `∫_x^∞ e^{it}/t dt`, with remainder `≤ 2 n! x^{-n-1}`.
fn trig_integral_asymptotic(x: Interval, which: TrigIntegral) -> Result<Interval> {
    let n = (x.lo().floor() as usize).clamp(1, 60);
    let inv = x.recip()?;
    let mut a = Interval::point(0.0);
    let mut b = Interval::point(0.0);
    let mut term = inv;
    for k in 0..n {
        match k % 4 {
            0 => a = a + term,
            1 => b = b + term,
            2 => a = a - term,
            _ => b = b - term,
        }
        term = term * inv * (k + 1) as f64;
    }
    let r = term.mag() * 2.0;
    let rem = Interval::new(-r, r).unwrap();
    let (s, c) = (x.sin(), x.cos());
    Ok(match which {
        TrigIntegral::Si => -(c * a) - s * b + rem,
        TrigIntegral::Ci => s * a - c * b + rem,
    })
}

fn trig_integral_point(x: f64, which: TrigIntegral, policy: &SeriesPolicy) -> Result<Interval> {
    let xi = Interval::point(x);
    let bound = (2.0 / xi)?.mag();
    let mut value = Interval::new(-bound, bound).unwrap();
    if x <= 24.0 {
        let s = match which {
            TrigIntegral::Si => si_series(xi, policy)?,
            TrigIntegral::Ci => ci_series(xi, policy)?,
        };
        value = value.tighten(&s);
    }
    if x >= 12.0 {
        value = value.tighten(&trig_integral_asymptotic(xi, which)?);
    }
    Ok(value)
}

fn trig_integral(x: Interval, which: TrigIntegral, policy: &SeriesPolicy) -> Result<Interval> {
    let name = match which {
        TrigIntegral::Si => "si",
        TrigIntegral::Ci => "ci",
    };
    if x.lo() <= 0.0 {
        return Err(Error::domain(name, format!("x = {x} not > 0")));
    }
    if x.hi() > 50.0 {
        return Err(Error::domain(name, format!("x = {x} exceeds 50")));
    }
    let m = x.mid();
    let at_mid = trig_integral_point(m, which, policy)?;
    if x.is_point() {
        return Ok(at_mid);
    }
    // Mean value form with derivative sin(x)/x or cos(x)/x.
    let deriv = match which {
        TrigIntegral::Si => (x.sin() / x)?,
        TrigIntegral::Ci => (x.cos() / x)?,
    };
    let mvf = at_mid + deriv * (x - m);
    let lo_end = trig_integral_point(x.lo(), which, policy)?;
    let hi_end = trig_integral_point(x.hi(), which, policy)?;
    let mut out = mvf.hull(&lo_end).hull(&hi_end);
    if deriv.lo() >= 0.0 {
        out = out.tighten(&Interval::new(lo_end.lo(), hi_end.hi()).unwrap());
    } else if deriv.hi() <= 0.0 {
        out = out.tighten(&Interval::new(hi_end.lo(), lo_end.hi()).unwrap());
    }
    Ok(out)
}

/// `si(x) = -∫_x^∞ sin(t)/t dt = Si(x) - π/2` for `x ⊂ (0, 50]`.
pub fn si(x: Interval) -> Result<Interval> {
    trig_integral(x, TrigIntegral::Si, &SeriesPolicy::default())
}

/// `ci(x) = -∫_x^∞ cos(t)/t dt` for `x ⊂ (0, 50]`.
pub fn ci(x: Interval) -> Result<Interval> {
    trig_integral(x, TrigIntegral::Ci, &SeriesPolicy::default())
}

/// Terms summed explicitly in [`zeta_sum`].
pub const ZETA_TERMS: usize = 10_000;

fn zeta_point(q: f64) -> Result<Interval> {
    let qi = Interval::point(q);
    let integer = q.fract() == 0.0 && q <= 64.0;
    let mut sum = Interval::point(0.0);
    for k in (1..=ZETA_TERMS).rev() {
        let kk = Interval::point(k as f64);
        let term = if integer { kk.powi(-(q as i32))? } else { (-(qi * kk.ln()?)).exp() };
        sum = sum + term;
    }
    let q1 = qi - 1.0;
    let k = ZETA_TERMS as f64;
    let upper = (Interval::point(k).pow(-q1)? / q1)?;
    let lower = (Interval::point(k + 1.0).pow(-q1)? / q1)?;
    Ok(sum + Interval::new(lower.lo(), upper.hi()).unwrap())
}

/// `ζ(q) = Σ k^{-q}` for `q ⊂ [2, 4.5]`: an explicit partial sum plus the
/// integral bounds `[∫_{K+1}^∞, ∫_K^∞] x^{-q} dx` for the tail.
pub fn zeta_sum(q: Interval) -> Result<Interval> {
    if q.lo() <= 1.0 {
        return Err(Error::domain("zeta_sum", format!("q = {q} not > 1")));
    }
    if q.lo() < 2.0 || q.hi() > 4.5 {
        return Err(Error::domain("zeta_sum", format!("q = {q} not inside [2, 4.5]")));
    }
    let at_hi = zeta_point(q.hi())?;
    if q.is_point() {
        return Ok(at_hi);
    }
    let at_lo = zeta_point(q.lo())?;
    Ok(Interval::new(at_hi.lo(), at_lo.hi()).unwrap())
}

/// Shift applied before the Stirling series.
const STIRLING_SHIFT: usize = 8;
/// Bernoulli terms used in the Stirling series.
const STIRLING_TERMS: usize = 7;

/// `ln Γ(z)` for `z >= 8` by the Stirling series with `m` Bernoulli terms;
/// for real `z > 0` the remainder has the sign of, and is bounded by, the
/// first omitted term.
fn ln_gamma_stirling(z: Interval) -> Result<Interval> {
    let half_ln_2pi = (Interval::pi() * 2.0).ln()? * 0.5;
    let mut s = (z - 0.5) * z.ln()? - z + half_ln_2pi;
    let zr = z.recip()?;
    let zr2 = zr.sqr();
    let mut zpow = zr;
    for k in 1..=STIRLING_TERMS {
        let b = rational_enclosure(&bernoulli_abs(k).unwrap());
        let denom = ((2 * k) * (2 * k - 1)) as f64;
        let term = (b * zpow / denom)?;
        s = if k % 2 == 1 { s + term } else { s - term };
        zpow = zpow * zr2;
    }
    let k = STIRLING_TERMS + 1;
    let b = rational_enclosure(&bernoulli_abs(k).unwrap());
    let denom = ((2 * k) * (2 * k - 1)) as f64;
    let r = (b * zpow / denom)?.hi();
    let rem = if k % 2 == 1 { Interval::new(0.0, r).unwrap() } else { Interval::new(-r, 0.0).unwrap() };
    Ok(s + rem)
}

/// `ln Γ(x)` for `x ⊂ [0.5, 40]`.
pub fn ln_gamma(x: Interval) -> Result<Interval> {
    if x.lo() < 0.5 || x.hi() > 40.0 {
        return Err(Error::domain("ln_gamma", format!("x = {x} not inside [0.5, 40]")));
    }
    // Γ is increasing on [1.4617, ∞) where its minimum has been passed.
    if x.lo() >= 1.4617 && !x.is_point() {
        let a = ln_gamma(Interval::point(x.lo()))?;
        let b = ln_gamma(Interval::point(x.hi()))?;
        return Ok(Interval::new(a.lo(), b.hi()).unwrap());
    }
    let mut prod = Interval::point(1.0);
    for j in 0..STIRLING_SHIFT {
        prod = prod * (x + j as f64);
    }
    Ok(ln_gamma_stirling(x + STIRLING_SHIFT as f64)? - prod.ln()?)
}

pub fn gamma(x: Interval) -> Result<Interval> {
    Ok(ln_gamma(x)?.exp())
}

/// The optimal Khintchine constants for `2 <= p <= 3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KhintchineConstants {
    /// Lower constant, equal to 1 on this range.
    pub a: Interval,
    /// Upper constant `B_p = 2^{1/2} (Γ((p+1)/2)/√π)^{1/p}`.
    pub b: Interval,
}

pub fn b_constant(p: Interval) -> Result<KhintchineConstants> {
    if p.lo() < 2.0 || p.hi() > 3.0 {
        return Err(Error::domain("b_constant", format!("p = {p} not inside [2, 3]")));
    }
    let x = ((p + 1.0) * 0.5).max(Interval::point(1.5));
    let half_ln_pi = Interval::pi().ln()? * 0.5;
    let ln_ratio = ln_gamma(x)? - half_ln_pi;
    let half_ln2 = Interval::point(2.0).ln()? * 0.5;
    let ln_b = half_ln2 + (ln_ratio / p)?;
    Ok(KhintchineConstants { a: Interval::point(1.0), b: ln_b.exp() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn bernoulli_table_matches_recurrence() {
        // B_0 = 1, Σ_{j<m} C(m+1, j) B_j = -(m+1) B_m.
        let n = 40usize;
        let mut b: Vec<BigRational> = vec![BigRational::one()];
        for m in 1..=n {
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                s += bj * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        for k in 1..=20 {
            assert_eq!(bernoulli_abs(k).unwrap(), b[2 * k].abs(), "B_{}", 2 * k);
        }
    }

    #[test]
    fn first_coefficients() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(neg_ln_cos_coefficient(1).unwrap(), r(1, 2));
        assert_eq!(neg_ln_cos_coefficient(2).unwrap(), r(1, 12));
        assert_eq!(neg_ln_cos_coefficient(3).unwrap(), r(1, 45));
    }

    #[test]
    fn rational_enclosure_brackets() {
        let third = BigRational::new(1.into(), 3.into());
        let e = rational_enclosure(&third);
        assert!(e.lo() < e.hi());
        assert_eq!(rational_enclosure(&BigRational::new(1.into(), 4.into())), Interval::point(0.25));
    }
}
