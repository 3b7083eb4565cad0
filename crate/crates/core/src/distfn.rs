//! Distribution functions of `f(t) = |cos t|` and `g(t) = exp(-t²/2)` under
//! the measure `dμ_p = dt / t^{p+1}` on `(0, ∞)`.
//!
//! `F_*(x) = μ_p{t : |cos t| < x}` and `G_*(x) = μ_p{t : exp(-t²/2) < x}`.

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Default number of explicit series terms for `F_*` and `F'_*`.
pub const DEFAULT_TERMS: usize = 200;

/// Exponent of the measure `dt / t^{p+1}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureParams {
    p: Interval,
}

impl MeasureParams {
    pub fn new(p: Interval) -> Result<Self> {
        if p.lo() < 2.0 || p.hi() > 3.0 {
            return Err(Error::domain("MeasureParams", format!("p = {p} not inside [2, 3]")));
        }
        if p.width() > 1.0 {
            return Err(Error::domain("MeasureParams", format!("p = {p} wider than 1")));
        }
        Ok(MeasureParams { p })
    }

    pub fn point(p: f64) -> Result<Self> {
        MeasureParams::new(Interval::point(p))
    }

    pub fn p(&self) -> Interval {
        self.p
    }
}

/// A distribution function sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistPoint {
    pub x: f64,
    pub value: Interval,
    pub derivative: Option<Interval>,
}

fn check_open_unit(op: &'static str, x: Interval) -> Result<()> {
    if !(x.lo() > 0.0 && x.hi() < 1.0) {
        return Err(Error::domain(op, format!("x = {x} not inside (0, 1)")));
    }
    Ok(())
}

fn nonneg(v: Interval) -> Interval {
    v.tighten(&Interval::new(0.0, f64::INFINITY).unwrap())
}

/// `F_*(x)` from the regrouped series
/// `p F_*(x) = a^{-p} - Σ_{k>=1} [(kπ - a)^{-p} - (kπ + a)^{-p}]`, `a = arccos x`.
///
/// Each bracket equals `2ap ξ^{-p-1}` for some `ξ ∈ (kπ-a, kπ+a)`; that
/// enclosure is intersected with the direct difference. The terms after `K`
/// lie between `(2a/π)((K+1)π + a)^{-p}` and `(2a/π)(Kπ - a)^{-p}` by
/// integral comparison.
pub fn f_star(x: Interval, mp: &MeasureParams, k: usize) -> Result<Interval> {
    check_open_unit("f_star", x)?;
    if k == 0 {
        return Err(Error::InvalidArgument("K must be >= 1".into()));
    }
    let p = mp.p;
    let a = x.acos()?;
    let pi = Interval::pi();
    let two_a_p = a * p * 2.0;
    let mut sum = Interval::point(0.0);
    for j in 1..=k {
        let kp = pi * j as f64;
        let (lo_arg, hi_arg) = (kp - a, kp + a);
        let direct = lo_arg.pow(-p)? - hi_arg.pow(-p)?;
        let mvf_lo = (two_a_p * hi_arg.pow(-p - 1.0)?).lo();
        let mvf_hi = (two_a_p * lo_arg.pow(-p - 1.0)?).hi();
        let mvf = Interval::new(mvf_lo, mvf_hi)?;
        sum = sum + direct.tighten(&mvf);
    }
    let kf = k as f64;
    let scale = (a * 2.0 / pi)?;
    let tail_lo = (scale * (pi * (kf + 1.0) + a).pow(-p)?).lo();
    let tail_hi = (scale * (pi * kf - a).pow(-p)?).hi();
    let tail = Interval::new(tail_lo, tail_hi)?;
    let pf = a.pow(-p)? - sum - tail;
    Ok(nonneg((pf / p)?))
}

/// `G_*(x) = (1/p)(-2 ln x)^{-p/2}`.
pub fn g_star(x: Interval, mp: &MeasureParams) -> Result<Interval> {
    check_open_unit("g_star", x)?;
    let p = mp.p;
    let u = -(x.ln()? * 2.0);
    u.pow(-(p * 0.5))? / p
}

/// Enclosures of `F'_*(x)` and `G'_*(x)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Derivatives {
    pub f_prime: Interval,
    pub g_prime: Interval,
}

fn check_derivative_domain(x: Interval) -> Result<()> {
    if !(x.lo() >= 1e-6 && x.hi() <= 1.0 - 1e-6) {
        return Err(Error::domain("derivatives", format!("x = {x} not inside [1e-6, 1 - 1e-6]")));
    }
    Ok(())
}

/// `Σ_{j>K} (jπ + c)^{-q}` for decreasing summands, by integral comparison.
fn power_tail(c: Interval, q: Interval, k: usize) -> Result<Interval> {
    let pi = Interval::pi();
    let q1 = q - 1.0;
    let kf = k as f64;
    let lo = ((pi * (kf + 1.0) + c).pow(-q1)? / (q1 * pi))?;
    let hi = ((pi * kf + c).pow(-q1)? / (q1 * pi))?;
    Interval::new(lo.lo(), hi.hi())
}

/// `F'_*(x) = Σ_{k>=0} [(kπ+a)^{-p-1} + ((k+1)π-a)^{-p-1}] / sqrt(1-x²)`
/// with `K` explicit terms plus a positive tail, and
/// `G'_*(x) = 1 / (x (-2 ln x)^{p/2+1})`.
pub fn derivatives(x: Interval, mp: &MeasureParams, k: usize) -> Result<Derivatives> {
    check_derivative_domain(x)?;
    let p = mp.p;
    let q = p + 1.0;
    let a = x.acos()?;
    let pi = Interval::pi();
    let mut sum = a.pow(-q)?;
    for j in 1..=k {
        let kp = pi * j as f64;
        sum = sum + (kp + a).pow(-q)? + (kp - a).pow(-q)?;
    }
    sum = sum + power_tail(a, q, k)? + power_tail(-a, q, k)?;
    let jac = (1.0 - x.sqr()).sqrt()?.recip()?;
    let f_prime = sum * jac;
    Ok(Derivatives { f_prime, g_prime: g_prime(x, mp)? })
}

/// The `k = 0` part of `F'_*`, a lower bound for it:
/// `(a^{-p-1} + (π-a)^{-p-1}) / sqrt(1-x²)`.
pub fn f_prime_leading(x: Interval, mp: &MeasureParams) -> Result<Interval> {
    check_derivative_domain(x)?;
    let q = mp.p + 1.0;
    let a = x.acos()?;
    let s = a.pow(-q)? + (Interval::pi() - a).pow(-q)?;
    s / (1.0 - x.sqr()).sqrt()?
}

fn g_prime(x: Interval, mp: &MeasureParams) -> Result<Interval> {
    let u = -(x.ln()? * 2.0);
    1.0 / (x * u.pow(mp.p * 0.5 + 1.0)?)
}

/// Samples `F_*` at a point, optionally with its derivative.
pub fn f_star_point(x: f64, mp: &MeasureParams, k: usize, with_derivative: bool) -> Result<DistPoint> {
    let xi = Interval::point(x);
    let value = f_star(xi, mp, k)?;
    let derivative = if with_derivative { Some(derivatives(xi, mp, k)?.f_prime) } else { None };
    Ok(DistPoint { x, value, derivative })
}

/// Which function [`brute_force_dist`] measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Cos,
    Gauss,
}

/// Solution intervals summed explicitly by [`brute_force_dist`].
pub const BRUTE_FORCE_INTERVALS: usize = 2000;

/// Measures `{t > 0 : h(t) < y}` directly from its solution set.
///
/// For `|cos t| < y` the set is the union of `(kπ + a, (k+1)π - a)`,
/// `a = arccos y`; each piece has measure `[t^{-p}/p]` between its ends.
/// Pieces beyond the explicit ones are bounded by length times the extreme
/// values of `t^{-p-1}`. For the Gaussian the set is `(r, ∞)` with
/// `r = sqrt(2 ln(1/y))`.
pub fn brute_force_dist(y: f64, mp: &MeasureParams, which: Which) -> Result<Interval> {
    if !(y > 0.01 && y < 0.99) {
        return Err(Error::domain("brute_force_dist", format!("y = {y} not inside (0.01, 0.99)")));
    }
    let p = mp.p;
    let yi = Interval::point(y);
    match which {
        Which::Gauss => {
            let r = ((1.0 / yi)?.ln()? * 2.0).sqrt()?;
            r.pow(-p)? / p
        }
        Which::Cos => {
            let a = yi.acos()?;
            let pi = Interval::pi();
            let mut sum = Interval::point(0.0);
            for k in 0..BRUTE_FORCE_INTERVALS {
                let left = pi * k as f64 + a;
                let right = pi * (k + 1) as f64 - a;
                sum = sum + ((left.pow(-p)? - right.pow(-p)?) / p)?;
            }
            let kf = BRUTE_FORCE_INTERVALS as f64;
            let len = pi - a * 2.0;
            let first_left = pi * kf + a;
            let upper = len * (first_left.pow(-p - 1.0)? + (first_left.pow(-p)? / (p * pi))?);
            let lower = len * ((pi * (kf + 1.0) - a).pow(-p)? / (p * pi))?;
            let tail = Interval::new(lower.lo().max(0.0), upper.hi())?;
            Ok(nonneg(sum + tail))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_params_validation() {
        assert!(MeasureParams::point(1.5).is_err());
        assert!(MeasureParams::new(Interval::new(2.0, 3.0).unwrap()).is_ok());
        assert!(MeasureParams::point(2.5).is_ok());
    }

    #[test]
    fn domain_errors() {
        let mp = MeasureParams::point(2.0).unwrap();
        assert!(f_star(Interval::point(0.0), &mp, 10).is_err());
        assert!(f_star(Interval::point(1.0), &mp, 10).is_err());
        assert!(g_star(Interval::new(0.5, 1.0).unwrap(), &mp).is_err());
        assert!(brute_force_dist(0.995, &mp, Which::Cos).is_err());
    }
}
