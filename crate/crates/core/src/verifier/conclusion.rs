//! Direct numerical checks of the comparison lemma's conclusion and of the
//! limit behind the normalization.

use crate::dual::{Dual, Dual1};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quad::{gauss_tail, integrate, tail_bound_mu_p, FnEnclosure, NearZero, QuadConfig, TailKind, WithNearZero};

use super::check::{attempt, CheckResult, Mode};
use super::series::{exp_second_remainder, neg_ln_cos_ratio, neg_ln_cos_ratio_remainder, one_minus_exp_neg_over};
use super::{pow_var, VerifierConfig};

/// Below this `t` (in units of the cosine argument) the reduced series forms
/// are used.
const REDUCED_UP_TO: f64 = 1.2;
/// Width of the first cell, integrated in closed form from a power law.
const NEAR_ZERO: f64 = 1e-3;
pub(crate) const CONCLUSION_CUT: f64 = 50.0;
const CONVERGENCE_CUT: f64 = 200.0;

fn pt(x: f64) -> Interval {
    Interval::point(x)
}

/// `(e^{-st²/2} - |cos t|^s) t^{-p-1}`.
pub(crate) struct Conclusion {
    pub(crate) s: Interval,
    pub(crate) p: Interval,
}

impl Conclusion {
    /// For small `t`: with `|cos t|^s = e^{-st²L}` and `L = 1/2 + t²R`, the
    /// integrand is `e^{-st²/2} s R t^{3-p} φ(s t⁴ R)`, `φ(x) = (1-e^{-x})/x`.
    fn reduced<const N: usize>(&self, t: Dual<N>, pow: impl Fn(Dual<N>) -> Result<Dual<N>>) -> Result<Dual<N>> {
        let rem = neg_ln_cos_ratio_remainder(t)?;
        let x = t.sqr().sqr() * rem * self.s;
        let e = (t.sqr() * self.s * -0.5).exp();
        Ok(e * rem * self.s * pow(t)? * one_minus_exp_neg_over(x)?)
    }
}

impl FnEnclosure for Conclusion {
    fn eval(&self, t: Dual1) -> Result<Dual1> {
        if t.v.hi() <= REDUCED_UP_TO {
            let q = 3.0 - self.p;
            return self.reduced(t, |t| pow_var(t, Dual::constant(q)));
        }
        let e = (t.sqr() * self.s * -0.5).exp();
        let c = pow_var(t.cos().abs(), Dual::constant(self.s))?;
        Ok((e - c) * t.pow(-(self.p + 1.0))?)
    }
}

impl Conclusion {
    pub(crate) fn near_zero_law(&self) -> Result<NearZero> {
        let t = Dual::<1>::constant(Interval::new(0.0, NEAR_ZERO)?);
        let coeff = self.reduced(t, |_| Ok(Dual::constant(1.0)))?.v;
        Ok(NearZero { coeff, exponent: 3.0 - self.p, valid_up_to: NEAR_ZERO })
    }
}

/// Encloses `∫_0^∞ (e^{-st²/2} - |cos t|^s) t^{-p-1} dt`.
pub fn conclusion_margin(p: f64, s: f64, quad: &QuadConfig) -> Result<Interval> {
    if !(2.0..=3.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {p} not in [2, 3]")));
    }
    if !(s >= std::f64::consts::SQRT_2 - 1e-15) {
        return Err(Error::InvalidArgument(format!("s = {s} below sqrt 2")));
    }
    let f = Conclusion { s: pt(s), p: pt(p) };
    let law = f.near_zero_law()?;
    let body = integrate(&WithNearZero { f, law }, 0.0, CONCLUSION_CUT, quad)?.value;
    Ok(body + conclusion_tail(pt(s), pt(p))?)
}

/// The part of the conclusion integral beyond the quadrature cutoff.
pub(crate) fn conclusion_tail(s: Interval, p: Interval) -> Result<Interval> {
    let gauss = tail_bound_mu_p(TailKind::Gauss, s, p, CONCLUSION_CUT)?;
    let cos = tail_bound_mu_p(TailKind::CosPower, s, p, CONCLUSION_CUT)?;
    Ok(gauss - cos)
}

pub(crate) fn conclusion_quad(cfg: &VerifierConfig) -> QuadConfig {
    cfg.quad.with_width(cfg.quad.target_width.max(1e-6))
}

/// The comparison inequality `∫ (e^{-st²/2} - |cos t|^s) t^{-p-1} dt >= 0`
/// evaluated on a grid of `p` and `s`.
pub fn check_conclusion_direct(p_grid: &[f64], s_grid: &[f64], cfg: &VerifierConfig) -> CheckResult {
    let quad = conclusion_quad(cfg);
    let children = p_grid
        .iter()
        .flat_map(|&p| s_grid.iter().map(move |&s| (p, s)))
        .map(|(p, s)| {
            let name = format!("p={p},s={s}");
            attempt(&name, || Ok(CheckResult::leaf(&name, conclusion_margin(p, s, &quad)?, Mode::Strict)))
        })
        .collect();
    CheckResult::composite("conclusion-direct", children)
}

/// `(t²/2 - 1 + |cos(t/√s)|^s) t^{-p-1}`, or its `s → ∞` limit with
/// `e^{-t²/2}` in place of the cosine power.
struct Convergence {
    s: Option<Interval>,
    p: Interval,
}

impl Convergence {
    /// The numerator divided by `t⁴`. With `y = t²L(u)`, `u = t/√s`:
    /// `(e^{-y} - 1 + y) - (y - t²/2) = t⁴ (L² ψ(y) - R(u)/s)`,
    /// `ψ(y) = (e^{-y} - 1 + y)/y²`, `R = (L - 1/2)/u²`.
    fn reduced<const N: usize>(&self, t: Dual<N>) -> Result<Dual<N>> {
        match self.s {
            None => Ok(exp_second_remainder(t.sqr() * 0.5)? * 0.25),
            Some(s) => {
                let u = (t / s.sqrt()?)?;
                let l = neg_ln_cos_ratio(u)?;
                let y = t.sqr() * l;
                Ok(l.sqr() * exp_second_remainder(y)? - (neg_ln_cos_ratio_remainder(u)? / s)?)
            }
        }
    }

    fn reduced_up_to(&self) -> f64 {
        match self.s {
            None => f64::INFINITY,
            Some(s) => REDUCED_UP_TO * s.lo().sqrt(),
        }
    }

    fn near_zero_law(&self) -> Result<NearZero> {
        let t = Dual::<1>::constant(Interval::new(0.0, NEAR_ZERO)?);
        Ok(NearZero { coeff: self.reduced(t)?.v, exponent: 3.0 - self.p, valid_up_to: NEAR_ZERO })
    }
}

impl FnEnclosure for Convergence {
    fn eval(&self, t: Dual1) -> Result<Dual1> {
        if t.v.hi() <= self.reduced_up_to() {
            return Ok(self.reduced(t)? * pow_var(t, Dual::constant(3.0 - self.p))?);
        }
        let s = self.s.expect("limit integrand is always reduced");
        let c = pow_var((t / s.sqrt()?)?.cos().abs(), Dual::constant(s))?;
        Ok((t.sqr() * 0.5 - 1.0 + c) * t.pow(-(self.p + 1.0))?)
    }
}

/// Encloses `I(s)`, or `I(∞)` for `s = None`.
pub fn convergence_integral(p: f64, s: Option<f64>, quad: &QuadConfig) -> Result<Interval> {
    if !(p > 2.0 && p <= 3.0) {
        return Err(Error::InvalidArgument(format!("p = {p} not in (2, 3]")));
    }
    let pi = pt(p);
    let f = Convergence { s: s.map(pt), p: pi };
    let law = f.near_zero_law()?;
    let body = integrate(&WithNearZero { f, law }, 0.0, CONVERGENCE_CUT, quad)?.value;
    // ∫_T^∞ (t²/2 - 1) t^{-p-1} dt = T^{2-p}/(2(p-2)) - T^{-p}/p.
    let t = pt(CONVERGENCE_CUT);
    let poly = (t.pow(2.0 - pi)? / ((pi - 2.0) * 2.0))? - (t.pow(-pi)? / pi)?;
    let rest = match s {
        None => gauss_tail(pt(1.0), pi + 1.0, CONVERGENCE_CUT)?,
        Some(_) => Interval::new(0.0, (t.pow(-pi)? / pi)?.hi())?,
    };
    Ok(body + poly + rest)
}

/// `I(s) → I(∞)` along an increasing list of `s`: the deviations shrink
/// and the last is within 1% of the limit.
pub fn check_fp_convergence(p: f64, s_list: &[f64], cfg: &VerifierConfig) -> CheckResult {
    attempt("fp-convergence", || {
        if s_list.is_empty() || s_list[0] < 2.0 || s_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("s_list must be increasing with min >= 2".into()));
        }
        let quad = conclusion_quad(cfg);
        let limit = convergence_integral(p, None, &quad)?;
        let devs: Vec<Interval> =
            s_list.iter().map(|&s| Ok(convergence_integral(p, Some(s), &quad)? - limit)).collect::<Result<_>>()?;
        let mut children = vec![CheckResult::leaf("limit-positive", limit, Mode::Strict).with_value(limit)];
        for (s, d) in s_list.iter().zip(&devs) {
            children.push(CheckResult::leaf(format!("deviation-s={s}"), d.abs(), Mode::Strict).with_value(*d));
        }
        for (w, s) in devs.windows(2).zip(s_list.windows(2)) {
            children.push(CheckResult::leaf(
                format!("decreasing-{}-{}", s[0], s[1]),
                w[0].abs() - w[1].abs(),
                Mode::Strict,
            ));
        }
        let last = devs.last().unwrap().abs();
        children.push(CheckResult::leaf("within-one-percent", limit * 0.01 - last, Mode::Strict));
        Ok(CheckResult::composite("fp-convergence", children))
    })
}
