//! The two hypotheses of the distribution-function comparison lemma.
//!
//! Hypothesis 1: `F - G <= 0` on `(0, y₀)` and `>= 0` on `(y₀, Y)` for some
//! `y₀`. Hypothesis 2: `∫ (g^{s₀} - f^{s₀}) dμ >= 0`.

use rayon::prelude::*;

use crate::distfn::{derivatives, f_star, MeasureParams};
use crate::dual::{Dual, Dual1};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quad::{integrate, FnEnclosure, QuadConfig, WithNearZero};

use super::check::{attempt, CheckResult, Mode, NONSTRICT_TOL};
use super::conclusion::{conclusion_quad, conclusion_tail, Conclusion, CONCLUSION_CUT};
use super::VerifierConfig;

/// Fraction of `(0, Y)` left unscanned at each end. Distribution functions
/// blow up or vanish there; the ends are covered by dedicated checks.
pub const NP_EDGE: f64 = 1e-3;
/// Cells narrower than `Y` times this are not split further.
const MIN_CELL: f64 = 1e-10;
/// Straddling cells are shrunk below `Y` times this to localize `y₀`.
const LOCALIZE: f64 = 1e-6;

/// `∫_0^∞ h dμ` as a quadrature on `[0, cut]` plus an enclosed tail.
pub struct IntegralHypothesis<'a> {
    pub integrand: &'a dyn FnEnclosure,
    pub cut: f64,
    pub tail: Interval,
}

impl IntegralHypothesis<'_> {
    fn enclose(&self, quad: &QuadConfig) -> Result<Interval> {
        Ok(integrate(self.integrand, 0.0, self.cut, quad)?.value + self.tail)
    }
}

/// `F_*` as an enclosure with derivative.
pub struct FStar {
    pub mp: MeasureParams,
    pub terms: usize,
}

impl FnEnclosure for FStar {
    fn eval(&self, x: Dual1) -> Result<Dual1> {
        let v = f_star(x.v, &self.mp, self.terms)?;
        let dv = derivatives(x.v, &self.mp, self.terms).map_or(Interval::entire(), |d| d.f_prime);
        Ok(Dual { v, d: [x.d[0] * dv] })
    }

    fn eval_interval(&self, x: Interval) -> Result<Interval> {
        f_star(x, &self.mp, self.terms)
    }
}

/// `G_*(x) = (1/p)(-2 ln x)^{-p/2}`.
pub struct GStar {
    pub mp: MeasureParams,
}

impl FnEnclosure for GStar {
    fn eval(&self, x: Dual1) -> Result<Dual1> {
        let p = self.mp.p();
        let u = x.ln()? * -2.0;
        u.pow(-(p * 0.5))? / p
    }
}

/// `F - G` over one cell: the natural enclosure tightened by the mean value
/// form, and the derivative enclosure.
#[derive(Clone, Copy, Debug)]
struct Cell {
    lo: f64,
    hi: f64,
    diff: Interval,
    slope: Interval,
}

impl Cell {
    fn eval(f: &dyn FnEnclosure, g: &dyn FnEnclosure, lo: f64, hi: f64) -> Result<Cell> {
        let x = Interval::new(lo, hi)?;
        let whole = f.eval(Dual1::var(x, 0))? - g.eval(Dual1::var(x, 0))?;
        let m = Interval::point(0.5 * (lo + hi));
        let at_mid = f.eval_interval(m)? - g.eval_interval(m)?;
        let mvf = at_mid + whole.d[0] * (x - m);
        Ok(Cell { lo, hi, diff: whole.v.tighten(&mvf), slope: whole.d[0] })
    }

    fn resolved(&self, localize: f64) -> bool {
        let d = self.diff;
        let rising = self.slope.lo() > 0.0 && self.hi - self.lo < localize;
        d.hi() <= 0.0 || d.lo() >= 0.0 || d.mag() <= NONSTRICT_TOL || rising
    }

    fn split(&self) -> [(f64, f64); 2] {
        let m = 0.5 * (self.lo + self.hi);
        [(self.lo, m), (m, self.hi)]
    }
}

/// Cuts `0 < a <= b < n`: cells before `a` carry `F - G <= 0`, cells in
/// `[a, b)` are increasing, cells from `b` on carry `F - G >= 0`. Among
/// cuts that certify, returns the one with the narrowest increasing block;
/// otherwise the one with the largest margin.
fn best_cut(cells: &[Cell]) -> (usize, usize, Interval) {
    let n = cells.len();
    let min = |a: Option<Interval>, b: Interval| Some(a.map_or(b, |a| a.min(b)));
    let mut prefix = vec![None; n + 1];
    for i in 0..n {
        prefix[i + 1] = min(prefix[i], -cells[i].diff);
    }
    let mut suffix = vec![None; n + 1];
    for i in (0..n).rev() {
        suffix[i] = min(suffix[i + 1], cells[i].diff);
    }
    let mut best: Option<(usize, usize, Interval)> = None;
    for a in 1..n {
        let mut rise: Option<Interval> = None;
        for b in a..n {
            if b > a {
                rise = min(rise, cells[b - 1].slope);
            }
            let m = [prefix[a], rise, suffix[b]]
                .into_iter()
                .flatten()
                .reduce(Interval::min)
                .expect("left and right parts are nonempty");
            let ok = |m: Interval| m.lo() >= -NONSTRICT_TOL;
            let width = |a: usize, b: usize| cells[b].lo - cells[a].lo;
            let better = match best {
                None => true,
                Some((ba, bb, bm)) => match (ok(m), ok(bm)) {
                    (true, true) => width(a, b) < width(ba, bb),
                    (true, false) => true,
                    (false, true) => false,
                    (false, false) => m.lo() > bm.lo(),
                },
            };
            if better {
                best = Some((a, b, m));
            }
            if rise.is_some_and(|r| r.lo() <= 0.0) {
                break;
            }
        }
    }
    best.expect("at least two cells")
}

/// Checks both hypotheses for distribution functions `F`, `G` on `(0, Y)`.
///
/// `F - G` is scanned on `[δY, (1-δ)Y]`, `δ = NP_EDGE`, from `grid` equal
/// cells; unresolved cells are bisected. The sign-change leaf's value is
/// the localization of `y₀`.
pub fn np_generic(
    f: &dyn FnEnclosure,
    g: &dyn FnEnclosure,
    y_max: f64,
    s0: f64,
    integral: &IntegralHypothesis,
    grid: usize,
    cfg: &VerifierConfig,
) -> CheckResult {
    let sign = attempt("sign-change", || {
        if grid < 16 {
            return Err(Error::InvalidArgument(format!("grid = {grid} < 16")));
        }
        if !(y_max > 0.0 && y_max.is_finite()) || !(s0 > 0.0) {
            return Err(Error::InvalidArgument(format!("Y = {y_max}, s0 = {s0}")));
        }
        sign_change(f, g, y_max, grid, cfg)
    });
    let quad = conclusion_quad(cfg);
    let integral = attempt("integral", || {
        let v = integral.enclose(&quad)?;
        Ok(CheckResult::leaf("integral", v, Mode::NonStrict).with_value(v).with_note(format!("s0 = {s0}")))
    });
    CheckResult::composite("np-hypotheses", vec![sign, integral])
}

fn sign_change(
    f: &dyn FnEnclosure,
    g: &dyn FnEnclosure,
    y_max: f64,
    grid: usize,
    cfg: &VerifierConfig,
) -> Result<CheckResult> {
    let (lo, hi) = (y_max * NP_EDGE, y_max * (1.0 - NP_EDGE));
    let step = (hi - lo) / grid as f64;
    let min_width = y_max * MIN_CELL;
    let mut pending: Vec<(f64, f64)> = (0..grid)
        .map(|i| (lo + step * i as f64, if i + 1 == grid { hi } else { lo + step * (i + 1) as f64 }))
        .collect();
    let mut done: Vec<Cell> = Vec::new();
    let mut evaluations = 0u64;
    let mut exhausted = false;
    while !pending.is_empty() {
        evaluations += pending.len() as u64;
        let cells: Vec<Cell> = pending.par_iter().map(|&(a, b)| Cell::eval(f, g, a, b)).collect::<Result<_>>()?;
        exhausted |= evaluations > cfg.budget as u64;
        pending = Vec::new();
        for c in cells {
            if c.resolved(y_max * LOCALIZE) || c.hi - c.lo < min_width || exhausted {
                done.push(c);
            } else {
                pending.extend(c.split());
            }
        }
    }
    done.sort_by(|x, y| x.lo.total_cmp(&y.lo));
    let (a, b, margin) = best_cut(&done);
    let y0 = Interval::new(done[a].lo, done[b].lo)?;
    let mut note = format!("{} cells on [{lo}, {hi}], y0 in [{}, {}]", done.len(), y0.lo(), y0.hi());
    let certified_pos_before_neg =
        done.iter().position(|c| c.diff.lo() > 0.0).is_some_and(|i| done[i..].iter().any(|c| c.diff.hi() < 0.0));
    if certified_pos_before_neg {
        note.push_str("; F - G is certified positive before a certified negative cell: more than one sign change");
    }
    if exhausted {
        note.push_str("; evaluation budget exhausted");
    }
    Ok(CheckResult::leaf("sign-change", margin, Mode::NonStrict)
        .with_value(y0)
        .with_note(note)
        .with_evaluations(evaluations))
}

/// Both hypotheses for `F_*`, `G_*` at exponent `p` with `Y = 1`, `s₀ = √2`.
/// The integral is the conclusion integrand at `s = √2`.
pub fn check_np_at(p: f64, cfg: &VerifierConfig) -> CheckResult {
    let name = format!("np-p={p}");
    attempt(&name, || {
        let mp = MeasureParams::point(p)?;
        let f = FStar { mp, terms: cfg.terms };
        let g = GStar { mp };
        let s = Interval::sqrt2();
        let h = Conclusion { s, p: Interval::point(p) };
        let law = h.near_zero_law()?;
        let integrand = WithNearZero { f: h, law };
        let hyp = IntegralHypothesis {
            integrand: &integrand,
            cut: CONCLUSION_CUT,
            tail: conclusion_tail(s, Interval::point(p))?,
        };
        let mut r = np_generic(&f, &g, 1.0, std::f64::consts::SQRT_2, &hyp, 32, cfg);
        r.name = name.clone();
        Ok(r)
    })
}

/// Exponents at which [`check_np`] runs the comparison of `F_*` and `G_*`.
pub const NP_EXPONENTS: [f64; 3] = [2.0, 2.5, 3.0];

/// [`check_np_at`] at each of [`NP_EXPONENTS`].
pub fn check_np(cfg: &VerifierConfig) -> CheckResult {
    CheckResult::composite("np", NP_EXPONENTS.iter().map(|&p| check_np_at(p, cfg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn best_cut_prefers_certified_split() {
        let mk = |lo: f64, d: f64| Cell { lo, hi: lo + 1.0, diff: Interval::point(d), slope: Interval::point(1.0) };
        let cells = [mk(0.0, -2.0), mk(1.0, -1.0), mk(2.0, 1.0), mk(3.0, 2.0)];
        let (a, b, m) = best_cut(&cells);
        assert!(a <= 2 && b == 2, "{a} {b}");
        assert!(m.lo() > 0.0);
    }

    #[test]
    fn crossing_line_is_localized() {
        let f = |x: Dual1| Ok(x * 2.0);
        let g = |_: Dual1| Ok(Dual::constant(0.6));
        let zero = |_: Dual1| Ok(Dual::constant(0.0));
        let hyp = IntegralHypothesis { integrand: &zero, cut: 2.0, tail: Interval::point(0.0) };
        let r = np_generic(&f, &g, 1.0, 1.0, &hyp, 16, &VerifierConfig::default());
        assert!(r.is_proved(), "{}", r.render());
        let y0 = r.find("sign-change").unwrap().value.unwrap();
        assert!(y0.contains(0.3), "{y0}");
    }
}
