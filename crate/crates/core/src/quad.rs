//! Validated integration of interval integrands.
//!
//! [`integrate`] bisects `[a, b]` level by level. Each cell `[u, v]` gets the
//! tighter of two enclosures: the crude `f([u,v])·(v-u)` and the mean value
//! form `f(m)·h ± w(f'([u,v]))·h²/8`. Cells that meet their share of the
//! target width are retired; the rest are split. Every level yields a valid
//! enclosure of the integral and the returned value is the intersection of
//! all of them, so a deeper run never returns a wider result.

use rayon::prelude::*;

use crate::dual::Dual1;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// An inclusion-isotonic integrand evaluated with its derivative.
pub trait FnEnclosure: Sync {
    fn eval(&self, t: Dual1) -> Result<Dual1>;

    fn eval_interval(&self, t: Interval) -> Result<Interval> {
        Ok(self.eval(Dual1::constant(t))?.v)
    }

    /// Power-law enclosure near the origin, used for cells starting at 0.
    fn near_zero(&self) -> Option<NearZero> {
        None
    }
}

impl<F> FnEnclosure for F
where
    F: Fn(Dual1) -> Result<Dual1> + Sync,
{
    fn eval(&self, t: Dual1) -> Result<Dual1> {
        self(t)
    }
}

/// `f(t) ∈ coeff · t^exponent` for `0 < t <= valid_up_to`.
///
/// Integrands against `dt/t^{p+1}` are singular-looking at 0 even when they
/// vanish there; this declaration lets the first cell be integrated in
/// closed form. The exponent must exceed -1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NearZero {
    pub coeff: Interval,
    pub exponent: Interval,
    pub valid_up_to: f64,
}

impl NearZero {
    /// Enclosure of `∫_0^v f` for `v <= valid_up_to`.
    pub fn integral(&self, v: f64) -> Result<Interval> {
        let e1 = self.exponent + 1.0;
        if e1.lo() <= 0.0 {
            return Err(Error::InvalidArgument(format!("near-zero exponent {} not > -1", self.exponent)));
        }
        Ok(self.coeff * (Interval::point(v).pow(e1)? / e1)?)
    }
}

/// An integrand paired with its near-zero law.
pub struct WithNearZero<F> {
    pub f: F,
    pub law: NearZero,
}

impl<F: FnEnclosure> FnEnclosure for WithNearZero<F> {
    fn eval(&self, t: Dual1) -> Result<Dual1> {
        self.f.eval(t)
    }

    fn near_zero(&self) -> Option<NearZero> {
        Some(self.law)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadConfig {
    pub max_depth: usize,
    pub target_width: f64,
    /// Cutoff `T` beyond which integrals over `(0, ∞)` use tail bounds.
    pub tail_cutoff: f64,
    /// Cell evaluation budget; exceeding it ends refinement early.
    pub max_evaluations: usize,
}

impl QuadConfig {
    pub fn new(max_depth: usize, target_width: f64, tail_cutoff: f64) -> Result<Self> {
        let cfg = QuadConfig { max_depth, target_width, tail_cutoff, ..QuadConfig::default() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_depth < 10 {
            return Err(Error::InvalidArgument(format!("max_depth {} < 10", self.max_depth)));
        }
        if !(self.target_width > 0.0) {
            return Err(Error::InvalidArgument(format!("target_width {} not > 0", self.target_width)));
        }
        if !(self.tail_cutoff >= std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidArgument(format!("tail cutoff {} < pi/2", self.tail_cutoff)));
        }
        Ok(())
    }

    pub fn with_width(mut self, w: f64) -> Self {
        self.target_width = w;
        self
    }

    pub fn with_depth(mut self, d: usize) -> Self {
        self.max_depth = d;
        self
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { max_depth: 40, target_width: 1e-6, tail_cutoff: 50.0, max_evaluations: 2_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadStatus {
    /// Width target met.
    Converged,
    /// Depth or budget exhausted first; the enclosure is still valid.
    Wide,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: Interval,
    pub status: QuadStatus,
    pub evaluations: usize,
}

fn cell_enclosure<F: FnEnclosure + ?Sized>(f: &F, u: f64, v: f64) -> Result<Interval> {
    let x = Interval::new(u, v)?;
    let h = Interval::point(v) - Interval::point(u);
    let m = x.mid();
    let fm = match f.eval_interval(Interval::point(m)) {
        Ok(y) => y,
        Err(e) => return Err(e),
    };
    let fx = match f.eval(Dual1::var(x, 0)) {
        Ok(d) => d,
        Err(_) => return Ok(Interval::entire()),
    };
    let crude = fx.v * h;
    let dw = fx.d[0].width();
    if !dw.is_finite() {
        return Ok(crude);
    }
    let r = (Interval::point(dw) * h.sqr() / 8.0)?.hi();
    let mvf = fm * h + Interval::new(-r, r)?;
    Ok(crude.tighten(&mvf))
}

/// Encloses `∫_a^b f(t) dt`.
pub fn integrate<F: FnEnclosure + ?Sized>(f: &F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    cfg.validate()?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("bad integration range [{a}, {b}]")));
    }
    let len = b - a;
    let mut retired = Interval::point(0.0);
    let mut active: Vec<(f64, f64)> = vec![(a, b)];
    // The near-zero piece is integrated in closed form once; splitting it
    // would not reduce its width.
    if let Some(law) = f.near_zero().filter(|_| a == 0.0) {
        if b <= law.valid_up_to {
            return Ok(QuadResult { value: law.integral(b)?, status: QuadStatus::Converged, evaluations: 1 });
        }
        retired = law.integral(law.valid_up_to)?;
        active = vec![(law.valid_up_to, b)];
    }
    let mut best = Interval::entire();
    let mut evaluations = 0usize;

    for depth in 0..=cfg.max_depth {
        let encl: Vec<Interval> = active.par_iter().map(|&(u, v)| cell_enclosure(f, u, v)).collect::<Result<_>>()?;
        evaluations += active.len();

        let total = encl.iter().fold(retired, |acc, e| acc + *e);
        best = best.tighten(&total);
        if best.width() <= cfg.target_width {
            return Ok(QuadResult { value: best, status: QuadStatus::Converged, evaluations });
        }

        let last = depth == cfg.max_depth || evaluations + 2 * active.len() > cfg.max_evaluations;
        if last {
            break;
        }
        let mut next = Vec::with_capacity(2 * active.len());
        for (&(u, v), e) in active.iter().zip(&encl) {
            let share = 0.5 * cfg.target_width * (v - u) / len;
            let m = 0.5 * u + 0.5 * v;
            let splittable = m > u && m < v;
            if e.width() <= share || !splittable {
                retired = retired + *e;
            } else {
                next.push((u, m));
                next.push((m, v));
            }
        }
        if next.is_empty() {
            break;
        }
        active = next;
    }
    Ok(QuadResult {
        value: best,
        status: if best.width() <= cfg.target_width { QuadStatus::Converged } else { QuadStatus::Wide },
        evaluations,
    })
}

/// Integrands with closed-form tail bounds against `dt/t^{p+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// `exp(-s t²/2)`
    Gauss,
    /// `|cos t|^s`
    CosPower,
    /// `1`
    One,
}

/// Encloses `∫_T^∞ h(t) t^{-p-1} dt` for the integrand selected by `kind`.
///
/// The Gaussian case uses `exp(-st²/2) <= exp(-sTt/2)` and
/// `t^{-p-1} <= T^{-p-1}` on `t >= T`, giving
/// `[0, (2/(sT)) T^{-p-1} exp(-sT²/2)]`.
pub fn tail_bound_mu_p(kind: TailKind, s: Interval, p: Interval, t_cut: f64) -> Result<Interval> {
    if !(t_cut >= std::f64::consts::FRAC_PI_2) {
        return Err(Error::domain("tail_bound_mu_p", format!("T = {t_cut} < pi/2")));
    }
    if s.lo() < 1.0 {
        return Err(Error::domain("tail_bound_mu_p", format!("s = {s} not >= 1")));
    }
    if p.lo() < 2.0 || p.hi() > 3.0 {
        return Err(Error::domain("tail_bound_mu_p", format!("p = {p} not inside [2, 3]")));
    }
    let t = Interval::point(t_cut);
    match kind {
        TailKind::One => t.pow(-p)? / p,
        TailKind::CosPower => Ok(Interval::new(0.0, (t.pow(-p)? / p)?.hi())?),
        TailKind::Gauss => gauss_tail(s, p + 1.0, t_cut),
    }
}

/// Encloses `∫_T^∞ exp(-s t²/2) t^{-q} dt` for `q >= 0`, `s > 0`, `T > 0`.
pub fn gauss_tail(s: Interval, q: Interval, t_cut: f64) -> Result<Interval> {
    if s.lo() <= 0.0 || q.lo() < 0.0 || !(t_cut > 0.0) {
        return Err(Error::domain("gauss_tail", format!("s = {s}, q = {q}, T = {t_cut}")));
    }
    let t = Interval::point(t_cut);
    let bound = ((2.0 / (s * t))? * t.pow(-q)? * (-(s * t.sqr()) * 0.5).exp()).hi();
    Interval::new(0.0, bound)
}
