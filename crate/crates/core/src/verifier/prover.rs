//! Branch-and-bound proofs of `f >= 0` over boxes.
//!
//! Each cell is enclosed three ways: the natural interval extension, the
//! mean value form around the cell centre, and, for every coordinate in
//! which the gradient enclosure has a definite sign, evaluation on the face
//! where the minimum must lie. Cells whose lower bound clears the threshold
//! are retired; cells entirely below zero are counterexamples; the rest are
//! bisected along the coordinate contributing most to the enclosure width.

use rayon::prelude::*;

use crate::dual::Dual;
use crate::error::Result;
use crate::interval::Interval;

use super::check::{CheckResult, Mode, NONSTRICT_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProverConfig {
    pub mode: Mode,
    /// Budget of function evaluations.
    pub max_evaluations: usize,
    pub max_depth: usize,
}

impl ProverConfig {
    pub fn strict() -> Self {
        ProverConfig { mode: Mode::Strict, max_evaluations: 2_000_000, max_depth: 60 }
    }

    pub fn nonstrict() -> Self {
        ProverConfig { mode: Mode::NonStrict, ..ProverConfig::strict() }
    }

    pub fn with_budget(mut self, n: usize) -> Self {
        self.max_evaluations = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome<const N: usize> {
    /// Encloses the minimum of `f` over the domain.
    pub margin: Interval,
    pub evaluations: usize,
    /// Cells left undecided when the budget or depth ran out.
    pub unresolved: usize,
    /// A cell on which `f` is certainly negative, if one was found.
    pub counterexample: Option<[Interval; N]>,
}

impl<const N: usize> Outcome<N> {
    pub fn into_check(self, name: &str, mode: Mode) -> CheckResult {
        let mut r = CheckResult::leaf(name, self.margin, mode).with_evaluations(self.evaluations as u64);
        if let Some(c) = self.counterexample {
            r.note = Some(format!("negative on {c:?}"));
        } else if self.unresolved > 0 {
            r.note = Some(format!("{} cells unresolved", self.unresolved));
        }
        r
    }
}

struct CellEval<const N: usize> {
    lo: f64,
    hi: f64,
    grad: Option<[Interval; N]>,
    evaluations: usize,
}

fn vars<const N: usize>(cell: &[Interval; N]) -> [Dual<N>; N] {
    std::array::from_fn(|i| Dual::var(cell[i], i))
}

fn consts<const N: usize>(x: &[Interval; N]) -> [Dual<N>; N] {
    std::array::from_fn(|i| Dual::constant(x[i]))
}

fn finite_grad<const N: usize>(d: &[Interval; N]) -> bool {
    d.iter().all(|g| g.is_bounded())
}

/// Natural extension intersected with the mean value form.
fn enclose<const N: usize, F>(f: &F, cell: &[Interval; N]) -> (Interval, Option<[Interval; N]>, usize)
where
    F: Fn(&[Dual<N>; N]) -> Result<Dual<N>>,
{
    let Ok(nat) = f(&vars(cell)) else {
        return (Interval::entire(), None, 1);
    };
    if !finite_grad(&nat.d) || cell.iter().all(|c| c.is_point()) {
        return (nat.v, finite_grad(&nat.d).then_some(nat.d), 1);
    }
    let mid: [Interval; N] = std::array::from_fn(|i| Interval::point(cell[i].mid()));
    let Ok(fm) = f(&consts(&mid)) else {
        return (nat.v, Some(nat.d), 2);
    };
    let mut mvf = fm.v;
    for i in 0..N {
        mvf = mvf + nat.d[i] * (cell[i] - mid[i]);
    }
    (nat.v.tighten(&mvf), Some(nat.d), 2)
}

fn eval_cell<const N: usize, F>(f: &F, cell: &[Interval; N]) -> CellEval<N>
where
    F: Fn(&[Dual<N>; N]) -> Result<Dual<N>>,
{
    let (v, grad, mut evaluations) = enclose(f, cell);
    let mut lo = v.lo();
    if let Some(g) = &grad {
        let mut face = *cell;
        let mut moved = false;
        for i in 0..N {
            if cell[i].is_point() {
                continue;
            }
            if g[i].lo() >= 0.0 {
                face[i] = Interval::point(cell[i].lo());
                moved = true;
            } else if g[i].hi() <= 0.0 {
                face[i] = Interval::point(cell[i].hi());
                moved = true;
            }
        }
        if moved {
            let (fv, _, n) = enclose(f, &face);
            evaluations += n;
            lo = lo.max(fv.lo());
        }
    }
    CellEval { lo, hi: v.hi(), grad, evaluations }
}

fn split_axis<const N: usize>(cell: &[Interval; N], scale: &[f64; N], grad: &Option<[Interval; N]>) -> usize {
    let score = |i: usize| match grad {
        // A definite sign is resolved exactly by the face evaluation, so
        // only the spread of the derivative matters along such axes.
        Some(g) if g[i].lo() >= 0.0 || g[i].hi() <= 0.0 => g[i].width() * cell[i].width(),
        Some(g) => g[i].mag() * cell[i].width(),
        None => cell[i].width() / scale[i],
    };
    let mut best = 0;
    let mut best_score = f64::NEG_INFINITY;
    for i in 0..N {
        if cell[i].is_point() {
            continue;
        }
        let s = score(i);
        let s = if s.is_finite() { s } else { f64::MAX };
        if s > best_score {
            best = i;
            best_score = s;
        }
    }
    best
}

/// Proves `f >= 0` (in the sense of `cfg.mode`) on `domain`.
pub fn prove<const N: usize, F>(f: &F, domain: [Interval; N], cfg: &ProverConfig) -> Outcome<N>
where
    F: Fn(&[Dual<N>; N]) -> Result<Dual<N>> + Sync,
{
    let tol = match cfg.mode {
        Mode::Strict => 0.0,
        Mode::NonStrict => NONSTRICT_TOL,
    };
    let accept = |lo: f64| match cfg.mode {
        Mode::Strict => lo > 0.0,
        Mode::NonStrict => lo >= -tol,
    };
    let scale: [f64; N] = std::array::from_fn(|i| domain[i].width().max(f64::MIN_POSITIVE));
    let mut active = vec![domain];
    let mut min_lo = f64::INFINITY;
    let mut min_hi = f64::INFINITY;
    let mut evaluations = 0usize;
    let mut unresolved = 0usize;
    let mut counterexample = None;

    for depth in 0..=cfg.max_depth {
        if active.is_empty() {
            break;
        }
        let evals: Vec<CellEval<N>> = active.par_iter().map(|c| eval_cell(f, c)).collect();
        evaluations += evals.iter().map(|e| e.evaluations).sum::<usize>();
        let out_of_budget = depth == cfg.max_depth || evaluations + 6 * active.len() > cfg.max_evaluations;
        let mut next = Vec::new();
        for (cell, e) in active.iter().zip(&evals) {
            if accept(e.lo) {
                min_lo = min_lo.min(e.lo);
                min_hi = min_hi.min(e.hi);
                continue;
            }
            if e.hi < -tol {
                min_lo = min_lo.min(e.lo);
                min_hi = min_hi.min(e.hi);
                counterexample.get_or_insert(*cell);
                continue;
            }
            let axis = split_axis(cell, &scale, &e.grad);
            let (a, b) = cell[axis].bisect();
            let splittable = !cell[axis].is_point() && a.width() < cell[axis].width();
            if out_of_budget || !splittable || counterexample.is_some() {
                min_lo = min_lo.min(e.lo);
                min_hi = min_hi.min(e.hi);
                unresolved += 1;
                continue;
            }
            let mut left = *cell;
            let mut right = *cell;
            left[axis] = a;
            right[axis] = b;
            next.push(left);
            next.push(right);
        }
        active = next;
    }
    let margin = if min_lo.is_finite() || min_hi.is_finite() {
        Interval::new(min_lo, min_hi.max(min_lo)).unwrap_or(Interval::entire())
    } else {
        Interval::entire()
    };
    Outcome { margin, evaluations, unresolved, counterexample }
}

/// One-dimensional convenience wrapper.
pub fn prove1<F>(f: &F, domain: Interval, cfg: &ProverConfig) -> Outcome<1>
where
    F: Fn(Dual<1>) -> Result<Dual<1>> + Sync,
{
    prove(&|x: &[Dual<1>; 1]| f(x[0]), [domain], cfg)
}
