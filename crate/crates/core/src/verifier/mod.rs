//! Checks of the inequalities in the proof, each reporting a rigorous margin.
//!
//! Every check returns a [`CheckResult`] tree. Leaves carry an enclosure of
//! a quantity whose positivity is the claim; composites are proved exactly
//! when all their children are. Claims over ranges of `t`, `x`, `s` or `p`
//! are established by the branch-and-bound [`prover`]; claims that hold for
//! all `p` in `[2, 3]` are additionally re-verified over a covering of that
//! range by p-boxes.

pub mod check;
pub mod conclusion;
pub mod cond1;
pub mod cond2;
pub mod np;
pub mod prover;
pub mod series;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quad::QuadConfig;

pub use check::{CheckResult, Mode, Status};

use prover::{prove, ProverConfig};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifierConfig {
    /// Number of boxes covering `p ∈ [2, 3]`.
    pub p_boxes: usize,
    pub quad: QuadConfig,
    /// Terms of the series for `F_*`.
    pub terms: usize,
    /// Evaluation budget per subdivision proof.
    pub budget: usize,
}

impl Default for VerifierConfig {
    fn default() -> Self {
        VerifierConfig {
            p_boxes: 16,
            quad: QuadConfig::default().with_width(1e-9),
            terms: crate::distfn::DEFAULT_TERMS,
            budget: 2_000_000,
        }
    }
}

impl VerifierConfig {
    pub fn validate(&self) -> Result<()> {
        if self.p_boxes == 0 {
            return Err(Error::InvalidArgument("p_boxes must be >= 1".into()));
        }
        if self.terms < 10 {
            return Err(Error::InvalidArgument("terms must be >= 10".into()));
        }
        self.quad.validate()
    }

    fn prover(&self, mode: Mode) -> ProverConfig {
        let base = match mode {
            Mode::Strict => ProverConfig::strict(),
            Mode::NonStrict => ProverConfig::nonstrict(),
        };
        base.with_budget(self.budget)
    }
}

/// A subdivision cell over `p` and one other variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PBox {
    pub p: Interval,
    pub x_or_t: Interval,
}

impl PBox {
    pub fn new(p: Interval, x_or_t: Interval) -> Result<Self> {
        if p.lo() < 2.0 || p.hi() > 3.0 {
            return Err(Error::InvalidArgument(format!("p-box {p} not inside [2, 3]")));
        }
        Ok(PBox { p, x_or_t })
    }
}

/// `n` equal boxes covering `[2, 3]`.
pub fn p_covering(n: usize) -> Vec<Interval> {
    (0..n)
        .map(|i| {
            let a = 2.0 + i as f64 / n as f64;
            let b = if i + 1 == n { 3.0 } else { 2.0 + (i + 1) as f64 / n as f64 };
            Interval::new(a, b).unwrap()
        })
        .collect()
}

/// Runs the prover on a one-dimensional claim.
pub(crate) fn prove_1d<F>(name: &str, f: F, domain: (f64, f64), mode: Mode, cfg: &VerifierConfig) -> CheckResult
where
    F: Fn(Dual<1>) -> Result<Dual<1>> + Sync,
{
    check::timed(|| {
        let dom = match Interval::new(domain.0, domain.1) {
            Ok(d) => d,
            Err(e) => return CheckResult::errored(name, &e),
        };
        prove(&|x: &[Dual<1>; 1]| f(x[0]), [dom], &cfg.prover(mode)).into_check(name, mode)
    })
}

/// Runs the prover on a claim in `(t, p)`.
pub(crate) fn prove_2d<F>(name: &str, f: F, t: Interval, p: Interval, mode: Mode, cfg: &VerifierConfig) -> CheckResult
where
    F: Fn(Dual<2>, Dual<2>) -> Result<Dual<2>> + Sync,
{
    check::timed(|| prove(&|x: &[Dual<2>; 2]| f(x[0], x[1]), [t, p], &cfg.prover(mode)).into_check(name, mode))
}

/// A leaf whose margin encloses the minimum of finitely many enclosures.
pub(crate) fn min_leaf(name: &str, values: impl IntoIterator<Item = Result<Interval>>, mode: Mode) -> CheckResult {
    check::timed(|| {
        let mut acc: Option<Interval> = None;
        let mut n = 0u64;
        for v in values {
            n += 1;
            match v {
                Ok(v) => acc = Some(acc.map_or(v, |a| a.min(v))),
                Err(e) => return CheckResult::errored(name, &e),
            }
        }
        match acc {
            Some(m) => CheckResult::leaf(name, m, mode).with_evaluations(n),
            None => CheckResult::errored(name, &Error::InvalidArgument("empty grid".into())),
        }
    })
}

/// `x^a` for a base that may touch 0, bounding the derivative in the
/// exponent by `x^a ln x ∈ [-1/(e a), 0]` on `[0, 1]`.
pub(crate) fn pow_var<const N: usize>(base: Dual<N>, expo: Dual<N>) -> Result<Dual<N>> {
    if base.v.lo() > 0.0 {
        return base.powd(expo);
    }
    let v = base.v.pow(expo.v)?;
    if base.v.hi() > 1.0 || expo.v.lo() <= 1.0 {
        return Ok(Dual { v, d: [Interval::entire(); N] });
    }
    let dx = expo.v * base.v.pow(expo.v - 1.0)?;
    // x^a |ln x| <= x^{a_lo} |ln x|, which increases up to x = e^{-1/a_lo}.
    let a_lo = Interval::point(expo.v.lo());
    let b = Interval::point(base.v.hi());
    let turn = (-a_lo.recip()?).exp();
    let m = if b.hi() <= turn.lo() && b.hi() > 0.0 {
        -(b.pow(a_lo)? * b.ln()?)
    } else {
        (Interval::point(1.0).exp() * a_lo).recip()?
    };
    let dl = Interval::new(-m.hi(), 0.0)?;
    let mut d = base.d;
    for (di, ei) in d.iter_mut().zip(expo.d) {
        *di = dx * *di + dl * ei;
    }
    Ok(Dual { v, d })
}
