//! Brute-force floating point checks of the Khintchine inequality itself:
//! Rademacher moments by enumeration, binomial weights and Monte Carlo.
//!
//! Nothing here is rigorous. These values are independent of the interval
//! machinery and serve as a sanity net for it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::specfun::b_constant;
use crate::verifier::{CheckResult, Mode};

/// Largest `n` handled by enumeration.
pub const MAX_EXACT_N: usize = 26;
/// Largest `n` handled by binomial weights.
pub const MAX_BINOMIAL_N: usize = 10_000;
/// Sign patterns below this many free signs are enumerated in one chunk.
const CHUNK_BITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    a: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidArgument("coefficient vector is empty".into()));
        }
        if a.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("coefficient vector has non-finite entries".into()));
        }
        Ok(CoefficientVector { a })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn norm2(&self) -> f64 {
        self.a.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Neumaier's compensated sum.
#[derive(Clone, Copy, Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn value(self) -> f64 {
        self.s + self.c
    }
}

/// `E|Σ a_k ε_k|^p` by enumerating sign patterns.
///
/// The first sign is fixed to `+` by the symmetry `ε → -ε`. The remaining
/// patterns are split into chunks by their high bits; inside a chunk the
/// low bits run in Gray code order so each step flips one sign. Chunk sums
/// are combined in chunk order, so the result does not depend on the
/// thread count.
pub fn exact_moment(a: &CoefficientVector, p: f64) -> Result<f64> {
    let n = a.len();
    if n > MAX_EXACT_N {
        return Err(Error::Capacity { what: "exact_moment", limit: MAX_EXACT_N, got: n });
    }
    if !(p > 0.0) {
        return Err(Error::InvalidArgument(format!("p = {p} not > 0")));
    }
    let a = a.as_slice();
    let free = n - 1;
    let low = free.min(CHUNK_BITS);
    let high = free - low;
    let chunk_sum = |hi_bits: u64| {
        let mut s = a[0];
        for (j, &x) in a[1 + low..].iter().enumerate() {
            s += if hi_bits >> j & 1 == 1 { -x } else { x };
        }
        s += a[1..1 + low].iter().sum::<f64>();
        let mut acc = Sum::default();
        acc.add(s.abs().powf(p));
        let mut signs = vec![1.0f64; low];
        for step in 1u64..(1 << low) {
            let j = step.trailing_zeros() as usize;
            s -= 2.0 * signs[j] * a[1 + j];
            signs[j] = -signs[j];
            acc.add(s.abs().powf(p));
        }
        acc
    };
    let parts: Vec<Sum> = (0..1u64 << high).into_par_iter().map(chunk_sum).collect();
    let mut total = Sum::default();
    for part in parts {
        total.add(part.s);
        total.add(part.c);
    }
    Ok(total.value() / (1u64 << free) as f64)
}

/// Outcome of [`khintchine_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KhintchineOutcome {
    /// `(E|Σ a_k ε_k|^p)^{1/p} / ‖a‖₂`
    pub ratio: f64,
    /// Midpoint of the enclosure of `B_p`.
    pub bound: f64,
    /// `1 <= ratio <= B_p`, each with slack `1e-12`.
    pub ok: bool,
}

pub fn khintchine_check(a: &CoefficientVector, p: f64) -> Result<KhintchineOutcome> {
    if !(2.0..=3.0).contains(&p) {
        return Err(Error::domain("khintchine_check", format!("p = {p} not in [2, 3]")));
    }
    let norm = a.norm2();
    if norm == 0.0 {
        return Err(Error::domain("khintchine_check", "zero vector"));
    }
    let ratio = exact_moment(a, p)?.powf(1.0 / p) / norm;
    let bound = b_constant(Interval::point(p))?.b.mid();
    let ok = ratio <= bound + 1e-12 && ratio >= 1.0 - 1e-12;
    Ok(KhintchineOutcome { ratio, bound, ok })
}

/// `E|n^{-1/2} Σ_{k<=n} ε_k|^p` and its Gaussian limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteckinPoint {
    pub n: usize,
    pub moment: f64,
    pub target: f64,
}

/// `E|g|^p = 2^{p/2} Γ((p+1)/2) / √π` for a standard Gaussian `g`.
pub fn gaussian_moment(p: f64) -> f64 {
    (0.5 * p * std::f64::consts::LN_2 + ln_gamma(0.5 * (p + 1.0)) - 0.5 * std::f64::consts::PI.ln()).exp()
}

/// Moments of normalized equal-coefficient sums from binomial weights
/// `C(n,k) 2^{-n}`, accumulated in log space.
pub fn steckin_convergence(p: f64, n_list: &[usize]) -> Result<Vec<SteckinPoint>> {
    let target = gaussian_moment(p);
    n_list
        .iter()
        .map(|&n| {
            if n == 0 || n > MAX_BINOMIAL_N {
                return Err(Error::Capacity { what: "steckin_convergence", limit: MAX_BINOMIAL_N, got: n });
            }
            Ok(SteckinPoint { n, moment: binomial_moment(n, p), target })
        })
        .collect()
}

/// `Σ_k C(n,k) 2^{-n} |(2k-n)/√n|^p`.
pub fn binomial_moment(n: usize, p: f64) -> f64 {
    let nf = n as f64;
    let ln_half = -std::f64::consts::LN_2 * nf;
    let mut ln_c = 0.0;
    let mut acc = Sum::default();
    for k in 0..=n {
        if k > 0 {
            ln_c += ((n - k + 1) as f64 / k as f64).ln();
        }
        let x = ((2 * k) as f64 - nf).abs() / nf.sqrt();
        if x > 0.0 {
            acc.add((ln_c + ln_half + p * x.ln()).exp());
        }
    }
    acc.value()
}

/// Monte Carlo estimate and its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

/// Sample mean of `|Σ a_k ε_k|^p` over seeded ChaCha8 signs.
pub fn monte_carlo_moment(a: &CoefficientVector, p: f64, trials: usize, seed: u64) -> Result<McEstimate> {
    if trials < 1000 {
        return Err(Error::InvalidArgument(format!("trials = {trials} < 1000")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for i in 0..trials {
        let s: f64 = a.as_slice().iter().map(|&x| if rng.gen::<bool>() { x } else { -x }).sum();
        let v = s.abs().powf(p);
        let delta = v - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (v - mean);
    }
    let var = m2 / (trials - 1) as f64;
    Ok(McEstimate { estimate: mean, stderr: (var / trials as f64).sqrt() })
}

/// Uniform on the unit sphere: normalized independent standard normals.
pub fn random_unit_vector<R: Rng>(n: usize, rng: &mut R) -> CoefficientVector {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            return CoefficientVector { a: v.into_iter().map(|x| x / norm).collect() };
        }
    }
}

/// `count` seeded random unit vectors with `n` in `1..=max_n`.
pub fn random_unit_vectors(count: usize, max_n: usize, seed: u64) -> Vec<CoefficientVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_unit_vector(n, &mut rng)
        })
        .collect()
}

fn point(x: f64) -> Interval {
    Interval::point(x)
}

/// Khintchine's inequality with `B_p` on random unit vectors, for each `p`.
pub fn check_khintchine_sweep(count: usize, max_n: usize, p_list: &[f64], seed: u64) -> CheckResult {
    let vectors = random_unit_vectors(count, max_n, seed);
    let children = p_list
        .iter()
        .map(|&p| {
            let name = format!("khintchine-p={p}");
            crate::verifier::check::attempt(&name, || {
                let mut upper = f64::INFINITY;
                let mut lower = f64::INFINITY;
                for a in &vectors {
                    let r = khintchine_check(a, p)?;
                    upper = upper.min(r.bound - r.ratio);
                    lower = lower.min(r.ratio - 1.0);
                }
                let up = CheckResult::leaf("upper", point(upper), Mode::NonStrict);
                let lo = CheckResult::leaf("lower", point(lower), Mode::NonStrict);
                let mut r = CheckResult::composite(&name, vec![up, lo]);
                r.evaluations = vectors.len() as u64;
                Ok(r.with_note(format!("{} vectors, n <= {max_n}, seed {seed}", vectors.len())))
            })
        })
        .collect();
    CheckResult::composite("khintchine-sweep", children)
}

/// Normalized equal-coefficient sums approach the Gaussian moment: within
/// `rel_tol` at the last `n`, with shrinking deviations along `n_list`.
pub fn check_steckin(p: f64, n_list: &[usize], rel_tol: f64) -> CheckResult {
    let name = format!("steckin-p={p}");
    crate::verifier::check::attempt(&name, || {
        let pts = steckin_convergence(p, n_list)?;
        let dev: Vec<f64> = pts.iter().map(|q| (q.moment - q.target).abs()).collect();
        let mut children: Vec<CheckResult> = dev
            .windows(2)
            .zip(n_list.windows(2))
            .map(|(d, n)| CheckResult::leaf(format!("decreasing-{}-{}", n[0], n[1]), point(d[0] - d[1]), Mode::Strict))
            .collect();
        let last = pts.last().ok_or_else(|| Error::InvalidArgument("empty n_list".into()))?;
        children.push(
            CheckResult::leaf("relative-error", point(rel_tol - dev[dev.len() - 1] / last.target), Mode::Strict)
                .with_value(point(last.moment))
                .with_note(format!("target {}", last.target)),
        );
        Ok(CheckResult::composite(&name, children))
    })
}

/// The oracle suite: the Khintchine sweep and the Gaussian limit.
pub fn check_oracle_suite(seed: u64) -> CheckResult {
    CheckResult::composite(
        "oracle",
        vec![
            check_khintchine_sweep(200, 16, &[2.2, 2.5, 2.8], seed),
            check_steckin(3.0, &[16, 64], 0.02),
            check_steckin(2.5, &[16, 64, 256, 1024], 0.02),
        ],
    )
}
