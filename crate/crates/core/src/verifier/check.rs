//! Results of individual checks and their aggregation.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::interval::Interval;

/// Tolerance granted to non-strict checks, whose claimed inequality is an
/// equality at some boundary point.
pub const NONSTRICT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Failed,
    Inconclusive,
    Proved,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Failed => "FAILED",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Proved => "PROVED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `Q > 0`
    Strict,
    /// `Q >= 0`, accepted once the enclosure's lower end is `>= -NONSTRICT_TOL`.
    NonStrict,
}

impl Mode {
    pub fn status(self, margin: &Interval) -> Status {
        let tol = match self {
            Mode::Strict => 0.0,
            Mode::NonStrict => NONSTRICT_TOL,
        };
        let proved = match self {
            Mode::Strict => margin.lo() > 0.0,
            Mode::NonStrict => margin.lo() >= -tol,
        };
        if proved {
            Status::Proved
        } else if margin.hi() < -tol {
            Status::Failed
        } else {
            Status::Inconclusive
        }
    }
}

/// The outcome of one check: a rigorous enclosure of a quantity whose
/// positivity is the claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub mode: Mode,
    #[serde(with = "interval_repr")]
    pub margin: Interval,
    /// The quantity being bounded, when it differs from the margin.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_interval_repr")]
    pub value: Option<Interval>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CheckResult>,
    pub evaluations: u64,
    #[serde(rename = "elapsed_ns", with = "duration_ns")]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn leaf(name: impl Into<String>, margin: Interval, mode: Mode) -> Self {
        CheckResult {
            name: name.into(),
            status: mode.status(&margin),
            mode,
            margin,
            value: None,
            note: None,
            children: Vec::new(),
            evaluations: 1,
            elapsed: Duration::ZERO,
        }
    }

    /// A leaf whose claim is `value >= bound` (or `<=` when `upper` is set).
    pub fn bound(name: impl Into<String>, value: Interval, bound: f64, upper: bool) -> Self {
        let b = Interval::point(bound);
        let margin = if upper { b - value } else { value - b };
        let mut r = CheckResult::leaf(name, margin, Mode::Strict);
        r.value = Some(value);
        r
    }

    /// Aggregates children. The composite is proved only if every child is,
    /// fails if any child fails, and its margin encloses the minimum of the
    /// children's margins.
    pub fn composite(name: impl Into<String>, children: Vec<CheckResult>) -> Self {
        let status = children.iter().map(|c| c.status).min().unwrap_or(Status::Inconclusive);
        let mode = if children.iter().all(|c| c.mode == Mode::Strict) { Mode::Strict } else { Mode::NonStrict };
        let margin = children.iter().map(|c| c.margin).reduce(|a, b| a.min(b)).unwrap_or(Interval::entire());
        let evaluations = children.iter().map(|c| c.evaluations).sum();
        let elapsed = children.iter().map(|c| c.elapsed).sum();
        CheckResult { name: name.into(), status, mode, margin, value: None, note: None, children, evaluations, elapsed }
    }

    /// Leaf for a computation that could not be carried out.
    pub fn errored(name: impl Into<String>, err: &crate::Error) -> Self {
        let mut r = CheckResult::leaf(name, Interval::entire(), Mode::Strict);
        r.note = Some(err.to_string());
        r
    }

    pub fn with_value(mut self, v: Interval) -> Self {
        self.value = Some(v);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_evaluations(mut self, n: u64) -> Self {
        self.evaluations = n;
        self
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }

    /// Depth-first search by name.
    pub fn find(&self, name: &str) -> Option<&CheckResult> {
        if self.name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }

    /// Visits this result and all descendants.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a CheckResult)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    /// Indented one-line-per-node rendering of the tree.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        use std::fmt::Write;
        let mode = match self.mode {
            Mode::Strict => "",
            Mode::NonStrict => " (non-strict)",
        };
        let _ = write!(
            out,
            "{:indent$}{} {}: margin [{:.6e}, {:.6e}]{mode} evals {} {:.3}s",
            "",
            self.status,
            self.name,
            self.margin.lo(),
            self.margin.hi(),
            self.evaluations,
            self.elapsed.as_secs_f64(),
            indent = 2 * depth
        );
        if let Some(v) = self.value {
            let _ = write!(out, " value {v}");
        }
        if let Some(n) = &self.note {
            let _ = write!(out, " [{n}]");
        }
        out.push('\n');
        for c in &self.children {
            c.render_into(out, depth + 1);
        }
    }

    /// Sets every elapsed time in the tree to zero.
    pub fn clear_timings(&mut self) {
        self.elapsed = Duration::ZERO;
        for c in &mut self.children {
            c.clear_timings();
        }
    }
}

/// Runs `f`, recording its wall time on the result.
pub fn timed(f: impl FnOnce() -> CheckResult) -> CheckResult {
    let start = Instant::now();
    let mut r = f();
    r.elapsed = start.elapsed();
    r
}

/// Turns a fallible computation into a check, reporting errors as
/// inconclusive leaves.
pub fn attempt(name: &str, f: impl FnOnce() -> crate::Result<CheckResult>) -> CheckResult {
    timed(|| f().unwrap_or_else(|e| CheckResult::errored(name, &e)))
}

/// Finite floats as JSON numbers, the rest as strings.
mod float_repr {
    use serde::de::{self, Deserializer};
    use serde::{Deserialize, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn to_repr(x: f64) -> impl Serialize {
        if x.is_finite() {
            Repr::Num(x)
        } else if x.is_nan() {
            Repr::Str("nan".into())
        } else if x > 0.0 {
            Repr::Str("inf".into())
        } else {
            Repr::Str("-inf".into())
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        to_repr(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("bad float {other:?}"))),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    #[serde(with = "float_repr")]
    lo: f64,
    #[serde(with = "float_repr")]
    hi: f64,
}

mod interval_repr {
    use super::IntervalRepr;
    use crate::interval::Interval;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Interval, s: S) -> Result<S::Ok, S::Error> {
        IntervalRepr { lo: x.lo(), hi: x.hi() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Interval, D::Error> {
        let r = IntervalRepr::deserialize(d)?;
        Interval::new(r.lo, r.hi).map_err(de::Error::custom)
    }
}

mod opt_interval_repr {
    use super::IntervalRepr;
    use crate::interval::Interval;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Interval>, s: S) -> Result<S::Ok, S::Error> {
        x.map(|x| IntervalRepr { lo: x.lo(), hi: x.hi() }).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Interval>, D::Error> {
        Option::<IntervalRepr>::deserialize(d)?
            .map(|r| Interval::new(r.lo, r.hi).map_err(de::Error::custom))
            .transpose()
    }
}

mod duration_ns {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(x: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(u64::try_from(x.as_nanos()).unwrap_or(u64::MAX))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_nanos(u64::deserialize(d)?))
    }
}
