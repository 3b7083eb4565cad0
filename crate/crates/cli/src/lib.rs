//! Runs verification suites and assembles reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use khintchine_core::interval::Interval;
use khintchine_core::oracle::check_oracle_suite;
use khintchine_core::quad::QuadConfig;
use khintchine_core::specfun::b_constant;
use khintchine_core::verifier::check::attempt;
use khintchine_core::verifier::{conclusion, cond1, cond2, np, CheckResult, Mode, Status, VerifierConfig};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Endpoints splitting `(0, 1)` into the small-x, middle and near-one ranges.
pub const RHO: f64 = 1.0 / 15.0;
pub const SIGMA: f64 = 0.97;

/// Grids for the direct conclusion check and the convergence check.
pub const CONCLUSION_P: [f64; 3] = [2.1, 2.5, 2.9];
pub const CONCLUSION_S: [f64; 4] = [std::f64::consts::SQRT_2, 2.0, 4.0, 16.0];
pub const CONVERGENCE_P: f64 = 2.5;
pub const CONVERGENCE_S: [f64; 3] = [4.0, 16.0, 64.0];
pub const CONSTANT_P: [f64; 5] = [2.0, 2.25, 2.5, 2.75, 3.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cond1,
    Cond2,
    Np,
    Conclusion,
    Oracle,
    Constants,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub p_boxes: usize,
    /// Maximum bisection depth of the quadrature.
    pub depth: usize,
    /// Target enclosure width of the quadrature.
    pub target_width: f64,
    /// Explicit terms of the `F_*` series.
    pub terms: usize,
    pub seed: u64,
    pub out_path: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let v = VerifierConfig::default();
        RunConfig {
            suite: Suite::All,
            p_boxes: v.p_boxes,
            depth: v.quad.max_depth,
            target_width: v.quad.target_width,
            terms: v.terms,
            seed: 20_240_601,
            out_path: None,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> anyhow::Result<()> {
        if self.p_boxes < 1 {
            bail!("p_boxes must be >= 1");
        }
        if self.depth < 10 {
            bail!("depth must be >= 10");
        }
        if !(self.target_width > 0.0 && self.target_width.is_finite()) {
            bail!("target width must be a positive number");
        }
        self.verifier().validate()?;
        Ok(())
    }

    pub fn verifier(&self) -> VerifierConfig {
        let base = VerifierConfig::default();
        VerifierConfig {
            p_boxes: self.p_boxes,
            quad: QuadConfig { max_depth: self.depth, target_width: self.target_width, ..base.quad },
            terms: self.terms,
            ..base
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config_echo: RunConfig,
    pub results: Vec<CheckResult>,
    pub overall: Status,
    pub timestamp: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON report without the fields that vary between identical runs:
    /// the timestamp and the wall times.
    pub fn deterministic_body(&self) -> String {
        let mut r = self.clone();
        r.timestamp.clear();
        r.results.iter_mut().for_each(CheckResult::clear_timings);
        r.to_json()
    }

    /// One line per check: indented name, status and margin.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "khintchine-verify {} suite={:?} p_boxes={} depth={} width={:e} terms={} seed={}\n",
            self.tool_version,
            self.config_echo.suite,
            self.config_echo.p_boxes,
            self.config_echo.depth,
            self.config_echo.target_width,
            self.config_echo.terms,
            self.config_echo.seed
        );
        fn line(s: &mut String, r: &CheckResult, depth: usize) {
            let _ = writeln!(
                s,
                "{:indent$}{} {} [{:e}, {:e}]",
                "",
                r.name,
                r.status,
                r.margin.lo(),
                r.margin.hi(),
                indent = 2 * depth
            );
            for c in &r.children {
                line(s, c, depth + 1);
            }
        }
        for r in &self.results {
            line(&mut s, r, 0);
        }
        let _ = writeln!(s, "overall {}", self.overall);
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

/// `B_p` enclosures on a grid of `p`, each checked against `A_p = 1`.
pub fn check_constants(p_list: &[f64]) -> CheckResult {
    let children = p_list
        .iter()
        .map(|&p| {
            let name = format!("B_p={p}");
            attempt(&name, || {
                let k = b_constant(Interval::point(p))?;
                Ok(CheckResult::leaf(&name, k.b - k.a, Mode::NonStrict).with_value(k.b))
            })
        })
        .collect();
    CheckResult::composite("constants", children)
}

/// The direct conclusion grid and the convergence of the normalized moments.
pub fn check_conclusion_suite(cfg: &VerifierConfig) -> CheckResult {
    CheckResult::composite(
        "conclusion",
        vec![
            conclusion::check_conclusion_direct(&CONCLUSION_P, &CONCLUSION_S, cfg),
            conclusion::check_fp_convergence(CONVERGENCE_P, &CONVERGENCE_S, cfg),
        ],
    )
}

fn suite_results(config: &RunConfig) -> Vec<CheckResult> {
    let cfg = config.verifier();
    let one = |s: Suite| match s {
        Suite::Cond1 => cond1::check_cond1(RHO, SIGMA, &cfg),
        Suite::Cond2 => cond2::check_cond2(&cfg),
        Suite::Np => np::check_np(&cfg),
        Suite::Conclusion => check_conclusion_suite(&cfg),
        Suite::Oracle => check_oracle_suite(config.seed),
        Suite::Constants => check_constants(&CONSTANT_P),
        Suite::All => unreachable!(),
    };
    match config.suite {
        Suite::All => [Suite::Constants, Suite::Cond1, Suite::Cond2, Suite::Np, Suite::Conclusion, Suite::Oracle]
            .into_iter()
            .map(one)
            .collect(),
        s => vec![one(s)],
    }
}

/// Runs the configured suite without writing anything.
pub fn execute(config: &RunConfig) -> anyhow::Result<Report> {
    config.validate()?;
    let results = suite_results(config);
    let overall = results.iter().map(|r| r.status).min().unwrap_or(Status::Inconclusive);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        config_echo: config.clone(),
        results,
        overall,
        timestamp: chrono::Utc::now().to_rfc3339(),
    })
}

pub fn write_report(report: &Report, format: Format, path: &Path) -> anyhow::Result<()> {
    std::fs::write(path, report.render(format)).with_context(|| format!("writing report to {}", path.display()))
}

/// Runs the configured suite and writes the report to `out_path` when set.
pub fn run(config: &RunConfig) -> anyhow::Result<Report> {
    let report = execute(config)?;
    if let Some(path) = &config.out_path {
        write_report(&report, config.format, path)?;
    }
    Ok(report)
}

pub fn exit_code(report: &Report) -> i32 {
    match report.overall {
        Status::Proved => 0,
        Status::Failed => 1,
        Status::Inconclusive => 2,
    }
}
