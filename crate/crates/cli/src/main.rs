use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use khintchine_cli::{exit_code, run, Format, RunConfig, Suite};

/// Exit status for malformed invocations and invalid configurations.
const EXIT_USAGE: u8 = 64;
/// Exit status when the report cannot be written.
const EXIT_IO: u8 = 74;

/// Verify the inequalities behind the optimal upper Khintchine constant
/// for 2 < p < 3.
///
/// Exit status: 0 all proved, 1 something failed, 2 inconclusive,
/// 64 usage error, 74 I/O error. Every flag may also be set through the
/// environment variable shown; flags take precedence.
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    #[arg(long, value_enum, env = "KHINTCHINE_SUITE", default_value = "all")]
    suite: Suite,
    /// Boxes covering p in [2, 3].
    #[arg(long, env = "KHINTCHINE_P_BOXES")]
    p_boxes: Option<usize>,
    /// Maximum quadrature bisection depth.
    #[arg(long, env = "KHINTCHINE_DEPTH")]
    depth: Option<usize>,
    /// Target quadrature enclosure width.
    #[arg(long, env = "KHINTCHINE_WIDTH")]
    width: Option<f64>,
    /// Explicit terms of the F_* series.
    #[arg(long, env = "KHINTCHINE_TERMS")]
    terms: Option<usize>,
    /// Seed for the random vectors of the oracle suite.
    #[arg(long, env = "KHINTCHINE_SEED")]
    seed: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, env = "KHINTCHINE_OUT")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, env = "KHINTCHINE_FORMAT", default_value = "text")]
    format: Format,
}

impl Cli {
    fn config(self) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            suite: self.suite,
            p_boxes: self.p_boxes.unwrap_or(d.p_boxes),
            depth: self.depth.unwrap_or(d.depth),
            target_width: self.width.unwrap_or(d.target_width),
            terms: self.terms.unwrap_or(d.terms),
            seed: self.seed.unwrap_or(d.seed),
            out_path: self.out,
            format: self.format,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let config = cli.config();
    if let Err(e) = config.validate() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_IO);
        }
    };
    match &config.out_path {
        Some(path) => eprintln!("overall {} (report written to {})", report.overall, path.display()),
        None => print!("{}", report.render(config.format)),
    }
    ExitCode::from(exit_code(&report) as u8)
}
