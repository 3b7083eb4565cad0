use std::process::{Command, Output};

use khintchine_cli::{exit_code, run, Format, Report, RunConfig, Suite};
use khintchine_core::verifier::{CheckResult, Mode, Status};
use khintchine_core::Interval;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_khintchine-verify"));
    for (k, _) in std::env::vars() {
        if k.starts_with("KHINTCHINE_") {
            c.env_remove(k);
        }
    }
    c
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn constants_suite_text() {
    let o = bin().args(["--suite", "constants"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("khintchine-verify ") && lines[0].contains("suite=Constants"));
    assert!(lines[1].starts_with("constants PROVED"));
    // Header, the composite, five leaves and the overall line.
    assert_eq!(lines.len(), 8, "{text}");
    assert!(lines.iter().any(|l| l.trim_start().starts_with("B_p=2.5 PROVED")));
    assert_eq!(*lines.last().unwrap(), "overall PROVED");
}

#[test]
fn json_output_parses_and_round_trips() {
    let o = bin().args(["--suite", "constants", "--format", "json"]).output().unwrap();
    assert_eq!(code(&o), 0);
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.schema_version, 1);
    assert_eq!(report.config_echo.suite, Suite::Constants);
    assert_eq!(report.overall, Status::Proved);
    let b3 = report.results[0].find("B_p=3").unwrap().value.unwrap();
    // B_3 = 2^{1/2} (Γ(2)/√π)^{1/3}.
    let expected = 2f64.sqrt() * std::f64::consts::PI.sqrt().recip().powf(1.0 / 3.0);
    assert!(b3.lo() - 1e-14 <= expected && expected <= b3.hi() + 1e-14, "{b3:?}");
    let again: Report = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(again, report);
}

#[test]
fn inconclusive_run_exits_2() {
    let o = bin().args(["--suite", "cond2", "--width", "1e-1"]).output().unwrap();
    assert_eq!(code(&o), 2, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("overall INCONCLUSIVE\n"));
}

#[test]
fn usage_errors_exit_64() {
    for args in
        [&["--suite", "bogus"][..], &["--depth", "5"], &["--p-boxes", "0"], &["--width", "-1"], &["--no-such-flag"]]
    {
        let o = bin().args(args).output().unwrap();
        assert_eq!(code(&o), 64, "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_0() {
    for flag in ["--help", "--version"] {
        let o = bin().arg(flag).output().unwrap();
        assert_eq!(code(&o), 0);
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn report_written_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = bin().args(["--suite", "constants", "--format", "json", "--out"]).arg(&path).output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8(o.stderr).unwrap().contains("overall PROVED"));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report.results[0].name, "constants");
}

#[test]
fn unwritable_out_exits_74() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("report.json");
    let o = bin().args(["--suite", "constants", "--out"]).arg(&path).output().unwrap();
    assert_eq!(code(&o), 74);
}

#[test]
fn environment_sets_defaults_and_flags_win() {
    let o = bin().env("KHINTCHINE_SUITE", "constants").output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("suite=Constants"));

    let o = bin()
        .env("KHINTCHINE_SUITE", "cond2")
        .env("KHINTCHINE_FORMAT", "json")
        .env("KHINTCHINE_SEED", "7")
        .args(["--suite", "constants", "--seed", "9"])
        .output()
        .unwrap();
    let report: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((report.config_echo.suite, report.config_echo.seed), (Suite::Constants, 9));

    let o = bin().env("KHINTCHINE_DEPTH", "3").args(["--suite", "constants"]).output().unwrap();
    assert_eq!(code(&o), 64);
}

#[test]
fn run_writes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("np.txt");
    let config = RunConfig { suite: Suite::Np, out_path: Some(path.clone()), ..RunConfig::default() };
    let a = run(&config).unwrap();
    let b = run(&config).unwrap();
    assert_eq!(a.deterministic_body(), b.deterministic_body());
    assert_eq!(a.overall, Status::Proved);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), b.render(Format::Text));
}

#[test]
fn invalid_config_is_rejected() {
    let config = RunConfig { depth: 2, ..RunConfig::default() };
    assert!(run(&config).is_err());
    let config = RunConfig { target_width: f64::NAN, ..RunConfig::default() };
    assert!(run(&config).is_err());
}

#[test]
fn exit_code_follows_overall_status() {
    let base = run(&RunConfig { suite: Suite::Constants, ..RunConfig::default() }).unwrap();
    assert_eq!(exit_code(&base), 0);
    let leaf = |lo: f64, hi: f64| CheckResult::leaf("x", Interval::new(lo, hi).unwrap(), Mode::Strict);
    for (margin, status, expected) in
        [((-1.0, -0.5), Status::Failed, 1), ((-1.0, 1.0), Status::Inconclusive, 2), ((0.5, 1.0), Status::Proved, 0)]
    {
        let r = leaf(margin.0, margin.1);
        assert_eq!(r.status, status);
        let report = Report { results: vec![r], overall: status, ..base.clone() };
        assert_eq!(exit_code(&report), expected);
    }
}
