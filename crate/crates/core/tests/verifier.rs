mod common;

use common::Hp;
use khintchine_core::distfn::{brute_force_dist, g_star, MeasureParams, Which};
use khintchine_core::dual::{Dual, Dual1};
use khintchine_core::interval::Interval;
use khintchine_core::verifier::conclusion::{check_conclusion_direct, check_fp_convergence, conclusion_margin};
use khintchine_core::verifier::np::{check_np_at, np_generic, IntegralHypothesis};
use khintchine_core::verifier::{cond1, cond2, CheckResult, Mode, Status, VerifierConfig};
use proptest::prelude::*;

fn cfg() -> VerifierConfig {
    VerifierConfig::default()
}

/// Follows a path of child names.
fn at<'a>(r: &'a CheckResult, path: &[&str]) -> &'a CheckResult {
    path.iter().fold(r, |node, name| {
        node.children.iter().find(|c| c.name == *name).unwrap_or_else(|| panic!("no child {name} under {}", node.name))
    })
}

/// Recomputes every status from margins and children.
fn assert_consistent(r: &CheckResult) {
    r.walk(&mut |node| {
        if node.children.is_empty() {
            assert_eq!(node.status, node.mode.status(&node.margin), "{}", node.name);
        } else {
            let worst = node.children.iter().map(|c| c.status).min().unwrap();
            assert_eq!(node.status, worst, "{}", node.name);
            for c in &node.children {
                assert!(node.margin.lo() <= c.margin.lo(), "{} vs {}", node.name, c.name);
            }
        }
    });
}

#[test]
fn sign_at_sigma() {
    let r = cond1::check_cond1_sign_at_sigma(0.97, &cfg());
    assert!(r.is_proved(), "{}", r.render());
    assert_consistent(&r);
    // RHS at p = 2 against a 256-bit evaluation.
    let s = Hp::f(0.97);
    let a = s.acos();
    let pi = Hp::pi();
    let rhs = Hp::int(1) / (&a * &a) - Hp::int(1) / (Hp::int(-2) * s.ln()) - &(&pi * &pi) * &a / (&pi - &a).powi(3);
    let at2 = at(&r, &["bound-at-p2"]);
    assert!(common::inside(at2.value.unwrap(), &rhs));
    assert!((rhs.to_f64() - 0.0679003).abs() < 1e-6);
    assert!(at(&r, &["ordering"]).is_proved());

    let weak = cond1::check_cond1_sign_at_sigma(0.5, &cfg());
    assert_eq!(at(&weak, &["bound-at-p2"]).status, Status::Failed);
    assert_eq!(weak.status, Status::Failed);
    assert_ne!(cond1::check_cond1_sign_at_sigma(1.5, &cfg()).status, Status::Proved);
}

#[test]
fn small_x_chain() {
    let r = cond1::check_cond1_small_x(1.0 / 15.0, &cfg());
    assert!(r.is_proved(), "{}", r.render());
    assert_consistent(&r);
    let d2 = at(&r, &["endpoint-constants", "d2"]).value.unwrap();
    let d3 = at(&r, &["endpoint-constants", "d3"]).value.unwrap();
    assert!(d2.hi() <= 0.5482 && d3.hi() <= 0.3367);
    assert!(at(&r, &["quadratic-maximum"]).is_proved());
    // The constant 1.8 only holds at p = 2; 1.14 is what the chain needs.
    let pe = |p: f64| 2.7f64.exp() / (5.4f64).powf(p / 2.0);
    assert!(pe(2.0) > 1.8 && pe(3.0) < 1.8 && pe(3.0) > 1.14);
    assert!(cond1::check_cond1_small_x(0.2, &cfg()).status != Status::Proved);
}

#[test]
fn monotonicity_chain() {
    let r = cond1::check_cond1_monotone(1.0 / 15.0, &cfg());
    assert!(r.is_proved(), "{}", r.render());
    assert_consistent(&r);
    for child in ["reduction-to-p2", "case1-polynomials", "case2-convexity", "t-endpoint", "spot-values", "p-boxes"] {
        assert!(at(&r, &[child]).is_proved(), "{child}");
    }
    assert_eq!(at(&r, &["p-boxes"]).children.len(), 16);

    // The quartic coefficient of the log bound at t = π/2.
    let t2 = (std::f64::consts::FRAC_PI_2).powi(2);
    let coeff = 2.0 / 45.0 - 0.5 * (1.0 / 6.0 + 2.0 / 45.0 * t2).powi(2);
    assert!((coeff - 0.00626).abs() < 1e-5);
    let q = at(&r, &["reduction-to-p2", "log-lower-bound", "quartic-coefficient"]);
    assert!(q.margin.lo() <= coeff + 1e-12 && q.margin.lo() > 0.0);

    // cot 1 anchor: 1/40 - (1 - 1/3 - cot 1).
    let one = Hp::int(1);
    let cot1 = one.cos() / one.sin();
    let anchor = Hp::f(0.025) - (Hp::int(2) / Hp::int(3) - cot1);
    let m = at(&r, &["case1-polynomials", "cotangent", "anchor"]).margin;
    assert!(common::inside(m, &anchor));

    // Tangent of g at 1.1 above f at 1.
    let g = |t: f64| t.powi(-3) + (std::f64::consts::PI - t).powi(-3);
    let dg = |t: f64| -3.0 * t.powi(-4) + 3.0 * (std::f64::consts::PI - t).powi(-4);
    let f = |t: f64| t.tan() / (-2.0 * t.cos().ln()).powi(2);
    let margin = g(1.1) + dg(1.1) * (1.0 - 1.1) - f(1.0);
    let m = at(&r, &["case2-convexity", "tangents", "tangent-1.1-at-1"]).margin;
    assert!(m.lo() > 0.0 && (m.mid() - margin).abs() < 1e-9, "{m} {margin}");
}

#[test]
fn h2_pieces_and_net() {
    let r = cond2::check_cond2_h2(&cfg());
    assert!(r.is_proved(), "{}", r.render());
    assert_consistent(&r);
    let p = cond2::h2_pieces().unwrap();
    for v in [p.a, p.b, p.c, p.d] {
        assert!(v.width() <= 5e-4);
    }
    assert!(p.a.lo() >= 0.03129 && p.c.hi() <= 0.2577 && p.d.hi() <= 0.0667);
    assert!(p.net().lo() > 0.0 && (p.net().mid() - 0.0030).abs() < 5e-4);

    // The Gaussian tail piece against a 256-bit evaluation.
    let a = Hp::pi() / Hp::int(4);
    let sqrt2 = Hp::int(2).sqrt();
    let u = &(&a * &a) / &sqrt2;
    let ei = common::ei(-u.to_f64());
    let b = (-u.clone()).exp() / (&(&Hp::int(2) * &a) * &a) + ei / (Hp::int(2) * sqrt2);
    assert!((b.to_f64() - p.b.mid()).abs() < 1e-9);
    assert!(b.to_f64() < 0.29587, "the printed lower bound for this piece is not attained");

    let claim = cond2::printed_majorant_claim();
    assert_eq!(claim.status, Status::Failed);
}

#[test]
fn hprime_pieces() {
    let r = cond2::check_cond2_hprime(&cfg());
    assert!(r.is_proved(), "{}", r.render());
    assert_consistent(&r);
    let p = cond2::hprime_pieces(&cfg()).unwrap();
    assert!(p.near.lo() >= 0.0153 && p.near.width() <= 1e-4);
    assert!(p.middle.lo() >= -0.0147);
    assert_eq!(at(&r, &["tail", "comparison"]).children.len(), 16);
    assert_eq!(cond2::printed_tail_constant_claim(&cfg()).status, Status::Failed);
}

fn identity(x: Dual1) -> khintchine_core::Result<Dual1> {
    Ok(x)
}

fn zero(_: Dual1) -> khintchine_core::Result<Dual1> {
    Ok(Dual::constant(0.0))
}

fn zero_integral() -> IntegralHypothesis<'static> {
    IntegralHypothesis { integrand: &zero, cut: 2.0, tail: Interval::point(0.0) }
}

#[test]
fn np_identical_functions() {
    let r = np_generic(&identity, &identity, 1.0, 2.0, &zero_integral(), 16, &cfg());
    assert!(r.is_proved(), "{}", r.render());
    assert_eq!(r.mode, Mode::NonStrict);
    for c in &r.children {
        assert!(c.margin.contains(0.0), "{}", c.name);
    }
}

#[test]
fn np_shifted_function_fails() {
    let shifted = |x: Dual1| Ok(x + 1.0);
    let r = np_generic(&identity, &shifted, 1.0, 2.0, &zero_integral(), 16, &cfg());
    assert_eq!(at(&r, &["sign-change"]).status, Status::Failed);
    assert_eq!(r.status, Status::Failed);
}

#[test]
fn np_two_crossings_fail_with_diagnostic() {
    // (x - 0.3)(x - 0.7) is positive, then negative, then positive.
    let f = |x: Dual1| Ok((x - 0.3) * (x - 0.7));
    let r = np_generic(&f, &zero, 1.0, 2.0, &zero_integral(), 16, &cfg());
    let s = at(&r, &["sign-change"]);
    assert_eq!(s.status, Status::Failed);
    assert!(s.note.as_deref().unwrap().contains("more than one sign change"));
}

#[test]
fn np_rejects_small_grid() {
    let r = np_generic(&identity, &identity, 1.0, 2.0, &zero_integral(), 8, &cfg());
    assert_eq!(r.status, Status::Inconclusive);
}

#[test]
fn np_instance_localizes_crossing() {
    for p in [2.0, 2.5, 3.0] {
        let r = check_np_at(p, &cfg());
        assert!(r.is_proved(), "{}", r.render());
        assert_consistent(&r);
        let y0 = at(&r, &["sign-change"]).value.unwrap();
        assert!(y0.lo() > 1.0 / 15.0 && y0.hi() < 0.97, "p={p} {y0}");
        // The brute-force distribution function brackets the crossing.
        let mp = MeasureParams::point(p).unwrap();
        let diff = |y: f64| brute_force_dist(y, &mp, Which::Cos).unwrap() - g_star(Interval::point(y), &mp).unwrap();
        assert!(diff(y0.lo() - 1e-3).hi() < 0.0, "p={p}");
        assert!(diff(y0.hi() + 1e-3).lo() > 0.0, "p={p}");
    }
}

/// `∫_0^∞ (e^{-t²} - cos²t) t^{-p-1} dt` by composite Simpson in f64.
fn simpson_s2(p: f64) -> f64 {
    let d: f64 = 1e-3;
    // e^{-t²} - cos²t = t⁴/6 + O(t⁶) near 0.
    let head = d.powf(4.0 - p) / (6.0 * (4.0 - p));
    let f = |t: f64| ((-t * t).exp() - t.cos().powi(2)) / t.powf(p + 1.0);
    let mut body = 0.0;
    let pieces = [(d, 0.1, 2_000), (0.1, 2.0, 20_000), (2.0, 50.0, 400_000)];
    for (a, b, n) in pieces {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        body += s * h / 3.0;
    }
    // Mean of cos² over the tail.
    let tail = -0.5 * 50f64.powf(-p) / p;
    head + body + tail
}

#[test]
fn conclusion_examples() {
    let c = cfg();
    let q = c.quad.with_width(1e-6);
    let m_root2 = conclusion_margin(2.5, std::f64::consts::SQRT_2, &q).unwrap();
    let m_10 = conclusion_margin(2.5, 10.0, &q).unwrap();
    assert!(m_root2.lo() > 0.0 && m_10.lo() > m_root2.hi());
    for p in [2.1, 2.5, 2.9] {
        let m = conclusion_margin(p, 2.0, &q).unwrap();
        let oracle = simpson_s2(p);
        assert!((m.mid() - oracle).abs() < 2e-5 + m.width(), "p={p} {m} {oracle}");
    }
    assert!(conclusion_margin(2.5, 1.0, &q).is_err());
}

#[test]
fn conclusion_grid_is_positive_and_monotone_in_s() {
    let s_grid = [std::f64::consts::SQRT_2, 2.0, 4.0, 16.0];
    let p_grid = [2.1, 2.5, 2.9];
    let r = check_conclusion_direct(&p_grid, &s_grid, &cfg());
    assert!(r.is_proved(), "{}", r.render());
    assert_consistent(&r);
    for (i, _) in p_grid.iter().enumerate() {
        let row = &r.children[i * s_grid.len()..(i + 1) * s_grid.len()];
        for w in row.windows(2) {
            assert!(w[0].margin.mid() <= w[1].margin.mid(), "{} {}", w[0].name, w[1].name);
        }
    }
}

#[test]
fn fp_convergence() {
    let r = check_fp_convergence(2.5, &[4.0, 16.0, 64.0], &cfg());
    assert!(r.is_proved(), "{}", r.render());
    let limit = at(&r, &["limit-positive"]).value.unwrap();
    assert!((limit.mid() - 0.8243588098).abs() < 1e-6);
    let d4 = at(&r, &["deviation-s=4"]).value.unwrap();
    assert!((d4.mid() + 0.0174873).abs() < 1e-5);
    assert_eq!(check_fp_convergence(2.5, &[16.0, 4.0], &cfg()).status, Status::Inconclusive);
    assert_eq!(check_fp_convergence(2.5, &[1.0, 4.0], &cfg()).status, Status::Inconclusive);
}

fn arb_interval() -> impl Strategy<Value = Interval> {
    (-1.0f64..1.0, 0.0f64..1.0).prop_map(|(lo, w)| Interval::new(lo, lo + w).unwrap())
}

fn arb_mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Strict), Just(Mode::NonStrict)]
}

proptest! {
    #[test]
    fn leaf_status_is_a_function_of_margin(m in arb_interval(), mode in arb_mode()) {
        let r = CheckResult::leaf("x", m, mode);
        let expected = if match mode { Mode::Strict => m.lo() > 0.0, Mode::NonStrict => m.lo() >= -1e-12 } {
            Status::Proved
        } else if m.hi() < -1e-12 || (mode == Mode::Strict && m.hi() < 0.0) {
            Status::Failed
        } else {
            Status::Inconclusive
        };
        prop_assert_eq!(r.status, expected);
    }

    #[test]
    fn composite_is_proved_iff_all_children_are(
        leaves in prop::collection::vec((arb_interval(), arb_mode()), 1..8)
    ) {
        let children: Vec<CheckResult> = leaves.iter().map(|(m, mode)| CheckResult::leaf("c", *m, *mode)).collect();
        let all = children.iter().all(|c| c.is_proved());
        let any_failed = children.iter().any(|c| c.status == Status::Failed);
        let r = CheckResult::composite("root", children);
        prop_assert_eq!(r.is_proved(), all);
        prop_assert_eq!(r.status == Status::Failed, any_failed);
        assert_consistent(&r);
    }
}
