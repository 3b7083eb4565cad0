use khintchine_core::distfn::*;
use khintchine_core::Interval;

fn mp(p: f64) -> MeasureParams {
    MeasureParams::point(p).unwrap()
}

fn pt(x: f64) -> Interval {
    Interval::point(x)
}

#[test]
fn f_star_examples() {
    let v = f_star(pt(1e-9), &mp(2.0), DEFAULT_TERMS).unwrap();
    assert!(v.lo() >= 0.0 && v.hi() <= 1e-6, "{v:?}");

    let f = f_star(pt(0.97), &mp(2.0), 100).unwrap();
    let g = g_star(pt(0.97), &mp(2.0)).unwrap();
    assert!(f.lo() > g.hi(), "{f:?} vs {g:?}");
    assert!((g.mid() - 8.20769877632262).abs() < 1e-10);

    let m = mp(2.5);
    let a = f_star(pt(0.3), &m, DEFAULT_TERMS).unwrap();
    let b = f_star(pt(0.6), &m, DEFAULT_TERMS).unwrap();
    let c = f_star(pt(0.9), &m, DEFAULT_TERMS).unwrap();
    assert!(a.hi() < b.lo() && b.hi() < c.lo());
}

#[test]
fn g_star_examples() {
    let x = (-0.5f64).exp();
    let g = g_star(pt(x), &mp(2.0)).unwrap();
    assert!(g.lo() >= 0.5 - 1e-14 && g.hi() <= 0.5 + 1e-14);
    let g = g_star(pt(0.97), &mp(2.0)).unwrap();
    let direct = 1.0 / (2.0 * (2.0 * (1.0 / 0.97f64).ln()));
    assert!((g.mid() - direct).abs() < 1e-12);
    assert!(g_star(pt(1e-9), &mp(2.0)).unwrap().hi() <= 0.013);
}

#[test]
fn derivative_examples() {
    let x = (-0.5f64).exp();
    let d = derivatives(pt(x), &mp(2.0), DEFAULT_TERMS).unwrap();
    assert!((d.g_prime.mid() - 0.5f64.exp()).abs() < 1e-12);

    for &p in &[2.0, 2.5, 3.0] {
        for i in 1..40 {
            let x = i as f64 / 40.0;
            let d = derivatives(pt(x), &mp(p), DEFAULT_TERMS).unwrap();
            assert!(d.f_prime.lo() >= 0.0 && d.g_prime.lo() >= 0.0);
            let lead = f_prime_leading(pt(x), &mp(p)).unwrap();
            assert!(lead.lo() <= d.f_prime.hi());
        }
    }

    let x = 1.0f64.cos();
    let d = derivatives(pt(x), &mp(2.0), DEFAULT_TERMS).unwrap();
    let ratio = (d.f_prime / d.g_prime).unwrap();
    assert!(ratio.lo() > 1.0, "{ratio:?}");
}

#[test]
fn brute_force_examples() {
    for &p in &[2.0, 2.5, 3.0] {
        for &y in &[0.05, 0.5, 0.9] {
            let b = brute_force_dist(y, &mp(p), Which::Gauss).unwrap();
            let g = g_star(pt(y), &mp(p)).unwrap();
            assert!(b.overlaps(&g));
        }
    }
    let b = brute_force_dist(0.5, &mp(2.0), Which::Cos).unwrap();
    assert!(b.overlaps(&f_star(pt(0.5), &mp(2.0), DEFAULT_TERMS).unwrap()));
    let b = brute_force_dist(0.97, &mp(2.0), Which::Cos).unwrap();
    assert!(b.lo() > 8.2 && b.hi() < 8.3);
}

#[test]
fn f_star_agrees_with_brute_force_on_grid() {
    for &p in &[2.0, 2.25, 2.5, 2.75, 3.0] {
        for i in 0..50 {
            let x = 0.015 + 0.96 * i as f64 / 49.0;
            let f = f_star(pt(x), &mp(p), DEFAULT_TERMS).unwrap();
            let b = brute_force_dist(x, &mp(p), Which::Cos).unwrap();
            assert!(f.overlaps(&b), "p={p} x={x} {f:?} {b:?}");
            assert!(f.hull(&b).width() <= 1e-6, "p={p} x={x}");
        }
    }
}

#[test]
fn distribution_functions_are_nondecreasing() {
    for &p in &[2.0, 2.5, 3.0] {
        let mut prev_f = 0.0;
        let mut prev_g = 0.0;
        for i in 1..100 {
            let x = i as f64 / 100.0;
            let f = f_star(pt(x), &mp(p), DEFAULT_TERMS).unwrap().mid();
            let g = g_star(pt(x), &mp(p)).unwrap().mid();
            assert!(f >= prev_f && g >= prev_g);
            prev_f = f;
            prev_g = g;
        }
    }
}

#[test]
fn finite_differences_match_derivatives() {
    let h = 1e-4;
    for &p in &[2.0, 2.5, 3.0] {
        let m = mp(p);
        for i in 1..=20 {
            let x = 0.04 + 0.9 * i as f64 / 21.0;
            let fd_f = (f_star(pt(x + h), &m, DEFAULT_TERMS).unwrap().mid()
                - f_star(pt(x - h), &m, DEFAULT_TERMS).unwrap().mid())
                / (2.0 * h);
            let fd_g = (g_star(pt(x + h), &m).unwrap().mid() - g_star(pt(x - h), &m).unwrap().mid()) / (2.0 * h);
            let d = derivatives(pt(x), &m, DEFAULT_TERMS).unwrap();
            assert!((fd_f / d.f_prime.mid() - 1.0).abs() <= 1e-2, "F' p={p} x={x}");
            assert!((fd_g / d.g_prime.mid() - 1.0).abs() <= 1e-2, "G' p={p} x={x}");
        }
    }
}

#[test]
fn p_boxes_enclose_point_values() {
    let boxed = MeasureParams::new(Interval::new(2.4, 2.5).unwrap()).unwrap();
    for &x in &[0.1, 0.5, 0.9] {
        let fb = f_star(pt(x), &boxed, DEFAULT_TERMS).unwrap();
        let gb = g_star(pt(x), &boxed).unwrap();
        for &p in &[2.4, 2.45, 2.5] {
            assert!(f_star(pt(x), &mp(p), DEFAULT_TERMS).unwrap().subset_of(&fb));
            assert!(g_star(pt(x), &mp(p)).unwrap().subset_of(&gb));
        }
    }
}

#[test]
fn dist_point_sampling() {
    let d = f_star_point(0.5, &mp(2.0), DEFAULT_TERMS, true).unwrap();
    assert!(d.value.lo() >= 0.0);
    assert!(d.derivative.unwrap().lo() > 0.0);
    assert!(f_star_point(0.5, &mp(2.0), DEFAULT_TERMS, false).unwrap().derivative.is_none());
}
