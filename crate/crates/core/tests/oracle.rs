use khintchine_core::oracle::*;
use khintchine_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cv(a: &[f64]) -> CoefficientVector {
    CoefficientVector::new(a.to_vec()).unwrap()
}

#[test]
fn exact_moment_examples() {
    for p in [0.5, 2.0, 2.7, 3.0] {
        assert_eq!(exact_moment(&cv(&[1.0]), p).unwrap(), 1.0);
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for p in [2.2, 2.5, 3.0] {
        let m = exact_moment(&cv(&[h, h]), p).unwrap();
        assert!((m - 2f64.powf(p / 2.0 - 1.0)).abs() < 1e-14);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=12 {
        let a = random_unit_vector(n, &mut rng);
        assert!((exact_moment(&a, 2.0).unwrap() - 1.0).abs() < 1e-13);
    }
    assert!(matches!(exact_moment(&cv(&[0.1; 27]), 2.5), Err(Error::Capacity { .. })));
    assert!(exact_moment(&cv(&[1.0]), 0.0).is_err());
    assert!(CoefficientVector::new(vec![]).is_err());
    assert!(CoefficientVector::new(vec![f64::NAN]).is_err());
}

#[test]
fn enumeration_is_deterministic_at_full_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = random_unit_vector(MAX_EXACT_N, &mut rng);
    let m1 = exact_moment(&a, 2.5).unwrap();
    let m2 = exact_moment(&a, 2.5).unwrap();
    assert_eq!(m1.to_bits(), m2.to_bits());
}

#[test]
fn khintchine_examples() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let r = khintchine_check(&cv(&[h, h]), 3.0).unwrap();
    assert!((r.ratio - 2f64.powf(1.0 / 6.0)).abs() < 1e-14);
    assert!(r.ok && (r.bound - 1.168_575_255).abs() < 1e-9);
    let r = khintchine_check(&cv(&[1.0, 0.0, 0.0]), 2.5).unwrap();
    assert_eq!(r.ratio, 1.0);
    assert!(r.ok);
    assert!(khintchine_check(&cv(&[0.0, 0.0]), 2.5).is_err());
    assert!(khintchine_check(&cv(&[1.0]), 3.5).is_err());
}

#[test]
fn khintchine_sweep() {
    for p in [2.2, 2.5, 2.8] {
        for a in random_unit_vectors(200, 16, 1) {
            assert!(a.len() <= 16);
            let r = khintchine_check(&a, p).unwrap();
            assert!(r.ok, "p={p} {a:?} {r:?}");
        }
    }
    assert!(check_khintchine_sweep(200, 16, &[2.2, 2.5, 2.8], 1).is_proved());
}

#[test]
fn steckin_examples() {
    for q in steckin_convergence(2.0, &[1, 7, 64, 1000]).unwrap() {
        assert!((q.moment - 1.0).abs() < 1e-12 && (q.target - 1.0).abs() < 1e-14);
    }
    let q = steckin_convergence(3.0, &[64]).unwrap()[0];
    assert!((q.target - 1.595_769_12).abs() < 1e-8);
    assert!((q.moment - q.target).abs() / q.target < 0.02);
    let pts = steckin_convergence(2.5, &[16, 64, 256, 1024]).unwrap();
    for w in pts.windows(2) {
        assert!((w[0].moment - w[0].target).abs() > (w[1].moment - w[1].target).abs());
    }
    assert!(steckin_convergence(2.5, &[MAX_BINOMIAL_N + 1]).is_err());
    assert!(check_steckin(3.0, &[16, 64], 0.02).is_proved());
}

#[test]
fn binomial_weights_match_enumeration() {
    for n in 1..=20 {
        let a = cv(&vec![1.0 / (n as f64).sqrt(); n]);
        for p in [2.2, 2.5, 3.0] {
            let e = exact_moment(&a, p).unwrap();
            let b = binomial_moment(n, p);
            assert!((e - b).abs() <= 1e-12 * e.max(1.0), "n={n} p={p} {e} {b}");
        }
    }
}

#[test]
fn monte_carlo_examples() {
    let one = monte_carlo_moment(&cv(&[1.0]), 2.5, 1000, 5).unwrap();
    assert_eq!((one.estimate, one.stderr), (1.0, 0.0));
    let a = cv(&[8f64.sqrt().recip(); 8]);
    let mc = monte_carlo_moment(&a, 2.5, 100_000, 42).unwrap();
    let exact = exact_moment(&a, 2.5).unwrap();
    assert!((mc.estimate - exact).abs() <= 4.0 * mc.stderr, "{mc:?} {exact}");
    assert_eq!(mc, monte_carlo_moment(&a, 2.5, 100_000, 42).unwrap());
    assert!(monte_carlo_moment(&a, 2.5, 999, 42).is_err());
}

#[test]
fn exhaustive_symmetries_small_n() {
    // Every permutation and sign pattern of a fixed vector with n = 5.
    fn permutations(v: &[f64]) -> Vec<Vec<f64>> {
        if v.len() <= 1 {
            return vec![v.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut rest = v.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let base = [0.9, -0.3, 0.25, 0.1, 0.6];
    let m0 = exact_moment(&cv(&base), 2.5).unwrap();
    for perm in permutations(&base) {
        for signs in 0..1u32 << base.len() {
            let v: Vec<f64> = perm.iter().enumerate().map(|(j, x)| if signs >> j & 1 == 1 { -x } else { *x }).collect();
            let m = exact_moment(&cv(&v), 2.5).unwrap();
            assert!((m - m0).abs() <= 1e-13 * m0);
        }
    }
}

#[test]
fn exhaustive_sign_flips_and_transpositions() {
    // Adjacent transpositions generate all permutations.
    for n in 1..=10 {
        let base: Vec<f64> = (0..n).map(|k| 1.0 / (k as f64 + 1.5)).collect();
        let m0 = exact_moment(&cv(&base), 2.5).unwrap();
        for signs in 0..1u32 << n {
            for swap in 0..n.max(2) - 1 {
                let mut v: Vec<f64> =
                    base.iter().enumerate().map(|(j, x)| if signs >> j & 1 == 1 { -x } else { *x }).collect();
                if n > 1 {
                    v.swap(swap, swap + 1);
                }
                let m = exact_moment(&cv(&v), 2.5).unwrap();
                assert!((m - m0).abs() <= 1e-12 * m0, "n={n}");
            }
        }
    }
}

fn arb_vector() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 1..=10).prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-3))
}

proptest! {
    #[test]
    fn permutation_and_sign_invariance(v in arb_vector(), seed in any::<u64>(), p in 2.0f64..3.0) {
        let m0 = exact_moment(&cv(&v), p).unwrap();
        let mut w = v.clone();
        let mut s = seed;
        for i in (1..w.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            w.swap(i, (s >> 33) as usize % (i + 1));
        }
        for (j, x) in w.iter_mut().enumerate() {
            if seed >> j & 1 == 1 {
                *x = -*x;
            }
        }
        let m1 = exact_moment(&cv(&w), p).unwrap();
        prop_assert!((m1 - m0).abs() <= 1e-12 * m0);
    }

    #[test]
    fn homogeneity(v in arb_vector(), lambda in 0.1f64..10.0, p in 2.0f64..3.0) {
        let scaled: Vec<f64> = v.iter().map(|x| lambda * x).collect();
        let m = exact_moment(&cv(&v), p).unwrap();
        let ms = exact_moment(&cv(&scaled), p).unwrap();
        prop_assert!((ms - lambda.powf(p) * m).abs() <= 1e-12 * ms);
    }

    #[test]
    fn power_means_increase_in_p(seed in 0u64..50) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed as usize % 10);
        let a = random_unit_vector(n, &mut rng);
        let grid = [1.0, 1.5, 2.0, 2.25, 2.5, 2.75, 3.0, 4.0];
        let norms: Vec<f64> = grid.iter().map(|&p| exact_moment(&a, p).unwrap().powf(1.0 / p)).collect();
        for w in norms.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-12));
        }
    }
}
