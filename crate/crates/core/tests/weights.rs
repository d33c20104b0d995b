mod oracle;

use beurling::lie_repr::*;
use beurling::weights::*;
use proptest::prelude::*;

fn w(parts: &[u32]) -> DominantWeight {
    DominantWeight::new(parts.iter().map(|&x| i64::from(x)).collect()).unwrap()
}

#[test]
fn log_weights_match_direct_evaluation() {
    let families = [
        WeightFamily::dimension(0.5).unwrap(),
        WeightFamily::dimension(1.0).unwrap(),
        WeightFamily::polynomial(0.5).unwrap(),
        WeightFamily::polynomial(2.0).unwrap(),
        WeightFamily::exponential(0.5).unwrap(),
        WeightFamily::exponential(1.0).unwrap(),
    ];
    for n in 2..=4 {
        for lambda in oracle::dominant_weights(n, 6) {
            let lw = w(&lambda);
            let d = oracle::weyl_dim(&lambda) as f64;
            let l1 = f64::from(lambda[0]);
            for f in &families {
                let direct = match *f {
                    WeightFamily::Dimension { alpha } => d.powf(alpha),
                    WeightFamily::PolynomialLength { alpha } => (1.0 + l1).powf(alpha),
                    WeightFamily::ExponentialLength { beta } => l1.powf(beta).exp(),
                };
                let got = f.log_weight(&lw).exp();
                assert!((got - direct).abs() <= 1e-12 * direct, "{f:?} {lambda:?}: {got} vs {direct}");
                assert!((f.direct_weight(&lw) - direct).abs() <= 1e-12 * direct);
            }
        }
    }
}

#[test]
fn weights_are_submultiplicative_on_small_triples() {
    let lr = LittlewoodRichardson::default();
    for f in [
        WeightFamily::dimension(1.0).unwrap(),
        WeightFamily::polynomial(1.5).unwrap(),
        WeightFamily::exponential(0.5).unwrap(),
    ] {
        for n in 2..=3 {
            let r = submultiplicativity_scan(&f, n, 5, &lr).unwrap();
            assert!(r.holds(), "{f:?} n={n}: {}", r.worst_slack);
        }
    }
}

#[test]
fn condition1_scan_matches_direct_maximum() {
    let lr = LittlewoodRichardson::default();
    let report = condition1_scan(3, 4, &lr).unwrap();
    let mut best = 0.0f64;
    for a in oracle::dominant_weights(3, 4) {
        for b in oracle::dominant_weights(3, 4) {
            for nu in oracle::lr_by_characters(&a, &b).keys() {
                let rel = oracle::weyl_dim(nu) as f64
                    / (oracle::weyl_dim(&a) as f64 * oracle::weyl_dim(&b) as f64);
                let r = rel / (1.0 / f64::from(a[0] + 1) + 1.0 / f64::from(b[0] + 1));
                best = best.max(r);
            }
        }
    }
    assert!((report.empirical_c - best).abs() < 1e-12);
    assert!(report.within_known_bound().unwrap());
}

#[test]
fn ln_m_grows_with_scan_range() {
    let mut prev = f64::NEG_INFINITY;
    for upper in [0u64, 10, 100, 1000, 3000, 10_000, 100_000] {
        let (max, _, min, _) = p_extremes(0.5, 24.0, 1.0, upper);
        let ln_m = max - 2.0 * min;
        assert!(ln_m >= prev);
        prev = ln_m;
    }
}

#[test]
fn p_extremes_match_serial_scan() {
    let (max, amax, min, amin) = p_extremes(0.5, 24.0, 1.0, 50_000);
    let vals: Vec<f64> = (0..=50_000u64).map(|x| p_function(0.5, 24.0, 1.0, x as f64)).collect();
    let smax = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let smin = vals.iter().copied().fold(f64::INFINITY, f64::min);
    assert_eq!((max, min), (smax, smin));
    assert_eq!(vals[amax as usize], max);
    assert_eq!(vals[amin as usize], min);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn log_weight_is_nonnegative(parts in proptest::collection::vec(0u32..40, 1..5), alpha in 0.0f64..3.0) {
        let mut v = parts;
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.push(0);
        let lambda = w(&v);
        for f in [WeightFamily::Dimension { alpha }, WeightFamily::PolynomialLength { alpha }] {
            prop_assert!(f.log_weight(&lambda).value() >= 0.0);
        }
    }

    #[test]
    fn p_is_increasing_past_k(t in 1.0f64..50.0) {
        let k = threshold_k(0.5, 24.0);
        let x = k * t;
        prop_assert!(p_function(0.5, 24.0, 1.0, x * 1.01) > p_function(0.5, 24.0, 1.0, x));
        prop_assert!(q_function(0.5, 24.0, 1.0, x * 1.01) < q_function(0.5, 24.0, 1.0, x));
    }
}
