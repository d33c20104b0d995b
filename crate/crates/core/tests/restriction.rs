mod oracle;

use beurling::lie_repr::*;
use beurling::restriction::*;
use beurling::weights::*;
use proptest::prelude::*;

fn w(parts: &[u32]) -> DominantWeight {
    DominantWeight::new(parts.iter().map(|&x| i64::from(x)).collect()).unwrap()
}

// Brute-force infimum over every dominant weight with first part ≤ max.
fn brute_force_min(family: &WeightFamily, p: &[i64], max: u32) -> f64 {
    let n = p.len() + 1;
    oracle::dominant_weights(n, max)
        .into_iter()
        .filter(|l| oracle::dominance_contains(l, p))
        .map(|l| family.log_weight(&w(&l)).value())
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn restricted_weights_match_brute_force() {
    let families = [
        WeightFamily::dimension(1.0).unwrap(),
        WeightFamily::polynomial(1.0).unwrap(),
        WeightFamily::exponential(0.5).unwrap(),
    ];
    for n in 2..=3 {
        for p in characters_in_ball(n - 1, 5) {
            let witness = witness_lambda(&p);
            for f in &families {
                let got = restricted_weight(f, &p, DEFAULT_BUDGET).unwrap();
                let want = brute_force_min(f, p.exponents(), witness.first() + 4);
                assert!((got.value.value() - want).abs() < 1e-12, "{f:?} {p}: {} vs {want}", got.value.value());
            }
        }
    }
}

#[test]
fn witness_contains_its_character() {
    for n in 2..=5 {
        for p in characters_in_ball(n - 1, 6) {
            let lambda = witness_lambda(&p);
            assert!(contains_character(&lambda, &p, DEFAULT_BUDGET).unwrap(), "{lambda} {p}");
            assert!(oracle::dominance_contains(lambda.parts(), p.exponents()));
        }
    }
}

#[test]
fn minimizers_are_sandwiched() {
    let f = WeightFamily::dimension(0.5).unwrap();
    for n in 2..=4 {
        let nn = (n * n) as u64;
        for p in characters_in_ball(n - 1, 6) {
            let r = restricted_weight(&f, &p, DEFAULT_BUDGET).unwrap();
            assert!(contains_character(&r.minimizer, &p, DEFAULT_BUDGET).unwrap());
            assert!(r.value.value() <= f.log_weight(&witness_lambda(&p)).value() + LOG_TOLERANCE);
            assert!(p.l1_norm() + 1 <= nn * (u64::from(r.minimizer.first()) + 1));
        }
    }
}

// Weyl group orbit of P: permute (p_1, …, p_{n-1}, 0) and renormalize.
fn weyl_orbit(p: &TorusCharacter) -> Vec<TorusCharacter> {
    let mut full: Vec<i64> = p.exponents().to_vec();
    full.push(0);
    let mut out = Vec::new();
    permutations(&mut full, 0, &mut out);
    out
}

fn permutations(v: &mut Vec<i64>, k: usize, out: &mut Vec<TorusCharacter>) {
    if k == v.len() {
        let last = v[v.len() - 1];
        out.push(TorusCharacter::new(v[..v.len() - 1].iter().map(|x| x - last).collect()));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

#[test]
fn restriction_is_weyl_invariant() {
    let families = [WeightFamily::dimension(1.0).unwrap(), WeightFamily::polynomial(1.0).unwrap()];
    for n in 2..=4 {
        for p in characters_in_ball(n - 1, 4) {
            for f in &families {
                let base = restricted_weight(f, &p, DEFAULT_BUDGET).unwrap().value.value();
                for q in weyl_orbit(&p) {
                    let v = restricted_weight(f, &q, DEFAULT_BUDGET).unwrap().value.value();
                    assert!((v - base).abs() < 1e-12, "{f:?} {p} vs {q}");
                }
            }
        }
    }
}

#[test]
fn equivalence_constants_closed_forms() {
    let c = equivalence_constants(3);
    assert!((c.c_n - 1.0 / (81.0 * 2.0 * 2.0)).abs() < 1e-15);
    assert!((c.d_n - 8.0).abs() < 1e-15);
    let c = equivalence_constants(4);
    assert!((c.c_n - 1.0 / (16f64.powi(3) * 4.0 * 12.0)).abs() < 1e-18);
    assert!((c.d_n - 125.0 / 6.0).abs() < 1e-13);
}

#[test]
fn exponential_restriction_is_abs_p() {
    for n in 3..=4 {
        let r = check_exp_restriction(n, 6, DEFAULT_BUDGET).unwrap();
        assert!(r.passed());
        for e in &r.entries {
            assert_eq!(e.minimal_first_part, e.p.unsigned_abs() as u32);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dimension_restriction_within_bounds(p in proptest::collection::vec(-5i64..=5, 1..=2), half in any::<bool>()) {
        let n = p.len() + 1;
        let alpha = if half { 0.5 } else { 1.0 };
        let f = WeightFamily::dimension(alpha).unwrap();
        let chi = TorusCharacter::new(p);
        let v = restricted_weight(&f, &chi, DEFAULT_BUDGET).unwrap().value.value();
        let c = equivalence_constants(n);
        let rho = ((n - 1) as f64 * alpha) * (1.0 + chi.l1_norm() as f64).ln();
        prop_assert!(v >= alpha * c.c_n.ln() + rho - 1e-12);
        prop_assert!(v <= alpha * c.d_n.ln() + rho + 1e-12);
    }
}
