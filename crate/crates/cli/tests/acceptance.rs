//! Acceptance criteria, one pass/fail line each. Run with
//! `cargo test -p beurling-cli --test acceptance -- --nocapture`.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::process::Command;
use std::time::Instant;

use beurling::lie_repr::*;
use beurling::multipliers::*;
use beurling::restriction::*;
use beurling::weights::*;

struct Check {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn w(parts: &[u32]) -> DominantWeight {
    DominantWeight::new(parts.iter().map(|&x| i64::from(x)).collect()).unwrap()
}

fn lr_weyl_cross_validation() -> Check {
    let start = Instant::now();
    let mut pairs = 0;
    let mut mismatches = Vec::new();
    for n in 2..=3 {
        let weights = oracle::dominant_weights(n, 6);
        for a in &weights {
            for b in &weights {
                pairs += 1;
                let dec = tensor_decompose(&w(a), &w(b), DEFAULT_BUDGET).unwrap();
                let got: Vec<(Vec<u32>, u64)> = dec.terms.iter().map(|(k, &c)| (k.parts().to_vec(), c)).collect();
                let want: Vec<(Vec<u32>, u64)> = oracle::lr_by_characters(a, b).into_iter().collect();
                let dims: u128 = got.iter().map(|(nu, c)| oracle::weyl_dim(nu) * u128::from(*c)).sum();
                if got != want || dims != oracle::weyl_dim(a) * oracle::weyl_dim(b) || !dec.conserves_dimension() {
                    mismatches.push(format!("{a:?}x{b:?}"));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Check {
        id: 1,
        name: "LR/Weyl cross-validation",
        passed: mismatches.is_empty() && secs < 60.0,
        detail: format!("{pairs} products, {} mismatches, {secs:.2}s", mismatches.len()),
    }
}

fn condition1_appendix_a() -> Check {
    let r = condition1_scan(3, 8, &LittlewoodRichardson::default()).unwrap();
    Check {
        id: 2,
        name: "Condition-1 constant for SU(3)",
        passed: r.empirical_c <= 3.0,
        detail: format!(
            "max C = {:.6} at {} x {} -> {} over {} triples (bound 3)",
            r.empirical_c, r.witness.lhs, r.witness.rhs, r.witness.term, r.triples_scanned
        ),
    }
}

fn restriction_scan(id: u32, name: &'static str, dim: bool) -> Check {
    let mut details = Vec::new();
    let mut total = 0;
    for n in 2..=3 {
        for alpha in [0.5, 1.0] {
            let r = if dim {
                check_dim_restriction_bounds(n, alpha, 12, DEFAULT_BUDGET)
            } else {
                check_poly_restriction_bounds(n, alpha, 12, DEFAULT_BUDGET)
            }
            .unwrap();
            total += r.violations;
            details.push(format!(
                "n={n} a={alpha}: {} pts, margins {:.3}/{:.3}",
                r.points, r.worst_lower_margin, r.worst_upper_margin
            ));
        }
    }
    Check { id, name, passed: total == 0, detail: format!("{total} violations; {}", details.join("; ")) }
}

fn exponential_restriction() -> Check {
    let mut mismatches = 0;
    let mut entries = 0;
    for n in 3..=4 {
        let r = check_exp_restriction(n, 10, DEFAULT_BUDGET).unwrap();
        mismatches += r.mismatches;
        entries += r.entries.len();
    }
    Check {
        id: 5,
        name: "exponential restriction equals |p|",
        passed: mismatches == 0,
        detail: format!("{entries} characters, {mismatches} mismatches"),
    }
}

fn rudin_shapiro_identity() -> Check {
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for k in 0..=12 {
        let pair = rudin_shapiro(k).unwrap();
        if !pair.p.iter().chain(&pair.q).all(|&c| c == 1 || c == -1) {
            failures.push(format!("k={k}: coefficients"));
        }
        match supnorm_check(&pair, 4096) {
            Ok(r) => worst = worst.max(r.max_identity_error),
            Err(e) => failures.push(format!("k={k}: {e}")),
        }
    }
    Check {
        id: 6,
        name: "Rudin-Shapiro modulus identity and sup bound",
        passed: failures.is_empty() && worst <= 1e-9,
        detail: format!("max identity error {worst:.3e} over k <= 12; {:?}", failures),
    }
}

fn torus_lower_bound() -> Check {
    let mut violations = 0;
    let mut tightest = f64::INFINITY;
    for n in 1..=2 {
        for alpha in [0.5, 1.0, 2.0] {
            let cert = divergence_certificate(n, alpha, &[2, 4, 8, 16], DEFAULT_SIZE_CAP).unwrap();
            for r in &cert.records {
                if r.t_norm < r.op_norm_lower_bound * (1.0 - 1e-10) {
                    violations += 1;
                }
                tightest = tightest.min(r.t_norm / r.op_norm_lower_bound);
            }
        }
    }
    Check {
        id: 7,
        name: "torus operator-norm lower bound",
        passed: violations == 0,
        detail: format!("{violations} violations; smallest ratio norm/bound {tightest:.6}"),
    }
}

fn phase_check() -> Check {
    let ds: Vec<usize> = (1..=9).map(|k| 1usize << k).collect();
    let div = divergence_certificate(1, 0.5, &ds, DEFAULT_SIZE_CAP).unwrap();
    let qs: Vec<f64> = div.records.iter().map(|r| r.quotient).collect();
    let increasing = div.quotients_strictly_increasing();
    let drops: Vec<usize> = div.records.windows(2).filter(|p| p[1].quotient <= p[0].quotient).map(|p| p[1].d).collect();
    let grows = qs[qs.len() - 1] > 2.0 * qs[0];

    let conv = divergence_certificate(1, 2.0, &ds, DEFAULT_SIZE_CAP).unwrap();
    let cols: Vec<f64> = conv.records.iter().map(|r| r.littlewood_column_norm).collect();
    let last_step = (cols[cols.len() - 1] - cols[cols.len() - 2]).abs();
    let cauchy = last_step < 1e-4;
    Check {
        id: 8,
        name: "divergence vs convergence phase",
        passed: increasing && grows && cauchy,
        detail: format!(
            "alpha=1/2 L(d) = [{}], strictly increasing: {increasing} (drops at d = {drops:?}), final/initial = {:.3}; alpha=2 last column-norm step {last_step:.2e}",
            qs.iter().map(|q| format!("{q:.4}")).collect::<Vec<_>>().join(", "),
            qs[qs.len() - 1] / qs[0],
        ),
    }
}

fn epstein_criterion() -> Check {
    let mut disagreements = Vec::new();
    for n in 1..=3 {
        for step in 1..=12 {
            let alpha = 0.25 * f64::from(step);
            if epstein_partial(n, alpha, 10_000).converged != (alpha > n as f64 / 2.0) {
                disagreements.push((n, alpha));
            }
        }
    }
    let basel = epstein_partial(1, 1.0, 10_000).partial_sum;
    let err = (basel - (std::f64::consts::PI.powi(2) / 3.0 - 1.0)).abs();
    Check {
        id: 9,
        name: "Epstein convergence criterion",
        passed: disagreements.is_empty() && err < 1e-3,
        detail: format!("{} disagreements on the grid; |S - (pi^2/3 - 1)| = {err:.3e}", disagreements.len()),
    }
}

fn appendix_b() -> Check {
    let c = appendix_b_constants(0.5, 24.0).unwrap();
    let k_exact = c.k == 5_308_416.0;
    let mono = pq_monotonicity_check(0.5, 24.0, 1000).unwrap();
    let lr = LittlewoodRichardson::default();
    let d2 = exp_domination_check(2, 0.5, 24.0, 40, &lr).unwrap();
    let d3 = exp_domination_check(3, 0.5, 24.0, 8, &lr).unwrap();
    Check {
        id: 10,
        name: "Appendix B constants and domination",
        passed: k_exact && mono.passed() && d2.passed() && d3.passed(),
        detail: format!(
            "K = {}, ln M = {:.4}, monotone: {}, SU(2) margin {:.3}, SU(3) margin {:.3} (allowed {:.3})",
            c.k,
            c.ln_m,
            mono.passed(),
            d2.worst_margin,
            d3.worst_margin,
            d2.allowed
        ),
    }
}

fn group_tail_threshold() -> Check {
    let su2_conv = group_littlewood_tail(2, 2.0, 200, DEFAULT_BUDGET).unwrap();
    let su2_div = group_littlewood_tail(2, 0.75, 200, DEFAULT_BUDGET).unwrap();
    let su2 = su2_conv.growth_exponent < 0.0 && su2_div.growth_exponent >= 0.0;
    let su3: Vec<(f64, f64)> = [3.0, 3.5, 4.5, 5.0]
        .iter()
        .map(|&a| (a, group_littlewood_tail(3, a, 60, DEFAULT_BUDGET).unwrap().growth_exponent))
        .collect();
    let flips = su3.iter().all(|&(a, g)| (g >= 0.0) == (a < 4.0));
    Check {
        id: 11,
        name: "group tail-sum threshold",
        passed: su2 && flips,
        detail: format!(
            "SU(2) exponents {:.3} (alpha=2), {:.3} (alpha=3/4); SU(3) {}",
            su2_conv.growth_exponent,
            su2_div.growth_exponent,
            su3.iter().map(|(a, g)| format!("alpha={a}: {g:.3}")).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn reproducibility() -> Check {
    let commands: [&[&str]; 11] = [
        &["dim", "--lambda", "4,2,1,0"],
        &["tensor", "--n", "3", "--lhs", "2,1,0", "--rhs", "1,1,0"],
        &["restrict", "--n", "3", "--family", "dim", "--alpha", "0.5", "--bound", "6"],
        &["restrict", "--character", "3,-2", "--family", "poly", "--alpha", "1"],
        &["condition1", "--n", "3", "--bound", "6"],
        &["submult", "--n", "3", "--bound", "5", "--family", "exp", "--beta", "0.5"],
        &["appendix-b", "--n", "2", "--bound", "10"],
        &["epstein", "--n", "2", "--alpha", "1.5", "--radius", "500"],
        &["rudin-shapiro", "--k", "8", "--samples", "1024"],
        &["torus-norms", "--n", "1", "--alpha", "0.5", "--d-list", "2,4,8,16"],
        &["group-tail", "--n", "3", "--alpha", "4.5", "--bound", "30"],
    ];
    let dir = tempfile::tempdir().unwrap();
    let mut differing = Vec::new();
    for args in commands {
        let run = |tag: &str| {
            let out = dir.path().join(format!("{}-{tag}.json", args[0]));
            let o = Command::new(env!("CARGO_BIN_EXE_beurling"))
                .args(args)
                .args(["--format", "json", "--cache-dir"])
                .arg(dir.path())
                .arg("--out")
                .arg(&out)
                .output()
                .unwrap();
            (o.status.code(), o.stdout, std::fs::read(&out).unwrap_or_default())
        };
        let first = run("a");
        let second = run("b");
        if first != second || first.1 != first.2 || first.0 != Some(0) {
            differing.push(args.join(" "));
        }
    }
    Check {
        id: 12,
        name: "byte-identical reruns",
        passed: differing.is_empty(),
        detail: format!("{} commands rerun, differing: {differing:?}", commands.len()),
    }
}

#[test]
fn acceptance_criteria() {
    let checks = [
        lr_weyl_cross_validation(),
        condition1_appendix_a(),
        restriction_scan(3, "restricted dimension weight bounds", true),
        restriction_scan(4, "restricted polynomial weight bounds", false),
        exponential_restriction(),
        rudin_shapiro_identity(),
        torus_lower_bound(),
        phase_check(),
        epstein_criterion(),
        appendix_b(),
        group_tail_threshold(),
        reproducibility(),
    ];
    for c in &checks {
        println!(
            "criterion {:>2} {}: {} ({})",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed: Vec<u32> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
