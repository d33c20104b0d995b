//! One dispatcher per subcommand; each delegates to a single library routine
//! and turns its result into a verdict.

use std::path::PathBuf;

use anyhow::Context as _;
use beurling::lie_repr::{
    length, ln_weyl_dimension, weyl_dimension_big, DominantWeight, LittlewoodRichardson, TensorSource,
    TorusCharacter, DEFAULT_BUDGET,
};
use beurling::multipliers::{
    build_t_matrix, divergence_certificate, epstein_partial, group_littlewood_tail, rudin_shapiro as rs_pair,
    supnorm_check, DEFAULT_SIZE_CAP, MAX_RS_GENERATION,
};
use beurling::restriction::{
    check_dim_restriction_bounds, check_exp_restriction, check_poly_restriction_bounds, restricted_weight,
    RestrictionBounds,
};
use beurling::weights::{
    appendix_b_constants, condition1_scan, exp_domination_check, pq_monotonicity_check,
    submultiplicativity_scan, WeightFamily, LOG_TOLERANCE,
};
use beurling::Error;
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cache::LrCache;
use crate::report::{Outcome, Verdict};

pub enum Failure {
    Usage(clap::Error),
    Runtime(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type CmdResult = Result<Outcome, Failure>;

fn usage(msg: String) -> Failure {
    Failure::Usage(crate::usage_error(msg))
}

pub struct Context<'a> {
    pub cache: Option<&'a LrCache>,
}

impl Context<'_> {
    fn source(&self) -> &dyn TensorSource {
        match self.cache {
            Some(c) => c,
            None => &DIRECT,
        }
    }
}

static DIRECT: LittlewoodRichardson = LittlewoodRichardson { budget: DEFAULT_BUDGET };

fn parse_weight(s: &str) -> Result<DominantWeight, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_character(s: &str) -> Result<TorusCharacter, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn check_rank(flag_n: Option<usize>, flag: &str, found: usize) -> Result<(), Failure> {
    match flag_n {
        Some(n) if n != found => Err(usage(format!("--n {n} does not match the rank {found} of {flag}"))),
        _ => Ok(()),
    }
}

fn check_n(n: usize, min: usize) -> Result<(), Failure> {
    if n < min {
        return Err(usage(format!("--n must be at least {min}, got {n}")));
    }
    Ok(())
}

fn check_nonnegative(flag: &str, x: f64) -> Result<(), Failure> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(usage(format!("{flag} must be a finite nonnegative number, got {x}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Dim,
    Poly,
    Exp,
}

fn family_of(family: FamilyArg, alpha: f64, beta: f64) -> Result<WeightFamily, Failure> {
    let built = match family {
        FamilyArg::Dim => {
            check_nonnegative("--alpha", alpha)?;
            WeightFamily::dimension(alpha)
        }
        FamilyArg::Poly => {
            check_nonnegative("--alpha", alpha)?;
            WeightFamily::polynomial(alpha)
        }
        FamilyArg::Exp => WeightFamily::exponential(beta),
    };
    built.map_err(|e| {
        let flag = if family == FamilyArg::Exp { "--beta" } else { "--alpha" };
        usage(format!("{flag}: {e}"))
    })
}

// ---------------------------------------------------------------------------

#[derive(Args, Debug, Serialize)]
pub struct DimArgs {
    /// Highest weight, e.g. 2,1,0.
    #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
    pub lambda: DominantWeight,
    /// Rank n of SU(n); checked against --lambda.
    #[arg(long)]
    pub n: Option<usize>,
}

pub fn dim(a: &DimArgs) -> CmdResult {
    check_rank(a.n, "--lambda", a.lambda.rank())?;
    let dimension = weyl_dimension_big(&a.lambda).to_string();
    Ok(Outcome::new(
        Verdict::Pass,
        json!({
            "weight": a.lambda,
            "dimension": dimension,
            "ln_dimension": ln_weyl_dimension(&a.lambda),
            "length": length(&a.lambda),
        }),
    )
    .row("dimension", &dimension)
    .row("length", length(&a.lambda)))
}

#[derive(Args, Debug, Serialize)]
pub struct TensorArgs {
    #[arg(long, value_parser = parse_weight)]
    pub lhs: DominantWeight,
    #[arg(long, value_parser = parse_weight)]
    pub rhs: DominantWeight,
    #[arg(long)]
    pub n: Option<usize>,
}

pub fn tensor(a: &TensorArgs, ctx: &Context) -> CmdResult {
    check_rank(a.n, "--lhs", a.lhs.rank())?;
    check_rank(Some(a.lhs.rank()), "--rhs", a.rhs.rank())?;
    let dec = ctx.source().decompose(&a.lhs, &a.rhs)?;
    let terms: Vec<_> = dec
        .terms
        .iter()
        .map(|(nu, &c)| json!({"weight": nu, "multiplicity": c, "dimension": weyl_dimension_big(nu).to_string()}))
        .collect();
    let product = (weyl_dimension_big(&a.lhs) * weyl_dimension_big(&a.rhs)).to_string();
    let ok = dec.conserves_dimension();
    Ok(Outcome::new(
        Verdict::from_bool(ok),
        json!({
            "decomposition": dec.canonical_text(),
            "terms": terms,
            "product_dimension": product,
            "total_dimension": dec.total_dimension().to_string(),
            "conserves_dimension": ok,
        }),
    )
    .row("decomposition", dec.canonical_text())
    .row("terms", dec.terms.len())
    .row("product dimension", product))
}

#[derive(Args, Debug, Serialize)]
pub struct RestrictArgs {
    /// Rank n of SU(n); required for scans.
    #[arg(long)]
    pub n: Option<usize>,
    /// Torus character p_1,...,p_{n-1}; without it every character in the
    /// ball of radius --bound is checked.
    #[arg(long, value_parser = parse_character, allow_hyphen_values = true)]
    pub character: Option<TorusCharacter>,
    #[arg(long, value_enum, default_value_t = FamilyArg::Dim)]
    pub family: FamilyArg,
    /// Order of the dimension or polynomial weight.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Order of the exponential weight.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Radius of the scanned ball (l1 norm, or |p| for the exponential family).
    #[arg(long, default_value_t = 12)]
    pub bound: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

pub fn restrict(a: &RestrictArgs) -> CmdResult {
    let family = family_of(a.family, a.alpha, a.beta)?;
    if let Some(p) = &a.character {
        if p.is_empty() {
            return Err(usage("--character needs at least one entry".into()));
        }
        let n = p.len() + 1;
        check_rank(a.n, "--character (plus one)", n)?;
        let r = restricted_weight(&family, p, a.budget)?;
        let (verdict, margins) = match RestrictionBounds::for_family(&family, n) {
            Some(b) => {
                let (lo, hi) = b.margins(p, r.value.value());
                (Verdict::from_bool(lo >= -LOG_TOLERANCE && hi >= -LOG_TOLERANCE), Some((b, lo, hi)))
            }
            None => {
                let one_dim = p.exponents()[1..].iter().all(|&x| x == 0);
                if one_dim && a.beta == 1.0 {
                    (Verdict::from_bool(u64::from(r.minimizer.first()) == p.l1_norm()), None)
                } else {
                    (Verdict::Inconclusive, None)
                }
            }
        };
        let mut out = Outcome::new(
            verdict,
            json!({
                "restricted": r,
                "bounds": margins.map(|m| m.0),
                "lower_margin": margins.map(|m| m.1),
                "upper_margin": margins.map(|m| m.2),
            }),
        )
        .witnesses(vec![&r.minimizer])
        .row("ln restricted weight", r.value.value())
        .row("minimizer", r.minimizer.to_string());
        if let Some((_, lo, hi)) = margins {
            out = out.row("lower margin (ln)", lo).row("upper margin (ln)", hi);
        }
        return Ok(out);
    }
    let n = a.n.ok_or_else(|| usage("--n is required when --character is absent".into()))?;
    check_n(n, 2)?;
    match a.family {
        FamilyArg::Dim | FamilyArg::Poly => {
            let r = if a.family == FamilyArg::Dim {
                check_dim_restriction_bounds(n, a.alpha, a.bound, a.budget)?
            } else {
                check_poly_restriction_bounds(n, a.alpha, a.bound, a.budget)?
            };
            Ok(Outcome::new(Verdict::from_bool(r.passed()), &r)
                .witnesses(vec![&r.worst_lower_at, &r.worst_upper_at])
                .row("characters", r.points)
                .row("violations", r.violations)
                .row("worst lower margin (ln)", r.worst_lower_margin)
                .row("worst upper margin (ln)", r.worst_upper_margin))
        }
        FamilyArg::Exp => {
            if a.beta != 1.0 {
                return Err(usage("--beta must be 1 for the exponential restriction scan".into()));
            }
            let r = check_exp_restriction(n, a.bound, a.budget)?;
            Ok(Outcome::new(Verdict::from_bool(r.passed()), &r)
                .row("characters", r.entries.len())
                .row("mismatches", r.mismatches))
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct Condition1Args {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Largest first part of λ and μ.
    #[arg(long, default_value_t = 6)]
    pub bound: u32,
}

pub fn condition1(a: &Condition1Args, ctx: &Context) -> CmdResult {
    check_n(a.n, 2)?;
    let r = condition1_scan(a.n, a.bound, ctx.source())?;
    let verdict = match r.within_known_bound() {
        Some(ok) => Verdict::from_bool(ok),
        None => Verdict::Inconclusive,
    };
    Ok(Outcome::new(verdict, &r)
        .witnesses(vec![&r.witness])
        .row("empirical C", r.empirical_c)
        .row("known bound", r.known_bound)
        .row("triples", r.triples_scanned))
}

#[derive(Args, Debug, Serialize)]
pub struct SubmultArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 6)]
    pub bound: u32,
    #[arg(long, value_enum, default_value_t = FamilyArg::Dim)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
}

pub fn submult(a: &SubmultArgs, ctx: &Context) -> CmdResult {
    check_n(a.n, 2)?;
    let family = family_of(a.family, a.alpha, a.beta)?;
    let r = submultiplicativity_scan(&family, a.n, a.bound, ctx.source())?;
    Ok(Outcome::new(Verdict::from_bool(r.holds()), &r)
        .witnesses(vec![&r.witness])
        .row("worst slack (ln)", r.worst_slack)
        .row("triples", r.triples_scanned))
}

#[derive(Args, Debug, Serialize)]
pub struct AppendixBArgs {
    /// Order of the exponential weight, in (0, 1).
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Order of the dominating polynomial weight.
    #[arg(long, default_value_t = 24.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Grid points for the monotonicity check on [K, 10K].
    #[arg(long, default_value_t = 1000)]
    pub grid: usize,
    /// Rank for the exhaustive domination check; skipped when absent.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub bound: u32,
}

pub fn appendix_b(a: &AppendixBArgs, ctx: &Context) -> CmdResult {
    let constants = appendix_b_constants(a.alpha, a.beta).map_err(|e| usage(format!("--alpha/--beta: {e}")))?;
    let mono = pq_monotonicity_check(a.alpha, a.beta, a.grid).map_err(|e| usage(format!("--grid: {e}")))?;
    let domination = match a.n {
        Some(n) => {
            check_n(n, 2)?;
            Some(exp_domination_check(n, a.alpha, a.beta, a.bound, ctx.source())?)
        }
        None => None,
    };
    let ok = mono.passed() && domination.as_ref().map_or(true, |d| d.passed());
    let mut out = Outcome::new(
        Verdict::from_bool(ok),
        json!({"constants": constants, "monotonicity": mono, "domination": domination}),
    )
    .row("K", constants.k)
    .row("ln M", constants.ln_m)
    .row("monotonicity", if mono.passed() { "pass" } else { "fail" });
    if let Some(d) = &domination {
        out = out
            .witnesses(vec![&d.witness])
            .row("worst margin (ln)", d.worst_margin)
            .row("allowed (2 ln M)", d.allowed);
    }
    Ok(out)
}

#[derive(Args, Debug, Serialize)]
pub struct EpsteinArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 10_000)]
    pub radius: u64,
}

pub fn epstein(a: &EpsteinArgs) -> CmdResult {
    check_n(a.n, 1)?;
    check_nonnegative("--alpha", a.alpha)?;
    let e = epstein_partial(a.n, a.alpha, a.radius);
    let analytic = a.alpha > a.n as f64 / 2.0;
    let basel = (a.n == 1 && a.alpha == 1.0).then(|| {
        let exact = std::f64::consts::PI.powi(2) / 3.0 - 1.0;
        json!({"exact": exact, "error": (e.partial_sum - exact).abs()})
    });
    let mut out = Outcome::new(
        Verdict::from_bool(e.converged == analytic),
        json!({"partial": e, "analytic_convergent": analytic, "basel_reference": basel}),
    )
    .row("partial sum", e.partial_sum)
    .row("tail bound", e.tail_bound)
    .row("converged", e.converged);
    if let Some(b) = basel {
        out = out.row("error vs pi^2/3 - 1", b["error"].clone());
    }
    Ok(out)
}

#[derive(Args, Debug, Serialize)]
pub struct RudinShapiroArgs {
    /// Generation k; the polynomials have 2^k coefficients.
    #[arg(long, default_value_t = 10)]
    pub k: u32,
    #[arg(long, default_value_t = 4096)]
    pub samples: usize,
}

const MAX_LISTED_COEFFS: usize = 256;

pub fn rudin_shapiro(a: &RudinShapiroArgs) -> CmdResult {
    if a.k > MAX_RS_GENERATION {
        return Err(usage(format!("--k must be at most {MAX_RS_GENERATION}, got {}", a.k)));
    }
    if a.samples == 0 {
        return Err(usage("--samples must be positive".into()));
    }
    let pair = rs_pair(a.k)?;
    let coeffs = (pair.p.len() <= MAX_LISTED_COEFFS).then(|| json!({"p": pair.p, "q": pair.q}));
    match supnorm_check(&pair, a.samples) {
        Ok(r) => Ok(Outcome::new(Verdict::Pass, json!({"check": r, "coefficients": coeffs}))
            .row("max identity error", r.max_identity_error)
            .row("max |P|", r.max_abs_p)
            .row("sup bound", r.sup_bound)),
        Err(Error::Invariant(msg)) => {
            Ok(Outcome::new(Verdict::Fail, json!({"violation": msg, "coefficients": coeffs})).row("violation", msg))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct TorusNormsArgs {
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Box sides, each a power of two.
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16")]
    pub d_list: Vec<usize>,
    /// Row cap for dense matrices.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    pub cap: usize,
    /// Write the multiplier matrix for the largest box side to this CSV file.
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub matrix_csv: Option<PathBuf>,
}

pub fn torus_norms(a: &TorusNormsArgs) -> CmdResult {
    check_n(a.n, 1)?;
    check_nonnegative("--alpha", a.alpha)?;
    if a.d_list.is_empty() {
        return Err(usage("--d-list must not be empty".into()));
    }
    if let Some(d) = a.d_list.iter().find(|d| !d.is_power_of_two()) {
        return Err(usage(format!("--d-list entries must be powers of two, got {d}")));
    }
    if let Some(d) = a.d_list.iter().find(|&&d| d > 1 << beurling::multipliers::MAX_HANKEL_GENERATION) {
        return Err(usage(format!("--d-list entry {d} exceeds 2^{}", beurling::multipliers::MAX_HANKEL_GENERATION)));
    }
    let cert = divergence_certificate(a.n, a.alpha, &a.d_list, a.cap)?;
    if let Some(path) = &a.matrix_csv {
        let d = *a.d_list.iter().max().expect("nonempty");
        let t = build_t_matrix(a.n, a.alpha, d, a.cap)?;
        std::fs::write(path, t.matrix.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    let worst = cert
        .records
        .iter()
        .min_by(|x, y| {
            (x.t_norm / x.op_norm_lower_bound).total_cmp(&(y.t_norm / y.op_norm_lower_bound))
        })
        .map(|r| r.d);
    let quotients: Vec<f64> = cert.records.iter().map(|r| r.quotient).collect();
    let columns: Vec<f64> = cert.records.iter().map(|r| r.littlewood_column_norm).collect();
    Ok(Outcome::new(
        Verdict::from_bool(cert.all_bounds_hold()),
        json!({
            "certificate": cert,
            "quotients_strictly_increasing": cert.quotients_strictly_increasing(),
            "littlewood_summable": 2.0 * a.alpha > a.n as f64,
        }),
    )
    .witnesses(json!({"tightest_d": worst}))
    .row("quotients L(d)", quotients)
    .row("column norms", columns)
    .row("op-norm bounds hold", cert.all_bounds_hold()))
}

#[derive(Args, Debug, Serialize)]
pub struct GroupTailArgs {
    /// Rank n of SU(n).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 4.5, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Largest first part λ₁ summed over.
    #[arg(long, default_value_t = 60)]
    pub bound: u32,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

/// Growth exponents closer to zero than this are not trusted for a verdict.
pub const GROWTH_DEADBAND: f64 = 0.1;

pub fn group_tail(a: &GroupTailArgs) -> CmdResult {
    check_n(a.n, 2)?;
    check_nonnegative("--alpha", a.alpha)?;
    if a.bound < 4 {
        return Err(usage(format!("--bound must be at least 4, got {}", a.bound)));
    }
    let t = group_littlewood_tail(a.n, a.alpha, a.bound, a.budget)?;
    let verdict = if t.growth_exponent.abs() < GROWTH_DEADBAND {
        Verdict::Inconclusive
    } else {
        Verdict::from_bool(t.estimated_convergent == t.analytic_convergent)
    };
    Ok(Outcome::new(verdict, &t)
        .row("shell slope", t.shell_slope)
        .row("growth exponent", t.growth_exponent)
        .row("estimated convergent", t.estimated_convergent)
        .row("2 alpha > dim G", t.analytic_convergent))
}
