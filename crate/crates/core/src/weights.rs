//! Weights on the dual of SU(n), evaluated in the log domain.
//!
//! Covers the three standard families (dimension, polynomial and exponential
//! in the length `λ_1`), exhaustive scans of the weight axiom and of the
//! dimension-ratio condition over tensor products, and the constants that
//! let an exponential weight be dominated by a polynomial one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_repr::{
    enumerate_dominant, ln_weyl_dimension, weyl_dimension_f64, DominantWeight, TensorSource,
};

/// Absolute slack allowed when comparing log-domain sums that are equal in
/// exact arithmetic.
pub const LOG_TOLERANCE: f64 = 1e-12;

/// Largest integer range scanned for the domination constant `M`.
pub const MAX_P_SCAN: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightFamily {
    /// `ω(π) = d_π^α`
    Dimension { alpha: f64 },
    /// `ω(π) = (1 + τ_S(π))^α`
    PolynomialLength { alpha: f64 },
    /// `ω(π) = exp(τ_S(π)^β)`
    ExponentialLength { beta: f64 },
}

/// `ln ω(π)`; always finite and nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogWeight(f64);

impl LogWeight {
    pub fn new(value: f64) -> Self {
        debug_assert!(value.is_finite() && value >= 0.0, "log weight {value}");
        LogWeight(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `ω` itself; infinite when it overflows.
    pub fn exp(self) -> f64 {
        self.0.exp()
    }
}

impl WeightFamily {
    pub fn dimension(alpha: f64) -> Result<Self> {
        let f = WeightFamily::Dimension { alpha };
        f.validate()?;
        Ok(f)
    }

    pub fn polynomial(alpha: f64) -> Result<Self> {
        let f = WeightFamily::PolynomialLength { alpha };
        f.validate()?;
        Ok(f)
    }

    pub fn exponential(beta: f64) -> Result<Self> {
        let f = WeightFamily::ExponentialLength { beta };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightFamily::Dimension { alpha } | WeightFamily::PolynomialLength { alpha } => {
                if !(alpha.is_finite() && alpha >= 0.0) {
                    return Err(Error::Precondition(format!("weight order {alpha} must be >= 0")));
                }
            }
            WeightFamily::ExponentialLength { beta } => {
                if !(beta > 0.0 && beta <= 1.0) {
                    return Err(Error::Precondition(format!(
                        "exponential weight order {beta} must lie in (0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            WeightFamily::Dimension { alpha } | WeightFamily::PolynomialLength { alpha } => alpha,
            WeightFamily::ExponentialLength { beta } => beta,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightFamily::Dimension { .. } => "dimension",
            WeightFamily::PolynomialLength { .. } => "polynomial",
            WeightFamily::ExponentialLength { .. } => "exponential",
        }
    }

    pub fn log_weight(&self, lambda: &DominantWeight) -> LogWeight {
        evaluate_log_weight(self, lambda)
    }

    /// `ω(π_λ)` evaluated without logarithms. Overflows to infinity for large
    /// exponential weights; used to cross-check the log-domain path.
    pub fn direct_weight(&self, lambda: &DominantWeight) -> f64 {
        let first = f64::from(lambda.first());
        match *self {
            WeightFamily::Dimension { alpha } => weyl_dimension_f64(lambda).powf(alpha),
            WeightFamily::PolynomialLength { alpha } => (1.0 + first).powf(alpha),
            WeightFamily::ExponentialLength { beta } => first.powf(beta).exp(),
        }
    }
}

pub fn evaluate_log_weight(family: &WeightFamily, lambda: &DominantWeight) -> LogWeight {
    let first = f64::from(lambda.first());
    let v = match *family {
        WeightFamily::Dimension { alpha } => alpha * ln_weyl_dimension(lambda),
        WeightFamily::PolynomialLength { alpha } => alpha * first.ln_1p(),
        WeightFamily::ExponentialLength { beta } => first.powf(beta),
    };
    LogWeight::new(v)
}

// ---------------------------------------------------------------------------
// Scans over tensor products

/// `(λ, μ, ν)` with `ν ⊂ λ ⊗ μ`. Orders lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub lhs: DominantWeight,
    pub rhs: DominantWeight,
    pub term: DominantWeight,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Extremum {
    pub value: f64,
    pub witness: Triple,
}

impl Extremum {
    // Larger value wins; equal values go to the lexicographically smaller
    // witness, so merging order never matters.
    fn merge(a: Option<Extremum>, b: Option<Extremum>) -> Option<Extremum> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => match a.value.total_cmp(&b.value) {
                std::cmp::Ordering::Greater => Some(a),
                std::cmp::Ordering::Less => Some(b),
                std::cmp::Ordering::Equal => Some(if a.witness <= b.witness { a } else { b }),
            },
        }
    }
}

/// Maximizes `score` over all `ν ⊂ λ ⊗ μ` with `λ_1, μ_1 ≤ bound`. Returns the
/// extremum and the number of triples visited.
pub(crate) fn scan_triples<S, F>(
    n: usize,
    bound: u32,
    source: &S,
    score: F,
) -> Result<(Extremum, u64)>
where
    S: TensorSource + ?Sized,
    F: Fn(&DominantWeight, &DominantWeight, &DominantWeight) -> f64 + Sync,
{
    if n < 2 {
        return Err(Error::Precondition(format!("rank {n} must be at least 2")));
    }
    let weights: Vec<DominantWeight> = enumerate_dominant(n, bound).collect();
    let pairs: Vec<(&DominantWeight, &DominantWeight)> = weights
        .iter()
        .flat_map(|l| weights.iter().map(move |m| (l, m)))
        .collect();
    let partial: Vec<(Option<Extremum>, u64)> = pairs
        .par_iter()
        .map(|&(lhs, rhs)| {
            let dec = source.decompose(lhs, rhs)?;
            let mut best = None;
            for nu in dec.terms.keys() {
                let cand = Extremum {
                    value: score(lhs, rhs, nu),
                    witness: Triple { lhs: lhs.clone(), rhs: rhs.clone(), term: nu.clone() },
                };
                best = Extremum::merge(best, Some(cand));
            }
            Ok((best, dec.terms.len() as u64))
        })
        .collect::<Result<_>>()?;
    let mut best = None;
    let mut count = 0;
    for (e, c) in partial {
        best = Extremum::merge(best, e);
        count += c;
    }
    let best = best.expect("scan always contains the trivial triple");
    Ok((best, count))
}

/// Outcome of a weight-axiom scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubmultReport {
    pub family: WeightFamily,
    pub n: usize,
    pub bound: u32,
    /// `max ln ω(ν) - ln ω(λ) - ln ω(μ)` over the scanned triples.
    pub worst_slack: f64,
    pub witness: Triple,
    pub triples_scanned: u64,
}

impl SubmultReport {
    /// The weight axiom holds on the scan, up to [`LOG_TOLERANCE`].
    pub fn holds(&self) -> bool {
        self.worst_slack <= LOG_TOLERANCE
    }
}

pub fn submultiplicativity_scan<S: TensorSource + ?Sized>(
    family: &WeightFamily,
    n: usize,
    bound: u32,
    source: &S,
) -> Result<SubmultReport> {
    family.validate()?;
    let (best, count) = scan_triples(n, bound, source, |l, m, nu| {
        family.log_weight(nu).value() - family.log_weight(l).value() - family.log_weight(m).value()
    })?;
    Ok(SubmultReport {
        family: *family,
        n,
        bound,
        worst_slack: best.value,
        witness: best.witness,
        triples_scanned: count,
    })
}

/// `[d_ν / (d_λ d_μ)] / [1/(λ_1+1) + 1/(μ_1+1)]`.
pub fn condition1_ratio(lhs: &DominantWeight, rhs: &DominantWeight, term: &DominantWeight) -> f64 {
    let rel = weyl_dimension_f64(term) / (weyl_dimension_f64(lhs) * weyl_dimension_f64(rhs));
    let scale = 1.0 / (f64::from(lhs.first()) + 1.0) + 1.0 / (f64::from(rhs.first()) + 1.0);
    rel / scale
}

/// Analytic constant known for the dimension-ratio condition: 3 for SU(3)
/// (elementary estimate) and 1 for SU(2), where `d_ν ≤ λ_1 + μ_1 + 1`.
pub fn condition1_known_bound(n: usize) -> Option<f64> {
    match n {
        2 => Some(1.0),
        3 => Some(3.0),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition1Report {
    pub n: usize,
    pub bound: u32,
    pub empirical_c: f64,
    pub witness: Triple,
    pub triples_scanned: u64,
    pub known_bound: Option<f64>,
}

impl Condition1Report {
    /// `None` when no analytic constant is known for this rank.
    pub fn within_known_bound(&self) -> Option<bool> {
        self.known_bound.map(|c| self.empirical_c <= c)
    }
}

pub fn condition1_scan<S: TensorSource + ?Sized>(
    n: usize,
    bound: u32,
    source: &S,
) -> Result<Condition1Report> {
    let (best, count) = scan_triples(n, bound, source, condition1_ratio)?;
    Ok(Condition1Report {
        n,
        bound,
        empirical_c: best.value,
        witness: best.witness,
        triples_scanned: count,
        known_bound: condition1_known_bound(n),
    })
}

// ---------------------------------------------------------------------------
// Exponential weights dominated by polynomial ones

/// `p(x) = C x^α - β ln(1 + x)`.
pub fn p_function(alpha: f64, beta: f64, c: f64, x: f64) -> f64 {
    c * x.powf(alpha) - beta * x.ln_1p()
}

/// `q(x) = p(x) / x`.
pub fn q_function(alpha: f64, beta: f64, c: f64, x: f64) -> f64 {
    p_function(alpha, beta, c, x) / x
}

/// `K = (β² / (α(1-α)))^{1/α}`, the point beyond which `p` increases and `q`
/// decreases.
pub fn threshold_k(alpha: f64, beta: f64) -> f64 {
    (beta * beta / (alpha * (1.0 - alpha))).powf(1.0 / alpha)
}

fn check_domination_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Precondition(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    let min_beta = f64::max(1.0, 6.0 / (alpha * (1.0 - alpha)));
    if !(beta.is_finite() && beta >= min_beta) {
        return Err(Error::Precondition(format!("beta = {beta} must be >= {min_beta}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AppendixBConstants {
    pub alpha: f64,
    pub beta: f64,
    pub c: f64,
    pub k: f64,
    /// `ln M = max p(t) - 2 min p(s)` over integers in `[0, 2K]`.
    pub ln_m: f64,
    pub scan_upper: u64,
    pub p_max: f64,
    pub argmax: u64,
    pub p_min: f64,
    pub argmin: u64,
}

/// Extremes of `p` over the integers `0..=upper`: `(max, argmax, min, argmin)`,
/// ties resolved to the smallest integer.
pub fn p_extremes(alpha: f64, beta: f64, c: f64, upper: u64) -> (f64, u64, f64, u64) {
    let init = || (f64::NEG_INFINITY, u64::MAX, f64::INFINITY, u64::MAX);
    let merge = |a: (f64, u64, f64, u64), b: (f64, u64, f64, u64)| {
        let (mx, amx) = if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { (b.0, b.1) } else { (a.0, a.1) };
        let (mn, amn) = if b.2 < a.2 || (b.2 == a.2 && b.3 < a.3) { (b.2, b.3) } else { (a.2, a.3) };
        (mx, amx, mn, amn)
    };
    (0..=upper)
        .into_par_iter()
        .fold(init, |acc, t| {
            let v = p_function(alpha, beta, c, t as f64);
            merge(acc, (v, t, v, t))
        })
        .reduce(init, merge)
}

/// Constants `K` and `ln M` with `C = 1`.
pub fn appendix_b_constants(alpha: f64, beta: f64) -> Result<AppendixBConstants> {
    appendix_b_constants_with(alpha, beta, 1.0)
}

pub fn appendix_b_constants_with(alpha: f64, beta: f64, c: f64) -> Result<AppendixBConstants> {
    check_domination_params(alpha, beta)?;
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::Precondition(format!("C = {c} must be positive")));
    }
    let k = threshold_k(alpha, beta);
    let upper = (2.0 * k).floor();
    if !(upper < MAX_P_SCAN as f64) {
        return Err(Error::Range(format!("2K = {} exceeds the scan limit {MAX_P_SCAN}", 2.0 * k)));
    }
    let upper = upper as u64;
    let (p_max, argmax, p_min, argmin) = p_extremes(alpha, beta, c, upper);
    Ok(AppendixBConstants {
        alpha,
        beta,
        c,
        k,
        ln_m: p_max - 2.0 * p_min,
        scan_upper: upper,
        p_max,
        argmax,
        p_min,
        argmin,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityViolation {
    pub index: usize,
    pub x: f64,
    pub function: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
    pub gridpoints: usize,
    pub first_violation: Option<MonotonicityViolation>,
    pub q_at_k: f64,
    pub q_at_2k: f64,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Checks that `p` increases and `q` decreases on an equispaced grid over
/// `[K, 10K]`.
pub fn pq_monotonicity_check(alpha: f64, beta: f64, gridpoints: usize) -> Result<MonotonicityReport> {
    check_domination_params(alpha, beta)?;
    if gridpoints < 2 {
        return Err(Error::Precondition("at least two grid points are needed".into()));
    }
    let k = threshold_k(alpha, beta);
    let step = 9.0 * k / (gridpoints - 1) as f64;
    let xs: Vec<f64> = (0..gridpoints).map(|i| k + step * i as f64).collect();
    let mut first_violation = None;
    for i in 1..gridpoints {
        let (a, b) = (xs[i - 1], xs[i]);
        if p_function(alpha, beta, 1.0, b) < p_function(alpha, beta, 1.0, a) {
            first_violation = Some(MonotonicityViolation { index: i, x: b, function: "p" });
            break;
        }
        if q_function(alpha, beta, 1.0, b) > q_function(alpha, beta, 1.0, a) {
            first_violation = Some(MonotonicityViolation { index: i, x: b, function: "q" });
            break;
        }
    }
    Ok(MonotonicityReport {
        alpha,
        beta,
        k,
        gridpoints,
        first_violation,
        q_at_k: q_function(alpha, beta, 1.0, k),
        q_at_2k: q_function(alpha, beta, 1.0, 2.0 * k),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpDominationReport {
    pub n: usize,
    pub bound: u32,
    pub constants: AppendixBConstants,
    /// Largest `[ln γ(ν) - ln γ(λ) - ln γ(μ)] - [ln ω(ν) - ln ω(λ) - ln ω(μ)]`.
    pub worst_margin: f64,
    pub allowed: f64,
    pub witness: Triple,
    pub triples_scanned: u64,
}

impl ExpDominationReport {
    pub fn passed(&self) -> bool {
        self.worst_margin <= self.allowed
    }
}

/// Verifies `γ_α(ν)/(γ_α(λ)γ_α(μ)) ≤ M² ω_β(ν)/(ω_β(λ)ω_β(μ))` on every
/// scanned triple, where `ω_β` is the polynomial weight of order `β`.
pub fn exp_domination_check<S: TensorSource + ?Sized>(
    n: usize,
    alpha: f64,
    beta: f64,
    bound: u32,
    source: &S,
) -> Result<ExpDominationReport> {
    let constants = appendix_b_constants(alpha, beta)?;
    let gamma = WeightFamily::exponential(alpha)?;
    let poly = WeightFamily::polynomial(beta)?;
    let (best, count) = scan_triples(n, bound, source, |l, m, nu| {
        let g = gamma.log_weight(nu).value() - gamma.log_weight(l).value() - gamma.log_weight(m).value();
        let w = poly.log_weight(nu).value() - poly.log_weight(l).value() - poly.log_weight(m).value();
        g - w
    })?;
    Ok(ExpDominationReport {
        n,
        bound,
        allowed: 2.0 * constants.ln_m,
        constants,
        worst_margin: best.value,
        witness: best.witness,
        triples_scanned: count,
    })
}
