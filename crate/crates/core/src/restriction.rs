//! Restriction of weights from SU(n) to its maximal torus `H_n ≅ T^{n-1}`.
//!
//! `ω_H(χ_P) = inf { ω(π_λ) : χ_P ⊂ π_λ|_{H_n} }`. The infimum runs over an
//! infinite set; each family comes with a first-part cutoff beyond which no
//! weight can beat the explicit one-row witness, which turns the search into
//! a finite exhaustive one.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_repr::{
    contains_character, dominant_count, enumerate_dominant, superfactorial, weyl_dimension_big,
    DominantWeight, TorusCharacter,
};
use crate::weights::{LogWeight, WeightFamily, LOG_TOLERANCE};

/// The one-row weight `λ_P` whose trivially filled tableau realizes `χ_P`:
/// after sorting `P` nonincreasingly, `λ_1 = Σ p_i + n |p_{n-1}|`.
pub fn witness_lambda(p: &TorusCharacter) -> DominantWeight {
    let n = p.len() + 1;
    let sorted = p.sorted_desc();
    let exps = sorted.exponents();
    let last = exps.last().map_or(0, |x| x.abs());
    let first = exps.iter().sum::<i64>() + n as i64 * last;
    DominantWeight::one_row(n, u32::try_from(first).expect("witness first part fits in u32"))
}

/// Result of an exact infimum search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestrictedWeightValue {
    pub character: TorusCharacter,
    pub family: WeightFamily,
    pub value: LogWeight,
    pub minimizer: DominantWeight,
    /// Largest first part searched.
    pub search_bound: u32,
}

/// `(λ_1 + 1)^{n-1} / (2^{n-2} ∏_{i<j}(j-i))` is a lower bound for `d_λ`; the
/// returned first part is the largest one at which this bound does not yet
/// exceed `limit`.
pub fn dimension_cutoff(n: usize, limit: &BigUint) -> u32 {
    let scale = superfactorial(n) << (n - 2);
    let target = limit * scale;
    // smallest x with (x + 1)^{n-1} > target; then search x - 1
    let mut lo: u64 = 0;
    let mut hi: u64 = 1;
    while BigUint::from(hi + 1).pow((n - 1) as u32) <= target {
        hi *= 2;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if BigUint::from(mid + 1).pow((n - 1) as u32) > target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    u32::try_from(lo.saturating_sub(1)).unwrap_or(u32::MAX)
}

// Key that orders candidates exactly as the weight does (all three families
// are monotone in this key when their order is positive).
fn exact_key(family: &WeightFamily, lambda: &DominantWeight) -> BigUint {
    if family.parameter() == 0.0 {
        return BigUint::from(0u32);
    }
    match family {
        WeightFamily::Dimension { .. } => weyl_dimension_big(lambda),
        _ => BigUint::from(lambda.first()),
    }
}

/// Exact restricted weight `ω_H(χ_P)` with its lexicographically smallest
/// minimizer.
pub fn restricted_weight(
    family: &WeightFamily,
    p: &TorusCharacter,
    budget: u64,
) -> Result<RestrictedWeightValue> {
    family.validate()?;
    let n = p.len() + 1;
    if n < 2 {
        return Err(Error::Precondition("torus character must have at least one entry".into()));
    }
    let witness = witness_lambda(p);
    let search_bound = match family {
        WeightFamily::Dimension { alpha } if *alpha > 0.0 => {
            dimension_cutoff(n, &weyl_dimension_big(&witness)).max(witness.first())
        }
        _ => witness.first(),
    };
    if dominant_count(n, search_bound) > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { budget });
    }
    // Σ|p_i| + 1 ≤ n²(λ_1 + 1) for every candidate
    let nn = (n * n) as u64;
    let lower = (p.l1_norm() + 1).div_ceil(nn).saturating_sub(1);

    let mut best: Option<(BigUint, DominantWeight)> = None;
    for lambda in enumerate_dominant(n, search_bound) {
        if u64::from(lambda.first()) < lower {
            continue;
        }
        let key = exact_key(family, &lambda);
        if let Some((b, _)) = &best {
            // lexicographic order: only a strictly smaller key can replace
            if key >= *b {
                continue;
            }
        }
        if contains_character(&lambda, p, budget)? {
            let stop = !matches!(family, WeightFamily::Dimension { alpha } if *alpha > 0.0);
            best = Some((key, lambda));
            if stop {
                // first hit in lexicographic order has the smallest λ_1
                break;
            }
        }
    }
    let (_, minimizer) = best.ok_or_else(|| {
        Error::Invariant(format!("witness {witness} was not found to contain {p}"))
    })?;
    if (p.l1_norm() + 1) > nn * (u64::from(minimizer.first()) + 1) {
        return Err(Error::Invariant(format!("lower estimate fails for minimizer {minimizer}")));
    }
    Ok(RestrictedWeightValue {
        character: p.clone(),
        family: *family,
        value: family.log_weight(&minimizer),
        minimizer,
        search_bound,
    })
}

/// Two-sided constants relating the restricted dimension weight to a
/// polynomial weight on `Z^{n-1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivalenceConstants {
    pub n: usize,
    /// `1 / ((n²)^{n-1} 2^{n-2} ∏_{i<j}(j-i))`
    pub c_n: f64,
    /// `(n+1)^{n-1} / (n-1)!`
    pub d_n: f64,
}

pub fn equivalence_constants(n: usize) -> EquivalenceConstants {
    assert!(n >= 2);
    let sf = superfactorial(n).to_f64().expect("superfactorial fits in f64");
    let c_n = 1.0 / ((n * n) as f64).powi(n as i32 - 1) / 2f64.powi(n as i32 - 2) / sf;
    let fact: f64 = (1..n).map(|k| k as f64).product();
    let d_n = ((n + 1) as f64).powi(n as i32 - 1) / fact;
    EquivalenceConstants { n, c_n, d_n }
}

/// All `P ∈ Z^len` with `‖P‖_1 ≤ max_l1`, in lexicographic order.
pub fn characters_in_ball(len: usize, max_l1: u64) -> Vec<TorusCharacter> {
    fn rec(len: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<TorusCharacter>) {
        if prefix.len() == len {
            out.push(TorusCharacter::new(prefix.clone()));
            return;
        }
        for v in -left..=left {
            prefix.push(v);
            rec(len, left - v.abs(), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_l1 as i64, &mut Vec::with_capacity(len), &mut out);
    out
}

/// Worst margins of a two-sided bound check, as log differences. A margin is
/// negative exactly when the bound is violated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub family: WeightFamily,
    pub max_l1: u64,
    /// `ln` of the lower and upper constants multiplying `ρ`.
    pub ln_lower_constant: f64,
    pub ln_upper_constant: f64,
    /// Order of the comparison polynomial weight `ρ`.
    pub rho_order: f64,
    pub points: usize,
    pub violations: usize,
    pub worst_lower_margin: f64,
    pub worst_lower_at: TorusCharacter,
    pub worst_upper_margin: f64,
    pub worst_upper_at: TorusCharacter,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn check_bounds(n: usize, family: WeightFamily, max_l1: u64, budget: u64) -> Result<BoundsReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("rank {n} must be at least 2")));
    }
    let bounds = RestrictionBounds::for_family(&family, n).expect("family with a comparison");
    let chars = characters_in_ball(n - 1, max_l1);
    let margins: Vec<(f64, f64)> = chars
        .par_iter()
        .map(|p| {
            let v = restricted_weight(&family, p, budget)?.value.value();
            Ok(bounds.margins(p, v))
        })
        .collect::<Result<_>>()?;
    let mut violations = 0;
    let (mut lo, mut lo_at) = (f64::INFINITY, 0);
    let (mut hi, mut hi_at) = (f64::INFINITY, 0);
    for (i, &(l, u)) in margins.iter().enumerate() {
        if l < -LOG_TOLERANCE || u < -LOG_TOLERANCE {
            violations += 1;
        }
        if l < lo {
            lo = l;
            lo_at = i;
        }
        if u < hi {
            hi = u;
            hi_at = i;
        }
    }
    Ok(BoundsReport {
        n,
        family,
        max_l1,
        ln_lower_constant: bounds.ln_lower_constant,
        ln_upper_constant: bounds.ln_upper_constant,
        rho_order: bounds.rho_order,
        points: chars.len(),
        violations,
        worst_lower_margin: lo,
        worst_lower_at: chars[lo_at].clone(),
        worst_upper_margin: hi,
        worst_upper_at: chars[hi_at].clone(),
    })
}

/// Two-sided comparison `e^{lo} ρ_r(P) ≤ ω_H(χ_P) ≤ e^{hi} ρ_r(P)` with
/// `ρ_r(P) = (1 + ‖P‖_1)^r`, in log form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RestrictionBounds {
    pub rho_order: f64,
    pub ln_lower_constant: f64,
    pub ln_upper_constant: f64,
}

impl RestrictionBounds {
    /// `c_n^α ρ_{(n-1)α} ≤ ω_α|_H ≤ d_n^α ρ_{(n-1)α}` for the dimension weight
    /// and `n^{-2α} ρ_α ≤ ω^α_S|_H ≤ (n+1)^α ρ_α` for the polynomial weight.
    /// The exponential family has no such comparison.
    pub fn for_family(family: &WeightFamily, n: usize) -> Option<Self> {
        match *family {
            WeightFamily::Dimension { alpha } => {
                let k = equivalence_constants(n);
                Some(RestrictionBounds {
                    rho_order: (n - 1) as f64 * alpha,
                    ln_lower_constant: alpha * k.c_n.ln(),
                    ln_upper_constant: alpha * k.d_n.ln(),
                })
            }
            WeightFamily::PolynomialLength { alpha } => Some(RestrictionBounds {
                rho_order: alpha,
                ln_lower_constant: -2.0 * alpha * (n as f64).ln(),
                ln_upper_constant: alpha * ((n + 1) as f64).ln(),
            }),
            WeightFamily::ExponentialLength { .. } => None,
        }
    }

    /// `(value - ln lower, ln upper - value)`; negative means violated.
    pub fn margins(&self, p: &TorusCharacter, value: f64) -> (f64, f64) {
        let ln_rho = self.rho_order * ((p.l1_norm() + 1) as f64).ln();
        (value - (self.ln_lower_constant + ln_rho), (self.ln_upper_constant + ln_rho) - value)
    }
}

pub fn check_dim_restriction_bounds(n: usize, alpha: f64, max_l1: u64, budget: u64) -> Result<BoundsReport> {
    check_bounds(n, WeightFamily::dimension(alpha)?, max_l1, budget)
}

pub fn check_poly_restriction_bounds(n: usize, alpha: f64, max_l1: u64, budget: u64) -> Result<BoundsReport> {
    check_bounds(n, WeightFamily::polynomial(alpha)?, max_l1, budget)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpRestrictionEntry {
    pub p: i64,
    pub minimal_first_part: u32,
    pub minimizer: DominantWeight,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpRestrictionReport {
    pub n: usize,
    pub max_abs_p: u64,
    pub entries: Vec<ExpRestrictionEntry>,
    pub mismatches: usize,
}

impl ExpRestrictionReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// For `P = (p, 0, ..., 0)` the restricted exponential weight of order 1 has
/// ln-value exactly `|p|`: the smallest first part among representations
/// containing `χ_P` is `|p|`, compared as integers.
pub fn check_exp_restriction(n: usize, max_abs_p: u64, budget: u64) -> Result<ExpRestrictionReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("rank {n} must be at least 2")));
    }
    let family = WeightFamily::exponential(1.0)?;
    let m = max_abs_p as i64;
    let entries: Vec<ExpRestrictionEntry> = (-m..=m)
        .into_par_iter()
        .map(|p| {
            let mut exps = vec![0; n - 1];
            exps[0] = p;
            let r = restricted_weight(&family, &TorusCharacter::new(exps), budget)?;
            Ok(ExpRestrictionEntry {
                p,
                minimal_first_part: r.minimizer.first(),
                minimizer: r.minimizer,
                value: r.value.value(),
            })
        })
        .collect::<Result<_>>()?;
    let mismatches = entries
        .iter()
        .filter(|e| u64::from(e.minimal_first_part) != e.p.unsigned_abs())
        .count();
    Ok(ExpRestrictionReport { n, max_abs_p, entries, mismatches })
}
