//! Weighted co-multiplication matrices on `Z^n` and the norms that decide
//! whether they define bounded Schur multipliers.
//!
//! `T^α(i, j) = ρ_α(i + j) / (ρ_α(i) ρ_α(j))` with `ρ_α(x) = (1 + ‖x‖_1)^α`,
//! restricted to the box `I^n_d = {1..d}^n` in lexicographic order. The upper
//! side splits `T` into Littlewood pieces whose norms are Epstein sums; the
//! lower side compares `‖T‖` with the norm of a ±1 Hankel matrix built from
//! Rudin-Shapiro coefficients.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_repr::{enumerate_dominant, dominant_count, weyl_dimension_f64};
use crate::numfmt::format_sig17;

/// Default cap on the number of rows of a dense matrix.
pub const DEFAULT_SIZE_CAP: usize = 4096;
pub const DEFAULT_NORM_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 500_000;
/// Relative slack when checking a computed norm against a closed-form bound.
pub const NORM_BOUND_TOLERANCE: f64 = 1e-10;
/// Absolute tolerance for `|P_k|² + |Q_k|² = 2^{k+1}` on the circle.
pub const MODULUS_TOLERANCE: f64 = 1e-9;
pub const MAX_RS_GENERATION: u32 = 20;
pub const MAX_HANKEL_GENERATION: u32 = 12;

/// Row-major dense real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        DenseMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// `y = M x`
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `y = Mᵀ x`
    pub fn mul_vec_transposed(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows);
        let mut y = vec![0.0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (yj, a) in y.iter_mut().zip(self.row(i)) {
                *yj += a * xi;
            }
        }
        y
    }

    /// Kronecker product, indices in the matching lexicographic order.
    pub fn kron(&self, other: &DenseMatrix) -> DenseMatrix {
        let (r2, c2) = (other.rows, other.cols);
        DenseMatrix::from_fn(self.rows * r2, self.cols * c2, |i, j| {
            self.get(i / r2, j / c2) * other.get(i % r2, j % c2)
        })
    }

    /// Row-major CSV, one matrix row per line, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|&x| format_sig17(x)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

fn l2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Largest singular value by power iteration on `MᵀM` from the all-ones
/// vector; stops once successive estimates agree to `tol` relatively.
pub fn operator_norm(m: &DenseMatrix, tol: f64) -> Result<f64> {
    operator_norm_with(m, tol, DEFAULT_MAX_ITER)
}

pub fn operator_norm_with(m: &DenseMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    if m.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(Error::Precondition("matrix has non-finite entries".into()));
    }
    if m.rows == 0 || m.cols == 0 {
        return Ok(0.0);
    }
    let mut x = vec![1.0 / (m.cols as f64).sqrt(); m.cols];
    if l2(&m.mul_vec(&x)) == 0.0 {
        // all-ones lies in the kernel; restart from the heaviest column
        let heaviest = (0..m.cols)
            .map(|j| (0..m.rows).map(|i| m.get(i, j).powi(2)).sum::<f64>())
            .enumerate()
            .fold((0, 0.0), |best, (j, s)| if s > best.1 { (j, s) } else { best });
        if heaviest.1 == 0.0 {
            return Ok(0.0);
        }
        x = vec![0.0; m.cols];
        x[heaviest.0] = 1.0;
    }
    let mut sigma = 0.0;
    let mut last_step = f64::INFINITY;
    for _ in 0..max_iter {
        let y = m.mul_vec(&x);
        let next = l2(&y);
        let z = m.mul_vec_transposed(&y);
        let zn = l2(&z);
        if zn == 0.0 {
            return Ok(next);
        }
        x = z.into_iter().map(|v| v / zn).collect();
        let step = (next - sigma).abs();
        // geometric extrapolation of the remaining increase
        let ratio = step / last_step;
        let remaining = if ratio < 1.0 { step * ratio / (1.0 - ratio) } else { f64::INFINITY };
        if step <= tol * next && (step == 0.0 || remaining <= tol * next) {
            return Ok(next);
        }
        sigma = next;
        last_step = step;
    }
    Err(Error::NoConvergence { iterations: max_iter })
}

/// `sup_i (Σ_j |m_ij|²)^{1/2}`
pub fn littlewood_row_norm(m: &DenseMatrix) -> f64 {
    (0..m.rows()).map(|i| l2(m.row(i))).fold(0.0, f64::max)
}

/// `sup_j (Σ_i |m_ij|²)^{1/2}`
pub fn littlewood_col_norm(m: &DenseMatrix) -> f64 {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m.get(i, j).powi(2)).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// T matrices

/// `‖i‖_1` for every `i ∈ {1..d}^n`, lexicographic order.
pub fn lattice_box_norms(n: usize, d: usize) -> Vec<u64> {
    let mut out = vec![0u64];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|&s| (1..=d as u64).map(move |c| s + c))
            .collect();
    }
    out
}

fn box_size(n: usize, d: usize, cap: usize) -> Result<usize> {
    let rows = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(d));
    match rows {
        Some(r) if r <= cap => Ok(r),
        _ => Err(Error::SizeCap { rows: rows.unwrap_or(usize::MAX), cap }),
    }
}

/// `T^α_d` as a dense matrix on `I^n_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierMatrix {
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub norms: Vec<u64>,
    pub matrix: DenseMatrix,
}

pub fn t_entry(alpha: f64, norm_i: u64, norm_j: u64) -> f64 {
    let (a, b) = (norm_i as f64, norm_j as f64);
    ((1.0 + a + b) / ((1.0 + a) * (1.0 + b))).powf(alpha)
}

pub fn build_t_matrix(n: usize, alpha: f64, d: usize, cap: usize) -> Result<MultiplierMatrix> {
    if n == 0 || d == 0 {
        return Err(Error::Precondition("lattice dimension and box side must be positive".into()));
    }
    box_size(n, d, cap)?;
    let norms = lattice_box_norms(n, d);
    let k = norms.len();
    let matrix = DenseMatrix::from_fn(k, k, |i, j| t_entry(alpha, norms[i], norms[j]));
    Ok(MultiplierMatrix { n, d, alpha, norms, matrix })
}

/// `T = S ∘ (U + V)` with `U(i, j) = u_i`, `V(i, j) = v_j` and
/// `u_i = (1 + ‖i‖)^{-α}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LittlewoodDecomposition {
    pub n: usize,
    pub d: usize,
    pub alpha: f64,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub s: DenseMatrix,
    /// `(Σ_i u_i²)^{1/2}`, the column-Littlewood norm of `U`.
    pub column_norm: f64,
}

impl LittlewoodDecomposition {
    pub fn u_piece(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.u.len(), self.v.len(), |i, _| self.u[i])
    }

    pub fn v_piece(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.u.len(), self.v.len(), |_, j| self.v[j])
    }

    /// `S ∘ (U + V)`
    pub fn reconstruct(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.u.len(), self.v.len(), |i, j| {
            self.s.get(i, j) * (self.u[i] + self.v[j])
        })
    }
}

pub fn littlewood_decompose(n: usize, alpha: f64, d: usize, cap: usize) -> Result<LittlewoodDecomposition> {
    let t = build_t_matrix(n, alpha, d, cap)?;
    let u: Vec<f64> = t.norms.iter().map(|&a| (1.0 + a as f64).powf(-alpha)).collect();
    let v = u.clone();
    let s = DenseMatrix::from_fn(u.len(), v.len(), |i, j| t.matrix.get(i, j) / (u[i] + v[j]));
    let cap_s = 2f64.powf(alpha);
    if let Some(bad) = s.as_slice().iter().find(|&&x| !(x > 0.0 && x <= cap_s)) {
        return Err(Error::Invariant(format!("Schur factor {bad} outside (0, 2^α]")));
    }
    Ok(LittlewoodDecomposition { n, d, alpha, column_norm: l2(&u), u, v, s })
}

// ---------------------------------------------------------------------------
// Epstein sums

/// Number of `i ∈ Z^n` with `‖i‖_1 = r`.
pub fn lattice_shell_count(n: usize, r: u64) -> f64 {
    if r == 0 {
        return 1.0;
    }
    // choose the k nonzero coordinates, their signs, and a composition of r
    // into k positive parts
    let binom = |a: u64, b: u64| -> f64 {
        if b > a {
            return 0.0;
        }
        (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
    };
    (1..=n as u64)
        .map(|k| 2f64.powi(k as i32) * binom(n as u64, k) * binom(r - 1, k - 1))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpsteinPartial {
    pub n: usize,
    pub alpha: f64,
    pub radius: u64,
    /// `Σ_{‖i‖_1 ≤ radius} (1 + ‖i‖_1)^{-2α}`
    pub partial_sum: f64,
    /// Integral-comparison bound on the remainder, when the series converges.
    pub tail_bound: Option<f64>,
    pub converged: bool,
}

pub fn epstein_partial(n: usize, alpha: f64, radius: u64) -> EpsteinPartial {
    let partial_sum = (0..=radius)
        .rev()
        .map(|r| lattice_shell_count(n, r) * (1.0 + r as f64).powf(-2.0 * alpha))
        .sum();
    let excess = 2.0 * alpha - n as f64;
    // shell count ≤ 2^n (1 + r)^{n-1}, so the tail is at most
    // 2^n ∫_R^∞ (1 + x)^{n-1-2α} dx
    let tail_bound = (excess > 0.0)
        .then(|| 2f64.powi(n as i32) * (1.0 + radius as f64).powf(-excess) / excess);
    EpsteinPartial { n, alpha, radius, partial_sum, converged: tail_bound.is_some(), tail_bound }
}

// ---------------------------------------------------------------------------
// Rudin-Shapiro polynomials and Hankel sign matrices

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RudinShapiroPair {
    pub k: u32,
    pub p: Vec<i8>,
    pub q: Vec<i8>,
}

/// `P_0 = Q_0 = 1`, `P_{k+1} = P_k + z^{2^k} Q_k`, `Q_{k+1} = P_k - z^{2^k} Q_k`.
pub fn rudin_shapiro(k: u32) -> Result<RudinShapiroPair> {
    if k > MAX_RS_GENERATION {
        return Err(Error::Range(format!("generation {k} exceeds {MAX_RS_GENERATION}")));
    }
    let (mut p, mut q) = (vec![1i8], vec![1i8]);
    for _ in 0..k {
        let np: Vec<i8> = p.iter().chain(q.iter()).copied().collect();
        let nq: Vec<i8> = p.iter().copied().chain(q.iter().map(|c| -c)).collect();
        p = np;
        q = nq;
    }
    Ok(RudinShapiroPair { k, p, q })
}

impl RudinShapiroPair {
    /// `(|P(z_m)|², |Q(z_m)|²)` at `z_m = e^{2πim/N}`, `m = 0..N`. Powers of
    /// `z_m` are read from a table of `N`-th roots of unity.
    pub fn squared_moduli_on_circle(&self, samples: usize) -> Vec<(f64, f64)> {
        let roots: Vec<(f64, f64)> = (0..samples)
            .map(|m| {
                let t = 2.0 * PI * m as f64 / samples as f64;
                (t.cos(), t.sin())
            })
            .collect();
        let eval = |coeffs: &[i8], m: usize| {
            let (mut re, mut im) = (0.0, 0.0);
            for (j, &c) in coeffs.iter().enumerate() {
                let (cr, ci) = roots[(j * m) % samples];
                re += f64::from(c) * cr;
                im += f64::from(c) * ci;
            }
            re * re + im * im
        };
        (0..samples)
            .into_par_iter()
            .map(|m| (eval(&self.p, m), eval(&self.q, m)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupNormReport {
    pub k: u32,
    pub samples: usize,
    pub max_identity_error: f64,
    pub max_abs_p: f64,
    pub max_abs_q: f64,
    /// `√(2^{k+1})`
    pub sup_bound: f64,
}

pub fn supnorm_check(pair: &RudinShapiroPair, samples: usize) -> Result<SupNormReport> {
    if samples == 0 {
        return Err(Error::Precondition("at least one sample is needed".into()));
    }
    let target = 2f64.powi(pair.k as i32 + 1);
    let values = pair.squared_moduli_on_circle(samples);
    let max_identity_error =
        values.iter().map(|(a, b)| (a + b - target).abs()).fold(0.0, f64::max);
    let max_abs_p = values.iter().map(|v| v.0.sqrt()).fold(0.0, f64::max);
    let max_abs_q = values.iter().map(|v| v.1.sqrt()).fold(0.0, f64::max);
    let sup_bound = target.sqrt();
    if max_identity_error > MODULUS_TOLERANCE {
        return Err(Error::Invariant(format!(
            "|P|²+|Q|² deviates from 2^{} by {max_identity_error}",
            pair.k + 1
        )));
    }
    if max_abs_p > sup_bound * (1.0 + MODULUS_TOLERANCE) {
        return Err(Error::Invariant(format!("sup |P_{}| = {max_abs_p} > {sup_bound}", pair.k)));
    }
    Ok(SupNormReport { k: pair.k, samples, max_identity_error, max_abs_p, max_abs_q, sup_bound })
}

/// `d × d` Hankel matrix `(a_{i+j})` with `d = 2^k`, where `a_m` is the
/// coefficient of `z^m` in `P_{k+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelSignMatrix {
    pub k: u32,
    pub d: usize,
    pub symbols: Vec<i8>,
    pub matrix: DenseMatrix,
}

impl HankelSignMatrix {
    /// `2√d`, the sup norm bound of `P_{k+1}`.
    pub fn norm_bound(&self) -> f64 {
        2.0 * (self.d as f64).sqrt()
    }
}

pub fn hankel_sign_matrix(k: u32) -> Result<HankelSignMatrix> {
    if k > MAX_HANKEL_GENERATION {
        return Err(Error::Range(format!("generation {k} exceeds {MAX_HANKEL_GENERATION}")));
    }
    let d = 1usize << k;
    let next = rudin_shapiro(k + 1)?;
    let symbols: Vec<i8> = next.p[..2 * d - 1].to_vec();
    let matrix = DenseMatrix::from_fn(d, d, |i, j| f64::from(symbols[i + j]));
    debug_assert!(matrix.as_slice().iter().all(|x| x.abs() == 1.0));
    debug_assert!((1..d).all(|i| (1..d).all(|j| matrix.get(i, j - 1) == matrix.get(i - 1, j))));
    Ok(HankelSignMatrix { k, d, symbols, matrix })
}

// ---------------------------------------------------------------------------
// Divergence certificates

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceRecord {
    pub d: usize,
    pub t_norm: f64,
    pub b_norm: f64,
    /// `L(d) = ‖T^α_d‖ / ‖B_d‖`, a lower bound for the Schur norm of `T^α_d`.
    pub quotient: f64,
    /// `2^{-α} d^{n/2} (Σ_{i ∈ I^n_d} (1 + ‖i‖)^{-2α})^{1/2}`
    pub op_norm_lower_bound: f64,
    /// `2^{-α-n} (Σ_{i ∈ I^n_d} (1 + ‖i‖)^{-2α})^{1/2}`
    pub analytic_quotient_bound: f64,
    /// `(Σ_{i ∈ I^n_d} (1 + ‖i‖)^{-2α})^{1/2}`
    pub littlewood_column_norm: f64,
    pub op_norm_bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivergenceCertificate {
    pub n: usize,
    pub alpha: f64,
    pub records: Vec<DivergenceRecord>,
}

impl DivergenceCertificate {
    pub fn all_bounds_hold(&self) -> bool {
        self.records.iter().all(|r| r.op_norm_bound_holds)
    }

    pub fn quotients_strictly_increasing(&self) -> bool {
        self.records.windows(2).all(|w| w[1].quotient > w[0].quotient)
    }
}

/// Builds `T^α_d` and `B_d = A_d^{⊗n}` for each `d = 2^k` and records the
/// quotient of their operator norms next to the closed-form lower bounds.
pub fn divergence_certificate(
    n: usize,
    alpha: f64,
    d_list: &[usize],
    cap: usize,
) -> Result<DivergenceCertificate> {
    let mut records = Vec::with_capacity(d_list.len());
    for &d in d_list {
        if !d.is_power_of_two() {
            return Err(Error::Precondition(format!("box side {d} is not a power of two")));
        }
        let t = build_t_matrix(n, alpha, d, cap)?;
        let a = hankel_sign_matrix(d.trailing_zeros())?;
        let mut b = a.matrix.clone();
        for _ in 1..n {
            b = b.kron(&a.matrix);
        }
        let t_norm = operator_norm(&t.matrix, DEFAULT_NORM_TOL)?;
        let b_norm = operator_norm(&b, DEFAULT_NORM_TOL)?;
        let sum: f64 = t.norms.iter().map(|&x| (1.0 + x as f64).powf(-2.0 * alpha)).sum();
        let col = sum.sqrt();
        let op_norm_lower_bound = 2f64.powf(-alpha) * (d as f64).powf(n as f64 / 2.0) * col;
        records.push(DivergenceRecord {
            d,
            t_norm,
            b_norm,
            quotient: t_norm / b_norm,
            op_norm_lower_bound,
            analytic_quotient_bound: 2f64.powf(-alpha - n as f64) * col,
            littlewood_column_norm: col,
            op_norm_bound_holds: t_norm >= op_norm_lower_bound * (1.0 - NORM_BOUND_TOLERANCE),
        });
    }
    Ok(DivergenceCertificate { n, alpha, records })
}

// ---------------------------------------------------------------------------
// Littlewood tail sums over the dual of SU(n)

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupTail {
    pub n: usize,
    pub alpha: f64,
    /// Manifold dimension `n² - 1` of SU(n).
    pub group_dimension: usize,
    pub lambda1_max: u32,
    /// `Σ_{λ_1 = m} d_λ² / (1 + m)^{2α}` for `m = 0..=lambda1_max`.
    pub shell_sums: Vec<f64>,
    /// Cumulative sums of `shell_sums`.
    pub partial_sums: Vec<f64>,
    /// First shell used in the log-log fit.
    pub fit_from: u32,
    /// Least-squares slope of `ln shell(m)` against `ln(1 + m)`.
    pub shell_slope: f64,
    /// `shell_slope + 1`: growth exponent of the partial sums, negative
    /// exactly when they converge.
    pub growth_exponent: f64,
    pub estimated_convergent: bool,
    /// `2α > n² - 1`
    pub analytic_convergent: bool,
}

pub fn group_littlewood_tail(n: usize, alpha: f64, lambda1_max: u32, budget: u64) -> Result<GroupTail> {
    if n < 2 {
        return Err(Error::Precondition(format!("rank {n} must be at least 2")));
    }
    if lambda1_max < 4 {
        return Err(Error::Precondition("need at least five shells to fit a slope".into()));
    }
    if dominant_count(n, lambda1_max) > budget.into() {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut shells = vec![0.0; lambda1_max as usize + 1];
    for lambda in enumerate_dominant(n, lambda1_max) {
        let dim = weyl_dimension_f64(&lambda);
        shells[lambda.first() as usize] += dim * dim;
    }
    let shell_sums: Vec<f64> = shells
        .iter()
        .enumerate()
        .map(|(m, s)| s * (1.0 + m as f64).powf(-2.0 * alpha))
        .collect();
    let partial_sums = shell_sums
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    let fit_from = (lambda1_max / 2).max(1);
    let pts: Vec<(f64, f64)> = (fit_from..=lambda1_max)
        .map(|m| ((1.0 + f64::from(m)).ln(), shell_sums[m as usize].ln()))
        .collect();
    let shell_slope = least_squares_slope(&pts);
    let growth_exponent = shell_slope + 1.0;
    let group_dimension = n * n - 1;
    Ok(GroupTail {
        n,
        alpha,
        group_dimension,
        lambda1_max,
        shell_sums,
        partial_sums,
        fit_from,
        shell_slope,
        growth_exponent,
        estimated_convergent: growth_exponent < 0.0,
        analytic_convergent: 2.0 * alpha > group_dimension as f64,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
