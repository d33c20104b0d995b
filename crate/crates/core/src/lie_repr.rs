//! Irreducible representations of SU(n).
//!
//! Dominant weights are stored in normalized form (last part zero). Everything
//! here is exact integer combinatorics: Weyl dimensions, semistandard tableaux
//! counted through Gelfand-Tsetlin patterns, and tensor products through
//! Littlewood-Richardson skew fillings.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of tableaux (or search nodes) visited per call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Highest weight of an irreducible SU(n) representation, normalized so that
/// the last part is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u32>")]
pub struct DominantWeight {
    parts: Vec<u32>,
}

impl DominantWeight {
    /// Validates a nonincreasing tuple of length at least 2 and normalizes it
    /// by subtracting the last part from every entry.
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidWeight { parts, reason: "rank must be at least 2" });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight { parts, reason: "parts must be nonincreasing" });
        }
        let last = *parts.last().unwrap();
        let mut normalized = Vec::with_capacity(parts.len());
        for &p in &parts {
            match u32::try_from(p - last) {
                Ok(v) => normalized.push(v),
                Err(_) => return Err(Error::InvalidWeight { parts, reason: "part too large" }),
            }
        }
        Ok(DominantWeight { parts: normalized })
    }

    /// The trivial representation of SU(n).
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 2, "rank must be at least 2");
        DominantWeight { parts: vec![0; n] }
    }

    /// Builds a weight from a partition with at most `n` rows, padding with
    /// zeros and stripping full columns.
    pub(crate) fn from_partition(partition: &[u32], n: usize) -> Self {
        debug_assert!(partition.len() <= n);
        let mut parts = partition.to_vec();
        parts.resize(n, 0);
        let last = parts[n - 1];
        for p in &mut parts {
            *p -= last;
        }
        DominantWeight { parts }
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn first(&self) -> u32 {
        self.parts[0]
    }

    /// Number of boxes in the Young diagram.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.parts[0] == 0
    }

    /// One-row weight `(first, 0, ..., 0)`.
    pub fn one_row(n: usize, first: u32) -> Self {
        let mut parts = vec![0; n];
        parts[0] = first;
        DominantWeight { parts }
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        DominantWeight::new(parts)
    }
}

impl From<DominantWeight> for Vec<u32> {
    fn from(w: DominantWeight) -> Self {
        w.parts
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.parts.iter())
    }
}

impl FromStr for DominantWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DominantWeight::new(parse_tuple(s)?)
    }
}

/// Character `χ_P` of the maximal torus `H_n ≅ T^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TorusCharacter {
    exponents: Vec<i64>,
}

impl TorusCharacter {
    pub fn new(exponents: Vec<i64>) -> Self {
        TorusCharacter { exponents }
    }

    pub fn zero(len: usize) -> Self {
        TorusCharacter { exponents: vec![0; len] }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn l1_norm(&self) -> u64 {
        self.exponents.iter().map(|p| p.unsigned_abs()).sum()
    }

    /// Entries rearranged in nonincreasing order.
    pub fn sorted_desc(&self) -> TorusCharacter {
        let mut exponents = self.exponents.clone();
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        TorusCharacter { exponents }
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.exponents.iter())
    }
}

impl FromStr for TorusCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(TorusCharacter::new(parse_tuple(s)?))
    }
}

fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Range(format!("cannot parse integer tuple `{s}`")))
        })
        .collect()
}

fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::RankMismatch { expected, found });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Dimensions and lengths

fn weyl_factors(lambda: &DominantWeight) -> impl Iterator<Item = (u64, u64)> + '_ {
    let parts = lambda.parts();
    let n = parts.len();
    (0..n).flat_map(move |i| {
        (i + 1..n).map(move |j| {
            let num = u64::from(parts[i] - parts[j]) + (j - i) as u64;
            (num, (j - i) as u64)
        })
    })
}

/// Exact Weyl dimension as a wide integer.
pub fn weyl_dimension_big(lambda: &DominantWeight) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (a, b) in weyl_factors(lambda) {
        num *= a;
        den *= b;
    }
    num / den
}

/// Dimension of `π_λ` by the Weyl product formula. The product is formed in
/// wide integers; the result is narrowed to 64 bits with a range check.
pub fn weyl_dimension(lambda: &DominantWeight) -> Result<u64> {
    weyl_dimension_big(lambda)
        .to_u64()
        .ok_or_else(|| Error::Range(format!("dimension of {lambda} exceeds 64 bits")))
}

/// `ln d_λ`, summed factor by factor so it never overflows.
pub fn ln_weyl_dimension(lambda: &DominantWeight) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (a, b) in weyl_factors(lambda) {
        num += (a as f64).ln();
        den += (b as f64).ln();
    }
    num - den
}

/// Floating-point Weyl dimension, for scans where `d_λ²` is summed.
pub fn weyl_dimension_f64(lambda: &DominantWeight) -> f64 {
    weyl_factors(lambda).map(|(a, b)| a as f64 / b as f64).product()
}

/// `∏_{i<j} (j - i)`, the denominator of the Weyl formula.
pub fn superfactorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for k in 1..n {
        for m in 1..=k {
            acc *= m as u64;
        }
    }
    acc
}

/// Word length `τ_S(π_λ) = λ_1` for the canonical generating set.
pub fn length(lambda: &DominantWeight) -> u32 {
    lambda.first()
}

// ---------------------------------------------------------------------------
// Semistandard tableaux

/// Multiplicities of torus characters in `π_λ|_{H_n}`, keyed in lexicographic
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightMultiplicitySet {
    pub rank: usize,
    pub multiplicities: BTreeMap<TorusCharacter, u64>,
}

impl WeightMultiplicitySet {
    pub fn total(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    pub fn multiplicity(&self, p: &TorusCharacter) -> u64 {
        self.multiplicities.get(p).copied().unwrap_or(0)
    }
}

// Walks every Gelfand-Tsetlin pattern below `λ`; each pattern is one SSYT and
// its row-sum differences give the content `(t_1, ..., t_n)`.
struct ContentWalker<F: FnMut(&[u32])> {
    content: Vec<u32>,
    visited: u64,
    budget: u64,
    sink: F,
}

impl<F: FnMut(&[u32])> ContentWalker<F> {
    fn descend(&mut self, kappa: &[u32]) -> Result<()> {
        let k = kappa.len();
        if k == 1 {
            self.content[0] = kappa[0];
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget });
            }
            (self.sink)(&self.content);
            return Ok(());
        }
        let mut mu = vec![0u32; k - 1];
        self.interlace(kappa, &mut mu, 0)
    }

    fn interlace(&mut self, kappa: &[u32], mu: &mut Vec<u32>, i: usize) -> Result<()> {
        let k = kappa.len();
        if i == k - 1 {
            let outer: u32 = kappa.iter().sum();
            let inner: u32 = mu.iter().sum();
            self.content[k - 1] = outer - inner;
            let next = mu.clone();
            return self.descend(&next);
        }
        for v in kappa[i + 1]..=kappa[i] {
            mu[i] = v;
            self.interlace(kappa, mu, i + 1)?;
        }
        Ok(())
    }
}

/// Multiplicity of every full content `(t_1, ..., t_n)` among SSYT of shape
/// `λ` with entries in `{1..n}`.
pub fn content_multiplicities(
    lambda: &DominantWeight,
    budget: u64,
) -> Result<BTreeMap<Vec<u32>, u64>> {
    let dim = weyl_dimension_big(lambda);
    if dim > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut out = BTreeMap::new();
    let mut walker = ContentWalker {
        content: vec![0; lambda.rank()],
        visited: 0,
        budget,
        sink: |t: &[u32]| *out.entry(t.to_vec()).or_insert(0u64) += 1,
    };
    walker.descend(lambda.parts())?;
    Ok(out)
}

/// Torus weights of `π_λ` in the reduced coordinates `P = (t_i - t_n)_{i<n}`.
pub fn ssyt_weight_multiplicities(
    lambda: &DominantWeight,
    budget: u64,
) -> Result<WeightMultiplicitySet> {
    let n = lambda.rank();
    let mut multiplicities = BTreeMap::new();
    for (t, count) in content_multiplicities(lambda, budget)? {
        let tn = i64::from(t[n - 1]);
        let p = TorusCharacter::new(t[..n - 1].iter().map(|&x| i64::from(x) - tn).collect());
        *multiplicities.entry(p).or_insert(0) += count;
    }
    Ok(WeightMultiplicitySet { rank: n, multiplicities })
}

/// Full content `t` with `t_i - t_n = p_i` and `Σ t = |λ|`, if one exists.
pub fn content_for_character(lambda: &DominantWeight, p: &TorusCharacter) -> Option<Vec<u32>> {
    let n = lambda.rank();
    let boxes = lambda.size() as i64;
    let shift: i64 = p.exponents().iter().sum();
    let rest = boxes - shift;
    if rest < 0 || rest % n as i64 != 0 {
        return None;
    }
    let tn = rest / n as i64;
    let mut t = Vec::with_capacity(n);
    for &pi in p.exponents() {
        let ti = pi + tn;
        if ti < 0 {
            return None;
        }
        t.push(u32::try_from(ti).ok()?);
    }
    t.push(u32::try_from(tn).ok()?);
    Some(t)
}

// Depth-first search for one Gelfand-Tsetlin pattern with prescribed content.
// States (intermediate partitions) proven dead are memoized.
struct ContentSearch<'a> {
    content: &'a [u32],
    dead: HashSet<Vec<u32>>,
    visited: u64,
    budget: u64,
}

impl ContentSearch<'_> {
    fn feasible(&mut self, kappa: &[u32]) -> Result<bool> {
        let k = kappa.len();
        if k == 1 {
            return Ok(kappa[0] == self.content[0]);
        }
        if self.dead.contains(kappa) {
            return Ok(false);
        }
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let total: u32 = kappa.iter().sum();
        let found = match total.checked_sub(self.content[k - 1]) {
            Some(target) => {
                let mut mu = vec![0u32; k - 1];
                self.fill(kappa, &mut mu, 0, target)?
            }
            None => false,
        };
        if !found {
            self.dead.insert(kappa.to_vec());
        }
        Ok(found)
    }

    fn fill(&mut self, kappa: &[u32], mu: &mut Vec<u32>, i: usize, remaining: u32) -> Result<bool> {
        let k = kappa.len();
        if i == k - 1 {
            if remaining != 0 {
                return Ok(false);
            }
            let next = mu.clone();
            return self.feasible(&next);
        }
        let min_rest: u32 = kappa[i + 2..].iter().sum();
        let max_rest: u32 = kappa[i + 1..k - 1].iter().sum();
        for v in (kappa[i + 1]..=kappa[i]).rev() {
            if v > remaining {
                continue;
            }
            let rem = remaining - v;
            if rem < min_rest || rem > max_rest {
                continue;
            }
            mu[i] = v;
            if self.fill(kappa, mu, i + 1, rem)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Whether `χ_P ⊂ π_λ|_{H_n}`, i.e. some SSYT of shape `λ` has content with
/// `t_i - t_n = p_i`. Stops at the first witness pattern.
pub fn contains_character(lambda: &DominantWeight, p: &TorusCharacter, budget: u64) -> Result<bool> {
    check_rank(lambda.rank() - 1, p.len())?;
    let Some(content) = content_for_character(lambda, p) else {
        return Ok(false);
    };
    let mut search = ContentSearch { content: &content, dead: HashSet::new(), visited: 0, budget };
    search.feasible(lambda.parts())
}

// ---------------------------------------------------------------------------
// Tensor products

/// Decomposition of `π_λ ⊗ π_μ` into irreducibles with multiplicities
/// `c^ν_{λμ}`, keyed in lexicographic order of `ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDecomposition {
    pub lhs: DominantWeight,
    pub rhs: DominantWeight,
    #[serde(with = "terms_as_list")]
    pub terms: BTreeMap<DominantWeight, u64>,
}

impl TensorDecomposition {
    pub fn multiplicity(&self, nu: &DominantWeight) -> u64 {
        self.terms.get(nu).copied().unwrap_or(0)
    }

    /// `Σ_ν c^ν_{λμ} d_ν` in wide integers.
    pub fn total_dimension(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(nu, &c)| weyl_dimension_big(nu) * c)
            .sum()
    }

    /// `Σ_ν c^ν d_ν == d_λ d_μ`, exactly.
    pub fn conserves_dimension(&self) -> bool {
        self.total_dimension() == weyl_dimension_big(&self.lhs) * weyl_dimension_big(&self.rhs)
    }

    /// Canonical text form `λ ⊗ μ = c·ν + ...`.
    pub fn canonical_text(&self) -> String {
        let rhs = self
            .terms
            .iter()
            .map(|(nu, c)| format!("{c}·{nu}"))
            .collect::<Vec<_>>()
            .join(" + ");
        format!("{} ⊗ {} = {}", self.lhs, self.rhs, rhs)
    }
}

impl fmt::Display for TensorDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

mod terms_as_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::DominantWeight;

    #[derive(Serialize, Deserialize)]
    struct Term {
        weight: DominantWeight,
        multiplicity: u64,
    }

    pub fn serialize<S: Serializer>(
        terms: &BTreeMap<DominantWeight, u64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let list: Vec<Term> = terms
            .iter()
            .map(|(w, &m)| Term { weight: w.clone(), multiplicity: m })
            .collect();
        list.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<DominantWeight, u64>, D::Error> {
        let list = Vec::<Term>::deserialize(d)?;
        Ok(list.into_iter().map(|t| (t.weight, t.multiplicity)).collect())
    }
}

// Fills the skew shape ν/λ row by row with the letters of μ. Each row is
// weakly increasing by construction; columns must strictly increase and the
// reverse reading word must stay a lattice word.
struct LrFilling<'a> {
    n: usize,
    outer: &'a [u32],
    content: Vec<u32>,
    used: Vec<u32>,
    nu: Vec<u32>,
    prev_row: Vec<u32>,
    terms: BTreeMap<DominantWeight, u64>,
    visited: u64,
    budget: u64,
}

impl LrFilling<'_> {
    fn row(&mut self, r: usize) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if self.used == self.content {
            let mut shape = self.nu.clone();
            shape.extend_from_slice(&self.outer[r..]);
            let nu = DominantWeight::from_partition(&shape, self.n);
            *self.terms.entry(nu).or_insert(0) += 1;
            return Ok(());
        }
        if r == self.n {
            return Ok(());
        }
        let mut counts = vec![0u32; self.content.len()];
        self.choose(r, 0, &mut counts)
    }

    fn choose(&mut self, r: usize, k: usize, counts: &mut Vec<u32>) -> Result<()> {
        if k == self.content.len() {
            return self.place(r, counts);
        }
        let available = self.content[k] - self.used[k];
        // lattice word: the letters k+1 read so far may not outnumber the k's
        // read before this row
        let lattice_cap = if k == 0 {
            available
        } else {
            (self.used[k - 1] - self.used[k]).min(available)
        };
        for c in 0..=lattice_cap {
            counts[k] = c;
            self.choose(r, k + 1, counts)?;
        }
        counts[k] = 0;
        Ok(())
    }

    fn place(&mut self, r: usize, counts: &[u32]) -> Result<()> {
        let start = self.outer[r];
        let width: u32 = counts.iter().sum();
        let end = start + width;
        if r > 0 && end > self.nu[r - 1] {
            return Ok(());
        }
        let mut entries = Vec::with_capacity(width as usize);
        for (k, &c) in counts.iter().enumerate() {
            entries.extend(std::iter::repeat(k as u32 + 1).take(c as usize));
        }
        if r > 0 {
            let prev_start = self.outer[r - 1];
            for (offset, &e) in entries.iter().enumerate() {
                let col = start + offset as u32;
                if col >= prev_start && e <= self.prev_row[(col - prev_start) as usize] {
                    return Ok(());
                }
            }
        }
        for (u, &c) in self.used.iter_mut().zip(counts) {
            *u += c;
        }
        let saved = std::mem::replace(&mut self.prev_row, entries);
        self.nu.push(end);
        let result = self.row(r + 1);
        self.nu.pop();
        self.prev_row = saved;
        for (u, &c) in self.used.iter_mut().zip(counts) {
            *u -= c;
        }
        result
    }
}

/// Littlewood-Richardson decomposition of `π_λ ⊗ π_μ` for SU(n).
///
/// Skew fillings of `ν/λ` with content `μ` are enumerated for every `ν` with
/// at most `n` rows; each `ν` is then normalized by stripping full columns.
pub fn tensor_decompose(
    lhs: &DominantWeight,
    rhs: &DominantWeight,
    budget: u64,
) -> Result<TensorDecomposition> {
    check_rank(lhs.rank(), rhs.rank())?;
    let content: Vec<u32> = rhs.parts().iter().copied().take_while(|&p| p > 0).collect();
    let mut filling = LrFilling {
        n: lhs.rank(),
        outer: lhs.parts(),
        used: vec![0; content.len()],
        content,
        nu: Vec::with_capacity(lhs.rank()),
        prev_row: Vec::new(),
        terms: BTreeMap::new(),
        visited: 0,
        budget,
    };
    filling.row(0)?;
    Ok(TensorDecomposition { lhs: lhs.clone(), rhs: rhs.clone(), terms: filling.terms })
}

/// Anything that can produce tensor decompositions: the direct
/// Littlewood-Richardson enumerator, or a cache in front of it.
pub trait TensorSource: Sync {
    fn decompose(&self, lhs: &DominantWeight, rhs: &DominantWeight) -> Result<TensorDecomposition>;
}

/// Direct Littlewood-Richardson enumeration with a per-call budget.
#[derive(Clone, Copy, Debug)]
pub struct LittlewoodRichardson {
    pub budget: u64,
}

impl Default for LittlewoodRichardson {
    fn default() -> Self {
        LittlewoodRichardson { budget: DEFAULT_BUDGET }
    }
}

impl TensorSource for LittlewoodRichardson {
    fn decompose(&self, lhs: &DominantWeight, rhs: &DominantWeight) -> Result<TensorDecomposition> {
        tensor_decompose(lhs, rhs, self.budget)
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Every normalized dominant weight of rank `n` with `λ_1 ≤ max_first`, in
/// lexicographic order.
pub fn enumerate_dominant(n: usize, max_first: u32) -> DominantWeights {
    assert!(n >= 2, "rank must be at least 2");
    DominantWeights { max_first, next: Some(vec![0; n]) }
}

/// Number of weights produced by [`enumerate_dominant`]: `C(max + n - 1, n - 1)`.
pub fn dominant_count(n: usize, max_first: u32) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 1..n {
        num *= u64::from(max_first) + j as u64;
        den *= j as u64;
    }
    num / den
}

/// Iterator returned by [`enumerate_dominant`].
#[derive(Clone, Debug)]
pub struct DominantWeights {
    max_first: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for DominantWeights {
    type Item = DominantWeight;

    fn next(&mut self) -> Option<DominantWeight> {
        let current = self.next.take()?;
        let n = current.len();
        let mut succ = current.clone();
        // lexicographic successor: bump the rightmost free part and zero the tail
        for i in (0..n - 1).rev() {
            let cap = if i == 0 { self.max_first } else { succ[i - 1] };
            if succ[i] < cap {
                succ[i] += 1;
                for p in &mut succ[i + 1..n - 1] {
                    *p = 0;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(DominantWeight { parts: current })
    }
}
