//! Slow, independent reference computations used by the integration and
//! acceptance tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

/// Contents of all semistandard fillings of the Young diagram `shape` with
/// entries in `1..=n`, built cell by cell.
pub fn ssyt_contents(shape: &[u32], n: usize) -> BTreeMap<Vec<u32>, u64> {
    let shape: Vec<usize> = shape.iter().map(|&x| x as usize).filter(|&x| x > 0).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = BTreeMap::new();
    fill(&cells, 0, &mut grid, n, &mut out);
    out
}

fn fill(
    cells: &[(usize, usize)],
    at: usize,
    grid: &mut Vec<Vec<usize>>,
    n: usize,
    out: &mut BTreeMap<Vec<u32>, u64>,
) {
    if at == cells.len() {
        let mut content = vec![0u32; n];
        for row in grid.iter() {
            for &v in row {
                content[v - 1] += 1;
            }
        }
        *out.entry(content).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[at];
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=n {
        grid[r][c] = v;
        fill(cells, at + 1, grid, n, out);
    }
    grid[r][c] = 0;
}

/// Tensor product multiplicities by multiplying characters and repeatedly
/// peeling off the character of the lexicographically highest weight.
/// Returned weights are normalized so that the last part is zero.
pub fn lr_by_characters(lambda: &[u32], mu: &[u32]) -> BTreeMap<Vec<u32>, u64> {
    let n = lambda.len();
    let a = ssyt_contents(lambda, n);
    let b = ssyt_contents(mu, n);
    let mut product: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for (x, cx) in &a {
        for (y, cy) in &b {
            let z: Vec<u32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            *product.entry(z).or_insert(0) += (cx * cy) as i64;
        }
    }
    let mut out = BTreeMap::new();
    loop {
        product.retain(|_, c| *c != 0);
        let Some((top, &c)) = product.iter().next_back() else { break };
        assert!(c > 0, "negative multiplicity while peeling");
        let top = top.clone();
        assert!(top.windows(2).all(|w| w[0] >= w[1]), "highest weight {top:?} is not dominant");
        for (x, cx) in ssyt_contents(&top, n) {
            *product.entry(x).or_insert(0) -= c * cx as i64;
        }
        let last = top[n - 1];
        out.insert(top.iter().map(|v| v - last).collect(), c as u64);
    }
    out
}

/// `∏_{i<j} (λ_i - λ_j + j - i) / (j - i)` in exact integer arithmetic.
pub fn weyl_dim(lambda: &[u32]) -> u128 {
    let n = lambda.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= (lambda[i] - lambda[j]) as u128 + (j - i) as u128;
            den *= (j - i) as u128;
        }
    }
    assert_eq!(num % den, 0);
    num / den
}

/// `sort(t) ⊴ λ` for some nonnegative content `t` with `t_i - t_n = p_i` and
/// `Σ t = |λ|`, scanning every possible `t_n`.
pub fn dominance_contains(lambda: &[u32], p: &[i64]) -> bool {
    let size: i64 = lambda.iter().map(|&x| x as i64).sum();
    (0..=size).any(|tn| {
        let mut t: Vec<i64> = p.iter().map(|&x| x + tn).collect();
        t.push(tn);
        if t.iter().any(|&x| x < 0) || t.iter().sum::<i64>() != size {
            return false;
        }
        t.sort_unstable_by(|a, b| b.cmp(a));
        let mut sl = 0i64;
        let mut st = 0i64;
        t.iter().zip(lambda).all(|(&ti, &li)| {
            sl += li as i64;
            st += ti;
            st <= sl
        })
    })
}

/// All dominant weights of rank `n` (last part zero) with first part at most
/// `max`, by brute force over nonincreasing tuples.
pub fn dominant_weights(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n - 1 {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u32>| {
                let cap = w.last().copied().unwrap_or(max);
                (0..=cap).map(move |x| [w.clone(), vec![x]].concat())
            })
            .collect();
    }
    for w in &mut out {
        w.push(0);
    }
    out.sort();
    out
}
