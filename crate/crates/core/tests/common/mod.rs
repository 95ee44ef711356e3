//! Brute-force oracles shared by the integration tests. None of them calls
//! the library routine it is used to check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Exponent vectors `α ∈ ℕ^n` with `|α| = m`.
pub fn exponent_vectors(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=m {
        for mut rest in exponent_vectors(n - 1, m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn rpow(x: &BigRational, e: usize) -> BigRational {
    (0..e).fold(BigRational::one(), |a, _| a * x)
}

/// `Σ_α x^α` over all degree-`m` monomials, and the number of monomials.
pub fn brute_h(m: usize, x: &[BigRational]) -> (BigRational, usize) {
    let alphas = exponent_vectors(x.len(), m);
    let sum = alphas
        .iter()
        .map(|a| {
            a.iter()
                .zip(x)
                .fold(BigRational::one(), |acc, (&e, xi)| acc * rpow(xi, e))
        })
        .fold(BigRational::zero(), |a, b| a + b);
    (sum, alphas.len())
}

/// Every semistandard filling of shape `λ` with entries `0..n`, as the
/// list of entries in reading order (row by row).
pub fn ssyt(lambda: &[usize], n: usize) -> Vec<Vec<usize>> {
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut out = Vec::new();
    let mut filling = vec![vec![usize::MAX; lambda.first().copied().unwrap_or(0)]; lambda.len()];
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        n: usize,
        filling: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == cells.len() {
            out.push(cells.iter().map(|&(r, c)| filling[r][c]).collect());
            return;
        }
        let (r, c) = cells[idx];
        let lo_row = if c > 0 { filling[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { filling[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            filling[r][c] = v;
            rec(idx + 1, cells, n, filling, out);
        }
        filling[r][c] = usize::MAX;
    }
    rec(0, &cells, n, &mut filling, &mut out);
    out
}

/// `s_λ(x)` as the sum of `x^T` over semistandard tableaux.
pub fn brute_schur(lambda: &[usize], x: &[BigRational]) -> BigRational {
    ssyt(lambda, x.len())
        .iter()
        .map(|t| t.iter().fold(BigRational::one(), |a, &i| a * &x[i]))
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Eigenvalue moduli of `Sym^m` by monomial enumeration.
pub fn brute_sym_moduli(x: &[f64], m: usize) -> Vec<f64> {
    sorted_desc(
        exponent_vectors(x.len(), m)
            .iter()
            .map(|a| a.iter().zip(x).map(|(&e, xi)| xi.powi(e as i32)).product())
            .collect(),
    )
}

/// Eigenvalue moduli of `Ext^k` by subset enumeration.
pub fn brute_ext_moduli(x: &[f64], k: usize) -> Vec<f64> {
    sorted_desc(
        subsets(x.len(), k)
            .iter()
            .map(|s| s.iter().map(|&i| x[i]).product())
            .collect(),
    )
}

/// Eigenvalue moduli of the Schur module `λ` by tableau enumeration.
pub fn brute_schur_moduli(x: &[f64], lambda: &[usize]) -> Vec<f64> {
    sorted_desc(
        ssyt(lambda, x.len())
            .iter()
            .map(|t| t.iter().map(|&i| x[i]).product())
            .collect(),
    )
}

/// `ln h_m(x)` from Newton's identity `m·h_m = Σ_{i=1}^{m} p_i h_{m−i}` on
/// `x / max x`. Every term is positive, so nothing cancels.
pub fn newton_ln_h(m: usize, x: &[f64]) -> f64 {
    let top = x.iter().cloned().fold(0.0, f64::max);
    let s: Vec<f64> = x.iter().map(|v| v / top).collect();
    let p: Vec<f64> = (0..=m)
        .map(|i| s.iter().map(|v| v.powi(i as i32)).sum())
        .collect();
    let mut h = vec![1.0f64; m + 1];
    for j in 1..=m {
        h[j] = (1..=j).map(|i| p[i] * h[j - i]).sum::<f64>() / j as f64;
    }
    h[m].ln() + m as f64 * top.ln()
}

fn exact(v: f64) -> BigRational {
    BigRational::from_f64(v).unwrap()
}

/// Whether `y` lies in the convex hull of all permutations of `x`, decided
/// in rational arithmetic on the given floats: `y` is first shifted to
/// the same total as `x`, then tested against the support function of the
/// hull in every direction `1_S` (the facet normals of the permutohedron),
/// maximised over all `n!` vertices.
pub fn hull_contains(x: &[f64], y: &[f64]) -> bool {
    let n = x.len();
    let xs: Vec<BigRational> = x.iter().map(|&v| exact(v)).collect();
    let ys: Vec<BigRational> = y.iter().map(|&v| exact(v)).collect();
    let total = |v: &[BigRational]| v.iter().fold(BigRational::zero(), |a, b| a + b);
    let shift = (total(&xs) - total(&ys)) / BigRational::from_integer(BigInt::from(n));
    let ys: Vec<BigRational> = ys.iter().map(|v| v + &shift).collect();
    let perms = permutations(n);
    for mask in 1u32..(1 << n) - 1 {
        let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let at_y = set.iter().fold(BigRational::zero(), |a, &i| a + &ys[i]);
        let support = perms
            .iter()
            .map(|p| set.iter().fold(BigRational::zero(), |a, &i| a + &xs[p[i]]))
            .max()
            .unwrap();
        if at_y > support {
            return false;
        }
    }
    true
}

/// All vertices `σ·x` of the permutohedron.
pub fn vertices(x: &[f64]) -> Vec<Vec<f64>> {
    permutations(x.len())
        .iter()
        .map(|p| p.iter().map(|&i| x[i]).collect())
        .collect()
}
