//! Exact spectral projectors over the Gaussian rationals, given externally
//! supplied eigenvalues.

use num_traits::Zero;

use super::matrix::{exact_one, ExactMatrix, ExactScalar, Matrix};
use crate::error::{Error, Result};

/// Basis of the right null space, one column per free variable.
pub fn null_space(a: &ExactMatrix) -> ExactMatrix {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                let tmp = m[(p, k)].clone();
                m[(p, k)] = m[(r, k)].clone();
                m[(r, k)] = tmp;
            }
        }
        let inv = exact_one() / m[(r, c)].clone();
        for k in 0..cols {
            m[(r, k)] = m[(r, k)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for k in 0..cols {
                let v = m[(i, k)].clone() - f.clone() * m[(r, k)].clone();
                m[(i, k)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = ExactMatrix::zeros(cols, free.len());
    for (j, &f) in free.iter().enumerate() {
        basis[(f, j)] = exact_one();
        for (row, &pc) in pivots.iter().enumerate() {
            basis[(pc, j)] = -m[(row, f)].clone();
        }
    }
    basis
}

/// Eigenvalues with multiplicities read off the diagonal, when `a` is
/// upper or lower triangular.
pub fn triangular_eigenvalues(a: &ExactMatrix) -> Option<Vec<(ExactScalar, usize)>> {
    let n = a.dim();
    let upper = (0..n).all(|i| (0..i).all(|j| a[(i, j)].is_zero()));
    let lower = (0..n).all(|i| (i + 1..n).all(|j| a[(i, j)].is_zero()));
    if !(upper || lower) {
        return None;
    }
    let mut out: Vec<(ExactScalar, usize)> = Vec::new();
    for z in a.diagonal() {
        match out.iter_mut().find(|(w, _)| *w == z) {
            Some((_, m)) => *m += 1,
            None => out.push((z, 1)),
        }
    }
    Some(out)
}

/// Projectors `P_i` onto `ker (A − λ_i)^{m_i}` along the other generalized
/// eigenspaces, for the supplied `(λ_i, m_i)`.
pub fn exact_spectral_projectors(
    a: &ExactMatrix,
    eigenvalues: &[(ExactScalar, usize)],
) -> Result<Vec<ExactMatrix>> {
    let n = a.dim();
    let total: usize = eigenvalues.iter().map(|(_, m)| m).sum();
    if total != n {
        return Err(Error::NotExact(format!(
            "supplied multiplicities sum to {total}, dimension is {n}"
        )));
    }
    let mut blocks = Vec::with_capacity(eigenvalues.len());
    for (lambda, mult) in eigenvalues {
        let k = null_space(&a.shift(lambda).pow(*mult as u32));
        if k.cols() != *mult {
            return Err(Error::NotExact(format!(
                "eigenvalue {lambda} has generalized eigenspace of dimension {}, expected {mult}",
                k.cols()
            )));
        }
        blocks.push(k);
    }
    let basis = Matrix::from_fn(n, n, |r, c| {
        let mut c = c;
        for b in &blocks {
            if c < b.cols() {
                return b[(r, c)].clone();
            }
            c -= b.cols();
        }
        unreachable!()
    });
    let inv = basis
        .inverse()
        .map_err(|_| Error::NotExact("generalized eigenvectors are dependent".into()))?;
    let mut offset = 0;
    let mut out = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let cols: Vec<usize> = (offset..offset + b.cols()).collect();
        let all: Vec<usize> = (0..n).collect();
        let v = basis.select(&all, &cols);
        let w = inv.select(&cols, &all);
        out.push(v.matmul(&w));
        offset += b.cols();
    }
    Ok(out)
}
