//! Complete homogeneous, elementary and Schur symmetric polynomials at
//! positive arguments, in floating point and in exact rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::moduli::{rational_to_f64, ModuliVector};
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `ln h_m(x)`, evaluated on `x / max(x)` so that every intermediate stays
/// below `binom(m+n−1, n−1)`.
pub fn complete_homogeneous_ln(m: usize, x: &ModuliVector) -> f64 {
    let top = x.max();
    let scaled: Vec<f64> = x.values().iter().map(|v| v / top).collect();
    let mut row = vec![0.0f64; m + 1];
    row[0] = 1.0;
    // row[j] = h_j(x_1..x_k) after processing x_k
    for &xk in &scaled {
        for j in 1..=m {
            row[j] += xk * row[j - 1];
        }
    }
    row[m].ln() + m as f64 * top.ln()
}

/// `h_m(x)`, the character of the m-th symmetric power at `diag(x)`.
/// `Overflow` when the value is outside the f64 range; use
/// [`complete_homogeneous_ln`] then.
pub fn complete_homogeneous(m: usize, x: &ModuliVector) -> Result<f64> {
    let v = complete_homogeneous_ln(m, x).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

/// All of `h_0(x), …, h_max(x)` in exact arithmetic.
pub fn complete_homogeneous_table_exact(max_degree: usize, x: &[BigRational]) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); max_degree + 1];
    row[0] = BigRational::one();
    for xk in x {
        for j in 1..=max_degree {
            let add = xk * &row[j - 1];
            row[j] += add;
        }
    }
    row
}

pub fn complete_homogeneous_exact(m: usize, x: &[BigRational]) -> BigRational {
    complete_homogeneous_table_exact(m, x).swap_remove(m)
}

fn complete_homogeneous_table(max_degree: usize, x: &[f64]) -> Vec<f64> {
    let mut row = vec![0.0f64; max_degree + 1];
    row[0] = 1.0;
    for &xk in x {
        for j in 1..=max_degree {
            row[j] += xk * row[j - 1];
        }
    }
    row
}

/// Yields `ln h_m(x)` for `m = 0, 1, 2, …`, each step in `O(n)`.
///
/// Keeps the column `h_m(x_1..x_k)` for every `k` and rescales it after
/// each degree, so arbitrarily large `m` is fine.
#[derive(Debug, Clone)]
pub struct HomogeneousLnSeq {
    scaled: Vec<f64>,
    ln_top: f64,
    column: Vec<f64>,
    offset: f64,
    degree: usize,
}

impl HomogeneousLnSeq {
    pub fn new(x: &ModuliVector) -> Self {
        let top = x.max();
        HomogeneousLnSeq {
            scaled: x.values().iter().map(|v| v / top).collect(),
            ln_top: top.ln(),
            column: vec![1.0; x.len()],
            offset: 0.0,
            degree: 0,
        }
    }
}

impl Iterator for HomogeneousLnSeq {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.column.last().unwrap().ln() + self.offset + self.degree as f64 * self.ln_top;
        // h_{m+1}(x_1..x_k) = h_{m+1}(x_1..x_{k−1}) + x_k·h_m(x_1..x_k)
        let mut prev = 0.0;
        for (k, xk) in self.scaled.iter().enumerate() {
            let v = prev + xk * self.column[k];
            self.column[k] = v;
            prev = v;
        }
        let norm = *self.column.last().unwrap();
        for v in self.column.iter_mut() {
            *v /= norm;
        }
        self.offset += norm.ln();
        self.degree += 1;
        Some(out)
    }
}

/// `e_k(x)`, the character of the k-th exterior power at `diag(x)`.
pub fn elementary(k: usize, x: &ModuliVector) -> Result<f64> {
    let n = x.len();
    if k > n {
        return Err(Error::BadIndex { index: k, dim: n });
    }
    let top = x.max();
    let mut e = vec![0.0f64; k + 1];
    e[0] = 1.0;
    for &xi in x.values() {
        let s = xi / top;
        for j in (1..=k).rev() {
            e[j] += s * e[j - 1];
        }
    }
    let v = e[k] * top.powi(k as i32);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

pub fn elementary_exact(k: usize, x: &[BigRational]) -> Result<BigRational> {
    if k > x.len() {
        return Err(Error::BadIndex {
            index: k,
            dim: x.len(),
        });
    }
    let mut e = vec![BigRational::zero(); k + 1];
    e[0] = BigRational::one();
    for xi in x {
        for j in (1..=k).rev() {
            let add = xi * &e[j - 1];
            e[j] += add;
        }
    }
    Ok(e.swap_remove(k))
}

fn jacobi_trudi<T: crate::linalg::Scalar>(lambda: &Partition, h: &[T]) -> Matrix<T> {
    let parts = lambda.parts();
    let l = parts.len();
    Matrix::from_fn(l, l, |i, j| {
        let idx = parts[i] as isize - i as isize + j as isize;
        if idx < 0 {
            T::zero()
        } else {
            h[idx as usize].clone()
        }
    })
}

fn check_length(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::BadIndex {
            index: lambda.len(),
            dim: n,
        });
    }
    Ok(())
}

/// Exact Schur polynomial `s_λ(x)` via the Jacobi–Trudi determinant.
pub fn schur_exact(lambda: &Partition, x: &[BigRational]) -> Result<BigRational> {
    check_length(lambda, x.len())?;
    if lambda.is_empty() {
        return Ok(BigRational::one());
    }
    let max_deg = lambda.parts()[0] + lambda.len();
    let h = complete_homogeneous_table_exact(max_deg, x);
    Ok(jacobi_trudi(lambda, &h).det())
}

/// Schur polynomial `s_λ(x)` via the Jacobi–Trudi determinant of complete
/// homogeneous values. When the Hadamard bound of the Jacobi–Trudi matrix
/// says the floating determinant may carry a relative error above
/// `1e-13`, it is recomputed exactly.
pub fn schur(lambda: &Partition, x: &ModuliVector) -> Result<f64> {
    check_length(lambda, x.len())?;
    if lambda.is_empty() {
        return Ok(1.0);
    }
    if let Some(exact) = x.exact() {
        return finite(rational_to_f64(&schur_exact(lambda, exact)?));
    }
    let top = x.max();
    let scaled: Vec<f64> = x.values().iter().map(|v| v / top).collect();
    let max_deg = lambda.parts()[0] + lambda.len();
    let h = complete_homogeneous_table(max_deg, &scaled);
    let jt = jacobi_trudi(lambda, &h);
    let det = jt.det();
    let hadamard: f64 = (0..jt.rows())
        .map(|i| jt.row(i).iter().map(|v| v * v).sum::<f64>().sqrt())
        .product();
    let scale = top.powi(lambda.size() as i32);
    let lost = det <= 0.0 || jt.rows() as f64 * f64::EPSILON * hadamard > 1e-13 * det;
    if lost {
        let exact = x.to_exact();
        return finite(rational_to_f64(&schur_exact(
            lambda,
            exact.exact().unwrap(),
        )?));
    }
    finite(det * scale)
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}
