use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Matrix, Scalar};

/// Scaling target: the Taylor series is summed for `‖A / 2^s‖_F ≤ 1/2`.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 40;

/// Matrix exponential by scaling and squaring of the Taylor series.
///
/// With `‖B‖ ≤ 1/2` the tail after the degree-`K` term is bounded by
/// `‖B‖^{K+1} / (K+1)! · (1 − ‖B‖/(K+2))⁻¹`; summation stops once the last
/// term drops below `ε·‖sum‖`, which keeps the truncation below `2ε‖e^B‖`
/// (the bound is reached by `K = 18` at the latest).
pub fn mat_exp(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let norm = a.norm();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let b = a.scale(&Complex64::new(0.5f64.powi(squarings), 0.0));
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=MAX_TERMS {
        term = term.matmul(&b).scale(&Complex64::new(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
        if term.norm() <= f64::EPSILON * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}

/// Exponential of a nilpotent matrix: `Σ_{k<n} N^k / k!`, finite and exact
/// over any field.
pub fn exp_nilpotent<T: Scalar>(nil: &Matrix<T>) -> Matrix<T> {
    let n = nil.dim();
    let mut sum = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..n.max(1) {
        term = term.matmul(nil);
        if term.is_zero_matrix() {
            break;
        }
        term = term.map(|x| x.clone() / T::from_usize(k));
        sum = sum.add(&term);
    }
    sum
}
