use std::fmt;
use std::ops::{Index, IndexMut, Neg};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Gaussian rational, the scalar of the exact path.
pub type ExactScalar = Complex<BigRational>;

/// Scalars that can fill a [`Matrix`]. Both complex doubles and Gaussian
/// rationals qualify.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {
    /// Magnitude used to rank pivots. Zero means "unusable pivot".
    fn pivot_score(&self) -> f64;

    fn from_usize(k: usize) -> Self;
}

impl Scalar for Complex64 {
    fn pivot_score(&self) -> f64 {
        self.norm()
    }

    fn from_usize(k: usize) -> Self {
        Complex64::new(k as f64, 0.0)
    }
}

impl Scalar for ExactScalar {
    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            let re = self.re.abs().to_f64().unwrap_or(f64::MAX);
            let im = self.im.abs().to_f64().unwrap_or(f64::MAX);
            // tiny rationals still count as nonzero pivots
            (re + im).max(f64::MIN_POSITIVE)
        }
    }

    fn from_usize(k: usize) -> Self {
        Complex::new(
            BigRational::from_integer(BigInt::from(k)),
            BigRational::zero(),
        )
    }
}

impl Scalar for f64 {
    fn pivot_score(&self) -> f64 {
        self.abs()
    }

    fn from_usize(k: usize) -> Self {
        k as f64
    }
}

impl Scalar for BigRational {
    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.abs()
                .to_f64()
                .unwrap_or(f64::MAX)
                .max(f64::MIN_POSITIVE)
        }
    }

    fn from_usize(k: usize) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type ComplexMatrix = Matrix<Complex64>;
pub type ExactMatrix = Matrix<ExactScalar>;

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &T {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn diag(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn(
            n,
            n,
            |r, c| {
                if r == c {
                    values[r].clone()
                } else {
                    T::zero()
                }
            },
        )
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let slot = &mut out[(i, j)];
                    *slot = slot.clone() + prod;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// `self - s·I`.
    pub fn shift(&self, s: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = out[(i, i)].clone() - s.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> T {
        self.diagonal()
            .into_iter()
            .fold(T::zero(), |acc, x| acc + x)
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self[(r / other.rows, c / other.cols)].clone()
                * other[(r % other.rows, c % other.cols)].clone()
        })
    }

    /// Block-diagonal stack of square blocks.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Submatrix on the given row and column index sets.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self[(rows[r], cols[c])].clone()
        })
    }

    /// In-place LU with partial pivoting on `pivot_score`. Returns the row
    /// permutation parity, or `None` if a zero pivot was met.
    fn lu_in_place(&mut self, perm: &mut [usize]) -> Option<bool> {
        let n = self.rows;
        let mut even = true;
        for (i, p) in perm.iter_mut().enumerate() {
            *p = i;
        }
        for k in 0..n {
            let (best, score) = (k..n)
                .map(|r| (r, self[(r, k)].pivot_score()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if score <= 0.0 {
                return None;
            }
            if best != k {
                for c in 0..n {
                    self.data.swap(k * n + c, best * n + c);
                }
                perm.swap(k, best);
                even = !even;
            }
            let pivot = self[(k, k)].clone();
            for r in k + 1..n {
                let factor = self[(r, k)].clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                self[(r, k)] = factor.clone();
                for c in k + 1..n {
                    let v = self[(r, c)].clone() - factor.clone() * self[(k, c)].clone();
                    self[(r, c)] = v;
                }
            }
        }
        Some(even)
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut lu = self.clone();
        let mut perm = vec![0; n];
        match lu.lu_in_place(&mut perm) {
            None => T::zero(),
            Some(even) => {
                let d = (0..n).fold(T::one(), |acc, i| acc * lu[(i, i)].clone());
                if even {
                    d
                } else {
                    -d
                }
            }
        }
    }

    /// Inverse via LU. `Singular` when a zero pivot appears.
    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut lu = self.clone();
        let mut perm = vec![0; n];
        lu.lu_in_place(&mut perm).ok_or(Error::Singular)?;
        let mut inv = Self::zeros(n, n);
        for col in 0..n {
            // forward: L y = P e_col
            let mut y: Vec<T> = (0..n)
                .map(|i| if perm[i] == col { T::one() } else { T::zero() })
                .collect();
            for i in 0..n {
                for k in 0..i {
                    let v = y[i].clone() - lu[(i, k)].clone() * y[k].clone();
                    y[i] = v;
                }
            }
            for i in (0..n).rev() {
                let mut v = y[i].clone();
                for k in i + 1..n {
                    v = v - lu[(i, k)].clone() * y[k].clone();
                }
                y[i] = v / lu[(i, i)].clone();
            }
            for (i, v) in y.into_iter().enumerate() {
                inv[(i, col)] = v;
            }
        }
        Ok(inv)
    }
}

impl ComplexMatrix {
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        Self::from_fn(rows.len(), rows[0].len(), |r, c| {
            Complex64::new(rows[r][c], 0.0)
        })
    }

    pub fn real_diag(values: &[f64]) -> Self {
        let v: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance to `other`.
    pub fn dist(&self, other: &Self) -> f64 {
        self.sub(other).norm()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Exact rational image of every entry.
    pub fn to_exact(&self) -> Result<ExactMatrix> {
        let conv = |x: f64| {
            BigRational::from_float(x)
                .ok_or_else(|| Error::NotExact(format!("non-finite entry {x}")))
        };
        let data = self
            .data
            .iter()
            .map(|z| Ok(Complex::new(conv(z.re)?, conv(z.im)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// 1-norm condition number estimate via the explicit inverse.
    pub fn condition_number(&self) -> f64 {
        match self.inverse() {
            Ok(inv) => self.norm() * inv.norm(),
            Err(_) => f64::INFINITY,
        }
    }
}

impl ExactMatrix {
    pub fn to_complex(&self) -> ComplexMatrix {
        self.map(exact_to_complex)
    }
}

pub fn exact_to_complex(z: &ExactScalar) -> Complex64 {
    Complex64::new(
        z.re.to_f64().unwrap_or(f64::NAN),
        z.im.to_f64().unwrap_or(f64::NAN),
    )
}

pub fn exact_real(q: BigRational) -> ExactScalar {
    Complex::new(q, BigRational::zero())
}

pub fn exact_one() -> ExactScalar {
    Complex::new(BigRational::one(), BigRational::zero())
}
