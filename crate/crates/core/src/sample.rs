//! Seeded random inputs: matrices in `SL(n, C)`, unipotent matrices and
//! pairs of moduli vectors with a prescribed order relation.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Pow;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{exact_one, exact_real, schur, ComplexMatrix, ExactMatrix};
use crate::order::kostant_compare;
use crate::symchar::ModuliVector;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Approximately standard normal, by Box–Muller.
fn normal(rng: &mut SampleRng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn gaussian_matrix(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng), normal(rng)))
}

pub fn random_unitary(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    let a = gaussian_matrix(rng, n);
    schur(&a).expect("Gaussian matrices converge").q
}

/// Rescales by `det^{-1/n}` so the determinant is one.
pub fn normalize_det(g: &ComplexMatrix) -> ComplexMatrix {
    let n = g.rows() as f64;
    let d = g.det();
    g.scale(&d.powf(-1.0 / n))
}

/// Shapes drawn by [`random_sl_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Gaussian,
    /// `Q·diag(z)·Q*` with repeated eigenvalues, `Q` unitary.
    RepeatedEigenvalues,
    /// Upper triangular with repeated diagonal: nontrivial Jordan blocks.
    Defective,
}

/// Random element of `SL(n, C)` with 2-norm condition number at most
/// `max_cond`; mostly Gaussian, sometimes with repeated or defective
/// eigenvalues.
pub fn random_sl_matrix(
    rng: &mut SampleRng,
    n: usize,
    max_cond: f64,
) -> (ComplexMatrix, MatrixKind) {
    loop {
        let kind = match rng.gen_range(0..10) {
            0 => MatrixKind::RepeatedEigenvalues,
            1 => MatrixKind::Defective,
            _ => MatrixKind::Gaussian,
        };
        let g = match kind {
            MatrixKind::Gaussian => gaussian_matrix(rng, n),
            MatrixKind::RepeatedEigenvalues => {
                let values = repeated_values(rng, n);
                let q = random_unitary(rng, n);
                q.matmul(&ComplexMatrix::diag(&values))
                    .matmul(&q.conj_transpose())
            }
            MatrixKind::Defective => {
                let values = repeated_values(rng, n);
                ComplexMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => values[i],
                    std::cmp::Ordering::Less => Complex64::new(normal(rng), normal(rng)),
                    std::cmp::Ordering::Greater => Complex64::new(0.0, 0.0),
                })
            }
        };
        let g = normalize_det(&g);
        let c = g.condition_number();
        if c.is_finite() && c <= max_cond {
            return (g, kind);
        }
    }
}

fn random_eigenvalue(rng: &mut SampleRng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(-3.0..3.0))
}

fn repeated_values(rng: &mut SampleRng, n: usize) -> Vec<Complex64> {
    let distinct = rng.gen_range(1..=n.div_ceil(2));
    let pool: Vec<Complex64> = (0..distinct).map(|_| random_eigenvalue(rng)).collect();
    let mut v: Vec<Complex64> = (0..n).map(|i| pool[i % distinct]).collect();
    v.shuffle(rng);
    v
}

/// `I + N` with `N` strictly upper triangular.
pub fn random_unipotent(rng: &mut SampleRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(1.0, 0.0)
        } else if i < j {
            Complex64::new(normal(rng), normal(rng))
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Unipotent upper triangular with small Gaussian-rational entries.
pub fn random_unipotent_exact(rng: &mut SampleRng, n: usize) -> ExactMatrix {
    let mut q = || -> BigRational {
        BigRational::new(
            BigInt::from(rng.gen_range(-9..=9)),
            BigInt::from(rng.gen_range(1..=6)),
        )
    };
    ExactMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => exact_one(),
        std::cmp::Ordering::Less => Complex::new(q(), q()),
        std::cmp::Ordering::Greater => exact_real(BigRational::from_integer(0.into())),
    })
}

/// Logarithms uniform in `[-spread, spread]`, recentred to product one.
pub fn random_sl_moduli(rng: &mut SampleRng, n: usize, spread: f64) -> ModuliVector {
    let logs: Vec<f64> = (0..n).map(|_| rng.gen_range(-spread..=spread)).collect();
    let mean = logs.iter().sum::<f64>() / n as f64;
    ModuliVector::new(logs.iter().map(|l| (l - mean).exp()).collect()).expect("positive")
}

/// Applies `steps` random T-transforms to `v`; the result is majorized by
/// `v` and has the same sum.
pub fn random_t_transforms(rng: &mut SampleRng, v: &[f64], steps: usize) -> Vec<f64> {
    let mut out = v.to_vec();
    let n = out.len();
    if n < 2 {
        return out;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let t: f64 = rng.gen();
        let (a, b) = (out[i], out[j]);
        out[i] = t * a + (1.0 - t) * b;
        out[j] = t * b + (1.0 - t) * a;
    }
    out
}

/// `(x, y)` with `x ≥ y`, both of product one.
pub fn dominated_pair(rng: &mut SampleRng, n: usize, spread: f64) -> (ModuliVector, ModuliVector) {
    let x = random_sl_moduli(rng, n, spread);
    let logs = random_t_transforms(rng, &x.log_values(), n);
    let y = ModuliVector::new(logs.iter().map(|l| l.exp()).collect()).expect("positive");
    (x, y.sl_normalized())
}

/// `(x, y)` of product one with `x ≱ y`.
pub fn non_dominated_pair(
    rng: &mut SampleRng,
    n: usize,
    spread: f64,
) -> (ModuliVector, ModuliVector) {
    loop {
        let x = random_sl_moduli(rng, n, spread);
        let y = random_sl_moduli(rng, n, spread);
        if !kostant_compare(&x, &y).expect("equal lengths").geq() {
            return (x, y);
        }
    }
}

/// Exact pair `x = b^a`, `y = b^c` where `c` is obtained from the integer
/// vector `a` (sum zero) by unit transfers from larger to smaller entries,
/// so `x ≥ y` exactly. Equal pairs and ties between partial products occur.
pub fn exact_dominated_pair(rng: &mut SampleRng, n: usize) -> (ModuliVector, ModuliVector) {
    let base = BigRational::from_integer(BigInt::from(rng.gen_range(2..=4)));
    let mut a: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let s: i64 = a.iter().sum();
    a[0] -= s;
    let mut c = a.clone();
    for _ in 0..rng.gen_range(0..=2 * n) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if c[i] - c[j] >= 2 {
            c[i] -= 1;
            c[j] += 1;
        }
    }
    let pow = |e: &i64| -> BigRational { Pow::pow(&base, BigInt::from(*e)) };
    let x = ModuliVector::from_exact(a.iter().map(pow).collect()).expect("positive");
    let y = ModuliVector::from_exact(c.iter().map(pow).collect()).expect("positive");
    (x, y)
}
