//! Complete multiplicative Jordan decomposition `g = e·h·u`.
//!
//! On the generalized eigenspace of each eigenvalue cluster `z` of `g` the
//! elliptic factor acts as `z/|z|`, the hyperbolic factor as `|z|`, and the
//! unipotent factor is what remains: `u = (Σ z_i P_i)⁻¹ g`. No Jordan basis
//! is ever formed.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eigen_spectrum, exact_one, exact_real, exact_spectral_projectors, spectral_decomposition,
    ComplexMatrix, ExactMatrix, ExactScalar, Matrix, Scalar, SpectralDecomposition,
    DEFAULT_CLUSTER_TOL, DEFAULT_PROJECTOR_CAP,
};

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmjdOptions {
    /// Scales every residual check, relative to `‖g‖`.
    pub tol: f64,
    /// Relative eigenvalue clustering tolerance.
    pub cluster_tol: f64,
    pub projector_cap: f64,
}

impl Default for CmjdOptions {
    fn default() -> Self {
        CmjdOptions {
            tol: DEFAULT_TOL,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            projector_cap: DEFAULT_PROJECTOR_CAP,
        }
    }
}

/// Raw Frobenius-norm residuals of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmjdResiduals {
    /// `‖e·h·u − g‖`
    pub reconstruction: f64,
    /// `max(‖[e,h]‖, ‖[e,u]‖, ‖[h,u]‖)`
    pub commutation: f64,
    /// `‖(u − I)^n‖`
    pub unipotency: f64,
}

impl CmjdResiduals {
    pub fn max(&self) -> f64 {
        self.reconstruction
            .max(self.commutation)
            .max(self.unipotency)
    }
}

#[derive(Debug, Clone)]
pub struct CmjdTriple {
    pub e: ComplexMatrix,
    pub h: ComplexMatrix,
    pub u: ComplexMatrix,
    pub residuals: CmjdResiduals,
    /// Eigenvalue moduli of `g` (the spectrum of `h`), non-increasing.
    pub moduli: Vec<f64>,
}

pub fn residuals(
    g: &ComplexMatrix,
    e: &ComplexMatrix,
    h: &ComplexMatrix,
    u: &ComplexMatrix,
) -> CmjdResiduals {
    let n = g.dim();
    let reconstruction = e.matmul(h).matmul(u).dist(g);
    let commutation = e
        .commutator(h)
        .norm()
        .max(e.commutator(u).norm())
        .max(h.commutator(u).norm());
    let unipotency = u.sub(&ComplexMatrix::identity(n)).pow(n as u32).norm();
    CmjdResiduals {
        reconstruction,
        commutation,
        unipotency,
    }
}

fn check_square(g: &ComplexMatrix) -> Result<()> {
    if !g.is_square() || g.rows() == 0 {
        return Err(Error::DimensionMismatch(
            "expected a non-empty square matrix".into(),
        ));
    }
    Ok(())
}

/// Decomposition with default clustering and projector cap.
pub fn cmjd(g: &ComplexMatrix, tol: f64) -> Result<CmjdTriple> {
    cmjd_with(
        g,
        &CmjdOptions {
            tol,
            ..CmjdOptions::default()
        },
    )
}

pub fn cmjd_with(g: &ComplexMatrix, opts: &CmjdOptions) -> Result<CmjdTriple> {
    check_square(g)?;
    let n = g.dim();
    let decomp = spectral_decomposition(g, opts.cluster_tol, opts.projector_cap)?;
    let gnorm = g.norm();
    let floor = (n as f64) * f64::EPSILON * gnorm;
    if decomp
        .spectrum
        .clusters
        .iter()
        .any(|c| c.value.norm() <= floor)
    {
        return Err(Error::Singular);
    }
    Ok(triple_from_decomposition(g, &decomp))
}

fn triple_from_decomposition(g: &ComplexMatrix, d: &SpectralDecomposition) -> CmjdTriple {
    let e = d.apply(|z| z / z.norm());
    let h = d.apply(|z| Complex64::new(z.norm(), 0.0));
    let semisimple_inv = d.apply(|z| z.inv());
    let u = semisimple_inv.matmul(g);
    let residuals = residuals(g, &e, &h, &u);
    CmjdTriple {
        e,
        h,
        u,
        residuals,
        moduli: d.spectrum.moduli(),
    }
}

/// `Y = log u = −Σ_{k=1}^{n−1} (I − u)^k / k`, a finite sum for unipotent `u`.
fn log_series<T: Scalar>(u: &Matrix<T>) -> Matrix<T> {
    let n = u.dim();
    let i_minus_u = Matrix::identity(n).sub(u);
    let mut power = Matrix::identity(n);
    let mut y = Matrix::zeros(n, n);
    for k in 1..n.max(1) {
        power = power.matmul(&i_minus_u);
        if power.is_zero_matrix() {
            break;
        }
        y = y.sub(&power.map(|x| x.clone() / T::from_usize(k)));
    }
    y
}

/// Logarithm of a unipotent matrix. `NotUnipotent` when
/// `‖(u − I)^n‖ > tol·‖u‖^n`.
pub fn unipotent_log(u: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    check_square(u)?;
    let n = u.dim();
    let nil = u.sub(&ComplexMatrix::identity(n)).pow(n as u32).norm();
    let bound = tol * u.norm().powi(n as i32);
    if nil > bound {
        return Err(Error::NotUnipotent { residual: nil });
    }
    Ok(log_series(u))
}

/// Exact logarithm over the Gaussian rationals; `(u − I)^n` must vanish exactly.
pub fn unipotent_log_exact(u: &ExactMatrix) -> Result<ExactMatrix> {
    if !u.is_square() || u.rows() == 0 {
        return Err(Error::DimensionMismatch(
            "expected a non-empty square matrix".into(),
        ));
    }
    let n = u.dim();
    if !u
        .sub(&ExactMatrix::identity(n))
        .pow(n as u32)
        .is_zero_matrix()
    {
        return Err(Error::NotUnipotent { residual: f64::NAN });
    }
    Ok(log_series(u))
}

/// `X = Σ log|z_i| P_i` for hyperbolic `h` (diagonalizable, positive spectrum).
pub fn hyperbolic_log(h: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    check_square(h)?;
    let d = spectral_decomposition(h, DEFAULT_CLUSTER_TOL, DEFAULT_PROJECTOR_CAP)?;
    let radius = d.spectrum.spectral_radius().max(f64::MIN_POSITIVE);
    for c in &d.spectrum.clusters {
        if c.value.re <= 0.0 || c.value.im.abs() > tol.max(DEFAULT_CLUSTER_TOL) * radius {
            return Err(Error::NotHyperbolic(format!(
                "eigenvalue {} is not positive real",
                c.value
            )));
        }
    }
    let nil = d
        .nilpotent_parts(h)
        .iter()
        .map(ComplexMatrix::norm)
        .fold(0.0, f64::max);
    if nil > tol.max(DEFAULT_CLUSTER_TOL).sqrt() * h.norm() {
        return Err(Error::NotHyperbolic(format!(
            "not diagonalizable (nilpotent part {nil:e})"
        )));
    }
    Ok(d.apply(|z| Complex64::new(z.norm().ln(), 0.0)))
}

/// Pass/fail of a single invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Largest value of `dist` over the eigenvalues of `m`; `INFINITY` if the
/// eigensolver fails.
fn spectral_deviation(m: &ComplexMatrix, dist: impl Fn(Complex64) -> f64) -> f64 {
    match eigen_spectrum(m, 0.0) {
        Ok(s) => s.eigenvalues().into_iter().map(dist).fold(0.0, f64::max),
        Err(_) => f64::INFINITY,
    }
}

/// Checks the defining properties of a decomposition of `g`. Never fails;
/// each invariant is reported with its measured value and threshold.
pub fn validate_cmjd(g: &ComplexMatrix, t: &CmjdTriple, tol: f64) -> ValidationReport {
    let n = g.dim();
    let scale = tol * g.norm().max(1.0);
    let r = residuals(g, &t.e, &t.h, &t.u);
    // eigenvalues of non-normal factors carry O(ε·κ) error; never demand
    // better than the clustering tolerance
    let spec_tol = tol.max(DEFAULT_CLUSTER_TOL);
    let h_dev = spectral_deviation(&t.h, |z| {
        if z.re <= 0.0 {
            f64::INFINITY
        } else {
            z.im.abs() / z.norm()
        }
    });
    let e_dev = spectral_deviation(&t.e, |z| (z.norm() - 1.0).abs());
    let u_dev = spectral_deviation(&t.u, |z| (z - 1.0).norm());
    let mut checks = vec![
        Check {
            name: "reconstruction".into(),
            value: r.reconstruction,
            threshold: scale,
            pass: false,
        },
        Check {
            name: "commutation".into(),
            value: r.commutation,
            threshold: scale,
            pass: false,
        },
        Check {
            name: "unipotency".into(),
            value: r.unipotency,
            threshold: scale,
            pass: false,
        },
        Check {
            name: "h_positive_spectrum".into(),
            value: h_dev,
            threshold: spec_tol,
            pass: false,
        },
        Check {
            name: "e_unit_spectrum".into(),
            value: e_dev,
            threshold: spec_tol,
            pass: false,
        },
        // a unipotent matrix of size n has eigenvalue error ~ ε^{1/n}
        Check {
            name: "u_unit_eigenvalues".into(),
            value: u_dev,
            threshold: spec_tol.powf(1.0 / n as f64).max(spec_tol),
            pass: false,
        },
    ];
    for c in checks.iter_mut() {
        c.pass = c.value <= c.threshold;
    }
    let pass = checks.iter().all(|c| c.pass);
    ValidationReport { checks, pass }
}

/// Exact factors over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCmjd {
    pub e: ExactMatrix,
    pub h: ExactMatrix,
    pub u: ExactMatrix,
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Exact modulus `|z|`, available when `re² + im²` is a rational square.
pub fn exact_modulus(z: &ExactScalar) -> Option<BigRational> {
    rational_sqrt(&(&z.re * &z.re + &z.im * &z.im))
}

/// Decomposition in exact arithmetic from supplied eigenvalues. Every
/// eigenvalue modulus must be rational.
pub fn cmjd_exact(g: &ExactMatrix, eigenvalues: &[(ExactScalar, usize)]) -> Result<ExactCmjd> {
    if !g.is_square() || g.rows() == 0 {
        return Err(Error::DimensionMismatch(
            "expected a non-empty square matrix".into(),
        ));
    }
    let n = g.dim();
    if eigenvalues.iter().any(|(z, _)| z.is_zero()) {
        return Err(Error::Singular);
    }
    let projectors = exact_spectral_projectors(g, eigenvalues)?;
    let mut e = ExactMatrix::zeros(n, n);
    let mut h = ExactMatrix::zeros(n, n);
    let mut s_inv = ExactMatrix::zeros(n, n);
    for ((z, _), p) in eigenvalues.iter().zip(&projectors) {
        let modulus =
            exact_modulus(z).ok_or_else(|| Error::NotExact(format!("|{z}| is irrational")))?;
        let m = exact_real(modulus);
        e = e.add(&p.scale(&(z.clone() / m.clone())));
        h = h.add(&p.scale(&m));
        s_inv = s_inv.add(&p.scale(&(exact_one() / z.clone())));
    }
    let u = s_inv.matmul(g);
    Ok(ExactCmjd { e, h, u })
}

impl ExactCmjd {
    /// True when every defining identity holds exactly.
    pub fn verify(&self, g: &ExactMatrix) -> bool {
        let n = g.dim();
        self.e.matmul(&self.h).matmul(&self.u) == *g
            && self.e.commutator(&self.h).is_zero_matrix()
            && self.e.commutator(&self.u).is_zero_matrix()
            && self.h.commutator(&self.u).is_zero_matrix()
            && self
                .u
                .sub(&ExactMatrix::identity(n))
                .pow(n as u32)
                .is_zero_matrix()
    }
}
