//! Complex Schur form by Householder reduction to Hessenberg form followed by
//! Wilkinson-shifted QR sweeps, plus eigenvalue clustering.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default relative cluster tolerance (relative to the spectral radius).
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// `A = Q T Q*` with `Q` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct SchurForm {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
}

/// Plane rotation `[[c, s], [-conj(s), c]]` with real `c`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    /// Rotation sending `(a, b)` to `(r, 0)`.
    pub(crate) fn zeroing(a: Complex64, b: Complex64) -> Self {
        let na = a.norm();
        let nb = b.norm();
        if nb == 0.0 {
            return Givens {
                c: 1.0,
                s: Complex64::new(0.0, 0.0),
            };
        }
        if na == 0.0 {
            return Givens {
                c: 0.0,
                s: Complex64::new(1.0, 0.0),
            };
        }
        let r = na.hypot(nb);
        Givens {
            c: na / r,
            s: (a / na) * b.conj() / r,
        }
    }

    /// Rows `k`, `k+1` of `m`, columns `cols`.
    pub(crate) fn apply_rows(&self, m: &mut ComplexMatrix, k: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(k, j)];
            let y = m[(k + 1, j)];
            m[(k, j)] = x * self.c + self.s * y;
            m[(k + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Right-multiplies columns `k`, `k+1` by the adjoint, rows `rows`.
    pub(crate) fn apply_cols_adjoint(
        &self,
        m: &mut ComplexMatrix,
        k: usize,
        rows: std::ops::Range<usize>,
    ) {
        for i in rows {
            let x = m[(i, k)];
            let y = m[(i, k + 1)];
            m[(i, k)] = x * self.c + y * self.s.conj();
            m[(i, k + 1)] = -x * self.s + y * self.c;
        }
    }
}

fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let alpha_norm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + phase·‖x‖·e1, reflector I − 2vv*/(v*v)
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] += phase * alpha_norm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H ← P H
        for j in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| vi.conj() * h[(k + 1 + t, j)])
                .sum();
            let f = dot * (2.0 / vnorm2);
            for (t, vi) in v.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * f;
            }
        }
        // H ← H P, Q ← Q P
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let dot: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(t, vi)| m[(i, k + 1 + t)] * vi)
                    .sum();
                let f = dot * (2.0 / vnorm2);
                for (t, vi) in v.iter().enumerate() {
                    m[(i, k + 1 + t)] -= f * vi.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// Eigenvalue of the 2×2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Complex Schur decomposition of a square matrix.
pub fn schur(a: &ComplexMatrix) -> Result<SchurForm> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "schur needs a square matrix".into(),
        ));
    }
    let n = a.dim();
    let (mut h, mut q) = hessenberg(a);
    if n <= 1 {
        return Ok(SchurForm { q, t: h });
    }
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        // locate the active window [lo, hi]
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if diag == 0.0 {
                diag = scale;
            }
            if sub <= eps * diag {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if iter > MAX_SWEEPS_PER_EIGENVALUE {
            return Err(Error::NonConvergence { iterations: total });
        }
        let mu = if iter.is_multiple_of(11) {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(0.75, 0.5) * h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let g = Givens::zeroing(h[(k, k)], h[(k + 1, k)]);
            g.apply_rows(&mut h, k, k..n);
            h[(k + 1, k)] = Complex64::new(0.0, 0.0);
            rots.push(g);
        }
        for (off, g) in rots.iter().enumerate() {
            let k = lo + off;
            g.apply_cols_adjoint(&mut h, k, 0..(k + 2).min(hi + 1));
            g.apply_cols_adjoint(&mut q, k, 0..n);
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    for r in 1..n {
        for c in 0..r {
            h[(r, c)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(SchurForm { q, t: h })
}

/// Eigenvalues grouped into numerically indistinguishable clusters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub clusters: Vec<Cluster>,
    pub cluster_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.clusters.iter().map(|c| c.multiplicity).sum()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.clusters
            .iter()
            .map(|c| c.value.norm())
            .fold(0.0, f64::max)
    }

    /// Every eigenvalue, repeated by multiplicity.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.clusters
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.value, c.multiplicity))
            .collect()
    }

    /// Eigenvalue moduli repeated by multiplicity, non-increasing.
    pub fn moduli(&self) -> Vec<f64> {
        let mut m: Vec<f64> = self.eigenvalues().iter().map(|z| z.norm()).collect();
        m.sort_by(|a, b| b.total_cmp(a));
        m
    }

    pub(crate) fn nearest_cluster(&self, z: Complex64) -> usize {
        self.clusters
            .iter()
            .enumerate()
            .map(|(i, c)| (i, (c.value - z).norm()))
            .fold(
                (0, f64::INFINITY),
                |acc, x| if x.1 < acc.1 { x } else { acc },
            )
            .0
    }
}

/// Single-linkage grouping of `values` at absolute distance `abs_tol`.
/// Returns a cluster label per value, labels ordered canonically.
pub(crate) fn cluster_labels(values: &[Complex64], abs_tol: f64) -> (Vec<usize>, Vec<Cluster>) {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let next = p[j];
            p[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= abs_tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    group_labels(values, &roots)
}

/// Clusters of `values` sharing a label, each valued at its mean; the
/// labels are renumbered to match the canonical cluster order.
pub(crate) fn group_labels(values: &[Complex64], labels: &[usize]) -> (Vec<usize>, Vec<Cluster>) {
    let mut groups: Vec<(usize, Cluster)> = Vec::new();
    for (i, &r) in labels.iter().enumerate() {
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, c)) => {
                c.value += values[i];
                c.multiplicity += 1;
            }
            None => groups.push((
                r,
                Cluster {
                    value: values[i],
                    multiplicity: 1,
                },
            )),
        }
    }
    for (_, c) in groups.iter_mut() {
        c.value /= c.multiplicity as f64;
    }
    // canonical order: modulus descending, then real part, then imaginary part
    groups.sort_by(|(_, a), (_, b)| {
        b.value
            .norm()
            .total_cmp(&a.value.norm())
            .then(b.value.re.total_cmp(&a.value.re))
            .then(b.value.im.total_cmp(&a.value.im))
    });
    let labels = labels
        .iter()
        .map(|r| groups.iter().position(|(root, _)| root == r).unwrap())
        .collect();
    (labels, groups.into_iter().map(|(_, c)| c).collect())
}

/// All eigenvalues of `a` with algebraic multiplicity, merged into clusters
/// whenever they lie within `cluster_tol · ρ(a)` of each other.
pub fn eigen_spectrum(a: &ComplexMatrix, cluster_tol: f64) -> Result<Spectrum> {
    if cluster_tol < 0.0 || cluster_tol.is_nan() {
        return Err(Error::PreconditionFailed(
            "cluster_tol must be nonnegative".into(),
        ));
    }
    let sf = schur(a)?;
    Ok(spectrum_from_schur(&sf, cluster_tol))
}

pub(crate) fn spectrum_from_schur(sf: &SchurForm, cluster_tol: f64) -> Spectrum {
    let (_, clusters) = schur_labels(sf, cluster_tol);
    Spectrum {
        clusters,
        cluster_tol,
    }
}

/// Clusters of the Schur diagonal at `cluster_tol` relative to the
/// spectral radius, with the cluster label of each diagonal position.
pub(crate) fn schur_labels(sf: &SchurForm, cluster_tol: f64) -> (Vec<usize>, Vec<Cluster>) {
    let diag = sf.t.diagonal();
    let radius = diag.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let abs_tol = if radius > 0.0 {
        cluster_tol * radius
    } else {
        cluster_tol
    };
    cluster_labels(&diag, abs_tol)
}
