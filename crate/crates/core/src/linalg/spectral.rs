//! Spectral projectors onto generalized eigenspaces.
//!
//! For each cluster the Schur form is reordered so that the cluster's
//! eigenvalues lead the diagonal. With `T = [[T11, T12], [0, T22]]` the
//! projector onto the leading invariant subspace along the trailing one is
//! `[[I, R], [0, 0]]` where `T11 R − R T22 = T12`; both blocks are
//! triangular so the Sylvester equation is solved by substitution.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eigen::{group_labels, schur, schur_labels, Cluster, Givens, SchurForm, Spectrum};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default cap on the Frobenius norm of any single projector.
pub const DEFAULT_PROJECTOR_CAP: f64 = 1e10;

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub spectrum: Spectrum,
    pub projectors: Vec<ComplexMatrix>,
    pub residual: f64,
}

/// Residuals of the projector identities, each as a raw Frobenius norm
/// except `commutation`, which is divided by `max(‖A‖, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectorResiduals {
    pub partition_of_unity: f64,
    pub orthogonality: f64,
    pub commutation: f64,
}

impl ProjectorResiduals {
    pub fn max(&self) -> f64 {
        self.partition_of_unity
            .max(self.orthogonality)
            .max(self.commutation)
    }
}

impl SpectralDecomposition {
    pub fn residuals(&self, a: &ComplexMatrix) -> ProjectorResiduals {
        projector_residuals(a, &self.projectors)
    }

    /// Nilpotent parts `N_i = (A − z_i I) P_i`.
    pub fn nilpotent_parts(&self, a: &ComplexMatrix) -> Vec<ComplexMatrix> {
        self.spectrum
            .clusters
            .iter()
            .zip(&self.projectors)
            .map(|(c, p)| a.shift(&c.value).matmul(p))
            .collect()
    }

    /// `Σ f(z_i) P_i`.
    pub fn apply(&self, f: impl Fn(Complex64) -> Complex64) -> ComplexMatrix {
        let n = self.spectrum.dim();
        self.spectrum
            .clusters
            .iter()
            .zip(&self.projectors)
            .fold(ComplexMatrix::zeros(n, n), |acc, (c, p)| {
                acc.add(&p.scale(&f(c.value)))
            })
    }
}

fn projector_residuals(a: &ComplexMatrix, projectors: &[ComplexMatrix]) -> ProjectorResiduals {
    let n = a.dim();
    let sum = projectors
        .iter()
        .fold(ComplexMatrix::zeros(n, n), |acc, p| acc.add(p));
    let partition_of_unity = sum.dist(&ComplexMatrix::identity(n));
    let mut orthogonality: f64 = 0.0;
    for (i, p) in projectors.iter().enumerate() {
        for (j, q) in projectors.iter().enumerate() {
            let pq = p.matmul(q);
            let r = if i == j { pq.dist(p) } else { pq.norm() };
            orthogonality = orthogonality.max(r);
        }
    }
    let scale = a.norm().max(1.0);
    let commutation = projectors
        .iter()
        .map(|p| a.commutator(p).norm() / scale)
        .fold(0.0, f64::max);
    ProjectorResiduals {
        partition_of_unity,
        orthogonality,
        commutation,
    }
}

/// Swap diagonal entries `k` and `k+1` of the Schur form.
fn swap_adjacent(sf: &mut SchurForm, k: usize) {
    let n = sf.t.dim();
    let a = sf.t[(k, k)];
    let b = sf.t[(k + 1, k + 1)];
    let g = Givens::zeroing(sf.t[(k, k + 1)], b - a);
    g.apply_rows(&mut sf.t, k, k..n);
    g.apply_cols_adjoint(&mut sf.t, k, 0..k + 2);
    g.apply_cols_adjoint(&mut sf.q, k, 0..n);
    sf.t[(k + 1, k)] = Complex64::new(0.0, 0.0);
    sf.t[(k, k)] = b;
    sf.t[(k + 1, k + 1)] = a;
}

/// Moves every diagonal position flagged in `lead` to the top, keeping the
/// relative order of the rest. Returns the number of leading entries.
fn reorder_leading(sf: &mut SchurForm, lead: &mut [bool]) -> usize {
    let n = lead.len();
    let mut next = 0;
    for p in 0..n {
        if !lead[p] {
            continue;
        }
        let mut pos = p;
        while pos > next {
            swap_adjacent(sf, pos - 1);
            lead.swap(pos - 1, pos);
            pos -= 1;
        }
        next += 1;
    }
    next
}

/// Solve `T11 R − R T22 = T12` for upper-triangular `T11` (p×p), `T22` (q×q).
fn triangular_sylvester(t: &ComplexMatrix, p: usize) -> Result<ComplexMatrix> {
    let n = t.dim();
    let q = n - p;
    let mut r = ComplexMatrix::zeros(p, q);
    for j in 0..q {
        let tjj = t[(p + j, p + j)];
        // rhs = T12[:, j] + Σ_{l<j} R[:, l]·T22[l, j]
        let mut rhs: Vec<Complex64> = (0..p).map(|i| t[(i, p + j)]).collect();
        for l in 0..j {
            let coef = t[(p + l, p + j)];
            if coef.norm() == 0.0 {
                continue;
            }
            for (i, v) in rhs.iter_mut().enumerate() {
                *v += r[(i, l)] * coef;
            }
        }
        for i in (0..p).rev() {
            let mut v = rhs[i];
            for k in i + 1..p {
                v -= t[(i, k)] * r[(k, j)];
            }
            let d = t[(i, i)] - tjj;
            if d.norm() == 0.0 {
                return Err(Error::IllConditioned(
                    "coincident eigenvalues in distinct clusters".into(),
                ));
            }
            r[(i, j)] = v / d;
        }
    }
    Ok(r)
}

/// Projectors onto the generalized eigenspaces of the clusters of `s`.
pub fn spectral_projectors(a: &ComplexMatrix, s: &Spectrum) -> Result<SpectralDecomposition> {
    spectral_projectors_capped(a, s, DEFAULT_PROJECTOR_CAP)
}

pub fn spectral_projectors_capped(
    a: &ComplexMatrix,
    s: &Spectrum,
    cap: f64,
) -> Result<SpectralDecomposition> {
    let sf = schur(a)?;
    decompose_from_schur(a, sf, s.clone(), cap)
}

/// Spectrum and projectors in one pass.
///
/// A defective eigenvalue of multiplicity `k` is computed only to about
/// `ε^{1/k}`, so its copies can land in separate clusters joined by a huge
/// projector. When a projector norm exceeds `cluster_tol^{-1/2}`, the
/// offending cluster is merged with its nearest neighbour, provided the
/// two lie within `cluster_tol^{1/k}·ρ` of each other for their combined
/// multiplicity `k`.
pub fn spectral_decomposition(
    a: &ComplexMatrix,
    cluster_tol: f64,
    cap: f64,
) -> Result<SpectralDecomposition> {
    if cluster_tol < 0.0 || cluster_tol.is_nan() {
        return Err(Error::PreconditionFailed(
            "cluster_tol must be nonnegative".into(),
        ));
    }
    let sf = schur(a)?;
    let diag = sf.t.diagonal();
    let radius = diag.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let merge_norm = cluster_tol.sqrt().recip();
    let (mut labels, mut clusters) = schur_labels(&sf, cluster_tol);
    loop {
        let spectrum = Spectrum {
            clusters: clusters.clone(),
            cluster_tol,
        };
        let result = decompose_labelled(a, &sf, spectrum, &labels);
        let worst = match &result {
            Ok((_, norms)) => {
                let (i, norm) = norms.iter().enumerate().fold((0, 0.0f64), |acc, (i, &v)| {
                    if v > acc.1 || v.is_nan() {
                        (i, v)
                    } else {
                        acc
                    }
                });
                if norm <= merge_norm {
                    break;
                }
                Some(i)
            }
            Err(Error::IllConditioned(_)) => None,
            Err(_) => break,
        };
        let Some((keep, drop)) = merge_candidate(&clusters, worst, radius, cluster_tol) else {
            break;
        };
        let relabelled: Vec<usize> = labels
            .iter()
            .map(|&l| if l == drop { keep } else { l })
            .collect();
        (labels, clusters) = group_labels(&diag, &relabelled);
    }
    let spectrum = Spectrum {
        clusters,
        cluster_tol,
    };
    let (d, norms) = decompose_labelled(a, &sf, spectrum, &labels)?;
    check_cap(&norms, cap)?;
    Ok(d)
}

/// Closest pair of clusters (involving `worst`, if given) that may be one
/// defective eigenvalue.
fn merge_candidate(
    clusters: &[Cluster],
    worst: Option<usize>,
    radius: f64,
    cluster_tol: f64,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            if worst.is_some_and(|w| w != i && w != j) {
                continue;
            }
            let k = (clusters[i].multiplicity + clusters[j].multiplicity) as f64;
            let allowed = radius * cluster_tol.powf(k.recip());
            let ratio = (clusters[i].value - clusters[j].value).norm() / allowed;
            if ratio <= 1.0 && best.is_none_or(|b| ratio < b.2) {
                best = Some((i, j, ratio));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn check_cap(norms: &[f64], cap: f64) -> Result<()> {
    match norms.iter().find(|&&v| !v.is_finite() || v > cap) {
        Some(norm) => Err(Error::IllConditioned(format!(
            "projector norm {norm:e} exceeds cap {cap:e}"
        ))),
        None => Ok(()),
    }
}

fn decompose_from_schur(
    a: &ComplexMatrix,
    sf: SchurForm,
    spectrum: Spectrum,
    cap: f64,
) -> Result<SpectralDecomposition> {
    let n = a.dim();
    if spectrum.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "spectrum has {} eigenvalues, matrix has dimension {n}",
            spectrum.dim()
        )));
    }
    let labels: Vec<usize> =
        sf.t.diagonal()
            .iter()
            .map(|&z| spectrum.nearest_cluster(z))
            .collect();
    for (i, c) in spectrum.clusters.iter().enumerate() {
        let count = labels.iter().filter(|&&l| l == i).count();
        if count != c.multiplicity {
            return Err(Error::PreconditionFailed(format!(
                "spectrum does not belong to this matrix (cluster {i}: {count} vs {})",
                c.multiplicity
            )));
        }
    }
    let (d, norms) = decompose_labelled(a, &sf, spectrum, &labels)?;
    check_cap(&norms, cap)?;
    Ok(d)
}

/// Projectors for the given assignment of Schur diagonal positions to
/// clusters, with their Frobenius norms.
fn decompose_labelled(
    a: &ComplexMatrix,
    sf: &SchurForm,
    spectrum: Spectrum,
    labels: &[usize],
) -> Result<(SpectralDecomposition, Vec<f64>)> {
    let n = a.dim();
    let mut projectors = Vec::with_capacity(spectrum.clusters.len());
    if spectrum.clusters.len() == 1 {
        projectors.push(ComplexMatrix::identity(n));
    } else {
        for i in 0..spectrum.clusters.len() {
            let mut local = sf.clone();
            let mut lead: Vec<bool> = labels.iter().map(|&l| l == i).collect();
            let p = reorder_leading(&mut local, &mut lead);
            let r = triangular_sylvester(&local.t, p)?;
            let mut block = ComplexMatrix::zeros(n, n);
            for d in 0..p {
                block[(d, d)] = Complex64::new(1.0, 0.0);
            }
            for row in 0..p {
                for col in 0..n - p {
                    block[(row, p + col)] = r[(row, col)];
                }
            }
            projectors.push(local.q.matmul(&block).matmul(&local.q.conj_transpose()));
        }
    }
    let norms = projectors.iter().map(ComplexMatrix::norm).collect();
    let residual = projector_residuals(a, &projectors).max();
    Ok((
        SpectralDecomposition {
            spectrum,
            projectors,
            residual,
        },
        norms,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::{eigen_spectrum, DEFAULT_CLUSTER_TOL};

    fn decomp(a: &ComplexMatrix) -> SpectralDecomposition {
        let s = eigen_spectrum(a, DEFAULT_CLUSTER_TOL).unwrap();
        spectral_projectors(a, &s).unwrap()
    }

    fn projector_for(d: &SpectralDecomposition, z: f64) -> &ComplexMatrix {
        let i = d
            .spectrum
            .clusters
            .iter()
            .position(|c| (c.value - Complex64::new(z, 0.0)).norm() < 1e-10)
            .unwrap();
        &d.projectors[i]
    }

    #[test]
    fn diagonal_projectors_are_coordinate() {
        let a = ComplexMatrix::real_diag(&[2.0, 3.0]);
        let d = decomp(&a);
        assert!(projector_for(&d, 2.0).dist(&ComplexMatrix::real_diag(&[1.0, 0.0])) < 1e-14);
        assert!(projector_for(&d, 3.0).dist(&ComplexMatrix::real_diag(&[0.0, 1.0])) < 1e-14);
    }

    #[test]
    fn jordan_block_has_identity_projector() {
        let a = ComplexMatrix::from_real_rows(&[&[5.0, 1.0], &[0.0, 5.0]]);
        let d = decomp(&a);
        assert_eq!(d.projectors.len(), 1);
        assert!(d.projectors[0].dist(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn oblique_projectors_of_upper_triangular() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 2.0]]);
        let d = decomp(&a);
        let p1 = ComplexMatrix::from_real_rows(&[&[1.0, -1.0], &[0.0, 0.0]]);
        let p2 = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 1.0]]);
        assert!(projector_for(&d, 1.0).dist(&p1) < 1e-13);
        assert!(projector_for(&d, 2.0).dist(&p2) < 1e-13);
    }

    #[test]
    fn reordering_keeps_similarity() {
        let a = ComplexMatrix::from_fn(5, 5, |r, k| {
            Complex64::new(
                ((r * 3 + k * 5) % 7) as f64 - 3.0,
                ((r * k) % 4) as f64 * 0.25,
            )
        });
        let mut sf = schur(&a).unwrap();
        let mut lead = vec![false, false, true, false, true];
        let p = reorder_leading(&mut sf, &mut lead);
        assert_eq!(p, 2);
        assert_eq!(lead, vec![true, true, false, false, false]);
        let back = sf.q.matmul(&sf.t).matmul(&sf.q.conj_transpose());
        assert!(back.dist(&a) < 1e-12 * a.norm());
    }

    #[test]
    fn mixed_jordan_structure() {
        // J_2(3) ⊕ [−1] conjugated by a fixed well-conditioned matrix
        let j =
            ComplexMatrix::from_real_rows(&[&[3.0, 1.0, 0.0], &[0.0, 3.0, 0.0], &[0.0, 0.0, -1.0]]);
        let q =
            ComplexMatrix::from_real_rows(&[&[1.0, 0.5, 0.0], &[0.0, 1.0, 0.25], &[0.5, 0.0, 1.0]]);
        let a = q.matmul(&j).matmul(&q.inverse().unwrap());
        let d = spectral_decomposition(&a, 1e-6, DEFAULT_PROJECTOR_CAP).unwrap();
        assert_eq!(d.spectrum.clusters.len(), 2);
        assert!(d.residual < 1e-7, "{}", d.residual);
        let n_parts = d.nilpotent_parts(&a);
        let rank_one_nilpotent = n_parts.iter().map(|m| m.norm()).fold(0.0, f64::max);
        assert!(rank_one_nilpotent > 0.5);
    }

    #[test]
    fn cap_triggers_ill_conditioned() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1e6], &[0.0, 1.0 + 1e-6]]);
        let s = eigen_spectrum(&a, 0.0).unwrap();
        let err = spectral_projectors_capped(&a, &s, 1e6).unwrap_err();
        assert!(matches!(err, Error::IllConditioned(_)));
    }

    #[test]
    fn split_defective_eigenvalue_is_merged() {
        // eigenvalues 1 ± 1e-7: a perturbed Jordan block, not two eigenvalues
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1e-14, 1.0]]);
        assert_eq!(
            eigen_spectrum(&a, DEFAULT_CLUSTER_TOL)
                .unwrap()
                .clusters
                .len(),
            2
        );
        let d = spectral_decomposition(&a, DEFAULT_CLUSTER_TOL, DEFAULT_PROJECTOR_CAP).unwrap();
        assert_eq!(d.spectrum.clusters.len(), 1);
        assert_eq!(d.spectrum.clusters[0].multiplicity, 2);
        assert!((d.spectrum.clusters[0].value - 1.0).norm() < 1e-12);
    }

    #[test]
    fn separated_nonnormal_eigenvalues_stay_apart() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1e3], &[0.0, 1.01]]);
        let d = spectral_decomposition(&a, DEFAULT_CLUSTER_TOL, DEFAULT_PROJECTOR_CAP).unwrap();
        assert_eq!(d.spectrum.clusters.len(), 2);
    }
}
