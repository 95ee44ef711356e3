//! Explicit matrices `π(g)` for small representations.

use num_complex::Complex64;

use super::rep::RepSpec;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Largest representation dimension for which a matrix is built.
pub const MAX_REP_MATRIX_DIM: u128 = 200;

fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, m, &mut Vec::new(), &mut out);
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - left {
            cur.push(i);
            rec(n, i + 1, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Action on `Sym^m` in the monomial basis `x^α`, multisets in
/// lexicographic order: the column of `x_{i1}⋯x_{im}` is the expansion of
/// `(g x_{i1})⋯(g x_{im})`.
fn sym_power(g: &ComplexMatrix, m: usize) -> ComplexMatrix {
    let n = g.rows();
    let basis = multisets(n, m);
    let index: std::collections::HashMap<&[usize], usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.as_slice(), i))
        .collect();
    let mut out = ComplexMatrix::zeros(basis.len(), basis.len());
    for (col, mono) in basis.iter().enumerate() {
        // polynomial as map sorted-multiset → coefficient
        let mut poly: Vec<(Vec<usize>, Complex64)> = vec![(Vec::new(), Complex64::new(1.0, 0.0))];
        for &j in mono {
            let mut next: std::collections::HashMap<Vec<usize>, Complex64> = Default::default();
            for (term, c) in &poly {
                for i in 0..n {
                    let a = g[(i, j)];
                    if a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    let mut t = term.clone();
                    let pos = t.partition_point(|&v| v <= i);
                    t.insert(pos, i);
                    *next.entry(t).or_default() += c * a;
                }
            }
            poly = next.into_iter().collect();
        }
        for (term, c) in poly {
            out[(index[term.as_slice()], col)] += c;
        }
    }
    out
}

/// `k`-th compound matrix: `k×k` minors indexed by lexicographic subsets.
fn ext_power(g: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let basis = subsets(g.rows(), k);
    ComplexMatrix::from_fn(basis.len(), basis.len(), |r, c| {
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            g.select(&basis[r], &basis[c]).det()
        }
    })
}

/// `π(g)` for `Sym`, `Ext`, tensor products, direct sums and compositions.
/// Schur powers are not built explicitly.
pub fn rep_matrix(spec: &RepSpec, g: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = g.rows();
    spec.validate(n)?;
    let d = spec.dim(n)?;
    if d > MAX_REP_MATRIX_DIM {
        return Err(Error::DimensionCap {
            dim: d,
            cap: MAX_REP_MATRIX_DIM,
        });
    }
    build(spec, g)
}

fn build(spec: &RepSpec, g: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(match spec {
        RepSpec::Sym(m) => sym_power(g, *m),
        RepSpec::Ext(k) => ext_power(g, *k),
        RepSpec::Schur(_) => {
            return Err(Error::Unsupported(
                "explicit matrices of Schur powers".into(),
            ))
        }
        RepSpec::Tensor(a, b) => build(a, g)?.kron(&build(b, g)?),
        RepSpec::DirectSum(parts) => {
            let blocks = parts
                .iter()
                .map(|p| build(p, g))
                .collect::<Result<Vec<_>>>()?;
            ComplexMatrix::block_diag(&blocks)
        }
        RepSpec::Compose { outer, inner } => build(outer, &build(inner, g)?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 2.0, 0.0], &[0.5, -1.0, 3.0], &[0.0, 1.0, 2.0]])
    }

    #[test]
    fn homomorphism_on_products() {
        let a = g();
        let b =
            ComplexMatrix::from_real_rows(&[&[2.0, 0.0, 1.0], &[1.0, 1.0, 0.0], &[0.0, -1.0, 1.0]]);
        for spec in [
            RepSpec::sym(2),
            RepSpec::sym(3),
            RepSpec::ext(2),
            RepSpec::tensor(RepSpec::sym(1), RepSpec::ext(2)),
            RepSpec::compose(RepSpec::sym(2), RepSpec::ext(2)),
        ] {
            let lhs = rep_matrix(&spec, &a.matmul(&b)).unwrap();
            let rhs = rep_matrix(&spec, &a)
                .unwrap()
                .matmul(&rep_matrix(&spec, &b).unwrap());
            assert!(lhs.dist(&rhs) < 1e-10 * lhs.norm(), "{spec}");
        }
    }

    #[test]
    fn traces_of_diagonal_are_characters() {
        let d = ComplexMatrix::real_diag(&[2.0, 1.0]);
        assert!((rep_matrix(&RepSpec::sym(2), &d).unwrap().trace().re - 7.0).abs() < 1e-14);
        let top = rep_matrix(&RepSpec::ext(3), &g()).unwrap();
        assert!((top[(0, 0)] - g().det()).norm() < 1e-12);
    }

    #[test]
    fn cap_and_schur_rejected() {
        let big = ComplexMatrix::identity(6);
        assert!(matches!(
            rep_matrix(&RepSpec::sym(5), &big),
            Err(Error::DimensionCap { .. })
        ));
        assert!(matches!(
            rep_matrix(&RepSpec::schur(vec![2, 1]).unwrap(), &g()),
            Err(Error::Unsupported(_))
        ));
    }
}
