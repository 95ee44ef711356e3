use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::functions::{
    complete_homogeneous, complete_homogeneous_exact, elementary, elementary_exact, schur,
    schur_exact,
};
use super::kostka::ssyt_weights;
use super::moduli::{sort_desc, ModuliVector};
use super::partition::Partition;
use crate::error::{Error, Result};

/// Default cap on the size of an enumerated moduli multiset.
pub const DEFAULT_MODULI_CAP: u128 = 1_000_000;

/// Polynomial representation of `GL_n`, built from symmetric, exterior and
/// Schur powers of the natural representation.
///
/// JSON form: `{"sym": m}`, `{"ext": k}`, `{"schur": [λ…]}`,
/// `{"tensor": [a, b]}`, `{"dsum": [ … ]}`,
/// `{"compose": {"outer": …, "inner": …}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepSpec {
    Sym(usize),
    Ext(usize),
    Schur(Partition),
    Tensor(Box<RepSpec>, Box<RepSpec>),
    #[serde(rename = "dsum")]
    DirectSum(Vec<RepSpec>),
    /// `outer ∘ inner`: `outer` acts on the representation space of `inner`.
    Compose {
        outer: Box<RepSpec>,
        inner: Box<RepSpec>,
    },
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepSpec::Sym(m) => write!(f, "Sym^{m}"),
            RepSpec::Ext(k) => write!(f, "Ext^{k}"),
            RepSpec::Schur(l) => write!(f, "Schur{:?}", l.parts()),
            RepSpec::Tensor(a, b) => write!(f, "({a} ⊗ {b})"),
            RepSpec::DirectSum(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ⊕ ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            RepSpec::Compose { outer, inner } => write!(f, "{outer}∘{inner}"),
        }
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn schur_dimension(lambda: &Partition, n: usize) -> BigInt {
    // hook-content formula
    let parts = lambda.parts();
    let conj = lambda.conjugate();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len {
            let content = n as i64 + c as i64 - r as i64;
            if content <= 0 {
                return BigInt::from(0);
            }
            num *= BigInt::from(content);
            let hook = (len - c - 1) + (conj.parts()[c] - r - 1) + 1;
            den *= BigInt::from(hook);
        }
    }
    num / den
}

impl RepSpec {
    pub fn sym(m: usize) -> Self {
        RepSpec::Sym(m)
    }

    pub fn ext(k: usize) -> Self {
        RepSpec::Ext(k)
    }

    pub fn schur(parts: Vec<usize>) -> Result<Self> {
        Ok(RepSpec::Schur(Partition::new(parts)?))
    }

    pub fn tensor(a: RepSpec, b: RepSpec) -> Self {
        RepSpec::Tensor(Box::new(a), Box::new(b))
    }

    pub fn compose(outer: RepSpec, inner: RepSpec) -> Self {
        RepSpec::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        }
    }

    /// Direct sum of `k` copies.
    pub fn copies(self, k: usize) -> Self {
        RepSpec::DirectSum(vec![self; k])
    }

    /// Checks the structural invariants for input dimension `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::PreconditionFailed(
                "base dimension must be positive".into(),
            ));
        }
        match self {
            RepSpec::Sym(_) => Ok(()),
            RepSpec::Ext(k) if *k > n => Err(Error::BadIndex { index: *k, dim: n }),
            RepSpec::Ext(_) => Ok(()),
            RepSpec::Schur(l) if l.len() > n => Err(Error::BadIndex {
                index: l.len(),
                dim: n,
            }),
            RepSpec::Schur(_) => Ok(()),
            RepSpec::Tensor(a, b) => {
                a.validate(n)?;
                b.validate(n)
            }
            RepSpec::DirectSum(parts) if parts.is_empty() => {
                Err(Error::PreconditionFailed("empty direct sum".into()))
            }
            RepSpec::DirectSum(parts) => parts.iter().try_for_each(|p| p.validate(n)),
            RepSpec::Compose { outer, inner } => {
                inner.validate(n)?;
                let d = inner.dim(n)?;
                let d = usize::try_from(d).map_err(|_| Error::DimensionCap {
                    dim: d,
                    cap: usize::MAX as u128,
                })?;
                outer.validate(d)
            }
        }
    }

    fn dim_big(&self, n: usize) -> Result<BigInt> {
        Ok(match self {
            RepSpec::Sym(m) => binomial(n + m - 1, *m),
            RepSpec::Ext(k) => binomial(n, *k),
            RepSpec::Schur(l) => schur_dimension(l, n),
            RepSpec::Tensor(a, b) => a.dim_big(n)? * b.dim_big(n)?,
            RepSpec::DirectSum(parts) => {
                let mut s = BigInt::from(0);
                for p in parts {
                    s += p.dim_big(n)?;
                }
                s
            }
            RepSpec::Compose { outer, inner } => {
                let d = inner.dim(n)?;
                let d = usize::try_from(d).map_err(|_| Error::DimensionCap {
                    dim: d,
                    cap: usize::MAX as u128,
                })?;
                outer.dim_big(d)?
            }
        })
    }

    /// Dimension of the representation space when acting on `C^n`.
    pub fn dim(&self, n: usize) -> Result<u128> {
        let d = self.dim_big(n)?;
        d.to_u128().ok_or(Error::DimensionCap {
            dim: u128::MAX,
            cap: u128::MAX,
        })
    }

    fn check_cap(&self, n: usize, cap: u128) -> Result<u128> {
        self.validate(n)?;
        let d = self.dim(n)?;
        if d > cap {
            return Err(Error::DimensionCap { dim: d, cap });
        }
        Ok(d)
    }
}

trait Weight: Clone + PartialOrd + One + Mul<Output = Self> {}
impl Weight for f64 {}
impl Weight for BigRational {}

fn multiset_products<W: Weight>(x: &[W], m: usize, out: &mut Vec<W>) {
    fn rec<W: Weight>(x: &[W], start: usize, left: usize, acc: W, out: &mut Vec<W>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..x.len() {
            rec(x, i, left - 1, acc.clone() * x[i].clone(), out);
        }
    }
    rec(x, 0, m, W::one(), out);
}

fn subset_products<W: Weight>(x: &[W], k: usize, out: &mut Vec<W>) {
    fn rec<W: Weight>(x: &[W], start: usize, left: usize, acc: W, out: &mut Vec<W>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..=x.len() - left {
            rec(x, i + 1, left - 1, acc.clone() * x[i].clone(), out);
        }
    }
    rec(x, 0, k, W::one(), out);
}

fn pow<W: Weight>(x: &W, e: usize) -> W {
    (0..e).fold(W::one(), |acc, _| acc * x.clone())
}

fn enumerate<W: Weight>(spec: &RepSpec, x: &[W]) -> Result<Vec<W>> {
    let mut out = Vec::new();
    match spec {
        RepSpec::Sym(m) => multiset_products(x, *m, &mut out),
        RepSpec::Ext(k) => subset_products(x, *k, &mut out),
        RepSpec::Schur(l) => {
            for (content, mult) in ssyt_weights(l, x.len())? {
                let w = content
                    .iter()
                    .zip(x)
                    .fold(W::one(), |acc, (&e, xi)| acc * pow(xi, e));
                for _ in 0..mult {
                    out.push(w.clone());
                }
            }
        }
        RepSpec::Tensor(a, b) => {
            let (ma, mb) = (enumerate(a, x)?, enumerate(b, x)?);
            for u in &ma {
                for v in &mb {
                    out.push(u.clone() * v.clone());
                }
            }
        }
        RepSpec::DirectSum(parts) => {
            for p in parts {
                out.extend(enumerate(p, x)?);
            }
        }
        RepSpec::Compose { outer, inner } => {
            let mid = enumerate(inner, x)?;
            out = enumerate(outer, &mid)?;
        }
    }
    Ok(out)
}

/// Eigenvalue moduli of `π(g)` for hyperbolic `g` with moduli `x`, as a
/// sorted multiset. Exact when `x` is.
pub fn rep_moduli(spec: &RepSpec, x: &ModuliVector) -> Result<ModuliVector> {
    rep_moduli_capped(spec, x, DEFAULT_MODULI_CAP)
}

pub fn rep_moduli_capped(spec: &RepSpec, x: &ModuliVector, cap: u128) -> Result<ModuliVector> {
    spec.check_cap(x.len(), cap)?;
    match x.exact() {
        Some(exact) => ModuliVector::from_exact(enumerate(spec, exact)?),
        None => {
            let mut v = enumerate(spec, x.values())?;
            sort_desc(&mut v);
            ModuliVector::new(v).map_err(|e| match e {
                Error::NonPositive => Error::Overflow,
                other => other,
            })
        }
    }
}

/// Sum of the eigenvalue moduli of `π(g)`; for hyperbolic `g` this is the
/// character value. Uses closed forms (`h_m`, `e_k`, `s_λ`) wherever the
/// outermost constructor allows.
pub fn abs_character(spec: &RepSpec, x: &ModuliVector) -> Result<f64> {
    abs_character_capped(spec, x, DEFAULT_MODULI_CAP)
}

pub fn abs_character_capped(spec: &RepSpec, x: &ModuliVector, cap: u128) -> Result<f64> {
    spec.check_cap(x.len(), cap)?;
    abs_character_unchecked(spec, x, cap)
}

fn abs_character_unchecked(spec: &RepSpec, x: &ModuliVector, cap: u128) -> Result<f64> {
    match spec {
        RepSpec::Sym(m) => complete_homogeneous(*m, x),
        RepSpec::Ext(k) => elementary(*k, x),
        RepSpec::Schur(l) => schur(l, x),
        RepSpec::Tensor(a, b) => {
            Ok(abs_character_unchecked(a, x, cap)? * abs_character_unchecked(b, x, cap)?)
        }
        RepSpec::DirectSum(parts) => parts
            .iter()
            .map(|p| abs_character_unchecked(p, x, cap))
            .sum(),
        RepSpec::Compose { outer, inner } => {
            let mid = rep_moduli_capped(inner, x, cap)?;
            abs_character_unchecked(outer, &mid, cap)
        }
    }
}

/// Exact character value; `x` must carry exact data.
pub fn abs_character_exact(spec: &RepSpec, x: &ModuliVector) -> Result<BigRational> {
    spec.check_cap(x.len(), DEFAULT_MODULI_CAP)?;
    let exact = x
        .exact()
        .ok_or_else(|| Error::NotExact("moduli vector has no exact data".into()))?;
    Ok(match spec {
        RepSpec::Sym(m) => complete_homogeneous_exact(*m, exact),
        RepSpec::Ext(k) => elementary_exact(*k, exact)?,
        RepSpec::Schur(l) => schur_exact(l, exact)?,
        RepSpec::Tensor(a, b) => abs_character_exact(a, x)? * abs_character_exact(b, x)?,
        RepSpec::DirectSum(parts) => {
            let mut s = BigRational::from_integer(BigInt::from(0));
            for p in parts {
                s += abs_character_exact(p, x)?;
            }
            s
        }
        RepSpec::Compose { outer, inner } => abs_character_exact(outer, &rep_moduli(inner, x)?)?,
    })
}

/// Largest eigenvalue modulus of `π(g)`: the highest-weight monomial.
pub fn spectral_radius_rep(spec: &RepSpec, x: &ModuliVector) -> Result<f64> {
    spec.validate(x.len())?;
    let ln = spectral_radius_ln(spec, x)?;
    let v = ln.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

/// `ln` of [`spectral_radius_rep`]; never overflows for the closed forms.
pub fn spectral_radius_ln(spec: &RepSpec, x: &ModuliVector) -> Result<f64> {
    let logs = x.log_values();
    Ok(match spec {
        RepSpec::Sym(m) => *m as f64 * logs[0],
        RepSpec::Ext(k) => logs[..*k].iter().sum(),
        RepSpec::Schur(l) => l
            .parts()
            .iter()
            .zip(&logs)
            .map(|(&p, lx)| p as f64 * lx)
            .sum(),
        RepSpec::Tensor(a, b) => spectral_radius_ln(a, x)? + spectral_radius_ln(b, x)?,
        RepSpec::DirectSum(parts) => parts
            .iter()
            .map(|p| spectral_radius_ln(p, x))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max),
        RepSpec::Compose { outer, inner } => spectral_radius_ln(outer, &rep_moduli(inner, x)?)?,
    })
}

pub fn spectral_radius_rep_exact(spec: &RepSpec, x: &ModuliVector) -> Result<BigRational> {
    spec.validate(x.len())?;
    let exact = x
        .exact()
        .ok_or_else(|| Error::NotExact("moduli vector has no exact data".into()))?;
    Ok(match spec {
        RepSpec::Sym(m) => pow(&exact[0], *m),
        RepSpec::Ext(k) => exact[..*k].iter().fold(BigRational::one(), |a, b| a * b),
        RepSpec::Schur(l) => l
            .parts()
            .iter()
            .zip(exact)
            .fold(BigRational::one(), |a, (&p, xi)| a * pow(xi, p)),
        RepSpec::Tensor(a, b) => {
            spectral_radius_rep_exact(a, x)? * spectral_radius_rep_exact(b, x)?
        }
        RepSpec::DirectSum(parts) => parts
            .iter()
            .map(|p| spectral_radius_rep_exact(p, x))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap(),
        RepSpec::Compose { outer, inner } => {
            spectral_radius_rep_exact(outer, &rep_moduli(inner, x)?)?
        }
    })
}
