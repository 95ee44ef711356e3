//! JSON forms of matrices and moduli vectors.
//!
//! Matrix: `{"n": 2, "entries": [[{"re": 1, "im": 0}, …], …]}`, row-major.
//! Entries may also be plain numbers, and any number may be written as a
//! string `"p/q"`, `"p"` or a decimal, which is read exactly. An optional
//! `"eigenvalues": [{"value": …, "multiplicity": k}, …]` feeds the exact
//! decomposition.
//!
//! Moduli: `{"moduli": [4, "1/2", 0.5]}` or the bare array.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{FromPrimitive, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eigen_spectrum, triangular_eigenvalues, ComplexMatrix, ExactMatrix, ExactScalar,
};
use crate::symchar::{rational_to_f64, ModuliVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Float(f64),
    Text(String),
}

/// Exact value of a decimal or fraction literal.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.contains('/') {
        let q = BigRational::from_str(s).map_err(|_| bad())?;
        return Ok(q);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(p) => (&s[..p], s[p + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(bad());
    }
    let value = BigInt::from_str(&digits).map_err(|_| bad())?;
    let shift = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    Ok(BigRational::from_integer(value) * Pow::pow(&ten, shift))
}

impl Number {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            Number::Float(v) => BigRational::from_f64(*v)
                .ok_or_else(|| Error::Parse(format!("non-finite number {v}"))),
            Number::Text(s) => parse_rational(s),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            Number::Float(v) => Ok(*v),
            Number::Text(s) => Ok(rational_to_f64(&parse_rational(s)?)),
        }
    }

    pub fn is_text(&self) -> bool {
        matches!(self, Number::Text(_))
    }

    pub fn exact(q: &BigRational) -> Number {
        Number::Text(q.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Complex {
        re: Number,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        im: Option<Number>,
    },
    Real(Number),
}

impl Entry {
    fn parts(&self) -> (&Number, Option<&Number>) {
        match self {
            Entry::Complex { re, im } => (re, im.as_ref()),
            Entry::Real(re) => (re, None),
        }
    }

    pub fn to_exact(&self) -> Result<ExactScalar> {
        let (re, im) = self.parts();
        let im = match im {
            Some(v) => v.to_rational()?,
            None => BigRational::zero(),
        };
        Ok(Complex::new(re.to_rational()?, im))
    }

    pub fn to_complex(&self) -> Result<Complex64> {
        let (re, im) = self.parts();
        Ok(Complex64::new(
            re.to_f64()?,
            im.map_or(Ok(0.0), Number::to_f64)?,
        ))
    }

    pub fn float(z: Complex64) -> Entry {
        Entry::Complex {
            re: Number::Float(z.re),
            im: Some(Number::Float(z.im)),
        }
    }

    pub fn exact(z: &ExactScalar) -> Entry {
        Entry::Complex {
            re: Number::exact(&z.re),
            im: Some(Number::exact(&z.im)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueJson {
    pub value: Entry,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<EigenvalueJson>>,
}

/// A parsed matrix in both float and exact form.
#[derive(Debug, Clone)]
pub struct MatrixInput {
    pub matrix: ComplexMatrix,
    pub exact: ExactMatrix,
    pub eigenvalues: Option<Vec<(ExactScalar, usize)>>,
}

impl MatrixInput {
    /// Supplied eigenvalues, else the diagonal of a triangular matrix.
    pub fn exact_eigenvalues(&self) -> Option<Vec<(ExactScalar, usize)>> {
        self.eigenvalues
            .clone()
            .or_else(|| triangular_eigenvalues(&self.exact))
    }
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixJson {
            n: m.rows(),
            entries: (0..m.rows())
                .map(|r| m.row(r).iter().map(|z| Entry::float(*z)).collect())
                .collect(),
            eigenvalues: None,
        }
    }

    pub fn from_exact(m: &ExactMatrix) -> Self {
        MatrixJson {
            n: m.rows(),
            entries: (0..m.rows())
                .map(|r| m.row(r).iter().map(Entry::exact).collect())
                .collect(),
            eigenvalues: None,
        }
    }

    pub fn to_input(&self) -> Result<MatrixInput> {
        let n = self.n;
        if n == 0 {
            return Err(Error::Parse("matrix dimension must be positive".into()));
        }
        if self.entries.len() != n || self.entries.iter().any(|row| row.len() != n) {
            return Err(Error::Parse(format!("entries do not form a {n}×{n} array")));
        }
        let exact_rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(Entry::to_exact).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let exact = ExactMatrix::from_rows(exact_rows)?;
        let float_rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(Entry::to_complex)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = ComplexMatrix::from_rows(float_rows)?;
        if matrix
            .as_slice()
            .iter()
            .any(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::Parse("matrix entry outside the f64 range".into()));
        }
        let eigenvalues = match &self.eigenvalues {
            Some(list) => Some(
                list.iter()
                    .map(|e| Ok((e.value.to_exact()?, e.multiplicity)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        Ok(MatrixInput {
            matrix,
            exact,
            eigenvalues,
        })
    }
}

pub fn parse_matrix(text: &str) -> Result<MatrixInput> {
    let json: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    json.to_input()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliJson {
    pub moduli: Vec<Number>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModuliIn {
    Wrapped { moduli: Vec<Number> },
    Plain(Vec<Number>),
}

impl ModuliJson {
    /// Exact entries as fraction strings, float entries as numbers.
    pub fn from_moduli(x: &ModuliVector) -> Self {
        let moduli = match x.exact() {
            Some(e) => e.iter().map(Number::exact).collect(),
            None => x.values().iter().map(|v| Number::Float(*v)).collect(),
        };
        ModuliJson { moduli }
    }

    /// Exact when every entry is a string.
    pub fn to_moduli(&self) -> Result<ModuliVector> {
        if !self.moduli.is_empty() && self.moduli.iter().all(Number::is_text) {
            let exact = self
                .moduli
                .iter()
                .map(Number::to_rational)
                .collect::<Result<Vec<_>>>()?;
            ModuliVector::from_exact(exact)
        } else {
            ModuliVector::new(
                self.moduli
                    .iter()
                    .map(Number::to_f64)
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    }
}

pub fn parse_moduli(text: &str) -> Result<ModuliVector> {
    let parsed: ModuliIn = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let moduli = match parsed {
        ModuliIn::Wrapped { moduli } | ModuliIn::Plain(moduli) => moduli,
    };
    ModuliJson { moduli }.to_moduli()
}

/// Eigenvalue moduli of a matrix. With `exact`, uses supplied or triangular
/// eigenvalues and requires rational moduli.
pub fn matrix_moduli(input: &MatrixInput, exact: bool, cluster_tol: f64) -> Result<ModuliVector> {
    if exact {
        let eig = input.exact_eigenvalues().ok_or_else(|| {
            Error::NotExact("exact moduli need supplied eigenvalues or a triangular matrix".into())
        })?;
        let mut out = Vec::new();
        for (z, m) in &eig {
            let r = crate::cmjd::exact_modulus(z)
                .ok_or_else(|| Error::NotExact(format!("|{z}| is irrational")))?;
            out.extend(std::iter::repeat_n(r, *m));
        }
        if out.len() != input.exact.rows() {
            return Err(Error::NotExact(
                "eigenvalue multiplicities do not sum to n".into(),
            ));
        }
        return ModuliVector::from_exact(out).map_err(|e| match e {
            Error::NonPositive => Error::Singular,
            other => other,
        });
    }
    let spectrum = eigen_spectrum(&input.matrix, cluster_tol)?;
    ModuliVector::new(spectrum.moduli()).map_err(|e| match e {
        Error::NonPositive => Error::Singular,
        other => other,
    })
}

/// Reads either a matrix document (has `"entries"`) or a moduli document.
pub fn parse_hyperbolic(text: &str, exact: bool, cluster_tol: f64) -> Result<ModuliVector> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("entries").is_some() {
        let json: MatrixJson =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        return matrix_moduli(&json.to_input()?, exact, cluster_tol);
    }
    let x = parse_moduli(text)?;
    Ok(if exact { x.to_exact() } else { x })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), q(-7, 1));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25e2").unwrap(), q(-125, 1));
        assert_eq!(parse_rational("2.5E-1").unwrap(), q(1, 4));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let text = r#"{"n": 2, "entries": [[{"re": 1, "im": 0}, {"re": "1/2", "im": "-3"}], [0, {"re": 2.5}]]}"#;
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.matrix[(0, 1)], Complex64::new(0.5, -3.0));
        assert_eq!(m.exact[(0, 1)], Complex::new(q(1, 2), q(-3, 1)));
        let out = serde_json::to_string(&MatrixJson::from_matrix(&m.matrix)).unwrap();
        let back = parse_matrix(&out).unwrap();
        assert_eq!(back.matrix, m.matrix);
        let exact_out = serde_json::to_string(&MatrixJson::from_exact(&m.exact)).unwrap();
        assert_eq!(parse_matrix(&exact_out).unwrap().exact, m.exact);
    }

    #[test]
    fn matrix_shape_errors() {
        assert!(parse_matrix(r#"{"n": 2, "entries": [[1, 0]]}"#).is_err());
        assert!(parse_matrix(r#"{"n": 0, "entries": []}"#).is_err());
        assert!(parse_matrix(r#"{"entries": [[1]]}"#).is_err());
        assert!(parse_matrix(r#"{"n": 1, "entries": [["x"]]}"#).is_err());
    }

    #[test]
    fn moduli_forms() {
        let x = parse_moduli(r#"{"moduli": [0.5, 4, 0.5]}"#).unwrap();
        assert_eq!(x.values(), &[4.0, 0.5, 0.5]);
        assert!(!x.is_exact());
        let y = parse_moduli(r#"["3", "1", "1/3"]"#).unwrap();
        assert!(y.is_exact());
        assert_eq!(y.exact().unwrap()[2], q(1, 3));
        let s = serde_json::to_string(&ModuliJson::from_moduli(&y)).unwrap();
        assert_eq!(s, r#"{"moduli":["3","1","1/3"]}"#);
        assert!(parse_moduli(r#"[1, -2]"#).is_err());
    }

    #[test]
    fn hyperbolic_from_matrix() {
        let text = r#"{"n": 3, "entries": [[4, 1, 0], [0, 1, 0], [0, 0, "1/4"]]}"#;
        let x = parse_hyperbolic(text, false, 1e-8).unwrap();
        assert!((x.values()[0] - 4.0).abs() < 1e-12 && (x.values()[2] - 0.25).abs() < 1e-12);
        let e = parse_hyperbolic(text, true, 1e-8).unwrap();
        assert_eq!(e.exact().unwrap(), &[q(4, 1), q(1, 1), q(1, 4)]);
        let full = r#"{"n": 2, "entries": [[1, 1], [1, 2]]}"#;
        assert!(matches!(
            parse_hyperbolic(full, true, 1e-8),
            Err(Error::NotExact(_))
        ));
    }
}
