use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Positive eigenvalue moduli, sorted non-increasing. Optionally carries
/// the same values as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuliVector {
    values: Vec<f64>,
    exact: Option<Vec<BigRational>>,
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

impl ModuliVector {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::PreconditionFailed("empty moduli vector".into()));
        }
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::NonPositive);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(ModuliVector {
            values,
            exact: None,
        })
    }

    pub fn from_exact(mut values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::PreconditionFailed("empty moduli vector".into()));
        }
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::NonPositive);
        }
        values.sort_by(|a, b| b.cmp(a));
        let floats: Vec<f64> = values.iter().map(rational_to_f64).collect();
        if floats.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Overflow);
        }
        Ok(ModuliVector {
            values: floats,
            exact: Some(values),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The same vector with exact rationals attached; floats convert exactly.
    pub fn to_exact(&self) -> ModuliVector {
        match &self.exact {
            Some(_) => self.clone(),
            None => {
                let exact = self
                    .values
                    .iter()
                    .map(|&v| BigRational::from_float(v).expect("finite by construction"))
                    .collect();
                ModuliVector {
                    values: self.values.clone(),
                    exact: Some(exact),
                }
            }
        }
    }

    /// Exact rationals, converting the floats if none are attached.
    pub fn exact_or_converted(&self) -> Vec<BigRational> {
        match &self.exact {
            Some(e) => e.clone(),
            None => self.to_exact().exact.unwrap(),
        }
    }

    pub fn log_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.ln()).collect()
    }

    pub fn product(&self) -> f64 {
        self.log_values().iter().sum::<f64>().exp()
    }

    /// Product is 1, exactly when exact, else within relative `tol`.
    pub fn is_sl(&self, tol: f64) -> bool {
        match &self.exact {
            Some(e) => e.iter().fold(BigRational::one(), |acc, x| acc * x).is_one(),
            None => self.log_values().iter().sum::<f64>().abs() <= tol,
        }
    }

    /// Rescaled to product 1 (float only; exact data is kept when it is
    /// already normalized).
    pub fn sl_normalized(&self) -> ModuliVector {
        if self.exact.is_some() && self.is_sl(0.0) {
            return self.clone();
        }
        let logs = self.log_values();
        let mean = logs.iter().sum::<f64>() / logs.len() as f64;
        ModuliVector {
            values: logs.iter().map(|l| (l - mean).exp()).collect(),
            exact: None,
        }
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }
}

/// Sort helper shared by the float and exact enumeration paths.
pub(crate) fn sort_desc<T: PartialOrd>(v: &mut [T]) {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
}
