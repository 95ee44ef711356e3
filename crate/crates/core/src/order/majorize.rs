use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symchar::ModuliVector;

/// Relative slack for float comparisons of partial sums.
pub const ORDER_SLACK: f64 = 1e-10;

/// Real vector sorted non-increasing; typically the logarithms of
/// eigenvalue moduli.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogVector {
    values: Vec<f64>,
    trace_zero: bool,
}

impl LogVector {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::PreconditionFailed("empty vector".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse("non-finite entry".into()));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let l1: f64 = values.iter().map(|v| v.abs()).sum();
        let trace_zero = values.iter().sum::<f64>().abs() <= ORDER_SLACK * l1;
        Ok(LogVector { values, trace_zero })
    }

    pub fn from_moduli(x: &ModuliVector) -> Self {
        // ln is monotone, so the order is kept
        LogVector::new(x.log_values()).expect("moduli are positive and finite")
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn trace_zero(&self) -> bool {
        self.trace_zero
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Shifted to zero sum.
    pub fn centered(&self) -> LogVector {
        let mean = self.sum() / self.len() as f64;
        LogVector::new(self.values.iter().map(|v| v - mean).collect()).unwrap()
    }

    /// `Σ_{i≤k} v_i` for `k = 1..=n`.
    pub fn prefix_sums(&self) -> Vec<f64> {
        self.values
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }

    fn l1(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }
}

/// Outcome of one partial-sum comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Level {
    Above,
    Tie,
    Below,
}

pub(crate) fn classify(diff: f64, scale: f64) -> Level {
    if diff.abs() <= ORDER_SLACK * scale {
        Level::Tie
    } else if diff > 0.0 {
        Level::Above
    } else {
        Level::Below
    }
}

pub(crate) fn pair_scale(x: &LogVector, y: &LogVector) -> f64 {
    x.l1().max(y.l1())
}

pub(crate) fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    Ok(())
}

/// Levels of `Σ_{i≤k} x_i − Σ_{i≤k} y_i` for `k = 1..=n`.
pub(crate) fn prefix_levels(x: &LogVector, y: &LogVector) -> (Vec<Level>, Vec<f64>) {
    let scale = pair_scale(x, y);
    let diffs: Vec<f64> = x
        .prefix_sums()
        .iter()
        .zip(y.prefix_sums())
        .map(|(a, b)| a - b)
        .collect();
    (diffs.iter().map(|&d| classify(d, scale)).collect(), diffs)
}

/// `y ≺ x`: every prefix sum of `x` dominates, totals equal (within slack).
pub fn majorize_additive(x: &LogVector, y: &LogVector) -> Result<bool> {
    check_lengths(x.len(), y.len())?;
    let (levels, _) = prefix_levels(x, y);
    let n = levels.len();
    Ok(levels[..n - 1].iter().all(|l| *l != Level::Below) && levels[n - 1] == Level::Tie)
}

/// Weak (sub)majorization: prefix sums dominate, totals unconstrained
/// beyond the last prefix.
pub fn majorize_weak(x: &LogVector, y: &LogVector) -> Result<bool> {
    check_lengths(x.len(), y.len())?;
    let (levels, _) = prefix_levels(x, y);
    Ok(levels.iter().all(|l| *l != Level::Below))
}

/// Prefix products of `x` dominate those of `y` and the total products
/// agree. Exact when both inputs carry rationals.
pub fn majorize_multiplicative(x: &ModuliVector, y: &ModuliVector) -> Result<bool> {
    check_lengths(x.len(), y.len())?;
    if let (Some(ex), Some(ey)) = (x.exact(), y.exact()) {
        let mut px = BigRational::one();
        let mut py = BigRational::one();
        for (a, b) in ex.iter().zip(ey).take(ex.len() - 1) {
            px *= a;
            py *= b;
            if px < py {
                return Ok(false);
            }
        }
        px *= ex.last().unwrap();
        py *= ey.last().unwrap();
        return Ok(px == py);
    }
    majorize_additive(&LogVector::from_moduli(x), &LogVector::from_moduli(y))
}
