use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use super::majorize::{check_lengths, prefix_levels, Level, LogVector};
use crate::error::Result;
use crate::symchar::ModuliVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Relation {
    Geq,
    Leq,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderVerdict {
    pub relation: Relation,
    /// First `k` with `Π_{i≤k} x_i < Π_{i≤k} y_i` after normalization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_level: Option<usize>,
    /// Decided in rational arithmetic.
    pub exact: bool,
    /// Some float comparison fell within the slack and could not be
    /// re-run exactly; the verdict treats it as equality.
    pub ambiguous: bool,
    /// Differences of normalized log prefix sums, `k = 1..n−1`.
    pub margins: Vec<f64>,
}

impl OrderVerdict {
    pub fn geq(&self) -> bool {
        matches!(self.relation, Relation::Geq | Relation::Equal)
    }
}

fn exact_levels(x: &[BigRational], y: &[BigRational]) -> Vec<Level> {
    // compare (Π_{i≤k} x_i)^n · P_y^k with (Π_{i≤k} y_i)^n · P_x^k, which is
    // the prefix comparison after rescaling both to product one
    let n = x.len();
    let total = |v: &[BigRational]| v.iter().fold(BigRational::one(), |a, b| a * b);
    let (tx, ty) = (total(x), total(y));
    let mut px = BigRational::one();
    let mut py = BigRational::one();
    let mut out = Vec::with_capacity(n - 1);
    for k in 1..n {
        px *= &x[k - 1];
        py *= &y[k - 1];
        let kk = BigInt::from(k);
        let lhs = Pow::pow(&px, BigInt::from(n)) * Pow::pow(&ty, &kk);
        let rhs = Pow::pow(&py, BigInt::from(n)) * Pow::pow(&tx, &kk);
        out.push(match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => Level::Above,
            std::cmp::Ordering::Equal => Level::Tie,
            std::cmp::Ordering::Less => Level::Below,
        });
    }
    out
}

/// Every `k` at which the normalized prefix product of `x` falls below
/// that of `y`, ascending.
pub(crate) fn failing_levels(x: &ModuliVector, y: &ModuliVector) -> Vec<usize> {
    let levels = match (x.exact(), y.exact()) {
        (Some(ex), Some(ey)) => exact_levels(ex, ey),
        _ => {
            let lx = LogVector::from_moduli(x).centered();
            let ly = LogVector::from_moduli(y).centered();
            let mut l = prefix_levels(&lx, &ly).0;
            l.pop();
            l
        }
    };
    levels
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == Level::Below)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Decides Kostant's order between hyperbolic elements with eigenvalue
/// moduli `x` and `y`: `x ≥ y` iff `ln y` lies in the permutohedron of
/// `ln x`, i.e. iff `ln x` majorizes `ln y`. Both are rescaled to product
/// one first. Exact when both carry rationals.
pub fn kostant_compare(x: &ModuliVector, y: &ModuliVector) -> Result<OrderVerdict> {
    check_lengths(x.len(), y.len())?;
    let lx = LogVector::from_moduli(x).centered();
    let ly = LogVector::from_moduli(y).centered();
    let (float_levels, diffs) = prefix_levels(&lx, &ly);
    let n = x.len();
    let margins = diffs[..n - 1].to_vec();
    let (levels, exact) = match (x.exact(), y.exact()) {
        (Some(ex), Some(ey)) => (exact_levels(ex, ey), true),
        _ => (float_levels[..n - 1].to_vec(), false),
    };
    let geq = levels.iter().all(|l| *l != Level::Below);
    let leq = levels.iter().all(|l| *l != Level::Above);
    let relation = match (geq, leq) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Geq,
        (false, true) => Relation::Leq,
        (false, false) => Relation::Incomparable,
    };
    let failing_level = levels
        .iter()
        .position(|l| *l == Level::Below)
        .map(|i| i + 1);
    let ambiguous = !exact && levels.contains(&Level::Tie);
    Ok(OrderVerdict {
        relation,
        failing_level,
        exact,
        ambiguous,
        margins,
    })
}
