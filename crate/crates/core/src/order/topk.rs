use serde::Serialize;

use super::compare::kostant_compare;
use super::majorize::{check_lengths, ORDER_SLACK};
use crate::error::{Error, Result};
use crate::symchar::{rep_moduli, ModuliVector, RepSpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopKLevel {
    pub k: usize,
    /// `ln Π_{i≤k} X_i − ln Π_{i≤k} Y_i`
    pub ln_product_margin: f64,
    /// `Σ_{i≤k} X_i − Σ_{i≤k} Y_i`
    pub sum_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopKReport {
    pub spec: RepSpec,
    pub dimension: usize,
    pub levels: Vec<TopKLevel>,
    /// `ln Π X_i` and `ln Π Y_i`; both vanish for product-one inputs.
    pub ln_product_x: f64,
    pub ln_product_y: f64,
    pub pass: bool,
}

/// Checks that the eigenvalue moduli of `π(x)` dominate those of `π(y)` in
/// every top-`k` product and top-`k` sum, given `x ≥ y`.
pub fn check_topk(x: &ModuliVector, y: &ModuliVector, spec: &RepSpec) -> Result<TopKReport> {
    check_lengths(x.len(), y.len())?;
    let (x, y) = (x.sl_normalized(), y.sl_normalized());
    if !kostant_compare(&x, &y)?.geq() {
        return Err(Error::PreconditionFailed("x does not dominate y".into()));
    }
    let big_x = rep_moduli(spec, &x)?;
    let big_y = rep_moduli(spec, &y)?;
    let (lx, ly) = (big_x.log_values(), big_y.log_values());
    let ln_scale = lx.iter().chain(&ly).map(|v| v.abs()).sum::<f64>().max(1.0);
    let sum_scale = big_x
        .values()
        .iter()
        .sum::<f64>()
        .max(big_y.values().iter().sum());
    let mut levels = Vec::with_capacity(lx.len());
    let (mut pl, mut ps) = (0.0, 0.0);
    let mut pass = true;
    for k in 0..lx.len() {
        pl += lx[k] - ly[k];
        ps += big_x.values()[k] - big_y.values()[k];
        pass &= pl >= -ORDER_SLACK * ln_scale && ps >= -ORDER_SLACK * sum_scale;
        levels.push(TopKLevel {
            k: k + 1,
            ln_product_margin: pl,
            sum_margin: ps,
        });
    }
    Ok(TopKReport {
        spec: spec.clone(),
        dimension: lx.len(),
        ln_product_x: lx.iter().sum(),
        ln_product_y: ly.iter().sum(),
        levels,
        pass,
    })
}
