//! Weights of Schur modules: contents of semistandard tableaux with their
//! Kostka multiplicities.

use std::collections::BTreeMap;

use super::partition::Partition;
use crate::error::{Error, Result};

/// Largest `|λ|` accepted for weight enumeration.
pub const MAX_KOSTKA_SIZE: usize = 12;

/// Every content vector `μ ∈ ℕ^n` of a semistandard tableau of shape `λ`
/// with entries in `1..=n`, paired with the number `K_{λμ}` of such
/// tableaux. Built one entry value at a time, each value filling a
/// horizontal strip.
pub fn ssyt_weights(lambda: &Partition, n: usize) -> Result<Vec<(Vec<usize>, u64)>> {
    if lambda.size() > MAX_KOSTKA_SIZE {
        return Err(Error::Unsupported(format!(
            "weight enumeration limited to |λ| ≤ {MAX_KOSTKA_SIZE}, got {}",
            lambda.size()
        )));
    }
    let target: Vec<usize> = lambda.parts().to_vec();
    let rows = target.len();
    if rows > n {
        return Ok(Vec::new());
    }
    // shape → (content → count)
    let mut states: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, u64>> = BTreeMap::new();
    states
        .entry(vec![0; rows])
        .or_default()
        .insert(Vec::new(), 1);
    for _value in 0..n {
        let mut next: BTreeMap<Vec<usize>, BTreeMap<Vec<usize>, u64>> = BTreeMap::new();
        for (shape, contents) in &states {
            for grown in horizontal_strips(shape, &target) {
                let added: usize = grown.iter().sum::<usize>() - shape.iter().sum::<usize>();
                let slot = next.entry(grown).or_default();
                for (content, count) in contents {
                    let mut c = content.clone();
                    c.push(added);
                    *slot.entry(c).or_default() += count;
                }
            }
        }
        states = next;
    }
    Ok(states
        .remove(&target)
        .map(|m| m.into_iter().collect())
        .unwrap_or_default())
}

/// Shapes `ν'` with `ν ⊆ ν' ⊆ λ` and `ν'/ν` a horizontal strip.
fn horizontal_strips(shape: &[usize], target: &[usize]) -> Vec<Vec<usize>> {
    fn rec(
        j: usize,
        shape: &[usize],
        target: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if j == shape.len() {
            out.push(cur.clone());
            return;
        }
        let hi = if j == 0 {
            target[0]
        } else {
            target[j].min(shape[j - 1])
        };
        for v in shape[j]..=hi {
            cur.push(v);
            rec(j + 1, shape, target, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(
        0,
        shape,
        target,
        &mut Vec::with_capacity(shape.len()),
        &mut out,
    );
    out
}

/// `K_{λμ}` for a single content vector.
pub fn kostka(lambda: &Partition, mu: &[usize]) -> Result<u64> {
    if mu.iter().sum::<usize>() != lambda.size() {
        return Ok(0);
    }
    Ok(ssyt_weights(lambda, mu.len())?
        .into_iter()
        .find(|(c, _)| c == mu)
        .map_or(0, |(_, k)| k))
}
