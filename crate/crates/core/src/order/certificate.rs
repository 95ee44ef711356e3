use serde::Serialize;

use super::majorize::{
    check_lengths, classify, pair_scale, prefix_levels, Level, LogVector, ORDER_SLACK,
};
use crate::error::{Error, Result};

/// `v ← t·v + (1−t)·(v with coordinates i, j swapped)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TTransformStep {
    pub i: usize,
    pub j: usize,
    pub t: f64,
}

impl TTransformStep {
    pub fn apply(&self, v: &mut [f64]) {
        let (a, b) = (v[self.i], v[self.j]);
        v[self.i] = self.t * a + (1.0 - self.t) * b;
        v[self.j] = self.t * b + (1.0 - self.t) * a;
    }
}

/// Chain of T-transforms carrying `start` to `end`, which proves that `end`
/// lies in the convex hull of the permutations of `start`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TTransformCertificate {
    pub steps: Vec<TTransformStep>,
    pub start: LogVector,
    pub end: LogVector,
}

impl TTransformCertificate {
    pub fn replay(&self) -> Vec<f64> {
        let mut v = self.start.values().to_vec();
        for s in &self.steps {
            s.apply(&mut v);
        }
        v
    }

    /// Largest coordinate error of the replay against `end`.
    pub fn replay_error(&self) -> f64 {
        self.replay()
            .iter()
            .zip(self.end.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Step count at most `n − 1`, each `t ∈ [0, 1]`, and the replay lands
    /// on `end` within `tol` relative to the largest coordinate.
    pub fn verify(&self, tol: f64) -> bool {
        let n = self.start.len();
        let scale = self
            .start
            .values()
            .iter()
            .chain(self.end.values())
            .fold(1.0f64, |m, v| m.max(v.abs()));
        self.steps.len() < n.max(1)
            && self
                .steps
                .iter()
                .all(|s| (0.0..=1.0).contains(&s.t) && s.i < n && s.j < n)
            && self.replay_error() <= tol * scale
    }
}

/// The linear functional `v ↦ Σ_{i<k} v_i`: on the hull of the permutations
/// of `x` it is at most the top-`k` sum of `x`, and at `y` it exceeds that
/// bound by `margin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparatingFunctional {
    pub k: usize,
    pub margin: f64,
}

impl SeparatingFunctional {
    pub fn evaluate(&self, v: &[f64]) -> f64 {
        v[..self.k].iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HullCertificate {
    Member(TTransformCertificate),
    Separated(SeparatingFunctional),
}

/// Decides whether `y` lies in the permutohedron of `x` and returns the
/// proof either way.
pub fn permutohedron_certificate(x: &LogVector, y: &LogVector) -> Result<HullCertificate> {
    check_lengths(x.len(), y.len())?;
    let n = x.len();
    let (levels, diffs) = prefix_levels(x, y);
    if levels[n - 1] != Level::Tie {
        return Err(Error::SumMismatch {
            difference: diffs[n - 1],
        });
    }
    if let Some(pos) = levels[..n - 1].iter().position(|l| *l == Level::Below) {
        return Ok(HullCertificate::Separated(SeparatingFunctional {
            k: pos + 1,
            margin: -diffs[pos],
        }));
    }
    let target = y.values();
    let scale = pair_scale(x, y);
    let mut v = x.values().to_vec();
    let mut steps = Vec::new();
    let above = |a: f64, b: f64| classify(a - b, scale) == Level::Above;
    // each step fixes one more coordinate, so at most n − 1 are needed
    while steps.len() < n {
        let Some(j) = (0..n).rev().find(|&i| above(v[i], target[i])) else {
            break;
        };
        let Some(k) = (j + 1..n).find(|&i| above(target[i], v[i])) else {
            break;
        };
        let (down, up) = (v[j] - target[j], target[k] - v[k]);
        let delta = down.min(up);
        let t = 1.0 - delta / (v[j] - v[k]);
        if down <= up {
            v[k] += down;
            v[j] = target[j];
        } else {
            v[j] -= up;
            v[k] = target[k];
        }
        steps.push(TTransformStep {
            i: j,
            j: k,
            t: t.clamp(0.0, 1.0),
        });
    }
    debug_assert!(v
        .iter()
        .zip(target)
        .all(|(a, b)| (a - b).abs() <= 2.0 * ORDER_SLACK * scale.max(1.0)));
    Ok(HullCertificate::Member(TTransformCertificate {
        steps,
        start: x.clone(),
        end: y.clone(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[f64]) -> LogVector {
        LogVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn identical_vectors_need_no_steps() {
        let x = lv(&[1.0, 0.0, -1.0]);
        match permutohedron_certificate(&x, &x).unwrap() {
            HullCertificate::Member(c) => {
                assert!(c.steps.is_empty());
                assert!(c.verify(1e-12));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contraction_certificate_replays() {
        let c = permutohedron_certificate(&lv(&[1.0, 0.0, -1.0]), &lv(&[0.5, 0.0, -0.5])).unwrap();
        let HullCertificate::Member(c) = c else {
            panic!()
        };
        assert!(!c.steps.is_empty() && c.steps.len() <= 2);
        assert!(c.verify(1e-12));
    }

    #[test]
    fn longer_chain() {
        let x = lv(&[3.0, 1.0, 0.0, -1.0, -3.0]);
        let y = lv(&[1.2, 0.9, 0.0, -0.7, -1.4]);
        let HullCertificate::Member(c) = permutohedron_certificate(&x, &y).unwrap() else {
            panic!()
        };
        assert!(c.steps.len() <= 4);
        assert!(c.verify(1e-12), "{:?} vs {:?}", c.replay(), y);
    }

    #[test]
    fn separating_functional_example() {
        let x = lv(&[2.0, 0.0, -2.0]);
        let y = lv(&[1.5, 1.5, -3.0]);
        let HullCertificate::Separated(f) = permutohedron_certificate(&x, &y).unwrap() else {
            panic!()
        };
        assert_eq!(f.k, 2);
        assert!((f.margin - 1.0).abs() < 1e-15);
        assert!((f.evaluate(y.values()) - f.evaluate(x.values()) - f.margin).abs() < 1e-15);
    }

    #[test]
    fn unequal_totals_rejected() {
        assert!(matches!(
            permutohedron_certificate(&lv(&[1.0, 0.0]), &lv(&[1.0, 1.0])),
            Err(Error::SumMismatch { .. })
        ));
    }
}
