use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Pow};
use serde::Serialize;

use super::compare::{failing_levels, kostant_compare};
use super::majorize::{check_lengths, ORDER_SLACK};
use crate::error::{Error, Result};
use crate::symchar::{
    complete_homogeneous_exact, complete_homogeneous_ln, rational_to_f64, rep_moduli,
    HomogeneousLnSeq, ModuliVector, RepSpec, DEFAULT_MODULI_CAP,
};

/// Largest symmetric power the witness search will scan to.
pub const MAX_SYM_POWER: u64 = 10_000_000;

/// Exact ties are only re-checked for exponents up to this size.
const EXACT_POWER_LIMIT: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymPowerBound {
    /// Least `m` with `h_m(C) > h_m(D)`.
    pub m_min: u64,
    /// Least `m` with `(c/d)^m > (m+n)^n`.
    pub m_bound: u64,
}

/// Least `m ≥ 1` with `(c/d)^m > (m+n)^n`.
///
/// `m·ln(c/d) − n·ln(m+n)` is convex in `m` and non-positive at `m = 0`, so
/// the set where it is positive is a ray and a bisection finds its start.
/// Float evaluations within `1e-9` of zero are redone in rationals.
pub fn power_bound(c: &BigRational, d: &BigRational, n: usize) -> Result<u64> {
    if c <= d {
        return Err(Error::NotSeparable {
            c: rational_to_f64(c),
            d: rational_to_f64(d),
        });
    }
    let ratio = c / d;
    let ln_r = ln_rational(&ratio);
    let nf = n as f64;
    let holds = |m: u64| -> bool {
        let lhs = m as f64 * ln_r;
        let rhs = nf * (m as f64 + nf).ln();
        if (lhs - rhs).abs() > 1e-9 * lhs.abs().max(1.0) || m > EXACT_POWER_LIMIT {
            return lhs > rhs;
        }
        let base = BigRational::from_integer(BigInt::from(m + n as u64));
        Pow::pow(&ratio, BigInt::from(m)) > Pow::pow(&base, BigInt::from(n))
    };
    let mut hi = 1u64;
    while !holds(hi) {
        if hi > MAX_SYM_POWER {
            return Err(Error::IllConditioned(format!(
                "c/d = 1 + {:.3e} needs a symmetric power beyond {MAX_SYM_POWER}",
                ln_r.exp_m1()
            )));
        }
        hi *= 2;
    }
    let mut lo = hi / 2; // holds(lo) is false, or lo = 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn ln_rational(q: &BigRational) -> f64 {
    // ln p − ln q without overflowing either conversion
    let ln_big = |b: &BigInt| -> f64 {
        let bits = b.bits();
        if bits < 1000 {
            rational_to_f64(&BigRational::from_integer(b.clone())).ln()
        } else {
            let shift = bits - 900;
            rational_to_f64(&BigRational::from_integer(b >> shift)).ln()
                + shift as f64 * std::f64::consts::LN_2
        }
    };
    ln_big(q.numer()) - ln_big(q.denom())
}

fn top_exact(x: &ModuliVector) -> BigRational {
    match x.exact() {
        Some(e) => e[0].clone(),
        None => BigRational::from_f64(x.max()).expect("finite"),
    }
}

/// For positive vectors `C`, `D` with spectral radii `c > d`, the smallest
/// symmetric power whose character separates them, together with the
/// a-priori bound that guarantees separation.
pub fn separating_sym_power(c_vec: &ModuliVector, d_vec: &ModuliVector) -> Result<SymPowerBound> {
    check_lengths(c_vec.len(), d_vec.len())?;
    let n = c_vec.len();
    let m_bound = power_bound(&top_exact(c_vec), &top_exact(d_vec), n)?;
    let mut seq_c = HomogeneousLnSeq::new(c_vec).skip(1);
    let mut seq_d = HomogeneousLnSeq::new(d_vec).skip(1);
    for m in 1..=m_bound {
        let (lc, ld) = (seq_c.next().unwrap(), seq_d.next().unwrap());
        let diff = lc - ld;
        let strict = if diff.abs() > ORDER_SLACK {
            diff > 0.0
        } else if m <= EXACT_POWER_LIMIT {
            let hc = complete_homogeneous_exact(m as usize, &c_vec.exact_or_converted());
            let hd = complete_homogeneous_exact(m as usize, &d_vec.exact_or_converted());
            hc > hd
        } else {
            false
        };
        if strict {
            return Ok(SymPowerBound { m_min: m, m_bound });
        }
    }
    Err(Error::IllConditioned(format!(
        "no separating power found up to m = {m_bound}"
    )))
}

/// Representation `Sym^m ∘ Ext^k` whose character is strictly smaller at
/// `x` than at `y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatingWitness {
    pub k: usize,
    pub m: u64,
    pub spec: RepSpec,
    /// Character at `x`; absent when outside the f64 range.
    pub chi_1: Option<f64>,
    pub chi_2: Option<f64>,
    pub ln_chi_1: f64,
    pub ln_chi_2: f64,
    pub bound_m: u64,
    pub dimension: u128,
}

pub fn find_separating_character(x: &ModuliVector, y: &ModuliVector) -> Result<SeparatingWitness> {
    find_separating_character_capped(x, y, DEFAULT_MODULI_CAP)
}

/// Tries the failing levels `k` from smallest up and returns the first
/// whose witness dimension is within `cap`.
pub fn find_separating_character_capped(
    x: &ModuliVector,
    y: &ModuliVector,
    cap: u128,
) -> Result<SeparatingWitness> {
    check_lengths(x.len(), y.len())?;
    let (x, y) = (x.sl_normalized(), y.sl_normalized());
    if kostant_compare(&x, &y)?.geq() {
        return Err(Error::OrderHolds);
    }
    let n = x.len();
    let mut smallest_over: Option<u128> = None;
    for k in failing_levels(&x, &y) {
        let ext = RepSpec::ext(k);
        let c_vec = rep_moduli(&ext, &y)?;
        let d_vec = rep_moduli(&ext, &x)?;
        let bound = separating_sym_power(&c_vec, &d_vec)?;
        let m = bound.m_min;
        let spec = RepSpec::compose(RepSpec::sym(m as usize), ext);
        let dimension = spec.dim(n)?;
        if dimension > cap {
            smallest_over = Some(smallest_over.map_or(dimension, |d| d.min(dimension)));
            continue;
        }
        let ln_chi_1 = complete_homogeneous_ln(m as usize, &d_vec);
        let ln_chi_2 = complete_homogeneous_ln(m as usize, &c_vec);
        let finite = |l: f64| Some(l.exp()).filter(|v| v.is_finite());
        return Ok(SeparatingWitness {
            k,
            m,
            spec,
            chi_1: finite(ln_chi_1),
            chi_2: finite(ln_chi_2),
            ln_chi_1,
            ln_chi_2,
            bound_m: bound.m_bound,
            dimension,
        });
    }
    Err(Error::DimensionCap {
        dim: smallest_over.unwrap_or(u128::MAX),
        cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(v: &[f64]) -> ModuliVector {
        ModuliVector::new(v.to_vec()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn anchor_ratio_two() {
        // 2^6 = 64 = (6+2)^2 is not strict; 2^7 = 128 > 81
        assert_eq!(power_bound(&q(2), &q(1), 2).unwrap(), 7);
        assert_eq!(power_bound(&q(4), &q(2), 2).unwrap(), 7);
    }

    #[test]
    fn bound_matches_linear_scan() {
        for (c, d, n) in [(3, 1, 2), (5, 4, 3), (9, 2, 6), (101, 100, 2), (2, 1, 20)] {
            let r = c as f64 / d as f64;
            let scan = (1u64..)
                .find(|&m| m as f64 * r.ln() > n as f64 * ((m + n as u64) as f64).ln())
                .unwrap();
            assert_eq!(
                power_bound(&q(c), &q(d), n).unwrap(),
                scan,
                "{c}/{d}, n={n}"
            );
        }
    }

    #[test]
    fn sym_power_examples() {
        let b = separating_sym_power(&mv(&[2.0, 0.5]), &mv(&[1.5, 2.0 / 3.0])).unwrap();
        assert_eq!(b.m_min, 1);
        assert!(b.m_min <= b.m_bound);
        let x = mv(&[2.0, 0.5]);
        assert!(matches!(
            separating_sym_power(&x, &x),
            Err(Error::NotSeparable { .. })
        ));
    }

    #[test]
    fn sym_power_needs_large_m() {
        // h_1 favours D, larger powers favour the bigger top entry of C
        let c = mv(&[2.0, 0.1, 0.1]);
        let d = mv(&[1.9, 1.9, 1.9]);
        let b = separating_sym_power(&c, &d).unwrap();
        assert!(b.m_min > 1 && b.m_min <= b.m_bound);
        let lc = complete_homogeneous_ln(b.m_min as usize, &c);
        let ld = complete_homogeneous_ln(b.m_min as usize, &d);
        assert!(lc > ld);
        let lc = complete_homogeneous_ln(b.m_min as usize - 1, &c);
        let ld = complete_homogeneous_ln(b.m_min as usize - 1, &d);
        assert!(lc <= ld);
    }

    #[test]
    fn witness_examples() {
        let w =
            find_separating_character(&mv(&[4.0, 0.5, 0.5]), &mv(&[3.0, 1.0, 1.0 / 3.0])).unwrap();
        assert_eq!((w.k, w.m), (2, 1));
        assert!((w.chi_1.unwrap() - 4.25).abs() < 1e-12);
        assert!((w.chi_2.unwrap() - 13.0 / 3.0).abs() < 1e-12);
        assert_eq!(w.dimension, 3);

        let w = find_separating_character(&mv(&[2.0, 1.0, 0.5]), &mv(&[4.0, 1.0, 0.25])).unwrap();
        assert_eq!(w.k, 1);
        assert!(w.chi_1.unwrap() < w.chi_2.unwrap());
        assert!(w.m <= w.bound_m);

        assert_eq!(
            find_separating_character(&mv(&[4.0, 1.0, 0.25]), &mv(&[2.0, 1.0, 0.5])).unwrap_err(),
            Error::OrderHolds
        );
    }
}
