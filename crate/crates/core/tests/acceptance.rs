//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use rand::Rng;

use common::*;
use kostant_core::cmjd::{cmjd, unipotent_log, unipotent_log_exact};
use kostant_core::linalg::{eigen_spectrum, exp_nilpotent, mat_exp, ComplexMatrix, ExactMatrix};
use kostant_core::order::{
    check_topk, find_separating_character, kostant_compare, majorize_multiplicative, majorize_weak,
    permutohedron_certificate, power_bound, separating_sym_power, HullCertificate, LogVector,
};
use kostant_core::sample::{self, random_sl_matrix, SampleRng};
use kostant_core::symchar::{
    complete_homogeneous_exact, rep_matrix, rep_moduli, schur, schur_exact, spectral_radius_rep,
    ModuliVector, Partition, RepSpec,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: usize, cases: usize, extra: String) -> Outcome {
    Outcome {
        pass: failures == 0 && cases > 0,
        detail: format!("{failures} failures in {cases} cases; {extra}"),
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

fn criterion_1() -> Outcome {
    let mut rng = sample::rng(1001);
    let (mut failures, mut worst) = (0, 0.0f64);
    for i in 0..500 {
        let n = 2 + i % 7;
        let (g, _) = random_sl_matrix(&mut rng, n, 1e6);
        let bound = 1e-8 * g.norm();
        match cmjd(&g, 1e-8) {
            Ok(t) => {
                let recon = t.e.matmul(&t.h).matmul(&t.u).dist(&g);
                let comm =
                    t.e.commutator(&t.h)
                        .norm()
                        .max(t.e.commutator(&t.u).norm())
                        .max(t.h.commutator(&t.u).norm());
                let unip = t.u.sub(&ComplexMatrix::identity(n)).pow(n as u32).norm();
                let r = recon.max(comm).max(unip);
                worst = worst.max(r / g.norm());
                if r > bound {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    outcome(failures, 500, format!("worst residual/‖g‖ = {worst:.2e}"))
}

fn criterion_2() -> Outcome {
    let mut rng = sample::rng(1002);
    let (mut failures, mut worst) = (0, 0.0f64);
    for i in 0..200 {
        let n = 2 + i % 7;
        let u = sample::random_unipotent(&mut rng, n);
        match unipotent_log(&u, 1e-8) {
            Ok(y) => {
                let err = mat_exp(&y).dist(&u);
                worst = worst.max(err);
                if err > 1e-10 {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    let mut exact_failures = 0;
    for i in 0..40 {
        let n = 2 + i % 7;
        let u: ExactMatrix = sample::random_unipotent_exact(&mut rng, n);
        match unipotent_log_exact(&u) {
            Ok(y) if y.pow(n as u32).is_zero_matrix() && exp_nilpotent(&y) == u => {}
            _ => exact_failures += 1,
        }
    }
    outcome(
        failures + exact_failures,
        240,
        format!("worst ‖exp(log u) − u‖ = {worst:.2e}; exact Yⁿ = 0 failures {exact_failures}/40"),
    )
}

fn random_rationals(rng: &mut SampleRng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| q(rng.gen_range(1..=12), rng.gen_range(1..=5)))
        .collect()
}

fn criterion_3() -> Outcome {
    let mut rng = sample::rng(1003);
    let (mut failures, mut cases) = (0, 0);
    for n in 1..=4 {
        for _ in 0..3 {
            let x = random_rationals(&mut rng, n);
            for m in 0..=6 {
                cases += 1;
                let (brute, count) = brute_h(m, &x);
                let expected_count = binomial((m + n - 1) as u64, (n - 1) as u64);
                if complete_homogeneous_exact(m, &x) != brute
                    || BigInt::from(count) != expected_count
                {
                    failures += 1;
                }
            }
            let mv = ModuliVector::from_exact(x.clone()).unwrap();
            for size in 0..=5 {
                for lambda in Partition::all(size, n) {
                    cases += 1;
                    let brute = brute_schur(lambda.parts(), &x);
                    let exact = schur_exact(&lambda, &x).unwrap();
                    let via_vector = schur(&lambda, &mv).unwrap();
                    if exact != brute || !rel_close(via_vector, brute.to_f64().unwrap(), 1e-15) {
                        failures += 1;
                    }
                }
            }
        }
    }
    outcome(
        failures,
        cases,
        "exact comparison against monomial and tableau enumeration".into(),
    )
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    let b = binomial(n, k);
    let bits = b.bits();
    if bits < 1000 {
        b.to_f64().unwrap().ln()
    } else {
        (b >> (bits - 900)).to_f64().unwrap().ln() + (bits - 900) as f64 * std::f64::consts::LN_2
    }
}

fn criterion_4() -> Outcome {
    let mut rng = sample::rng(1004);
    let mut failures = 0;
    let mut largest = 0;
    let mut cases = 0;
    while cases < 100 {
        let n = rng.gen_range(2..=6);
        let a = random_rationals(&mut rng, n);
        let b = random_rationals(&mut rng, n);
        let (c_vec, d_vec) = match a.iter().max().cmp(&b.iter().max()) {
            std::cmp::Ordering::Greater => (a, b),
            std::cmp::Ordering::Less => (b, a),
            std::cmp::Ordering::Equal => continue,
        };
        cases += 1;
        let c = c_vec.iter().max().unwrap().clone();
        let d = d_vec.iter().max().unwrap().clone();
        let cv = ModuliVector::from_exact(c_vec.clone()).unwrap();
        let dv = ModuliVector::from_exact(d_vec.clone()).unwrap();
        let Ok(bound) = separating_sym_power(&cv, &dv) else {
            failures += 1;
            continue;
        };
        let m = bound.m_bound;
        largest = largest.max(m);
        let ratio = &c / &d;
        let lhs = |m: u64| Pow::pow(&ratio, BigInt::from(m));
        let rhs = |m: u64| BigRational::from_integer(BigInt::from(m + n as u64)).pow(n as i32);
        let bound_holds = lhs(m) > rhs(m) && lhs(m - 1) <= rhs(m - 1);
        let fc: Vec<f64> = c_vec.iter().map(|v| v.to_f64().unwrap()).collect();
        let fd: Vec<f64> = d_vec.iter().map(|v| v.to_f64().unwrap()).collect();
        let separates = newton_ln_h(m as usize, &fc) > newton_ln_h(m as usize, &fd);
        let (lc, ld) = (c.to_f64().unwrap().ln(), d.to_f64().unwrap().ln());
        let mf = m as f64;
        let chain = mf * lc > n as f64 * (mf + n as f64).ln() + mf * ld
            && n as f64 * (mf + n as f64).ln() > ln_binomial(m + n as u64 - 1, n as u64 - 1);
        let min_ok = bound.m_min <= m
            && newton_ln_h(bound.m_min as usize, &fc) > newton_ln_h(bound.m_min as usize, &fd);
        if !(bound_holds && separates && chain && min_ok) {
            failures += 1;
        }
    }
    let anchor = power_bound(&q(2, 1), &q(1, 1), 2).ok();
    let anchor_vec = separating_sym_power(
        &ModuliVector::from_exact(vec![q(2, 1), q(1, 2)]).unwrap(),
        &ModuliVector::from_exact(vec![q(1, 1), q(1, 1)]).unwrap(),
    )
    .ok()
    .map(|b| b.m_bound);
    if anchor != Some(7) || anchor_vec != Some(7) {
        failures += 1;
    }
    outcome(
        failures,
        cases + 1,
        format!("anchor m_bound = {anchor:?}; largest m_bound {largest}"),
    )
}

/// `y = D·x` for a strictly positive doubly stochastic `D`, which puts `y`
/// in the relative interior of the permutohedron of `x`.
fn interior_point(rng: &mut SampleRng, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mean = x.iter().sum::<f64>() / n as f64;
    let eps: f64 = rng.gen_range(0.01..0.3);
    let mut y = vec![eps * mean; n];
    let mut weights: Vec<f64> = (0..n + 2).map(|_| rng.gen::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w *= (1.0 - eps) / total);
    for w in weights {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        for i in 0..n {
            y[i] += w * x[perm[i]];
        }
    }
    y
}

fn criterion_5() -> Outcome {
    let mut rng = sample::rng(1005);
    let (mut failures, mut geq, mut hull_checked) = (0, 0, 0);
    for i in 0..1000 {
        let n = 2 + i % 5;
        let x = sample::random_sl_moduli(&mut rng, n, 2.0);
        let y = if i % 2 == 0 {
            sample::random_sl_moduli(&mut rng, n, 2.0)
        } else {
            let ly = interior_point(&mut rng, &x.log_values());
            ModuliVector::new(ly.iter().map(|v| v.exp()).collect()).unwrap()
        };
        let verdict = kostant_compare(&x, &y).unwrap();
        if verdict.geq() {
            geq += 1;
        }
        let radius_test = (1..=n).all(|k| {
            let (a, b) = (
                spectral_radius_rep(&RepSpec::ext(k), &x).unwrap(),
                spectral_radius_rep(&RepSpec::ext(k), &y).unwrap(),
            );
            a >= b * (1.0 - 1e-10)
        });
        let mut ok = radius_test == verdict.geq();
        if n <= 4 {
            hull_checked += 1;
            let lx = LogVector::from_moduli(&x).centered();
            let ly = LogVector::from_moduli(&y).centered();
            let inside = hull_contains(lx.values(), ly.values());
            ok &= inside == verdict.geq();
            ok &= match permutohedron_certificate(&lx, &ly) {
                Ok(HullCertificate::Member(c)) => inside && c.verify(1e-12),
                Ok(HullCertificate::Separated(f)) => {
                    let at_y = f.evaluate(ly.values());
                    let best = vertices(lx.values())
                        .iter()
                        .map(|v| f.evaluate(v))
                        .fold(f64::NEG_INFINITY, f64::max);
                    !inside && f.margin > 0.0 && rel_close(at_y - best, f.margin, 1e-12)
                }
                Err(_) => false,
            };
        }
        if !ok {
            failures += 1;
        }
    }
    outcome(
        failures,
        1000,
        format!("{geq} dominated; {hull_checked} checked against the hull"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = sample::rng(1006);
    let (mut failures, mut comparisons, mut exact_ties) = (0, 0, 0);
    for i in 0..200 {
        let n = 2 + i % 4;
        let (x, y) = if i % 2 == 0 {
            sample::exact_dominated_pair(&mut rng, n)
        } else {
            sample::dominated_pair(&mut rng, n, 1.5)
        };
        if !kostant_compare(&x, &y).unwrap().geq() {
            failures += 1;
            continue;
        }
        for size in 1..=8 {
            for lambda in Partition::all(size, n) {
                comparisons += 1;
                if let (Some(ex), Some(ey)) = (x.exact(), y.exact()) {
                    let (sx, sy) = (
                        schur_exact(&lambda, ex).unwrap(),
                        schur_exact(&lambda, ey).unwrap(),
                    );
                    if sx == sy {
                        exact_ties += 1;
                    }
                    if sx < sy {
                        failures += 1;
                    }
                } else {
                    let (sx, sy) = (schur(&lambda, &x).unwrap(), schur(&lambda, &y).unwrap());
                    if sx < sy * (1.0 - 1e-12) {
                        failures += 1;
                    }
                }
            }
        }
    }
    outcome(failures, comparisons, format!("{exact_ties} exact ties"))
}

/// Whether some `Compose(Sym(m), Ext(k))` with `x_k` failing separates the
/// pair within `cap`, by oracle scan over `m` until the dimension exceeds it.
fn witness_within_cap(xs: &[f64], ys: &[f64], cap: u64) -> bool {
    let n = xs.len();
    let top = |v: &[f64], k: usize| v[..k].iter().map(|a| a.ln()).sum::<f64>();
    (1..n).filter(|&k| top(xs, k) < top(ys, k)).any(|k| {
        let big_n = binomial(n as u64, k as u64).to_u64().unwrap();
        let (d_vec, c_vec) = (brute_ext_moduli(xs, k), brute_ext_moduli(ys, k));
        (1u64..)
            .take_while(|&m| binomial(m + big_n - 1, m) <= BigInt::from(cap))
            .any(|m| newton_ln_h(m as usize, &d_vec) < newton_ln_h(m as usize, &c_vec))
    })
}

fn criterion_7() -> Outcome {
    let mut rng = sample::rng(1007);
    let (mut failures, mut over_cap, mut largest_m, mut largest_dim) = (0, 0, 0, 0u128);
    for i in 0..200 {
        let n = 2 + i % 5;
        let (x, y) = sample::non_dominated_pair(&mut rng, n, 1.5);
        let (xs, ys) = (x.values(), y.values());
        let w = match find_separating_character(&x, &y) {
            Ok(w) => w,
            Err(kostant_core::Error::DimensionCap { .. }) => {
                failures += 1;
                if !witness_within_cap(xs, ys, 1_000_000) {
                    over_cap += 1;
                }
                continue;
            }
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let top = |v: &[f64], k: usize| v[..k].iter().map(|a| a.ln()).sum::<f64>();
        let k = w.k;
        let level_fails = top(xs, k) < top(ys, k);
        let big_n = binomial(n as u64, k as u64).to_u64().unwrap();
        let c_vec = brute_ext_moduli(ys, k);
        let d_vec = brute_ext_moduli(xs, k);
        let m = w.m as usize;
        let (l1, l2) = (newton_ln_h(m, &d_vec), newton_ln_h(m, &c_vec));
        let strict = l1 < l2
            && w.ln_chi_1 < w.ln_chi_2
            && rel_close(l1, w.ln_chi_1, 1e-10)
            && rel_close(l2, w.ln_chi_2, 1e-10);
        let chi_ok = match (w.chi_1, w.chi_2) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        };
        let ln_r = top(ys, k) - top(xs, k);
        let pb = w.bound_m as f64;
        let nf = big_n as f64;
        let bound_ok = pb * ln_r > nf * (pb + nf).ln() - 1e-9
            && (pb - 1.0) * ln_r <= nf * (pb - 1.0 + nf).ln() + 1e-9;
        let dim = binomial(m as u64 + big_n - 1, m as u64);
        let dim_ok = dim <= BigInt::from(1_000_000u64) && dim == BigInt::from(w.dimension);
        let spec_ok = w.spec == RepSpec::compose(RepSpec::sym(m), RepSpec::ext(k));
        largest_m = largest_m.max(w.m);
        largest_dim = largest_dim.max(w.dimension);
        if !(level_fails && strict && chi_ok && w.m <= w.bound_m && bound_ok && dim_ok && spec_ok) {
            failures += 1;
        }
    }
    outcome(
        failures,
        200,
        format!(
            "{over_cap} near-tie pairs have no Sym(m)∘Ext(k) witness of dimension ≤ 1e6 (oracle scan); \
             largest m {largest_m}; largest dimension {largest_dim}"
        ),
    )
}

fn oracle_moduli(spec: &RepSpec, x: &[f64]) -> Vec<f64> {
    match spec {
        RepSpec::Sym(m) => brute_sym_moduli(x, *m),
        RepSpec::Ext(k) => brute_ext_moduli(x, *k),
        RepSpec::Schur(l) => brute_schur_moduli(x, l.parts()),
        _ => unreachable!(),
    }
}

fn criterion_8() -> Outcome {
    let mut rng = sample::rng(1008);
    let (mut failures, mut checks) = (0, 0);
    for i in 0..100 {
        let n = 2 + i % 4;
        let (x, y) = sample::dominated_pair(&mut rng, n, 1.5);
        let mut specs: Vec<RepSpec> = (1..=4).map(RepSpec::sym).collect();
        specs.extend((1..=n).map(RepSpec::ext));
        for size in 1..=6 {
            specs.extend(Partition::all(size, n).into_iter().map(RepSpec::Schur));
        }
        for spec in &specs {
            checks += 1;
            let big_x = oracle_moduli(spec, x.values());
            let big_y = oracle_moduli(spec, y.values());
            let lib_x = rep_moduli(spec, &x).unwrap();
            let mut ok = lib_x.values().len() == big_x.len()
                && lib_x
                    .values()
                    .iter()
                    .zip(&big_x)
                    .all(|(a, b)| rel_close(*a, *b, 1e-12));
            let ln_scale = big_x
                .iter()
                .chain(&big_y)
                .map(|v| v.ln().abs())
                .sum::<f64>()
                .max(1.0);
            let sum_scale = big_x.iter().sum::<f64>();
            let (mut pl, mut ps) = (0.0, 0.0);
            for (a, b) in big_x.iter().zip(&big_y) {
                pl += a.ln() - b.ln();
                ps += a - b;
                ok &= pl >= -1e-10 * ln_scale && ps >= -1e-10 * sum_scale;
            }
            let prod_x: f64 = big_x.iter().product();
            let prod_y: f64 = big_y.iter().product();
            ok &= (prod_x - 1.0).abs() <= 1e-10 && (prod_y - 1.0).abs() <= 1e-10;
            ok &= check_topk(&x, &y, spec).map(|r| r.pass).unwrap_or(false);
            if !ok {
                failures += 1;
            }
        }
    }
    outcome(
        failures,
        checks,
        "top-k products and sums over Sym, Ext and Schur specs".into(),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = sample::rng(1009);
    let (mut failures, mut worst) = (0, 0.0f64);
    let specs = [RepSpec::sym(2), RepSpec::sym(3), RepSpec::ext(2)];
    for i in 0..100 {
        let n = 2 + i % 3;
        let spec = &specs[i % 3];
        let (g, _) = random_sl_matrix(&mut rng, n, 1e3);
        let result = (|| -> kostant_core::Result<f64> {
            let pi = rep_matrix(spec, &g)?;
            let t = cmjd(&pi, 1e-8)?;
            let mut h_spec: Vec<f64> = eigen_spectrum(&t.h, 0.0)?
                .eigenvalues()
                .iter()
                .map(|z| z.norm())
                .collect();
            h_spec.sort_by(|a, b| b.total_cmp(a));
            let moduli = ModuliVector::new(eigen_spectrum(&g, 1e-8)?.moduli())?;
            let expected = rep_moduli(spec, &moduli)?;
            if expected.len() != h_spec.len() {
                return Ok(f64::INFINITY);
            }
            Ok(h_spec
                .iter()
                .zip(expected.values())
                .map(|(a, b)| (a - b).abs() / b.max(1.0))
                .fold(0.0, f64::max))
        })();
        match result {
            Ok(err) => {
                worst = worst.max(err);
                if err > 1e-7 {
                    failures += 1;
                }
            }
            Err(_) => failures += 1,
        }
    }
    outcome(
        failures,
        100,
        format!("worst multiset deviation {worst:.2e}"),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = sample::rng(1010);
    let (mut failures, mut equal_totals) = (0, 0);
    let mut cases = 0;
    while cases < 1000 {
        let n = rng.gen_range(2..=8);
        let lx: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let ly = sample::random_t_transforms(&mut rng, &lx, n);
        let x = ModuliVector::new(lx.iter().map(|v| v.exp()).collect()).unwrap();
        let y = ModuliVector::new(ly.iter().map(|v| v.exp()).collect()).unwrap();
        if !majorize_multiplicative(&x, &y).unwrap() {
            continue;
        }
        cases += 1;
        let raw_x = LogVector::new(x.values().to_vec()).unwrap();
        let raw_y = LogVector::new(y.values().to_vec()).unwrap();
        let mut direct = true;
        let (mut sx, mut sy) = (0.0, 0.0);
        for (a, b) in x.values().iter().zip(y.values()) {
            sx += a;
            sy += b;
            direct &= sx >= sy - 1e-12 * sx;
        }
        if (sx - sy).abs() <= 1e-10 * sx {
            equal_totals += 1;
        }
        if !(majorize_weak(&raw_x, &raw_y).unwrap() && direct) {
            failures += 1;
        }
    }
    outcome(
        failures,
        cases,
        format!("weak additive majorization; totals equal in {equal_totals} cases"),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<f64>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("CMJD round-trip", criterion_1, Some(60.0)),
        ("unipotent log", criterion_2, None),
        ("character oracles", criterion_3, None),
        ("symmetric power bound", criterion_4, None),
        ("order equivalence", criterion_5, None),
        ("character monotonicity", criterion_6, None),
        ("separating characters", criterion_7, Some(120.0)),
        ("top-k inequalities", criterion_8, None),
        ("decomposition of representations", criterion_9, None),
        ("multiplicative implies additive", criterion_10, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| Outcome {
            pass: false,
            detail: format!(
                "panicked: {}",
                p.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            ),
        });
        let secs = start.elapsed().as_secs_f64();
        let in_time = limit.is_none_or(|l| secs <= l);
        let pass = result.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {name}: {} ({secs:.1}s{})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            limit.map_or(String::new(), |l| format!(", limit {l:.0}s"))
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
