//! Fixtures, oracles and property checks shared by the integration tests.
#![allow(dead_code)]

use dplct::germ::{
    lct_igusa, lct_newton, lct_weighted, newton_data, Chart, ElimSolution, GermDivisor, PlaneGerm, DEFAULT_MAX_ITER,
};
use dplct::rational::{q, qi, Q};
use dplct::singular::{canonical_type, elimination_variables};
use dplct::surface::strata_quasismooth;
use dplct::table::{instances, Dataset, RowInstance};
use dplct::weights::{
    degree_pairing, generic_quasismooth, generic_support, is_del_pezzo, k_squared, monomials_of_degree, Exp,
    Quasismoothness, Quintuple,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed, TestCaseError, TestRunner};
use std::collections::BTreeMap;

/// Fixed seed so every run checks the same cases.
pub const SEED: u64 = 0x05ee_d1c7;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

/// Runs `test` on `cases` inputs drawn from `strategy`; the failure message on error.
pub fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config(cases)).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn germ(terms: &[((u32, u32), i64)]) -> PlaneGerm {
    PlaneGerm::from_terms(terms.iter().map(|&(m, c)| (m, qi(c))), None).unwrap()
}

/// Local equations of the plane cubics with their thresholds.
pub fn cubic_fixtures() -> Vec<(&'static str, PlaneGerm, Q)> {
    vec![
        ("smooth point", germ(&[((0, 1), 1), ((3, 0), 1)]), qi(1)),
        ("ordinary double point", germ(&[((1, 1), 1), ((3, 0), 1), ((0, 3), 1)]), qi(1)),
        ("cusp", germ(&[((0, 2), 1), ((3, 0), 1)]), q(5, 6)),
        ("conic and tangent line", germ(&[((0, 2), 1), ((2, 1), -1)]), q(3, 4)),
        ("three concurrent lines", germ(&[((2, 1), 1), ((1, 2), 1)]), q(2, 3)),
        ("double line and line", germ(&[((2, 1), 1)]), q(1, 2)),
        ("triple line", germ(&[((3, 0), 1)]), q(1, 3)),
    ]
}

/// `u^n1 v^n2 (u^m1 + v^m2)`, or `None` for a unit.
pub fn igusa_germ(n1: u32, n2: u32, m1: u32, m2: u32) -> Option<PlaneGerm> {
    let mut t = BTreeMap::new();
    t.insert((n1 + m1, n2), qi(1));
    *t.entry((n1, n2 + m2)).or_insert_with(|| qi(0)) += qi(1);
    t.retain(|_, c| *c != qi(0));
    if t.contains_key(&(0, 0)) {
        return None;
    }
    Some(PlaneGerm::new(t, None).unwrap())
}

/// Compares the polygon engine with the closed form on the full grid;
/// returns the number of germs and the disagreements.
pub fn igusa_grid() -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n1 in 0..=5 {
        for n2 in 0..=5 {
            for m1 in 0..=6 {
                for m2 in 0..=6 {
                    if m1 + m2 == 0 {
                        continue;
                    }
                    checked += 1;
                    let want = lct_igusa(n1 as u64, n2 as u64, m1 as u64, m2 as u64);
                    let got = match igusa_germ(n1, n2, m1, m2) {
                        None => Ok(qi(1)),
                        Some(g) => lct_newton(&g, DEFAULT_MAX_ITER).map(|c| c.value),
                    };
                    if got.as_ref() != Ok(&want) {
                        bad.push(format!("({n1},{n2},{m1},{m2}): want {want}, got {got:?}"));
                    }
                }
            }
        }
    }
    (checked, bad)
}

pub fn bundled_instances(n: std::ops::RangeInclusive<i64>) -> Vec<RowInstance> {
    instances(&Dataset::bundled(), n).unwrap()
}

/// Back-substitution residual of every vertex chart of every branch
/// polynomial; returns the number of charts solved and the failures.
pub fn elimination_residuals(insts: &[RowInstance]) -> (usize, Vec<String>) {
    let mut solved = 0;
    let mut bad = Vec::new();
    for inst in insts {
        let q = &inst.quintuple;
        let trunc = (4 * (q.degree() / q.weight(0))).min(12) as u32;
        for k in 0..inst.branches.len() {
            let poly = inst.polynomial(k).unwrap();
            let f = poly.concrete_terms().unwrap();
            let support = poly.support();
            for i in 0..4 {
                if support.has_pure_power(i) {
                    continue;
                }
                for j in elimination_variables(&support, i) {
                    let chart = Chart::vertex(i, j);
                    match ElimSolution::solve(&f, &chart, trunc) {
                        Ok(sol) if sol.residual().is_empty() => solved += 1,
                        Ok(sol) => bad.push(format!("{} O_{i} x_{j}: residual {:?}", inst.display_name(), sol.residual())),
                        Err(e) => bad.push(format!("{} O_{i} x_{j}: {e}", inst.display_name())),
                    }
                }
            }
        }
    }
    (solved, bad)
}

/// Quasismoothness of a general member, from first principles: every
/// coordinate subset `S` carries a monomial of degree `d` in `S` alone, or
/// admits an injection `s ↦ e(s) ∉ S` with monomials `x_S^M · x_e(s)`.
pub fn brute_quasismooth(q: &Quintuple) -> bool {
    let a = q.weights();
    let d = q.degree();
    // Nonzero exponent vectors on `s` of weighted degree `target`.
    let lives_on = |s: &[usize], target: u64| -> bool {
        let mut stack = vec![(0usize, 0u64, false)];
        while let Some((k, acc, nonzero)) = stack.pop() {
            if k == s.len() {
                if acc == target && nonzero {
                    return true;
                }
                continue;
            }
            let mut e = 0u64;
            while acc + e * a[s[k]] <= target {
                stack.push((k + 1, acc + e * a[s[k]], nonzero || e > 0));
                e += 1;
            }
        }
        false
    };
    for mask in 1u32..16 {
        let s: Vec<usize> = (0..4).filter(|i| mask & (1 << i) != 0).collect();
        if lives_on(&s, d) {
            continue;
        }
        let outs: Vec<usize> = (0..4).filter(|e| !s.contains(e) && d > a[*e] && lives_on(&s, d - a[*e])).collect();
        // Distinct targets for all of S: with this many outside variables,
        // an injection exists iff there are at least |S| of them.
        if outs.len() < s.len() {
            return false;
        }
    }
    true
}

pub fn arb_quintuple() -> impl Strategy<Value = Quintuple> {
    (prop::array::uniform4(1u64..=12), 1u64..=40).prop_map(|(w, d)| Quintuple::new(w, d).unwrap())
}

/// Checks the combinatorial test against the brute-force oracle and, with
/// random coefficients, against the concrete test on vertices and edges.
pub fn check_quasismooth_oracle(q: Quintuple, seed: u64) -> Result<(), TestCaseError> {
    let support = generic_support(&q);
    prop_assume!(!support.is_empty());
    let Ok(verdict) = generic_quasismooth(&q, &support) else {
        return Ok(());
    };
    prop_assert_eq!(verdict == Quasismoothness::Ok, brute_quasismooth(&q), "{}", q);
    let f: BTreeMap<Exp, Q> =
        support.iter().enumerate().map(|(k, e)| (*e, qi(coefficient(seed, k as u64)))).collect();
    let concrete = strata_quasismooth(&f).is_ok();
    match verdict {
        Quasismoothness::Ok => prop_assert!(concrete, "{} generic but not concrete", q),
        // Failures on a vertex or edge are visible to the concrete test.
        Quasismoothness::Fail(s) if s.len() <= 2 => prop_assert!(!concrete, "{} fails on {:?}", q, s),
        Quasismoothness::Fail(_) => {}
    }
    Ok(())
}

/// Nonzero coefficient in `[-10^6, 10^6]` for the `k`-th monomial (splitmix64).
pub fn coefficient(seed: u64, k: u64) -> i64 {
    let mut z = seed.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    let m = (z % 1_000_000) as i64 + 1;
    if z & (1 << 40) == 0 { m } else { -m }
}

pub fn check_pairing(q: Quintuple) -> Result<(), TestCaseError> {
    let sum: u64 = q.weights().iter().sum();
    prop_assume!(q.degree() < sum);
    let i = q.fano_index() as u64;
    prop_assert_eq!(k_squared(&q), degree_pairing(&q, i, i));
    prop_assert_eq!(k_squared(&q) > qi(0), is_del_pezzo(&q));
    Ok(())
}

pub fn check_degree_scaling(w: [u64; 4], d: u64, lambda: u64) -> Result<(), TestCaseError> {
    let scaled: [u64; 4] = w.map(|a| a * lambda);
    prop_assert_eq!(monomials_of_degree(scaled, d * lambda), monomials_of_degree(w, d));
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `(r, b1, b2, λ)` with `b1, b2, λ` units mod `r`.
pub fn arb_quotient() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (2i64..=200)
        .prop_flat_map(|r| (Just(r), 1..r, 1..r, 1..r))
        .prop_filter("units", |&(r, b1, b2, l)| gcd(r, b1) == 1 && gcd(r, b2) == 1 && gcd(r, l) == 1)
}

pub fn check_canonical_type((r, b1, b2, l): (i64, i64, i64, i64)) -> Result<(), TestCaseError> {
    let t = canonical_type(r, b1, b2).unwrap();
    let (one, b) = t.weights_pair();
    prop_assert_eq!(canonical_type(r, one as i64, b as i64).unwrap(), t);
    prop_assert_eq!(canonical_type(r, l * b1, l * b2).unwrap(), t);
    prop_assert_eq!(canonical_type(r, b2, b1).unwrap(), t);
    prop_assert_eq!(t.order(), r as u64);
    Ok(())
}

/// Random germs: up to six support points, small nonzero coefficients.
pub fn arb_germ() -> impl Strategy<Value = PlaneGerm> {
    prop::collection::btree_map((0u32..=7, 0u32..=7), prop_oneof![-5i64..=-1, 1i64..=5], 1..=6).prop_filter_map(
        "vanishes at the origin",
        |m| {
            if m.contains_key(&(0, 0)) {
                return None;
            }
            PlaneGerm::new(m.into_iter().map(|(k, c)| (k, qi(c))).collect(), None).ok()
        },
    )
}

pub fn arb_positive_q() -> impl Strategy<Value = Q> {
    (1i64..=30, 1i64..=30).prop_map(|(n, d)| q(n, d))
}

pub fn check_scaling(g: PlaneGerm, lambda: Q, mu: Q) -> Result<(), TestCaseError> {
    let one = lct_weighted(&GermDivisor::single(g.clone(), lambda.clone()).unwrap(), DEFAULT_MAX_ITER);
    let two = lct_weighted(&GermDivisor::single(g, &lambda * &mu).unwrap(), DEFAULT_MAX_ITER);
    match (one, two) {
        (Ok(a), Ok(b)) => prop_assert_eq!(b.value, a.value / mu),
        (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
    }
    Ok(())
}

pub fn check_symmetry(g: PlaneGerm) -> Result<(), TestCaseError> {
    let a = lct_newton(&g, DEFAULT_MAX_ITER);
    let b = lct_newton(&g.swapped(), DEFAULT_MAX_ITER);
    match (a, b) {
        (Ok(a), Ok(b)) => prop_assert_eq!(a.value, b.value),
        (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
    }
    Ok(())
}

/// `1/mult ≤ lct ≤ min(1, 2/mult)`.
pub fn check_mult_bound(g: PlaneGerm) -> Result<(), TestCaseError> {
    let Ok(c) = lct_newton(&g, DEFAULT_MAX_ITER) else {
        return Ok(());
    };
    let m = Q::from_integer(g.multiplicity().into());
    prop_assert!(c.value >= m.recip());
    prop_assert!(c.value <= (qi(2) / &m).min(qi(1)));
    Ok(())
}

pub fn check_polygon_monotone(g: PlaneGerm, extra: (u32, u32)) -> Result<(), TestCaseError> {
    prop_assume!(extra != (0, 0));
    let before = newton_data(&g).t0;
    let mut terms = g.terms().clone();
    terms.entry(extra).or_insert_with(|| qi(1));
    let after = newton_data(&PlaneGerm::new(terms, None).unwrap()).t0;
    prop_assert!(after <= before, "t0 grew from {} to {}", before, after);
    Ok(())
}
