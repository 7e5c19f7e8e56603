use crate::weights::{
    case_trichotomy, generic_quasismooth, generic_support, is_hypersurface_well_formed, is_wps_well_formed, Case,
    Quasismoothness, Quintuple,
};
use rayon::prelude::*;

/// Each `O_i` either lies off a hypersurface of degree `d` or admits some
/// `x_i^m x_j`; necessary for quasismoothness.
fn vertices_ok(a: [u64; 4], d: u64) -> bool {
    a.iter().all(|&ai| d.is_multiple_of(ai) || a.iter().any(|&aj| d > aj && (d - aj).is_multiple_of(ai) && d - aj >= ai))
}

fn admissible(a: [u64; 4], d: u64) -> Option<Quintuple> {
    if !vertices_ok(a, d) || !is_wps_well_formed(a) {
        return None;
    }
    let q = Quintuple::new(a, d).ok()?;
    if case_trichotomy(&q) != Case::MainCase {
        return None;
    }
    let s = generic_support(&q);
    if s.is_empty() || !is_hypersurface_well_formed(&q, &s) {
        return None;
    }
    matches!(generic_quasismooth(&q, &s), Ok(Quasismoothness::Ok)).then_some(q)
}

/// All main-case quasismooth well-formed del Pezzo quintuples of index
/// `i` with `a3 ≤ max_a3`, sorted.
pub fn enumerate_candidates(i: i64, max_a3: u64) -> Vec<Quintuple> {
    if i < 1 {
        return Vec::new();
    }
    let i = i as u64;
    // Main case needs 3·a0 > 2·I.
    let a0_min = (2 * i) / 3 + 1;
    let mut out: Vec<Quintuple> = (a0_min..=max_a3)
        .into_par_iter()
        .flat_map_iter(|a0| {
            let mut found = Vec::new();
            for a1 in a0..=max_a3 {
                for a2 in a1..=max_a3 {
                    for a3 in a2..=max_a3 {
                        let sum = a0 + a1 + a2 + a3;
                        if sum <= i {
                            continue;
                        }
                        if let Some(q) = admissible([a0, a1, a2, a3], sum - i) {
                            found.push(q);
                        }
                    }
                }
            }
            found
        })
        .collect();
    out.sort();
    out
}
