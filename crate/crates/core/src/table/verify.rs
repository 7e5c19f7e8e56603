use super::classify::{exceptionality, ke_status, BranchReport, ClassificationReport, Mismatch};
use super::dataset::{Dataset, DatasetError, RowInstance};
use crate::rational::{fmt_q, Q};
use crate::singular::{singular_locus, QuotientType};
use crate::surface::{analyze, boyer_lower_bound, GlobalLct, LctBranch, Witness};
use crate::weights::{
    bishop_lichnerowicz, case_trichotomy, generic_quasismooth, is_hypersurface_well_formed, is_wps_well_formed,
    k_squared, Case, Quasismoothness,
};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

fn fmt_types(t: &BTreeMap<QuotientType, u64>) -> String {
    let parts: Vec<String> = t.iter().map(|(q, c)| format!("{c}x{q}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_cond(c: &BTreeMap<String, bool>) -> String {
    if c.is_empty() {
        return "lct".into();
    }
    let parts: Vec<String> = c.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("lct[{}]", parts.join(","))
}

/// Recomputes every column of one instantiated row.
pub fn classify_instance(inst: &RowInstance) -> ClassificationReport {
    let q = &inst.quintuple;
    let mut mismatches = Vec::new();
    let mut mismatch = |column: &str, expected: String, computed: String| {
        mismatches.push(Mismatch { column: column.into(), expected, computed });
    };
    if q.fano_index() != inst.fano_index {
        mismatch("I", inst.fano_index.to_string(), q.fano_index().to_string());
    }
    let k2 = k_squared(q);
    if k2 != inst.k2 {
        mismatch("k2", fmt_q(&inst.k2), fmt_q(&k2));
    }
    let case = case_trichotomy(q);
    let support = inst.support();
    let mut validity = Vec::new();
    match &support {
        Err(e) => validity.push(e.to_string()),
        Ok(s) => {
            if !is_wps_well_formed(q.weights()) || !is_hypersurface_well_formed(q, s) {
                validity.push("not well formed".to_string());
            }
            match generic_quasismooth(q, s) {
                Ok(Quasismoothness::Ok) => {}
                Ok(Quasismoothness::Fail(w)) => validity.push(format!("not quasismooth at {w:?}")),
                Err(e) => validity.push(e.to_string()),
            }
        }
    }
    if q.fano_index() < 1 {
        validity.push("not del Pezzo".into());
    }
    if case != Case::MainCase {
        validity.push(format!("{case:?}"));
    }
    if !validity.is_empty() {
        mismatch("validity", "valid main-case surface".into(), validity.join("; "));
    }
    if let Ok(s) = &support {
        let want = inst.expected_type_counts();
        match singular_locus(q, s) {
            Ok(l) if l.type_counts() == want => {}
            Ok(l) => mismatch("singular_points", fmt_types(&want), fmt_types(&l.type_counts())),
            Err(e) => mismatch("singular_points", fmt_types(&want), e.to_string()),
        }
    }
    let (bl1, bl2) = bishop_lichnerowicz(q);
    let mut branches = Vec::new();
    let mut computed = Vec::new();
    for (k, b) in inst.branches.iter().enumerate() {
        let result = inst.model(k).and_then(|m| analyze(&m).map(|s| (m, s)));
        let (lct, witness, boyer) = match result {
            Ok((m, s)) => {
                let boyer = boyer_lower_bound(q, m.support());
                (Some(s.value), Some(format!("{} at {}", s.witness.divisor, s.witness.point)), boyer)
            }
            Err(e) => {
                mismatch(&fmt_cond(&b.cond), fmt_q(&b.value), format!("error: {e}"));
                let boyer = support.as_ref().map(|s| boyer_lower_bound(q, s)).unwrap_or_default();
                (None, None, boyer)
            }
        };
        if let Some(v) = &lct {
            if *v != b.value {
                mismatch(&fmt_cond(&b.cond), fmt_q(&b.value), fmt_q(v));
            }
            if *v < boyer {
                mismatch("boyer", format!(">= {}", fmt_q(&boyer)), fmt_q(v));
            }
            if *v > Q::new(2.into(), 3.into()) && !(bl1 && bl2) {
                mismatch("bishop", "both inequalities".into(), format!("{bl1}, {bl2}"));
            }
            computed.push(LctBranch {
                condition: b.cond.clone(),
                value: v.clone(),
                witness: Witness { divisor: String::new(), point: String::new() },
            });
        }
        branches.push(BranchReport {
            cond: b.cond.clone(),
            ke: lct.as_ref().map(ke_status),
            exceptionality: lct.as_ref().map(exceptionality),
            lct,
            expected: Some(b.value.clone()),
            boyer_bound: boyer,
            witness,
        });
    }
    if computed.len() == inst.branches.len() {
        if let Err(e) = GlobalLct::from_branches(computed) {
            mismatch("branches", "exhaustive tag assignments".into(), e.to_string());
        }
    }
    ClassificationReport {
        label: inst.label.clone(),
        n: inst.n,
        weights: q.weights(),
        degree: q.degree(),
        fano_index: q.fano_index(),
        case,
        k2,
        branches,
        bishop: [bl1, bl2],
        mismatches,
    }
}

/// Every row (series over `n_range`), in dataset order.
pub fn instances(dataset: &Dataset, n_range: RangeInclusive<i64>) -> Result<Vec<RowInstance>, DatasetError> {
    let mut out = Vec::new();
    for row in &dataset.rows {
        for n in row.parameters(n_range.clone()) {
            out.push(row.instantiate(n)?);
        }
    }
    Ok(out)
}

/// Reports for all rows, in dataset order.
pub fn verify_table(dataset: &Dataset, n_range: RangeInclusive<i64>) -> Result<Vec<ClassificationReport>, DatasetError> {
    let inst = instances(dataset, n_range)?;
    Ok(inst.par_iter().map(classify_instance).collect())
}
