use crate::rational::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum KeStatus {
    /// `lct > 2/3`: an orbifold Kähler–Einstein metric exists.
    KECertified,
    NotCertified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Exceptionality {
    /// `lct > 1`.
    Exceptional,
    /// `lct = 1`.
    WeaklyExceptionalOnly,
    Neither,
}

pub fn ke_status(lct: &Q) -> KeStatus {
    if *lct > Q::new(2.into(), 3.into()) {
        KeStatus::KECertified
    } else {
        KeStatus::NotCertified
    }
}

pub fn exceptionality(lct: &Q) -> Exceptionality {
    let one = Q::from_integer(1.into());
    match lct.cmp(&one) {
        std::cmp::Ordering::Greater => Exceptionality::Exceptional,
        std::cmp::Ordering::Equal => Exceptionality::WeaklyExceptionalOnly,
        std::cmp::Ordering::Less => Exceptionality::Neither,
    }
}

/// One branch of a classified surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchReport {
    pub cond: BTreeMap<String, bool>,
    /// Computed value; `None` when the computation failed.
    #[serde(with = "crate::rational::serde_opt_q")]
    pub lct: Option<Q>,
    #[serde(with = "crate::rational::serde_opt_q")]
    pub expected: Option<Q>,
    pub ke: Option<KeStatus>,
    pub exceptionality: Option<Exceptionality>,
    #[serde(with = "crate::rational::serde_q")]
    pub boyer_bound: Q,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub column: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub label: String,
    pub n: Option<i64>,
    pub weights: [u64; 4],
    pub degree: u64,
    #[serde(rename = "I")]
    pub fano_index: i64,
    pub case: crate::weights::Case,
    #[serde(with = "crate::rational::serde_q")]
    pub k2: Q,
    pub branches: Vec<BranchReport>,
    /// The two Bishop–Lichnerowicz inequalities.
    pub bishop: [bool; 2],
    pub mismatches: Vec<Mismatch>,
}
