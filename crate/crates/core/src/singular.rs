//! Cyclic quotient singularities of `X_d` on the coordinate vertices and
//! edges of the ambient weighted projective space.

use crate::rational::{gcd, inv_mod, lcm};
use crate::weights::{is_wps_well_formed, MonomialSupport, Quintuple, VAR_NAMES};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SingularError {
    #[error("1/{r}({b1},{b2}): weights must be coprime to the order")]
    NotCoprime { r: i64, b1: i64, b2: i64 },
    #[error("order must be at least 2, got {0}")]
    TrivialOrder(i64),
    #[error("vertex O_{0} has neither a pure power nor an elimination monomial")]
    NoEliminationMonomial(&'static str),
    #[error("edge O_{0}O_{1} has a common weight factor but no monomial in its two variables")]
    EmptyRestriction(&'static str, &'static str),
    #[error("elimination monomials at O_{0} give different quotient types")]
    InconsistentElimination(&'static str),
    #[error("weighted projective space is not well-formed")]
    NotWellFormed,
}

/// `1/r(1,b)` in canonical form: `b` is the least element of `{c, c^{-1} mod r}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientType {
    r: u64,
    b: u64,
}

impl QuotientType {
    pub fn order(&self) -> u64 {
        self.r
    }

    pub fn weights_pair(&self) -> (u64, u64) {
        (1, self.b)
    }
}

impl fmt::Display for QuotientType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,{})", self.r, self.b)
    }
}

/// Normal form of `1/r(b1,b2)` under scaling by units mod `r` and swapping.
pub fn canonical_type(r: i64, b1: i64, b2: i64) -> Result<QuotientType, SingularError> {
    if r < 2 {
        return Err(SingularError::TrivialOrder(r));
    }
    let not_coprime = SingularError::NotCoprime { r, b1, b2 };
    let inv1 = inv_mod(b1, r).ok_or(not_coprime.clone())?;
    inv_mod(b2, r).ok_or(not_coprime)?;
    let c = (b2.rem_euclid(r) * inv1).rem_euclid(r);
    let c_inv = inv_mod(c, r).expect("unit times unit");
    Ok(QuotientType { r: r as u64, b: c.min(c_inv) as u64 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    Vertex { i: usize },
    /// Points of the torus of the line `O_i O_j`.
    Edge { i: usize, j: usize },
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Vertex { i } => write!(f, "O_{}", VAR_NAMES[*i]),
            Locus::Edge { i, j } => write!(f, "O_{}O_{}", VAR_NAMES[*i], VAR_NAMES[*j]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub locus: Locus,
    /// Number of points; always 1 on a vertex.
    pub count: u64,
    pub qtype: QuotientType,
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.locus {
            Locus::Vertex { .. } => write!(f, "{}={}", self.locus, self.qtype),
            Locus::Edge { .. } => write!(f, "{}={}x{}", self.locus, self.count, self.qtype),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SingularLocus {
    pub points: Vec<SingularPoint>,
}

impl SingularLocus {
    /// Multiset of quotient types with multiplicities.
    pub fn type_counts(&self) -> BTreeMap<QuotientType, u64> {
        let mut m = BTreeMap::new();
        for p in &self.points {
            *m.entry(p.qtype).or_insert(0) += p.count;
        }
        m
    }

    pub fn is_smooth(&self) -> bool {
        self.points.is_empty()
    }
}

/// Indices `j ≠ i` with some `x_i^m x_j` (m ≥ 1) in the support.
pub fn elimination_variables(support: &MonomialSupport, i: usize) -> Vec<usize> {
    (0..4)
        .filter(|&j| j != i)
        .filter(|&j| support.iter().any(|e| e[i] >= 1 && e[j] == 1 && (0..4).all(|k| k == i || k == j || e[k] == 0)))
        .collect()
}

fn complement(excl: &[usize]) -> Vec<usize> {
    (0..4).filter(|k| !excl.contains(k)).collect()
}

/// Quotient type of `X` at the vertex `O_i`, or `None` when `O_i ∉ X` or
/// `a_i = 1`.
pub fn vertex_singularity(q: &Quintuple, support: &MonomialSupport, i: usize) -> Result<Option<QuotientType>, SingularError> {
    let a = q.weight(i) as i64;
    if support.has_pure_power(i) || a == 1 {
        return Ok(None);
    }
    let elim = elimination_variables(support, i);
    if elim.is_empty() {
        return Err(SingularError::NoEliminationMonomial(VAR_NAMES[i]));
    }
    let mut found: Option<QuotientType> = None;
    for &j in &elim {
        let kl = complement(&[i, j]);
        let t = canonical_type(a, q.weight(kl[0]) as i64, q.weight(kl[1]) as i64)?;
        if found.is_some_and(|f| f != t) {
            return Err(SingularError::InconsistentElimination(VAR_NAMES[i]));
        }
        found = Some(t);
    }
    Ok(found)
}

/// Number and type of singular points in the torus of the edge `O_i O_j`.
pub fn edge_singularities(
    q: &Quintuple,
    support: &MonomialSupport,
    i: usize,
    j: usize,
) -> Result<Option<(u64, QuotientType)>, SingularError> {
    let (ai, aj) = (q.weight(i), q.weight(j));
    let r = gcd(ai, aj);
    if r == 1 {
        return Ok(None);
    }
    let m = support.restricted_to(&[i, j]);
    if m.is_empty() {
        return Err(SingularError::EmptyRestriction(VAR_NAMES[i], VAR_NAMES[j]));
    }
    let emax = m.iter().map(|e| e[i] as u64).max().unwrap();
    let emin = m.iter().map(|e| e[i] as u64).min().unwrap();
    let count = (emax - emin) * ai / lcm(ai, aj);
    if count == 0 {
        return Ok(None);
    }
    let kl = complement(&[i, j]);
    let t = canonical_type(r as i64, q.weight(kl[0]) as i64, q.weight(kl[1]) as i64)?;
    Ok(Some((count, t)))
}

/// All vertex and edge singularities of the hypersurface with this support.
pub fn singular_locus(q: &Quintuple, support: &MonomialSupport) -> Result<SingularLocus, SingularError> {
    if !is_wps_well_formed(q.weights()) {
        return Err(SingularError::NotWellFormed);
    }
    let mut points = Vec::new();
    for i in 0..4 {
        if let Some(t) = vertex_singularity(q, support, i)? {
            points.push(SingularPoint { locus: Locus::Vertex { i }, count: 1, qtype: t });
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if let Some((count, t)) = edge_singularities(q, support, i, j)? {
                points.push(SingularPoint { locus: Locus::Edge { i, j }, count, qtype: t });
            }
        }
    }
    Ok(SingularLocus { points })
}
