//! Weight quadruples, monomial supports, validity predicates and numerical
//! invariants of hypersurfaces `X_d ⊂ P(a0,a1,a2,a3)`.

use crate::rational::{gcd, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Exponent vector over the variables `x, y, z, t`.
pub type Exp = [u32; 4];

pub const VAR_NAMES: [&str; 4] = ["x", "y", "z", "t"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("linear cone: degree {0} equals a weight whose pure power is present")]
    LinearCone(u64),
    #[error("Milnor number {0} is not an integer")]
    NonInteger(String),
    #[error("monomial {mono} has degree {got}, expected {want}")]
    WrongDegree { mono: String, got: u64, want: u64 },
    #[error("malformed monomial `{0}`")]
    BadMonomial(String),
    #[error("polynomial has no terms")]
    EmptyPolynomial,
    #[error("polynomial has a generic coefficient at {0}; a concrete value is required")]
    NotConcrete(String),
}

/// Sorted weights `a0 ≤ a1 ≤ a2 ≤ a3` and a degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawQuintuple", into = "RawQuintuple")]
pub struct Quintuple {
    weights: [u64; 4],
    degree: u64,
}

#[derive(Serialize, Deserialize)]
struct RawQuintuple {
    weights: [u64; 4],
    degree: u64,
}

impl TryFrom<RawQuintuple> for Quintuple {
    type Error = WeightError;
    fn try_from(r: RawQuintuple) -> Result<Self, WeightError> {
        Quintuple::new(r.weights, r.degree)
    }
}

impl From<Quintuple> for RawQuintuple {
    fn from(q: Quintuple) -> Self {
        RawQuintuple { weights: q.weights, degree: q.degree }
    }
}

impl Quintuple {
    /// Sorts the weights; rejects zero weights and zero degree.
    pub fn new(mut weights: [u64; 4], degree: u64) -> Result<Self, WeightError> {
        if weights.contains(&0) {
            return Err(WeightError::NonPositiveWeight);
        }
        if degree == 0 {
            return Err(WeightError::NonPositiveDegree);
        }
        weights.sort_unstable();
        Ok(Quintuple { weights, degree })
    }

    pub fn weights(&self) -> [u64; 4] {
        self.weights
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    /// `I = a0 + a1 + a2 + a3 - d`.
    pub fn fano_index(&self) -> i64 {
        self.weights.iter().sum::<u64>() as i64 - self.degree as i64
    }

    fn weight_product(&self) -> BigInt {
        self.weights.iter().map(|&a| BigInt::from(a)).product()
    }

    /// Weighted degree of an exponent vector.
    pub fn degree_of(&self, e: &Exp) -> u64 {
        (0..4).map(|i| e[i] as u64 * self.weights[i]).sum()
    }
}

impl fmt::Display for Quintuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.weights;
        write!(f, "({a},{b},{c},{d},{})", self.degree)
    }
}

/// Formats an exponent vector such as `[1,0,2,0]` as `x*z^2`.
pub fn fmt_monomial(e: &Exp) -> String {
    let parts: Vec<String> = (0..4)
        .filter(|&i| e[i] > 0)
        .map(|i| if e[i] == 1 { VAR_NAMES[i].to_string() } else { format!("{}^{}", VAR_NAMES[i], e[i]) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Parses a product such as `x^2*y*t^3`.
pub fn parse_monomial(s: &str) -> Result<Exp, WeightError> {
    let bad = || WeightError::BadMonomial(s.to_string());
    let mut e = [0u32; 4];
    let t = s.trim();
    if t == "1" {
        return Ok(e);
    }
    for factor in t.split('*') {
        let factor = factor.trim();
        let (v, p) = match factor.split_once('^') {
            Some((v, p)) => (v.trim(), p.trim().parse::<u32>().map_err(|_| bad())?),
            None => (factor, 1),
        };
        let i = VAR_NAMES.iter().position(|&n| n == v).ok_or_else(bad)?;
        e[i] += p;
    }
    Ok(e)
}

/// A finite set of exponent vectors of a fixed weighted degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialSupport {
    exps: BTreeSet<Exp>,
}

impl MonomialSupport {
    pub fn new<I: IntoIterator<Item = Exp>>(q: &Quintuple, exps: I) -> Result<Self, WeightError> {
        let exps: BTreeSet<Exp> = exps.into_iter().collect();
        for e in &exps {
            let got = q.degree_of(e);
            if got != q.degree {
                return Err(WeightError::WrongDegree { mono: fmt_monomial(e), got, want: q.degree });
            }
        }
        Ok(MonomialSupport { exps })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Exp> {
        self.exps.iter()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn contains(&self, e: &Exp) -> bool {
        self.exps.contains(e)
    }

    pub fn as_set(&self) -> &BTreeSet<Exp> {
        &self.exps
    }

    /// Monomials involving only the variables in `vars`.
    pub fn restricted_to(&self, vars: &[usize]) -> Vec<Exp> {
        self.exps.iter().filter(|e| (0..4).all(|k| e[k] == 0 || vars.contains(&k))).copied().collect()
    }

    /// The pure power `x_i^{d/a_i}` is present.
    pub fn has_pure_power(&self, i: usize) -> bool {
        self.exps.iter().any(|e| (0..4).all(|k| k == i || e[k] == 0))
    }
}

/// Exactly the exponent vectors of weighted degree `d`.
pub fn monomials_of_degree(weights: [u64; 4], d: u64) -> BTreeSet<Exp> {
    let mut out = BTreeSet::new();
    let [a, b, c, w] = weights;
    for i in 0..=d / a {
        let r1 = d - i * a;
        for j in 0..=r1 / b {
            let r2 = r1 - j * b;
            for k in 0..=r2 / c {
                let r3 = r2 - k * c;
                if r3.is_multiple_of(w) {
                    out.insert([i as u32, j as u32, k as u32, (r3 / w) as u32]);
                }
            }
        }
    }
    out
}

/// The full support of a general member of `|O(d)|`.
pub fn generic_support(q: &Quintuple) -> MonomialSupport {
    MonomialSupport { exps: monomials_of_degree(q.weights, q.degree) }
}

/// Coefficient of a quasi-homogeneous polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coeff {
    Generic,
    Value(Q),
}

/// A quasi-homogeneous polynomial of degree `d` on `P(a0,a1,a2,a3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    q: Quintuple,
    terms: BTreeMap<Exp, Coeff>,
}

impl QuasiPolynomial {
    /// Zero coefficients are dropped; at least one term must remain.
    pub fn new(q: Quintuple, terms: BTreeMap<Exp, Coeff>) -> Result<Self, WeightError> {
        let terms: BTreeMap<Exp, Coeff> =
            terms.into_iter().filter(|(_, c)| !matches!(c, Coeff::Value(v) if v.is_zero())).collect();
        if terms.is_empty() {
            return Err(WeightError::EmptyPolynomial);
        }
        MonomialSupport::new(&q, terms.keys().copied())?;
        Ok(QuasiPolynomial { q, terms })
    }

    /// All monomials of `support` with generic coefficients.
    pub fn generic(q: Quintuple, support: &MonomialSupport) -> Result<Self, WeightError> {
        Self::new(q, support.iter().map(|e| (*e, Coeff::Generic)).collect())
    }

    pub fn quintuple(&self) -> &Quintuple {
        &self.q
    }

    pub fn terms(&self) -> &BTreeMap<Exp, Coeff> {
        &self.terms
    }

    pub fn support(&self) -> MonomialSupport {
        MonomialSupport { exps: self.terms.keys().copied().collect() }
    }

    pub fn is_concrete(&self) -> bool {
        self.terms.values().all(|c| matches!(c, Coeff::Value(_)))
    }

    /// Concrete coefficients, failing on the first generic marker.
    pub fn concrete_terms(&self) -> Result<BTreeMap<Exp, Q>, WeightError> {
        self.terms
            .iter()
            .map(|(e, c)| match c {
                Coeff::Value(v) => Ok((*e, v.clone())),
                Coeff::Generic => Err(WeightError::NotConcrete(fmt_monomial(e))),
            })
            .collect()
    }
}

/// Every three of the four weights are coprime.
pub fn is_wps_well_formed(weights: [u64; 4]) -> bool {
    (0..4).all(|skip| {
        let g = (0..4).filter(|&i| i != skip).fold(0, |g, i| gcd(g, weights[i]));
        g == 1
    })
}

/// For every pair of weights with a common factor, some monomial of the
/// support involves only that pair of variables.
pub fn is_hypersurface_well_formed(q: &Quintuple, support: &MonomialSupport) -> bool {
    pairs().all(|(i, j)| gcd(q.weights[i], q.weights[j]) == 1 || !support.restricted_to(&[i, j]).is_empty())
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
}

/// Outcome of the combinatorial quasismoothness test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Quasismoothness {
    Ok,
    /// Smallest variable subset (by size, then lexicographically) violating the criterion.
    Fail(Vec<usize>),
}

/// Nonempty subsets of `{0,1,2,3}` ordered by size, then lexicographically.
fn subsets_by_size() -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> =
        (1u32..16).map(|m| (0..4).filter(|&i| m & (1 << i) != 0).collect()).collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// Quasismoothness of a general member with the given support: for each
/// nonempty `S`, either some monomial lives on `S`, or there are `|S|`
/// monomials `x_S^M · x_e` with pairwise distinct `e ∉ S`.
pub fn generic_quasismooth(q: &Quintuple, support: &MonomialSupport) -> Result<Quasismoothness, WeightError> {
    for i in 0..4 {
        if q.weights[i] == q.degree {
            let mut e = [0u32; 4];
            e[i] = 1;
            if support.contains(&e) {
                return Err(WeightError::LinearCone(q.degree));
            }
        }
    }
    for s in subsets_by_size() {
        if !support.restricted_to(&s).is_empty() {
            continue;
        }
        // Outside variables e for which some x_S^M * x_e is in the support.
        let outside: Vec<usize> = (0..4)
            .filter(|e| !s.contains(e))
            .filter(|&e| {
                support.iter().any(|m| {
                    m[e] == 1 && (0..4).all(|k| k == e || s.contains(&k) || m[k] == 0) && (0..4).any(|k| s.contains(&k) && m[k] > 0)
                })
            })
            .collect();
        if outside.len() < s.len() {
            return Ok(Quasismoothness::Fail(s));
        }
    }
    Ok(Quasismoothness::Ok)
}

pub fn is_del_pezzo(q: &Quintuple) -> bool {
    q.fano_index() >= 1
}

/// `K_X^2 = I^2 d / (a0 a1 a2 a3)`.
pub fn k_squared(q: &Quintuple) -> Q {
    let i = BigInt::from(q.fano_index());
    Q::new(&i * &i * BigInt::from(q.degree), q.weight_product())
}

/// `∏ (d/a_i - 1)`, which must be a non-negative integer.
pub fn milnor_number(q: &Quintuple) -> Result<BigInt, WeightError> {
    let d = BigInt::from(q.degree);
    let mut acc = Q::one();
    for &a in &q.weights {
        acc *= Q::new(d.clone(), BigInt::from(a)) - Q::one();
    }
    if !acc.is_integer() || acc < Q::zero() {
        return Err(WeightError::NonInteger(crate::rational::fmt_q(&acc)));
    }
    Ok(acc.to_integer())
}

/// Intersection number `O(m)·O(k)` on `X`: `m k d / (a0 a1 a2 a3)`.
pub fn degree_pairing(q: &Quintuple, m: u64, k: u64) -> Q {
    Q::new(BigInt::from(m) * BigInt::from(k) * BigInt::from(q.degree), q.weight_product())
}

/// The two necessary inequalities `d I^3 ≤ 27 ∏a_i` and `Σa_i ≤ d + 3 a0`.
pub fn bishop_lichnerowicz(q: &Quintuple) -> (bool, bool) {
    let i = BigInt::from(q.fano_index());
    let first = BigInt::from(q.degree) * &i * &i * &i <= BigInt::from(27) * q.weight_product();
    let second = q.weights.iter().sum::<u64>() <= q.degree + 3 * q.weights[0];
    (first, second)
}

/// Matches `(I-k, I+k, a, a+k, 2a+k+I)` with `0 ≤ k < I` and `a ≥ I+k`.
pub fn excluded_family_member(q: &Quintuple) -> bool {
    let i = q.fano_index();
    let [a0, a1, a2, a3] = q.weights.map(|a| a as i64);
    if i < 1 || a0 > i {
        return false;
    }
    let k = i - a0;
    let a = a2;
    k < i && a1 == i + k && a3 == a + k && q.degree as i64 == 2 * a + k + i && a >= i + k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    TwoIGeqThreeA0,
    ExcludedFamily,
    MainCase,
}

pub fn case_trichotomy(q: &Quintuple) -> Case {
    if 2 * q.fano_index() >= 3 * q.weights[0] as i64 {
        Case::TwoIGeqThreeA0
    } else if excluded_family_member(q) {
        Case::ExcludedFamily
    } else {
        Case::MainCase
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q as r, qi};

    fn quint(w: [u64; 4], d: u64) -> Quintuple {
        Quintuple::new(w, d).unwrap()
    }

    #[test]
    fn sorting_and_index() {
        let q = quint([4, 3, 6, 7], 18);
        assert_eq!(q.weights(), [3, 4, 6, 7]);
        assert_eq!(q.fano_index(), 2);
        assert!(Quintuple::new([0, 1, 1, 1], 3).is_err());
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree([1, 1, 1, 1], 2).len(), 10);
        let m = monomials_of_degree([2, 3, 5, 9], 18);
        assert_eq!(m.len(), 13);
        for e in [[0, 0, 0, 2], [0, 6, 0, 0], [9, 0, 0, 0]] {
            assert!(m.contains(&e));
        }
        let q = quint([11, 29, 39, 49], 127);
        let s = generic_support(&q);
        assert!(s.restricted_to(&[1, 2]).is_empty());
    }

    #[test]
    fn monomial_text() {
        assert_eq!(fmt_monomial(&[1, 0, 2, 0]), "x*z^2");
        assert_eq!(parse_monomial("x*z^2").unwrap(), [1, 0, 2, 0]);
        assert_eq!(parse_monomial("y*z*t").unwrap(), [0, 1, 1, 1]);
        assert!(parse_monomial("w^2").is_err());
    }

    #[test]
    fn well_formed_spaces() {
        assert!(is_wps_well_formed([1, 2, 3, 5]));
        assert!(!is_wps_well_formed([2, 2, 3, 4]));
        assert!(is_wps_well_formed([9, 15, 17, 20]));
    }

    #[test]
    fn hypersurface_well_formed() {
        let q = quint([2, 3, 3, 5], 12);
        assert!(is_hypersurface_well_formed(&q, &generic_support(&q)));
        let q = quint([6, 9, 10, 13], 36);
        assert!(is_hypersurface_well_formed(&q, &generic_support(&q)));
        let q = quint([2, 4, 5, 7], 9);
        let s = MonomialSupport::new(&q, [[2, 0, 1, 0], [1, 0, 0, 1]]).unwrap();
        assert!(!is_hypersurface_well_formed(&q, &s));
    }

    #[test]
    fn quasismooth_examples() {
        let q = quint([2, 3, 3, 5], 12);
        assert_eq!(generic_quasismooth(&q, &generic_support(&q)).unwrap(), Quasismoothness::Ok);
        let q = quint([9, 15, 17, 20], 60);
        assert_eq!(generic_quasismooth(&q, &generic_support(&q)).unwrap(), Quasismoothness::Ok);
        let q = quint([1, 3, 3, 3], 8);
        assert_eq!(generic_quasismooth(&q, &generic_support(&q)).unwrap(), Quasismoothness::Fail(vec![1]));
        let q = quint([1, 1, 2, 4], 4);
        assert_eq!(generic_quasismooth(&q, &generic_support(&q)), Err(WeightError::LinearCone(4)));
    }

    #[test]
    fn del_pezzo_and_k2() {
        assert!(is_del_pezzo(&quint([1, 2, 3, 5], 10)));
        assert!(!is_del_pezzo(&quint([1, 1, 1, 1], 4)));
        assert!(!is_del_pezzo(&quint([8, 9, 11, 13], 47)));
        assert_eq!(k_squared(&quint([3, 5, 7, 11], 25)), r(5, 231));
        assert_eq!(k_squared(&quint([2, 3, 5, 9], 18)), r(1, 15));
        assert_eq!(k_squared(&quint([1, 1, 1, 1], 3)), qi(3));
    }

    #[test]
    fn milnor() {
        assert_eq!(milnor_number(&quint([1, 1, 1, 1], 3)).unwrap(), BigInt::from(16));
        assert_eq!(milnor_number(&quint([1, 1, 2, 3], 6)).unwrap(), BigInt::from(50));
        assert_eq!(milnor_number(&quint([2, 3, 5, 9], 18)).unwrap(), BigInt::from(104));
        assert!(milnor_number(&quint([2, 3, 5, 9], 17)).is_err());
    }

    #[test]
    fn pairing() {
        let q = quint([2, 3, 3, 5], 12);
        assert_eq!(degree_pairing(&q, 1, 2), r(4, 15));
        assert_eq!(degree_pairing(&q, 1, 1), k_squared(&q));
        assert_eq!(degree_pairing(&quint([5, 14, 17, 21], 56), 2, 2), r(16, 1785));
    }

    #[test]
    fn bishop() {
        assert_eq!(bishop_lichnerowicz(&quint([1, 1, 1, 1], 3)), (true, true));
        assert_eq!(bishop_lichnerowicz(&quint([5, 14, 17, 21], 56)), (true, true));
        assert_eq!(bishop_lichnerowicz(&quint([1, 1, 1, 1], 1)), (true, true));
    }

    #[test]
    fn excluded_and_cases() {
        assert!(excluded_family_member(&quint([1, 1, 2, 2], 5)));
        assert!(!excluded_family_member(&quint([2, 3, 5, 9], 18)));
        assert!(!excluded_family_member(&quint([1, 3, 2, 4], 8)));
        assert_eq!(case_trichotomy(&quint([1, 1, 1, 2], 4)), Case::MainCase);
        assert_eq!(case_trichotomy(&quint([1, 2, 3, 5], 10)), Case::MainCase);
        assert_eq!(case_trichotomy(&quint([1, 1, 2, 2], 5)), Case::ExcludedFamily);
        assert_eq!(case_trichotomy(&quint([1, 1, 1, 1], 2)), Case::TwoIGeqThreeA0);
    }
}
