//! Two-variable analytic germs and their log canonical thresholds.
//!
//! A germ is stored as a finite map from exponent pairs to exact rational
//! coefficients. A truncated germ is exact only through total degree `N`;
//! every lct computed from it is certified against the unseen tail or
//! rejected with [`GermError::TruncationTooSmall`].

mod adapt;
mod lct;
mod newton;
mod series;

pub use adapt::{newton_adapt, Substitution};
pub use lct::{lct_concurrent_lines, lct_igusa, lct_newton, lct_weighted, LctCertificate, DEFAULT_MAX_ITER};
pub use newton::{newton_data, DiagonalHit, NewtonData};
pub use series::{eliminate_and_restrict, restrict_to_divisor, slice_germ, Chart, ElimSolution};

use crate::rational::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Mono2 = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("germ has no terms")]
    Empty,
    #[error("germ does not vanish at the origin")]
    NotAGerm,
    #[error("adaptation did not terminate within {iters} steps; lct ≥ {lower_bound}")]
    AdaptationExhausted { iters: usize, lower_bound: String },
    #[error("repeated face root is irrational; lct ≥ {lower_bound}")]
    IrrationalRoot { lower_bound: String },
    #[error("repeated factor on a face with non-integral slope; lct ≥ {lower_bound}")]
    NonIntegralSlope { lower_bound: String },
    #[error("truncation at total degree {0} does not determine the answer")]
    TruncationTooSmall(u32),
    #[error("multiplicity must be positive")]
    NonPositiveMultiplicity,
    #[error("divisor has no components")]
    EmptyDivisor,
    #[error("chart is invalid: {0}")]
    BadChart(String),
}

/// Truncated two-variable power series vanishing at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGerm {
    terms: BTreeMap<Mono2, Q>,
    /// `None` for an exact polynomial; otherwise terms are exact through this total degree.
    trunc: Option<u32>,
}

fn within(trunc: Option<u32>, m: Mono2) -> bool {
    trunc.is_none_or(|n| m.0 + m.1 <= n)
}

impl PlaneGerm {
    pub fn new(terms: BTreeMap<Mono2, Q>, trunc: Option<u32>) -> Result<Self, GermError> {
        let terms: BTreeMap<Mono2, Q> =
            terms.into_iter().filter(|(m, c)| !c.is_zero() && within(trunc, *m)).collect();
        Self::checked(terms, trunc)
    }

    fn checked(terms: BTreeMap<Mono2, Q>, trunc: Option<u32>) -> Result<Self, GermError> {
        if terms.is_empty() {
            return Err(GermError::Empty);
        }
        if terms.contains_key(&(0, 0)) {
            return Err(GermError::NotAGerm);
        }
        Ok(PlaneGerm { terms, trunc })
    }

    /// Unit coefficients on the given exponents.
    pub fn from_support(support: &[Mono2]) -> Result<Self, GermError> {
        Self::new(support.iter().map(|&m| (m, Q::one())).collect(), None)
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono2, Q)>>(terms: I, trunc: Option<u32>) -> Result<Self, GermError> {
        let mut map: BTreeMap<Mono2, Q> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Q::zero) += c;
        }
        Self::new(map, trunc)
    }

    pub fn terms(&self) -> &BTreeMap<Mono2, Q> {
        &self.terms
    }

    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    pub fn support(&self) -> Vec<Mono2> {
        self.terms.keys().copied().collect()
    }

    /// Minimal total degree of a term.
    pub fn multiplicity(&self) -> u32 {
        self.terms.keys().map(|m| m.0 + m.1).min().expect("nonempty")
    }

    pub fn swapped(&self) -> PlaneGerm {
        PlaneGerm { terms: self.terms.iter().map(|(m, c)| ((m.1, m.0), c.clone())).collect(), trunc: self.trunc }
    }

    pub fn mul(&self, o: &PlaneGerm) -> PlaneGerm {
        let trunc = match (self.trunc, o.trunc) {
            (None, None) => None,
            (a, b) => {
                // Exact through min over factors of (own truncation + other's multiplicity).
                let ea = a.map(|n| n + o.multiplicity());
                let eb = b.map(|n| n + self.multiplicity());
                Some(ea.into_iter().chain(eb).min().unwrap())
            }
        };
        let mut out: BTreeMap<Mono2, Q> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = (ma.0 + mb.0, ma.1 + mb.1);
                if within(trunc, m) {
                    *out.entry(m).or_insert_with(Q::zero) += ca * cb;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        PlaneGerm { terms: out, trunc }
    }

    pub fn pow(&self, k: u32) -> PlaneGerm {
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `v ← v + s·u^k` (`second = true`) or `u ← u + s·v^k`.
    pub(crate) fn shifted(&self, second: bool, s: &Q, k: u32) -> Result<PlaneGerm, GermError> {
        let mut out: BTreeMap<Mono2, Q> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            // The shifted variable has exponent `e`; the other one `o`.
            let (o, e) = if second { (a, b) } else { (b, a) };
            let mut binom = BigInt::one();
            let mut spow = Q::one();
            for j in 0..=e {
                let m = if second { (o + k * j, e - j) } else { (e - j, o + k * j) };
                if within(self.trunc, m) {
                    *out.entry(m).or_insert_with(Q::zero) += c * Q::from_integer(binom.clone()) * &spow;
                }
                binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
                spow *= s;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self::checked(out, self.trunc)
    }
}

impl fmt::Display for PlaneGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |v: &str, k: u32| match k {
            0 => None,
            1 => Some(v.to_string()),
            _ => Some(format!("{v}^{k}")),
        };
        for (k, (&(a, b), c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = [power("u", a), power("v", b)].into_iter().flatten().collect();
            let neg = c.is_negative();
            let abs = crate::rational::fmt_q(&c.abs());
            let sep = match (k, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let body = match (abs.as_str(), mono.is_empty()) {
                (_, true) => abs.clone(),
                ("1", false) => mono.join("*"),
                (_, false) => format!("{abs}*{}", mono.join("*")),
            };
            write!(f, "{sep}{body}")?;
        }
        if let Some(n) = self.trunc {
            write!(f, " + O({})", n + 1)?;
        }
        Ok(())
    }
}

/// Finite formal sum of germs with positive rational multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermDivisor {
    components: Vec<(PlaneGerm, Q)>,
}

impl GermDivisor {
    pub fn new(components: Vec<(PlaneGerm, Q)>) -> Result<Self, GermError> {
        if components.is_empty() {
            return Err(GermError::EmptyDivisor);
        }
        if components.iter().any(|(_, l)| *l <= Q::zero()) {
            return Err(GermError::NonPositiveMultiplicity);
        }
        Ok(GermDivisor { components })
    }

    pub fn single(g: PlaneGerm, lambda: Q) -> Result<Self, GermError> {
        Self::new(vec![(g, lambda)])
    }

    pub fn components(&self) -> &[(PlaneGerm, Q)] {
        &self.components
    }
}
