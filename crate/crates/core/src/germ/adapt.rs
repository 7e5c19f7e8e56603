use super::newton::newton_data;
use super::{GermError, PlaneGerm};
use crate::poly1::Poly1;
use crate::rational::{fmt_q, Q};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

/// A coordinate change applied during adaptation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Substitution {
    /// `true`: `v ← v + s·u^k`; `false`: `u ← u + s·v^k`.
    pub shifts_second: bool,
    #[serde(with = "crate::rational::serde_q")]
    pub s: Q,
    pub k: u32,
}

impl std::fmt::Display for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (a, b) = if self.shifts_second { ("v", "u") } else { ("u", "v") };
        write!(f, "{a} <- {a} + ({})*{b}^{}", fmt_q(&self.s), self.k)
    }
}

pub(crate) fn lower_bound(g: &PlaneGerm) -> Q {
    Q::new(1.into(), g.multiplicity().into()).min(Q::one())
}

/// On the edge met by the diagonal, the factor of the face polynomial
/// carrying torus roots of multiplicity `> t0`; only these lower the lct
/// below `1/t0`. The face is dehomogenized along the weight-one variable
/// when there is one. Returns the facet normal and that factor.
fn degenerate_face(cur: &PlaneGerm) -> Option<((u64, u64), Poly1)> {
    let nd = newton_data(cur);
    let (facet, terms) = nd.face_terms(cur)?;
    let by_first = facet.n.1 == 1;
    let face = Poly1::from_terms(terms.iter().map(|(m, c)| (if by_first { m.0 } else { m.1 } as usize, c.clone())));
    let face = face.strip_x();
    // Roots of multiplicity ≥ k are the roots of gcd(F, F', ..., F^(k-1)).
    let k = nd.t0.floor().to_integer().to_u64().expect("small") + 1;
    let mut high = face.clone();
    let mut der = face;
    for _ in 1..k {
        der = der.derivative();
        high = high.gcd(&der);
        if high.degree().unwrap_or(0) == 0 {
            return None;
        }
    }
    (high.degree().unwrap_or(0) > 0).then_some((facet.n, high))
}

/// Newton–Puiseux adaptation: while the face met by the diagonal carries a
/// torus root of multiplicity above `t0`, move that root onto a coordinate axis.
pub fn newton_adapt(g: &PlaneGerm, max_iter: usize) -> Result<(PlaneGerm, Vec<Substitution>), GermError> {
    let mut cur = g.clone();
    let mut log = Vec::new();
    for _ in 0..max_iter.max(1) {
        let Some(((p, q), rep)) = degenerate_face(&cur) else {
            return Ok((cur, log));
        };
        if p != 1 && q != 1 {
            return Err(GermError::NonIntegralSlope { lower_bound: fmt_q(&lower_bound(g)) });
        }
        let roots = rep.rational_roots().unwrap_or_default();
        let Some(s0) = roots.into_iter().find(|r| !r.is_zero()) else {
            return Err(GermError::IrrationalRoot { lower_bound: fmt_q(&lower_bound(g)) });
        };
        // q == 1: u ~ s0·v^p, so u ← u + s0·v^p; otherwise v ← v + s0·u^q.
        let sub = if q == 1 {
            Substitution { shifts_second: false, s: s0, k: p as u32 }
        } else {
            Substitution { shifts_second: true, s: s0, k: q as u32 }
        };
        cur = cur.shifted(sub.shifts_second, &sub.s, sub.k)?;
        log.push(sub);
    }
    if degenerate_face(&cur).is_some() {
        return Err(GermError::AdaptationExhausted { iters: max_iter, lower_bound: fmt_q(&lower_bound(g)) });
    }
    Ok((cur, log))
}
