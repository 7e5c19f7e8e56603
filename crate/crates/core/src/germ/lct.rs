use super::adapt::{newton_adapt, Substitution};
use super::newton::{newton_data, DiagonalHit};
use super::{GermDivisor, GermError, PlaneGerm};
use crate::rational::{fmt_q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub const DEFAULT_MAX_ITER: usize = 16;

/// An exact lct together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LctCertificate {
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
    /// Diagonal parameter of the (scaled) adapted Newton polyhedron.
    #[serde(with = "crate::rational::serde_q")]
    pub t0: Q,
    pub attained_by: DiagonalHit,
    pub adapted_coordinates: Vec<Substitution>,
}

/// Adapted `t0`, and whether it is exact (`false`: only an upper bound
/// because the truncation hides part of the boundary).
fn adapted_t0(g: &PlaneGerm, max_iter: usize) -> Result<(Q, DiagonalHit, Vec<Substitution>, bool), GermError> {
    let (h, subs) = newton_adapt(g, max_iter)?;
    let nd = newton_data(&h);
    let exact = match h.trunc() {
        None => true,
        Some(n) => nd.supporting_at_diagonal().iter().any(|f| f.n.0.min(f.n.1) * (n as u64 + 1) > f.c),
    };
    Ok((nd.t0, nd.hit, subs, exact))
}

fn scale_bound(e: GermError, by: &Q) -> GermError {
    let rescale = |s: String| fmt_q(&(crate::rational::parse_q(&s).expect("own output") / by));
    match e {
        GermError::AdaptationExhausted { iters, lower_bound } => {
            GermError::AdaptationExhausted { iters, lower_bound: rescale(lower_bound) }
        }
        GermError::IrrationalRoot { lower_bound } => GermError::IrrationalRoot { lower_bound: rescale(lower_bound) },
        GermError::NonIntegralSlope { lower_bound } => GermError::NonIntegralSlope { lower_bound: rescale(lower_bound) },
        other => other,
    }
}

/// `min(1, 1/t0)` of the adapted Newton polyhedron.
pub fn lct_newton(g: &PlaneGerm, max_iter: usize) -> Result<LctCertificate, GermError> {
    let (t0, hit, subs, exact) = adapted_t0(g, max_iter)?;
    if !exact && t0 > Q::one() {
        return Err(GermError::TruncationTooSmall(g.trunc().unwrap_or(0)));
    }
    let value = if t0 <= Q::one() { Q::one() } else { t0.recip() };
    Ok(LctCertificate { value, t0, attained_by: hit, adapted_coordinates: subs })
}

/// Closed form for `x^{n1} y^{n2} (x^{m1} + y^{m2})`, with `1/0 = ∞`, capped at 1.
pub fn lct_igusa(n1: u64, n2: u64, m1: u64, m2: u64) -> Q {
    let mut best = Q::one();
    let mut consider = |num: u64, den: u64| {
        if den > 0 {
            let v = Q::new(BigInt::from(num), BigInt::from(den));
            if v < best {
                best = v;
            }
        }
    };
    consider(1, n1);
    consider(1, n2);
    consider(m1 + m2, m1 * m2 + m1 * n2 + m2 * n1);
    best
}

/// `min(min_i 1/λ_i, 2/Σλ_i)` for pairwise distinct lines through a point.
pub fn lct_concurrent_lines(multiplicities: &[Q]) -> Q {
    let total: Q = multiplicities.iter().sum();
    let mut best = Q::from_integer(2.into()) / total;
    for l in multiplicities {
        let v = l.recip();
        if v < best {
            best = v;
        }
    }
    best
}

/// lct of `Σ λ_i·{g_i = 0}` at the origin: `1/t0` of `Σ λ_i·Newt(g_i)` after
/// adapting the product with cleared multiplicities, capped by `1/λ_i`.
pub fn lct_weighted(div: &GermDivisor, max_iter: usize) -> Result<LctCertificate, GermError> {
    let comps = div.components();
    let cap = comps.iter().map(|(_, l)| l.recip()).min().expect("nonempty");
    if comps.len() == 1 {
        let (g, l) = &comps[0];
        let cert = lct_newton(g, max_iter).map_err(|e| scale_bound(e, l))?;
        return Ok(LctCertificate { value: &cert.value / l, t0: &cert.t0 * l, ..cert });
    }
    let den = comps.iter().fold(BigInt::one(), |acc, (_, l)| acc.lcm(l.denom()));
    let dq = Q::from_integer(den.clone());
    let mut product: Option<PlaneGerm> = None;
    for (g, l) in comps {
        let k = (l * &dq).to_integer().to_u32().ok_or(GermError::NonPositiveMultiplicity)?;
        let p = g.pow(k);
        product = Some(match product {
            None => p,
            Some(acc) => acc.mul(&p),
        });
    }
    let product = product.expect("nonempty");
    let mult: Q = comps.iter().map(|(g, l)| l * Q::from_integer(g.multiplicity().into())).sum();
    let (t0, hit, subs, exact) = adapted_t0(&product, max_iter).map_err(|e| match e {
        GermError::AdaptationExhausted { iters, .. } => {
            GermError::AdaptationExhausted { iters, lower_bound: fmt_q(&mult.recip()) }
        }
        GermError::IrrationalRoot { .. } => GermError::IrrationalRoot { lower_bound: fmt_q(&mult.recip()) },
        GermError::NonIntegralSlope { .. } => GermError::NonIntegralSlope { lower_bound: fmt_q(&mult.recip()) },
        other => other,
    })?;
    let scaled_t0 = &t0 / &dq;
    if scaled_t0.is_zero() {
        return Err(GermError::Empty);
    }
    let polygon_value = scaled_t0.recip();
    if !exact && polygon_value < cap {
        return Err(GermError::TruncationTooSmall(product.trunc().unwrap_or(0)));
    }
    let value = if polygon_value < cap { polygon_value } else { cap };
    Ok(LctCertificate { value, t0: scaled_t0, attained_by: hit, adapted_coordinates: subs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn germ(terms: &[((u32, u32), i64)]) -> PlaneGerm {
        PlaneGerm::from_terms(terms.iter().map(|&(m, c)| (m, qi(c))), None).unwrap()
    }

    fn lct(g: &PlaneGerm) -> Q {
        lct_newton(g, DEFAULT_MAX_ITER).unwrap().value
    }

    #[test]
    fn cubic_curve_values() {
        // cusp, conic tangent to a line, three concurrent lines
        assert_eq!(lct(&germ(&[((0, 2), 1), ((3, 0), 1)])), q(5, 6));
        assert_eq!(lct(&germ(&[((0, 2), 1), ((4, 0), 1)])), q(3, 4));
        assert_eq!(lct(&germ(&[((2, 1), 1), ((1, 2), 1)])), q(2, 3));
    }

    #[test]
    fn degenerate_faces_get_adapted() {
        // (v + u)^2 + u^5
        assert_eq!(lct(&germ(&[((0, 2), 1), ((1, 1), 2), ((2, 0), 1), ((5, 0), 1)])), q(7, 10));
        // u (u + v)^3 → 1/3
        assert_eq!(lct(&germ(&[((4, 0), 1), ((3, 1), 3), ((2, 2), 3), ((1, 3), 1)])), q(1, 3));
        // (u+v)^2 alone is a double line
        assert_eq!(lct(&germ(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)])), q(1, 2));
    }

    #[test]
    fn igusa_examples() {
        assert_eq!(lct_igusa(0, 0, 2, 3), q(5, 6));
        assert_eq!(lct_igusa(1, 1, 1, 1), q(2, 3));
        assert_eq!(lct_igusa(2, 0, 1, 2), q(1, 2));
        assert_eq!(lct(&germ(&[((3, 0), 1), ((2, 2), 1)])), q(1, 2));
    }

    #[test]
    fn concurrent_lines() {
        assert_eq!(lct_concurrent_lines(&[qi(1), qi(1), qi(1)]), q(2, 3));
        assert_eq!(lct_concurrent_lines(&[qi(1), qi(3)]), q(1, 3));
        assert_eq!(lct_concurrent_lines(&[q(2, 5)]), q(5, 2));
    }

    #[test]
    fn weighted_examples() {
        let cusp = germ(&[((0, 2), 1), ((3, 0), 1)]);
        let d = GermDivisor::single(cusp, qi(2)).unwrap();
        assert_eq!(lct_weighted(&d, DEFAULT_MAX_ITER).unwrap().value, q(5, 12));
        let lines = GermDivisor::new(vec![(germ(&[((0, 1), 1)]), qi(3)), (germ(&[((1, 0), 1)]), qi(1))]).unwrap();
        assert_eq!(lct_weighted(&lines, DEFAULT_MAX_ITER).unwrap().value, q(1, 3));
        let three = GermDivisor::single(germ(&[((2, 1), 1), ((1, 2), 1)]), q(1, 3)).unwrap();
        assert_eq!(lct_weighted(&three, DEFAULT_MAX_ITER).unwrap().value, qi(2));
    }

    #[test]
    fn weighted_matches_lines_formula() {
        // lines u, v, u+v, u-v with multiplicities 1/2, 1, 1/3, 2/3
        let ls = [germ(&[((1, 0), 1)]), germ(&[((0, 1), 1)]), germ(&[((1, 0), 1), ((0, 1), 1)]), germ(&[((1, 0), 1), ((0, 1), -1)])];
        let ms = [q(1, 2), qi(1), q(1, 3), q(2, 3)];
        let d = GermDivisor::new(ls.iter().cloned().zip(ms.iter().cloned()).collect()).unwrap();
        assert_eq!(lct_weighted(&d, DEFAULT_MAX_ITER).unwrap().value, lct_concurrent_lines(&ms));
    }

    #[test]
    fn truncation_is_certified() {
        // v^2 + u^3 known through degree 2 only: t0 cannot be pinned.
        let g = PlaneGerm::new([((0, 2), qi(1))].into_iter().collect(), Some(2)).unwrap();
        assert_eq!(lct_newton(&g, DEFAULT_MAX_ITER), Err(GermError::TruncationTooSmall(2)));
        let g = PlaneGerm::new([((0, 2), qi(1)), ((3, 0), qi(1))].into_iter().collect(), Some(6)).unwrap();
        assert_eq!(lct(&g), q(5, 6));
        // A smooth truncated germ is certified through the cap.
        let g = PlaneGerm::new([((1, 0), qi(1))].into_iter().collect(), Some(1)).unwrap();
        assert_eq!(lct(&g), qi(1));
    }
}
