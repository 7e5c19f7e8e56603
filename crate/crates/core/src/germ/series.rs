use super::{GermError, Mono2, PlaneGerm};
use crate::rational::Q;
use crate::weights::Exp;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Affine chart `x_i = 1` centred at `base` (with `base[i] = 1`), on which
/// `x_j` is solved for as a power series in the two remaining variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub i: usize,
    pub j: usize,
    pub base: [Q; 4],
}

impl Chart {
    /// The vertex `O_i`.
    pub fn vertex(i: usize, j: usize) -> Self {
        let mut base: [Q; 4] = std::array::from_fn(|_| Q::zero());
        base[i] = Q::one();
        Chart { i, j, base }
    }

    /// The two coordinates left after eliminating `x_j`, in increasing order.
    pub fn free_vars(&self) -> [usize; 2] {
        let v: Vec<usize> = (0..4).filter(|&k| k != self.i && k != self.j).collect();
        [v[0], v[1]]
    }
}

type Bivar = BTreeMap<Mono2, Q>;

/// `f` in local coordinates `(s, u, v)` around the chart centre, grouped
/// by the power of `s = x_j - base_j`.
fn local_expansion(f: &BTreeMap<Exp, Q>, chart: &Chart) -> Result<Vec<Bivar>, GermError> {
    if chart.i == chart.j || chart.i > 3 || chart.j > 3 || !chart.base[chart.i].is_one() {
        return Err(GermError::BadChart("need i ≠ j and base[i] = 1".into()));
    }
    let [ku, kv] = chart.free_vars();
    let mut by_s: Vec<Bivar> = Vec::new();
    for (e, c) in f {
        // Product over k ≠ i of (base_k + y_k)^{e_k}, as (s,u,v) exponent maps.
        let mut acc: BTreeMap<[u32; 3], Q> = [([0, 0, 0], c.clone())].into_iter().collect();
        for (slot, k) in [(0usize, chart.j), (1, ku), (2, kv)] {
            let n = e[k];
            if n == 0 {
                continue;
            }
            let b = &chart.base[k];
            let mut next: BTreeMap<[u32; 3], Q> = BTreeMap::new();
            let mut binom = BigInt::one();
            for p in 0..=n {
                // C(n,p) b^{n-p} y^p
                let coef = Q::from_integer(binom.clone()) * pow_q(b, n - p);
                if !coef.is_zero() {
                    for (m, cc) in &acc {
                        let mut m2 = *m;
                        m2[slot] += p;
                        *next.entry(m2).or_insert_with(Q::zero) += cc * &coef;
                    }
                }
                binom = binom * BigInt::from(n - p) / BigInt::from(p + 1);
            }
            acc = next;
        }
        for (m, cc) in acc {
            if cc.is_zero() {
                continue;
            }
            let s = m[0] as usize;
            if by_s.len() <= s {
                by_s.resize(s + 1, Bivar::new());
            }
            *by_s[s].entry((m[1], m[2])).or_insert_with(Q::zero) += cc;
        }
    }
    for b in by_s.iter_mut() {
        b.retain(|_, c| !c.is_zero());
    }
    Ok(by_s)
}

fn pow_q(b: &Q, n: u32) -> Q {
    let mut r = Q::one();
    for _ in 0..n {
        r *= b;
    }
    r
}

fn mul_trunc(a: &Bivar, b: &Bivar, n: u32) -> Bivar {
    let mut out = Bivar::new();
    for (ma, ca) in a {
        if ma.0 + ma.1 > n {
            continue;
        }
        for (mb, cb) in b {
            let m = (ma.0 + mb.0, ma.1 + mb.1);
            if m.0 + m.1 <= n {
                *out.entry(m).or_insert_with(Q::zero) += ca * cb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add_into(acc: &mut Bivar, b: &Bivar, scale: &Q, n: u32) {
    for (m, c) in b {
        if m.0 + m.1 <= n {
            *acc.entry(*m).or_insert_with(Q::zero) += c * scale;
        }
    }
    acc.retain(|_, c| !c.is_zero());
}

/// `Σ_k F_k(u,v) φ^k` truncated at total degree `n` (Horner).
fn eval_in_s(by_s: &[Bivar], phi: &Bivar, n: u32) -> Bivar {
    let mut acc = Bivar::new();
    for fk in by_s.iter().rev() {
        acc = mul_trunc(&acc, phi, n);
        add_into(&mut acc, fk, &Q::one(), n);
    }
    acc
}

fn derivative_in_s(by_s: &[Bivar]) -> Vec<Bivar> {
    by_s.iter()
        .enumerate()
        .skip(1)
        .map(|(k, fk)| fk.iter().map(|(m, c)| (*m, c * Q::from_integer(BigInt::from(k)))).collect())
        .collect()
}

/// Inverse of a series with nonzero constant term, truncated at `n`.
fn inverse_trunc(a: &Bivar, n: u32) -> Bivar {
    let c0 = a.get(&(0, 0)).expect("unit").clone();
    let mut inv: Bivar = [((0, 0), c0.recip())].into_iter().collect();
    let mut prec = 0u32;
    while prec < n {
        prec = (2 * prec + 1).min(n);
        // inv ← inv (2 - a inv)
        let ai = mul_trunc(a, &inv, prec);
        let mut two_minus: Bivar = Bivar::new();
        two_minus.insert((0, 0), Q::from_integer(2.into()));
        add_into(&mut two_minus, &ai, &-Q::one(), prec);
        inv = mul_trunc(&inv, &two_minus, prec);
    }
    inv
}

/// Power series solution `x_j = base_j + φ(u,v)` of `f = 0` on a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElimSolution {
    pub chart: Chart,
    pub trunc: u32,
    /// Coefficients of `φ` in the free variables `chart.free_vars()`.
    pub phi: BTreeMap<Mono2, Q>,
    by_s: Vec<Bivar>,
}

impl ElimSolution {
    /// Solves by Newton iteration with precision doubling.
    pub fn solve(f: &BTreeMap<Exp, Q>, chart: &Chart, trunc: u32) -> Result<Self, GermError> {
        let by_s = local_expansion(f, chart)?;
        let f0 = by_s.first().cloned().unwrap_or_default();
        if f0.contains_key(&(0, 0)) {
            return Err(GermError::BadChart("chart centre is not on the hypersurface".into()));
        }
        let has_linear = by_s.get(1).is_some_and(|b| b.contains_key(&(0, 0)));
        if !has_linear {
            return Err(GermError::BadChart("eliminated variable has zero derivative at the centre".into()));
        }
        let ds = derivative_in_s(&by_s);
        let mut phi = Bivar::new();
        let mut prec = 0u32;
        loop {
            prec = (2 * prec + 1).min(trunc);
            let val = eval_in_s(&by_s, &phi, prec);
            let der = eval_in_s(&ds, &phi, prec);
            let step = mul_trunc(&val, &inverse_trunc(&der, prec), prec);
            add_into(&mut phi, &step, &-Q::one(), prec);
            if prec == trunc {
                // One more pass at full precision settles the top degree.
                let val = eval_in_s(&by_s, &phi, prec);
                if val.is_empty() {
                    break;
                }
                let step = mul_trunc(&val, &inverse_trunc(&der, prec), prec);
                add_into(&mut phi, &step, &-Q::one(), prec);
                break;
            }
        }
        Ok(ElimSolution { chart: chart.clone(), trunc, phi, by_s })
    }

    /// `f` composed with the solution, through the truncation degree.
    pub fn residual(&self) -> BTreeMap<Mono2, Q> {
        eval_in_s(&self.by_s, &self.phi, self.trunc)
    }
}

/// Germ of `{x_w = 0} ∩ X` on the chart: the solved series when `w = j`,
/// the coordinate `x_w` when `w` is free.
pub fn eliminate_and_restrict(
    f: &BTreeMap<Exp, Q>,
    chart: &Chart,
    w: usize,
    trunc: u32,
) -> Result<PlaneGerm, GermError> {
    if w == chart.j {
        let sol = ElimSolution::solve(f, chart, trunc)?;
        let mut phi = sol.phi.clone();
        if !chart.base[w].is_zero() {
            *phi.entry((0, 0)).or_insert_with(Q::zero) += &chart.base[w];
        }
        return PlaneGerm::new(phi, Some(trunc));
    }
    coordinate_germ(chart, w)
}

fn coordinate_germ(chart: &Chart, w: usize) -> Result<PlaneGerm, GermError> {
    let [ku, kv] = chart.free_vars();
    if !chart.base[w].is_zero() {
        return Err(GermError::NotAGerm);
    }
    if w == ku {
        PlaneGerm::from_support(&[(1, 0)])
    } else if w == kv {
        PlaneGerm::from_support(&[(0, 1)])
    } else {
        Err(GermError::BadChart(format!("divisor variable {w} is the chart variable")))
    }
}

/// Exact germ of `{x_w = 0} ∩ X`: for `w = j` this is `f` restricted to
/// `x_j = 0`, which equals the solved series up to a unit.
pub fn restrict_to_divisor(f: &BTreeMap<Exp, Q>, chart: &Chart, w: usize) -> Result<PlaneGerm, GermError> {
    if w != chart.j {
        return coordinate_germ(chart, w);
    }
    if !chart.base[w].is_zero() {
        return Err(GermError::NotAGerm);
    }
    slice_germ(f, chart)
}

/// Exact germ of `X ∩ {x_j = base_j}` on the chart, in the free coordinates.
pub fn slice_germ(f: &BTreeMap<Exp, Q>, chart: &Chart) -> Result<PlaneGerm, GermError> {
    let by_s = local_expansion(f, chart)?;
    let f0 = by_s.into_iter().next().unwrap_or_default();
    PlaneGerm::new(f0, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{lct_newton, DEFAULT_MAX_ITER};
    use crate::rational::{q, qi};

    fn poly(terms: &[(Exp, i64)]) -> BTreeMap<Exp, Q> {
        terms.iter().map(|&(e, c)| (e, qi(c))).collect()
    }

    // (1,2,3,5), d=10: x z^3 + t^2 + y z t + y^2 z^2 + y^5 + x^10
    fn f_12335() -> BTreeMap<Exp, Q> {
        poly(&[([1, 0, 3, 0], 1), ([0, 0, 0, 2], 1), ([0, 1, 1, 1], 3), ([0, 2, 2, 0], 1), ([0, 5, 0, 0], 1), ([10, 0, 0, 0], 1)])
    }

    #[test]
    fn double_point_at_vertex() {
        let f = f_12335();
        let chart = Chart::vertex(2, 0);
        let g = eliminate_and_restrict(&f, &chart, 0, 20).unwrap();
        assert_eq!(g.multiplicity(), 2);
        assert_eq!(lct_newton(&g, DEFAULT_MAX_ITER).unwrap().value, qi(1));
        let exact = restrict_to_divisor(&f, &chart, 0).unwrap();
        assert_eq!(lct_newton(&exact, DEFAULT_MAX_ITER).unwrap().value, qi(1));
    }

    #[test]
    fn residual_vanishes() {
        let f = f_12335();
        let sol = ElimSolution::solve(&f, &Chart::vertex(2, 0), 15).unwrap();
        assert!(sol.residual().is_empty());
    }

    #[test]
    fn non_ordinary_double_point() {
        // t^2 + 2 y z t + y^2 z^2 + y^5 is (t + y)^2 + y^5 at O_z
        let f = poly(&[([1, 0, 3, 0], 1), ([0, 0, 0, 2], 1), ([0, 1, 1, 1], 2), ([0, 2, 2, 0], 1), ([0, 5, 0, 0], 1), ([10, 0, 0, 0], 1)]);
        let chart = Chart::vertex(2, 0);
        let g = eliminate_and_restrict(&f, &chart, 0, 24).unwrap();
        assert_eq!(lct_newton(&g, DEFAULT_MAX_ITER).unwrap().value, q(7, 10));
    }

    #[test]
    fn bad_charts() {
        let f = f_12335();
        // O_x is not on X (x^10 present).
        assert!(matches!(ElimSolution::solve(&f, &Chart::vertex(0, 2), 5), Err(GermError::BadChart(_))));
        // At O_z, y has zero derivative.
        assert!(matches!(ElimSolution::solve(&f, &Chart::vertex(2, 1), 5), Err(GermError::BadChart(_))));
    }

    #[test]
    fn off_vertex_centre() {
        // f = x^2 y - x y^2 + z t on P(1,1,1,1)... use weights irrelevant here:
        // centre (1,1,0,0), eliminate y; divisor {y - x = 0} is the series
        let f = poly(&[([2, 1, 0, 0], 1), ([1, 2, 0, 0], -1), ([0, 0, 3, 0], 1), ([0, 0, 0, 3], 1)]);
        let chart = Chart { i: 0, j: 1, base: [qi(1), qi(1), qi(0), qi(0)] };
        let sol = ElimSolution::solve(&f, &chart, 9).unwrap();
        assert!(sol.residual().is_empty());
        // y - 1 = φ with φ = z^3 + t^3 + ...
        assert_eq!(sol.phi.get(&(3, 0)), Some(&qi(1)));
    }
}
