//! Global log canonical thresholds of quasismooth del Pezzo hypersurfaces.
//!
//! The threshold is the minimum over the coordinate curves `C_w = {x_w = 0}`
//! (for `a0 ≠ a1`) of `lct(X, λ·C_w)` with `λ = I/a_w`. Each curve is examined
//! at the coordinate vertices and at the singular points it has on the
//! coordinate edges; germs at quotient points are taken on the affine cover
//! chart `x_i = 1`, where the lct is unchanged. When `a0 = a1` the minimum
//! is attained on a reducible member of the pencil `|O(a0)|`.

use crate::germ::{
    lct_concurrent_lines, lct_newton, lct_weighted, restrict_to_divisor, slice_germ, Chart, GermDivisor, GermError,
    PlaneGerm, DEFAULT_MAX_ITER,
};
use crate::poly1::Poly1;
use crate::rational::{fmt_q, Q};
use crate::singular::{elimination_variables, singular_locus, SingularError, SingularLocus};
use crate::weights::{
    case_trichotomy, generic_quasismooth, is_hypersurface_well_formed, is_wps_well_formed, Case, Exp, MonomialSupport,
    QuasiPolynomial, Quasismoothness, Quintuple, WeightError, VAR_NAMES,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error("germ at {point}: {source}")]
    Germ { point: String, source: GermError },
    #[error("weighted projective space or hypersurface is not well formed")]
    NotWellFormed,
    #[error("not quasismooth: {0}")]
    NotQuasismooth(String),
    #[error("not a del Pezzo surface (I = {0})")]
    NotDelPezzo(i64),
    #[error("outside the main case: {0:?}")]
    NotMainCase(Case),
    #[error("condition tag {0} contradicts the polynomial")]
    TagMismatch(String),
    #[error("extra point {0} has no germ data")]
    MissingGermData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("curve index {0} out of range")]
    BadCurve(usize),
    #[error("branches are not exhaustive and exclusive over tags {0:?}")]
    BadBranches(Vec<String>),
}

fn germ_err(point: &str) -> impl Fn(GermError) -> SurfaceError + '_ {
    move |source| SurfaceError::Germ { point: point.to_string(), source }
}

/// A singular point of `C_w` off the coordinate strata, supplied by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtraPoint {
    pub curve: usize,
    pub label: String,
    /// Germ of `C_w` on a cover chart at the point.
    pub germ: Option<PlaneGerm>,
}

/// A concrete hypersurface together with its branch conditions.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    q: Quintuple,
    f: BTreeMap<Exp, Q>,
    support: MonomialSupport,
    locus: SingularLocus,
    tags: BTreeMap<String, bool>,
    extra_points: Vec<ExtraPoint>,
    max_iter: usize,
}

impl SurfaceModel {
    pub fn new(
        poly: &QuasiPolynomial,
        tags: BTreeMap<String, bool>,
        extra_points: Vec<ExtraPoint>,
    ) -> Result<Self, SurfaceError> {
        let q = poly.quintuple().clone();
        let f = poly.concrete_terms()?;
        let support = poly.support();
        if !is_wps_well_formed(q.weights()) || !is_hypersurface_well_formed(&q, &support) {
            return Err(SurfaceError::NotWellFormed);
        }
        if let Quasismoothness::Fail(s) = generic_quasismooth(&q, &support)? {
            let names: Vec<&str> = s.iter().map(|&i| VAR_NAMES[i]).collect();
            return Err(SurfaceError::NotQuasismooth(format!("stratum {{{}}}", names.join(","))));
        }
        strata_quasismooth(&f)?;
        if q.fano_index() < 1 {
            return Err(SurfaceError::NotDelPezzo(q.fano_index()));
        }
        for (tag, &value) in &tags {
            if let Some(mono) = tag.strip_prefix("contains_") {
                let e = parse_letters(mono).ok_or_else(|| SurfaceError::TagMismatch(tag.clone()))?;
                if support.contains(&e) != value {
                    return Err(SurfaceError::TagMismatch(tag.clone()));
                }
            }
        }
        if let Some(p) = extra_points.iter().find(|p| p.curve > 3) {
            return Err(SurfaceError::BadCurve(p.curve));
        }
        let locus = singular_locus(&q, &support)?;
        Ok(SurfaceModel { q, f, support, locus, tags, extra_points, max_iter: DEFAULT_MAX_ITER })
    }

    /// Cap on Newton–Puiseux adaptation steps per germ.
    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn quintuple(&self) -> &Quintuple {
        &self.q
    }

    pub fn polynomial(&self) -> &BTreeMap<Exp, Q> {
        &self.f
    }

    pub fn support(&self) -> &MonomialSupport {
        &self.support
    }

    pub fn singular_locus(&self) -> &SingularLocus {
        &self.locus
    }

    pub fn tags(&self) -> &BTreeMap<String, bool> {
        &self.tags
    }

    pub fn extra_points(&self) -> &[ExtraPoint] {
        &self.extra_points
    }
}

/// `"yzt"` → exponent vector; letters may repeat.
fn parse_letters(s: &str) -> Option<Exp> {
    let mut e = [0u32; 4];
    for ch in s.chars() {
        let i = VAR_NAMES.iter().position(|v| v.starts_with(ch))?;
        e[i] += 1;
    }
    (!s.is_empty()).then_some(e)
}

/// Terms of `f` involving only `x_i`, `x_k` and, if given, exactly one power
/// of `x_extra`, as a polynomial in `s = x_k` at `x_i = 1`.
fn edge_poly(f: &BTreeMap<Exp, Q>, i: usize, k: usize, extra: Option<usize>) -> Poly1 {
    Poly1::from_terms(
        f.iter()
            .filter(|(e, _)| {
                (0..4).all(|v| v == i || v == k || if Some(v) == extra { e[v] == 1 } else { e[v] == 0 })
            })
            .map(|(e, c)| (e[k] as usize, c.clone())),
    )
}

fn others(excl: &[usize]) -> Vec<usize> {
    (0..4).filter(|v| !excl.contains(v)).collect()
}

/// Quasismoothness of the concrete polynomial at the coordinate vertices and
/// along the open coordinate edges.
#[allow(clippy::needless_range_loop)]
pub fn strata_quasismooth(f: &BTreeMap<Exp, Q>) -> Result<(), SurfaceError> {
    let support: Vec<Exp> = f.keys().copied().collect();
    for i in 0..4 {
        let pure = support.iter().any(|e| (0..4).all(|v| v == i || e[v] == 0));
        let elim = support.iter().any(|e| {
            e[i] >= 1 && (0..4).any(|j| j != i && e[j] == 1 && (0..4).all(|v| v == i || v == j || e[v] == 0))
        });
        if !pure && !elim {
            return Err(SurfaceError::NotQuasismooth(format!("vertex O_{}", VAR_NAMES[i])));
        }
    }
    for i in 0..4 {
        for k in i + 1..4 {
            let h = edge_poly(f, i, k, None);
            let mut g = h.gcd(&h.derivative());
            for m in others(&[i, k]) {
                g = g.gcd(&edge_poly(f, i, k, Some(m)));
            }
            if g.is_zero() || g.strip_x().degree().unwrap_or(0) > 0 {
                return Err(SurfaceError::NotQuasismooth(format!("edge O_{}O_{}", VAR_NAMES[i], VAR_NAMES[k])));
            }
        }
    }
    Ok(())
}

/// Analysis of one special point of a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointAnalysis {
    pub point: String,
    /// Germ of the curve on the cover chart; `None` where it is smooth.
    pub germ: Option<String>,
    #[serde(with = "crate::rational::serde_q")]
    pub local_lct: Q,
}

/// `lct(X, λ·C_w)` with `λ = I/a_w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveAnalysis {
    pub w: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub lambda: Q,
    pub points: Vec<PointAnalysis>,
    /// Largest multiplicity of a component of `C_w`.
    pub multiplicity: u32,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
    /// Point attaining the value, or `"general point"`.
    pub witness: String,
}

fn point_label(coords: &[Q; 4]) -> String {
    let parts: Vec<String> = coords.iter().map(fmt_q).collect();
    format!("({})", parts.join(":"))
}

fn smooth_point(point: String) -> PointAnalysis {
    PointAnalysis { point, germ: None, local_lct: Q::one() }
}

fn germ_point(point: String, g: PlaneGerm, max_iter: usize) -> Result<PointAnalysis, SurfaceError> {
    let cert = lct_newton(&g, max_iter).map_err(germ_err(&point))?;
    Ok(PointAnalysis { point, germ: Some(g.to_string()), local_lct: cert.value })
}

/// Largest root multiplicity of `g` along generic lines, where
/// `g = f|_{x_w = 0}`; above one exactly when `C_w` is non-reduced.
fn component_multiplicity(f: &BTreeMap<Exp, Q>, w: usize) -> u32 {
    let rest = others(&[w]);
    let samples: [(i64, i64); 3] = [(2, 3), (5, -7), (-11, 13)];
    let mut worst = 1;
    for &v in &rest {
        let fixed: Vec<usize> = rest.iter().copied().filter(|&u| u != v).collect();
        let mut best = u32::MAX;
        for &(c0, c1) in &samples {
            let p = Poly1::from_terms(f.iter().filter(|(e, _)| e[w] == 0).map(|(e, c)| {
                let scale = Q::from_integer(BigInt::from(c0).pow(e[fixed[0]]) * BigInt::from(c1).pow(e[fixed[1]]));
                (e[v] as usize, c * scale)
            }));
            if p.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut m = 1;
            let mut cur = p.gcd(&p.derivative());
            while cur.degree().unwrap_or(0) > 0 {
                m += 1;
                cur = cur.gcd(&cur.derivative());
            }
            best = best.min(m);
        }
        if best != u32::MAX {
            worst = worst.max(best);
        }
    }
    worst
}

/// Vertices of `C_w` and its singular points on the open coordinate edges.
fn curve_points(model: &SurfaceModel, w: usize) -> Result<Vec<PointAnalysis>, SurfaceError> {
    let f = &model.f;
    let mut out = Vec::new();
    for i in others(&[w]) {
        if model.support.has_pure_power(i) {
            continue;
        }
        let label = format!("O_{}", VAR_NAMES[i]);
        let elim = elimination_variables(&model.support, i);
        if elim.iter().any(|&j| j != w) {
            out.push(smooth_point(label));
        } else {
            let g = restrict_to_divisor(f, &Chart::vertex(i, w), w).map_err(germ_err(&label))?;
            out.push(germ_point(label, g, model.max_iter)?);
        }
    }
    for (i, k) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
        if i == w || k == w {
            continue;
        }
        let m = others(&[i, k, w])[0];
        let edge = format!("O_{}O_{}", VAR_NAMES[i], VAR_NAMES[k]);
        let h = edge_poly(f, i, k, None);
        let hw = edge_poly(f, i, k, Some(w));
        // Singular points of C_w: multiple roots of h where ∂f/∂x_w ≠ 0, or,
        // when the edge lies on X, the zeros of ∂f/∂x_m.
        let cand = if h.is_zero() { edge_poly(f, i, k, Some(m)) } else { h.gcd(&h.derivative()) };
        let cand = cand.strip_x();
        if cand.degree().unwrap_or(0) == 0 {
            continue;
        }
        let cand = cand.div_rem(&cand.gcd(&hw)).0;
        if cand.degree().unwrap_or(0) == 0 {
            continue;
        }
        if h.is_zero() && cand.gcd(&cand.derivative()).degree().unwrap_or(0) == 0 {
            // C_w is the edge plus a curve crossing it transversally.
            out.push(PointAnalysis { point: format!("nodes on {edge}"), germ: Some("u*v".into()), local_lct: Q::one() });
            continue;
        }
        let roots = cand.rational_roots().unwrap_or_default();
        let found: usize = roots.iter().map(|r| cand.root_multiplicity(r)).sum();
        if found != cand.degree().unwrap_or(0) {
            return Err(SurfaceError::Unsupported(format!("irrational singular point of C_{} on {edge}", VAR_NAMES[w])));
        }
        for r in roots {
            let mut base: [Q; 4] = std::array::from_fn(|_| Q::zero());
            base[i] = Q::one();
            base[k] = r;
            let label = point_label(&base);
            let g = restrict_to_divisor(f, &Chart { i, j: w, base }, w).map_err(germ_err(&label))?;
            out.push(germ_point(label, g, model.max_iter)?);
        }
    }
    Ok(out)
}

/// `lct(X, (I/a_w)·C_w)`.
pub fn coordinate_curve_lct(model: &SurfaceModel, w: usize) -> Result<CurveAnalysis, SurfaceError> {
    if w > 3 {
        return Err(SurfaceError::BadCurve(w));
    }
    let lambda = Q::new(BigInt::from(model.q.fano_index()), BigInt::from(model.q.weight(w)));
    let mut points = curve_points(model, w)?;
    for p in model.extra_points.iter().filter(|p| p.curve == w) {
        let g = p.germ.clone().ok_or_else(|| SurfaceError::MissingGermData(p.label.clone()))?;
        points.push(germ_point(p.label.clone(), g, model.max_iter)?);
    }
    let multiplicity = component_multiplicity(&model.f, w);
    let mut value = Q::new(BigInt::one(), BigInt::from(multiplicity)) / &lambda;
    let mut witness = "general point".to_string();
    for p in &points {
        let local = &p.local_lct / &lambda;
        if local < value {
            value = local;
            witness = p.point.clone();
        }
    }
    Ok(CurveAnalysis { w, lambda, points, multiplicity, value, witness })
}

/// Divisor and point at which a global lct is attained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub divisor: String,
    pub point: String,
}

/// One branch of a (possibly conditional) global lct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LctBranch {
    pub condition: BTreeMap<String, bool>,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalLct {
    pub branches: Vec<LctBranch>,
}

impl GlobalLct {
    /// Branches from several models of one surface, one per tag assignment;
    /// the assignments must cover every combination of the tags exactly once.
    pub fn from_branches(branches: Vec<LctBranch>) -> Result<Self, SurfaceError> {
        let names: Vec<String> = branches.first().map(|b| b.condition.keys().cloned().collect()).unwrap_or_default();
        let bad = || SurfaceError::BadBranches(names.clone());
        if branches.is_empty() || names.len() >= 16 {
            return Err(bad());
        }
        let mut seen = std::collections::BTreeSet::new();
        for b in &branches {
            if b.condition.keys().ne(names.iter()) {
                return Err(bad());
            }
            let key: Vec<bool> = b.condition.values().copied().collect();
            if !seen.insert(key) {
                return Err(bad());
            }
        }
        if seen.len() != 1 << names.len() {
            return Err(bad());
        }
        Ok(GlobalLct { branches })
    }

    /// The value on the branch selected by `tags`.
    pub fn value_for(&self, tags: &BTreeMap<String, bool>) -> Option<&Q> {
        self.branches.iter().find(|b| b.condition.iter().all(|(k, v)| tags.get(k) == Some(v))).map(|b| &b.value)
    }
}

/// Global lct of one model, with the curves that were examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceLct {
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
    pub witness: Witness,
    pub curves: Vec<CurveAnalysis>,
    /// Reducible members of `|O(a0)|` (only when `a0 = a1`).
    pub members: Vec<MemberAnalysis>,
}

/// A member `{y = μx}` (or `{x = 0}`) of the pencil `|O(a0)|` when `a0 = a1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberAnalysis {
    pub divisor: String,
    pub point: PointAnalysis,
    pub lines: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
}

fn curve_name(w: usize) -> String {
    format!("C_{}", VAR_NAMES[w])
}

/// The threshold, with all curve and member analyses.
pub fn analyze(model: &SurfaceModel) -> Result<SurfaceLct, SurfaceError> {
    let q = &model.q;
    let case = case_trichotomy(q);
    if case != Case::MainCase {
        return Err(SurfaceError::NotMainCase(case));
    }
    let curves: Vec<CurveAnalysis> =
        (0..3).into_par_iter().map(|w| coordinate_curve_lct(model, w)).collect::<Result<_, _>>()?;
    let best = curves.iter().min_by(|a, b| a.value.cmp(&b.value)).expect("three curves");
    let mut value = best.value.clone();
    let mut witness = Witness { divisor: curve_name(best.w), point: best.witness.clone() };
    let mut members = Vec::new();
    if q.weight(0) == q.weight(1) {
        members = pencil_members(model)?;
        for m in &members {
            if m.value < value {
                value = m.value.clone();
                witness = Witness { divisor: m.divisor.clone(), point: m.point.point.clone() };
            }
        }
    }
    Ok(SurfaceLct { value, witness, curves, members })
}

/// Reducible members of `|O(a0)|` through the points of `X` on the line
/// `z = t = 0`; supported for the weights `(3,3,4,4)` and `(3,3,5,5)`.
fn pencil_members(model: &SurfaceModel) -> Result<Vec<MemberAnalysis>, SurfaceError> {
    let q = &model.q;
    let w = q.weights();
    if w != [3, 3, 4, 4] && w != [3, 3, 5, 5] {
        return Err(SurfaceError::Unsupported(format!("a0 = a1 for weights {w:?}")));
    }
    let f = &model.f;
    let lambda = Q::new(BigInt::from(q.fano_index()), BigInt::from(q.weight(0)));
    // Points of X on {z = t = 0} must be reduced, as must those on {x = y = 0}.
    for (i, k) in [(0, 1), (2, 3)] {
        let h = edge_poly(f, i, k, None);
        let top = if model.support.has_pure_power(k) { 0 } else { 1 };
        if h.is_zero() || h.gcd(&h.derivative()).degree().unwrap_or(0) > 0 || top > 1 {
            return Err(SurfaceError::Unsupported(format!(
                "non-reduced points on O_{}O_{}",
                VAR_NAMES[i], VAR_NAMES[k]
            )));
        }
    }
    let h = edge_poly(f, 0, 1, None);
    let mut charts: Vec<(String, Chart)> = Vec::new();
    for mu in h.rational_roots().unwrap_or_default() {
        let mut base: [Q; 4] = std::array::from_fn(|_| Q::zero());
        base[0] = Q::one();
        base[1] = mu.clone();
        let name = if mu.is_zero() {
            "C_y".to_string()
        } else {
            let sign = if mu.is_negative() { '+' } else { '-' };
            let m = mu.abs();
            if m.is_one() { format!("y {sign} x") } else { format!("y {sign} {}*x", fmt_q(&m)) }
        };
        charts.push((name, Chart { i: 0, j: 1, base }));
    }
    if !model.support.has_pure_power(1) {
        charts.push(("C_x".to_string(), Chart::vertex(1, 0)));
    }
    if charts.is_empty() {
        return Err(SurfaceError::Unsupported("no member of |O(a0)| splits over Q".into()));
    }
    let mut out = Vec::new();
    for (divisor, chart) in charts {
        let label = point_label(&chart.base);
        let g = slice_germ(f, &chart).map_err(germ_err(&label))?;
        let pa = germ_point(label.clone(), g.clone(), model.max_iter)?;
        let lines = concurrent_line_count(&g).ok_or_else(|| {
            SurfaceError::Unsupported(format!("member {divisor} is not a union of distinct lines at {label}"))
        })?;
        let ones = vec![Q::one(); lines];
        let closed = lct_concurrent_lines(&ones).min(Q::one());
        if closed != pa.local_lct {
            return Err(SurfaceError::Unsupported(format!("line count and polygon disagree at {label}")));
        }
        let value = lct_weighted(&GermDivisor::single(g, lambda.clone()).map_err(germ_err(&label))?, model.max_iter)
            .map_err(germ_err(&label))?
            .value
            .min(lambda.recip());
        out.push(MemberAnalysis { divisor, point: pa, lines, value });
    }
    Ok(out)
}

/// Number of lines when `g` is a product of pairwise distinct lines through the origin.
fn concurrent_line_count(g: &PlaneGerm) -> Option<usize> {
    let k = g.multiplicity();
    if g.terms().keys().any(|m| m.0 + m.1 != k) {
        return None;
    }
    let p = Poly1::from_terms(g.terms().iter().map(|(m, c)| (m.0 as usize, c.clone())));
    // A root at infinity (v | g) has multiplicity k - deg p.
    let at_infinity = k as usize - p.degree().unwrap_or(0);
    let squarefree = p.gcd(&p.derivative()).degree().unwrap_or(0) == 0;
    (squarefree && at_infinity <= 1).then_some(k as usize)
}

/// Single-branch global lct of one model.
pub fn global_lct(model: &SurfaceModel) -> Result<GlobalLct, SurfaceError> {
    let s = analyze(model)?;
    Ok(GlobalLct { branches: vec![LctBranch { condition: model.tags.clone(), value: s.value, witness: s.witness }] })
}

/// Maximum of the applicable lower bounds `a0·a_k/(d·I)`.
pub fn boyer_lower_bound(q: &Quintuple, support: &MonomialSupport) -> Q {
    let di = BigInt::from(q.degree()) * BigInt::from(q.fano_index());
    let b = |k: usize| Q::new(BigInt::from(q.weight(0) * q.weight(k)), di.clone());
    let mut best = b(1);
    if !support.restricted_to(&[2, 3]).is_empty() {
        best = best.max(b(2));
    }
    if support.has_pure_power(3) {
        best = best.max(b(3));
    }
    best
}

/// lct of the weighted projective space itself.
pub fn wps_lct(weights: [u64; 4]) -> Q {
    Q::new(BigInt::from(weights[0]), BigInt::from(weights.iter().sum::<u64>()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use crate::weights::{parse_monomial, Coeff};

    fn model(w: [u64; 4], d: u64, terms: &[(&str, i64)]) -> Result<SurfaceModel, SurfaceError> {
        let qq = Quintuple::new(w, d).unwrap();
        let t = terms.iter().map(|&(m, c)| (parse_monomial(m).unwrap(), Coeff::Value(qi(c)))).collect();
        SurfaceModel::new(&QuasiPolynomial::new(qq, t)?, BTreeMap::new(), vec![])
    }

    fn lct(m: &SurfaceModel) -> Q {
        analyze(m).unwrap().value
    }

    #[test]
    fn five_fourteen() {
        let m = model([5, 14, 17, 21], 56, &[("y*t^2", 1), ("y^4", 2), ("x*z^3", 3), ("x^5*y*z", 4), ("x^7*t", 5)]).unwrap();
        let cx = coordinate_curve_lct(&m, 0).unwrap();
        assert_eq!(cx.lambda, q(1, 5));
        assert_eq!(cx.value, q(25, 8));
        let cy = coordinate_curve_lct(&m, 1).unwrap();
        assert_eq!(cy.value * &cy.lambda, q(3, 7));
        assert_eq!(lct(&m), q(25, 8));
    }

    #[test]
    fn one_two_three_five_branches() {
        // t^2 + a yt z ... ordinary node at O_z on C_x
        let node = model([1, 2, 3, 5], 10, &[("t^2", 1), ("z^3*x", 1), ("y^5", 1), ("x^10", 1), ("y*z*t", 3), ("y^2*z^2", 1)]).unwrap();
        let cx = coordinate_curve_lct(&node, 0).unwrap();
        assert_eq!(cx.value, qi(1));
        let tac = model([1, 2, 3, 5], 10, &[("t^2", 1), ("z^3*x", 1), ("y^5", 1), ("x^10", 1), ("y*z*t", 2), ("y^2*z^2", 1)]).unwrap();
        let cx = coordinate_curve_lct(&tac, 0).unwrap();
        assert_eq!(cx.value, q(7, 10));
        assert_eq!(cx.witness, "O_z");
    }

    #[test]
    fn three_three_five_five() {
        // (y-x)(y-2x)(y-3x)(y+x)(y+2x) + (z-t)(z-2t)(z-3t)
        let mut terms: BTreeMap<String, i64> = BTreeMap::new();
        let quint = [1i64, 2, 3, -1, -2]; // roots of y/x
        let mut coeffs = vec![1i64];
        for r in quint {
            let mut next = vec![0i64; coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            coeffs = next;
        }
        let roots = [1i64, 2, 3];
        for (k, c) in coeffs.iter().enumerate() {
            terms.insert(format!("x^{}*y^{}", 5 - k, k), *c);
        }
        let mut cub = vec![1i64];
        for r in roots {
            let mut next = vec![0i64; cub.len() + 1];
            for (k, c) in cub.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= r * c;
            }
            cub = next;
        }
        for (k, c) in cub.iter().enumerate() {
            terms.insert(format!("t^{}*z^{}", 3 - k, k), *c);
        }
        let terms: Vec<(&str, i64)> = terms.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let m = model([3, 3, 5, 5], 15, &terms).unwrap();
        let s = analyze(&m).unwrap();
        assert_eq!(s.value, qi(2));
        assert!(s.members.iter().all(|m| m.lines == 3));
    }

    #[test]
    fn boyer_examples() {
        let qq = Quintuple::new([1, 2, 3, 5], 10).unwrap();
        let sup = MonomialSupport::new(&qq, [parse_monomial("t^2").unwrap(), parse_monomial("x^10").unwrap()]).unwrap();
        assert_eq!(boyer_lower_bound(&qq, &sup), q(1, 2));
        let qq = Quintuple::new([13, 35, 81, 128], 256).unwrap();
        let sup = MonomialSupport::new(&qq, [parse_monomial("t^2").unwrap()]).unwrap();
        assert_eq!(boyer_lower_bound(&qq, &sup), q(13, 2));
    }

    #[test]
    fn wps_examples() {
        assert_eq!(wps_lct([1, 1, 1, 1]), q(1, 4));
        assert_eq!(wps_lct([1, 2, 3, 5]), q(1, 11));
        assert_eq!(wps_lct([2, 3, 5, 9]), q(2, 19));
    }

    #[test]
    fn concrete_strata_are_checked() {
        // x^3 + y^3 + z^3 + t^3 with a double point forced on the edge O_xO_y
        let bad = model([1, 1, 1, 1], 3, &[("x^3", 2), ("x^2*y", -3), ("y^3", 1), ("z^3", 1), ("t^3", 1)]);
        assert!(matches!(bad, Err(SurfaceError::NotQuasismooth(_))));
    }

    #[test]
    fn contains_tag_is_checked() {
        let qq = Quintuple::new([1, 3, 5, 7], 15).unwrap();
        let t: BTreeMap<Exp, Coeff> = [("z^3", 1), ("y^5", 1), ("x*t^2", 1), ("x^15", 1), ("y*t*x^5", 1)]
            .iter()
            .map(|&(m, c)| (parse_monomial(m).unwrap(), Coeff::Value(qi(c))))
            .collect();
        let poly = QuasiPolynomial::new(qq, t).unwrap();
        let tags: BTreeMap<String, bool> = [("contains_yzt".to_string(), true)].into_iter().collect();
        assert!(matches!(SurfaceModel::new(&poly, tags, vec![]), Err(SurfaceError::TagMismatch(_))));
    }
}
