use super::{Mono2, PlaneGerm};
use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;
use std::collections::BTreeMap;

/// Where the diagonal `(t,t)` meets the Newton boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum DiagonalHit {
    Vertex(usize),
    /// Relative interior of the compact edge from vertex `k` to `k+1`.
    Edge(usize),
    /// The vertical ray above the first vertex.
    VerticalRay,
    /// The horizontal ray right of the last vertex.
    HorizontalRay,
}

/// Boundary of `conv(support) + R²₊`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonData {
    /// First coordinate strictly increasing, second strictly decreasing.
    pub vertices: Vec<Mono2>,
    pub t0: Q,
    pub hit: DiagonalHit,
}

/// A supporting line `n1·e1 + n2·e2 = c` of the polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Facet {
    pub n: (u64, u64),
    pub c: u64,
}

impl NewtonData {
    /// Facets with positive normals through vertices `k`, `k+1`, primitive.
    pub(crate) fn edge_facet(&self, k: usize) -> Facet {
        let (a, b) = self.vertices[k];
        let (c, d) = self.vertices[k + 1];
        let (n1, n2) = ((b - d) as u64, (c - a) as u64);
        let g = n1.gcd(&n2);
        let (n1, n2) = (n1 / g, n2 / g);
        Facet { n: (n1, n2), c: n1 * a as u64 + n2 * b as u64 }
    }

    /// All supporting lines through `(t0,t0)` with both normal entries
    /// positive: the hit edge, both edges at a hit vertex, and the diagonal
    /// normal `(1,1)` whenever it supports the polyhedron.
    pub(crate) fn supporting_at_diagonal(&self) -> Vec<Facet> {
        let mut out = Vec::new();
        let n_edges = self.vertices.len().saturating_sub(1);
        for k in 0..n_edges {
            let f = self.edge_facet(k);
            if Q::new(BigInt::from(f.c), BigInt::from(f.n.0 + f.n.1)) == self.t0 {
                out.push(f);
            }
        }
        if self.t0.is_integer() || (&self.t0 * Q::from_integer(2.into())).is_integer() {
            let two_t0 = (&self.t0 * Q::from_integer(2.into())).to_integer();
            let ok = self.vertices.iter().all(|&(a, b)| BigInt::from(a + b) >= two_t0);
            if ok {
                let c: u64 = two_t0.try_into().expect("small");
                out.push(Facet { n: (1, 1), c });
            }
        }
        out
    }

    /// Terms of the germ on the hit edge, if the diagonal meets an edge interior.
    pub(crate) fn face_terms(&self, g: &PlaneGerm) -> Option<(Facet, BTreeMap<Mono2, Q>)> {
        match self.hit {
            DiagonalHit::Edge(k) => {
                let f = self.edge_facet(k);
                let terms = g
                    .terms()
                    .iter()
                    .filter(|(m, _)| f.n.0 * m.0 as u64 + f.n.1 * m.1 as u64 == f.c)
                    .map(|(m, c)| (*m, c.clone()))
                    .collect();
                Some((f, terms))
            }
            _ => None,
        }
    }
}

fn cross(o: Mono2, a: Mono2, b: Mono2) -> i64 {
    let (ox, oy) = (o.0 as i64, o.1 as i64);
    (a.0 as i64 - ox) * (b.1 as i64 - oy) - (a.1 as i64 - oy) * (b.0 as i64 - ox)
}

/// Lower-left convex boundary and the diagonal parameter `t0`.
pub fn newton_data(g: &PlaneGerm) -> NewtonData {
    newton_data_of(&g.support())
}

pub(crate) fn newton_data_of(points: &[Mono2]) -> NewtonData {
    // Staircase-minimal points, increasing first coordinate.
    let mut min_by_x: BTreeMap<u32, u32> = BTreeMap::new();
    for &(a, b) in points {
        let e = min_by_x.entry(a).or_insert(b);
        *e = (*e).min(b);
    }
    let mut stairs: Vec<Mono2> = Vec::new();
    for (a, b) in min_by_x {
        if stairs.last().is_none_or(|&(_, pb)| b < pb) {
            stairs.push((a, b));
        }
    }
    let mut hull: Vec<Mono2> = Vec::new();
    for p in stairs {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let first = hull[0];
    let last = *hull.last().unwrap();
    let mut t0 = Q::from_integer(BigInt::from(first.0.max(last.1)));
    for k in 0..hull.len() - 1 {
        let (a, b) = hull[k];
        let (c, d) = hull[k + 1];
        let (n1, n2) = ((b - d) as i64, (c - a) as i64);
        let cc = n1 * a as i64 + n2 * b as i64;
        let t = Q::new(BigInt::from(cc), BigInt::from(n1 + n2));
        if t > t0 {
            t0 = t;
        }
    }
    let hit = locate(&hull, &t0);
    NewtonData { vertices: hull, t0, hit }
}

fn locate(hull: &[Mono2], t0: &Q) -> DiagonalHit {
    let qi = |x: u32| Q::from_integer(BigInt::from(x));
    if let Some(k) = hull.iter().position(|&(a, b)| qi(a) == *t0 && qi(b) == *t0) {
        return DiagonalHit::Vertex(k);
    }
    for k in 0..hull.len().saturating_sub(1) {
        let (a, _) = hull[k];
        let (c, _) = hull[k + 1];
        if qi(a) < *t0 && *t0 < qi(c) {
            let (b, d) = (hull[k].1, hull[k + 1].1);
            // On the line through the two vertices?
            let lhs = Q::from_integer(BigInt::from(b as i64 - d as i64)) * (t0 - qi(a));
            let rhs = Q::from_integer(BigInt::from(c as i64 - a as i64)) * (qi(b) - t0);
            if lhs == rhs {
                return DiagonalHit::Edge(k);
            }
        }
    }
    if qi(hull[0].0) == *t0 {
        DiagonalHit::VerticalRay
    } else {
        DiagonalHit::HorizontalRay
    }
}
