//! Normal curves on a triangulated torus boundary and their slopes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::slope::{intersection, Slope, SlopeTriple, Vec2};
use crate::tri::boundary::{BoundaryComplex, BoundaryTriangle, Side};
use crate::tri::homology::EdgeFrame;
use crate::tri::Skeleton;

/// A triangulated torus with an oriented homology vector on every edge.
///
/// Edges are numbered `0..vectors.len()`; `triangles[i][j]` is the side of
/// triangle `i` opposite its local corner `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusModel {
    pub triangles: Vec<[Side; 3]>,
    pub vectors: Vec<Vec2>,
}

/// Arcs around each local corner of each triangle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NormalCurve {
    pub arcs: Vec<[u64; 3]>,
}

impl NormalCurve {
    pub fn new(arcs: Vec<[u64; 3]>) -> Self {
        NormalCurve { arcs }
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.iter().flatten().all(|&a| a == 0)
    }

    pub fn arc_total(&self) -> u64 {
        self.arcs.iter().flatten().sum()
    }
}

/// An arc `(triangle, corner, index from the corner)`.
type Arc = (usize, usize, u64);

/// Corner at the tail of side `j` of a triangle.
fn side_tail(sides: &[Side; 3], j: usize) -> usize {
    let (a, b) = BoundaryTriangle::side_ends(j);
    if sides[j].forward {
        a
    } else {
        b
    }
}

/// The two sides meeting corner `c`.
fn sides_at(c: usize) -> [usize; 2] {
    match c {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

impl TorusModel {
    /// Checks closedness and the triangle relations of the vectors.
    pub fn new(triangles: Vec<[Side; 3]>, vectors: Vec<Vec2>) -> Result<Self> {
        let m = TorusModel { triangles, vectors };
        let mut uses = vec![0; m.vectors.len()];
        for tr in &m.triangles {
            for s in tr {
                *uses.get_mut(s.edge).ok_or(Error::BoundaryNotTorus)? += 1;
            }
            let [_, p1, p2] = m.lifted_corners(tr);
            let side0 = m.oriented(&tr[0]);
            if p2.sub(&p1) != side0 {
                return Err(Error::Invalid("edge vectors violate a triangle relation".into()));
            }
        }
        if uses.iter().any(|&u| u != 2) {
            return Err(Error::BoundaryNotTorus);
        }
        Ok(m)
    }

    /// The torus with edge classes `u`, `v` and `u + v`.
    pub fn from_pair(u: Vec2, v: Vec2) -> Self {
        let f = |edge| Side {
            edge,
            forward: true,
        };
        // (0, u, u+v) and (0, v, u+v); side j is opposite corner j.
        let triangles = vec![[f(1), f(2), f(0)], [f(0), f(2), f(1)]];
        let w = u.add(&v);
        TorusModel::new(triangles, vec![u, v, w]).expect("parallelogram torus")
    }

    /// A torus whose three edges carry the slopes of `t`.
    pub fn from_triple(t: &SlopeTriple) -> Self {
        let [a, b, c] = t.slopes().clone().map(|s| s.as_vec());
        for (p, q, r) in [(&a, &b, &c), (&a, &c, &b), (&b, &c, &a)] {
            for q2 in [q.clone(), q.neg()] {
                let sum = p.add(&q2);
                if sum == *r || sum == r.neg() {
                    return TorusModel::from_pair(p.clone(), q2);
                }
            }
        }
        unreachable!("a Farey triple has one slope equal to the sum or difference of the others")
    }

    /// The boundary torus of a triangulation, with vectors from `frame`.
    pub fn from_boundary(bc: &BoundaryComplex, sk: &Skeleton, frame: &EdgeFrame) -> Result<Self> {
        let triangles = bc
            .triangles
            .iter()
            .map(|tr| {
                tr.sides.map(|s| Side {
                    edge: bc.edge_slot(s.edge).expect("boundary edge"),
                    forward: s.forward,
                })
            })
            .collect();
        let vectors = bc
            .edges
            .iter()
            .map(|&e| frame.vector(sk, e).cloned().ok_or(Error::BoundaryNotTorus))
            .collect::<Result<_>>()?;
        TorusModel::new(triangles, vectors)
    }

    pub fn edge_slopes(&self) -> Vec<Slope> {
        self.vectors.iter().filter_map(Slope::from_vec).collect()
    }

    fn oriented(&self, s: &Side) -> Vec2 {
        if s.forward {
            self.vectors[s.edge].clone()
        } else {
            self.vectors[s.edge].neg()
        }
    }

    /// Corner positions of a triangle lifted to the plane, corner 0 at the origin.
    fn lifted_corners(&self, tr: &[Side; 3]) -> [Vec2; 3] {
        [Vec2::zero(), self.oriented(&tr[2]), self.oriented(&tr[1])]
    }

    /// Points on each edge; fails when the two sides of an edge disagree.
    pub fn edge_weights(&self, c: &NormalCurve) -> Result<Vec<u64>> {
        if c.arcs.len() != self.triangles.len() {
            return Err(Error::SizeMismatch {
                expected: self.triangles.len(),
                got: c.arcs.len(),
            });
        }
        let mut w: Vec<Option<u64>> = vec![None; self.vectors.len()];
        for (tr, arcs) in self.triangles.iter().zip(&c.arcs) {
            for (j, s) in tr.iter().enumerate() {
                let (a, b) = BoundaryTriangle::side_ends(j);
                let here = arcs[a] + arcs[b];
                match w[s.edge] {
                    None => w[s.edge] = Some(here),
                    Some(x) if x != here => return Err(Error::NotNormal),
                    _ => {}
                }
            }
        }
        Ok(w.into_iter().map(|x| x.unwrap_or(0)).collect())
    }

    /// Intersections with the 1-skeleton.
    pub fn length(&self, c: &NormalCurve) -> Result<u64> {
        Ok(self.edge_weights(c)?.iter().sum())
    }

    /// Position from the tail of side `j`'s edge of the arc end at index `k`
    /// from corner `corner`.
    fn point_on_side(&self, tr: &[Side; 3], j: usize, corner: usize, k: u64, w: u64) -> u64 {
        if side_tail(tr, j) == corner {
            k
        } else {
            w - 1 - k
        }
    }

    /// Splits a curve into closed components, each a cyclic list of
    /// `(arc, entry side, exit side)`.
    fn walk(&self, c: &NormalCurve) -> Result<Vec<Vec<(Arc, usize, usize)>>> {
        let w = self.edge_weights(c)?;
        let mut point_base = Vec::with_capacity(w.len());
        let mut acc = 0usize;
        for &x in &w {
            point_base.push(acc);
            acc += x as usize;
        }
        let mut all = Vec::new();
        for (i, row) in c.arcs.iter().enumerate() {
            for (corner, &n) in row.iter().enumerate() {
                all.extend((0..n).map(|k| (i, corner, k)));
            }
        }
        // Each point is the end of exactly two arcs.
        let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(2); acc];
        for (n, &(i, corner, k)) in all.iter().enumerate() {
            let tr = &self.triangles[i];
            for j in sides_at(corner) {
                let p = self.point_on_side(tr, j, corner, k, w[tr[j].edge]);
                ends[point_base[tr[j].edge] + p as usize].push((n, j));
            }
        }
        if ends.iter().any(|e| e.len() != 2) {
            return Err(Error::NotNormal);
        }
        let mut seen = vec![false; all.len()];
        let mut components = Vec::new();
        for start in 0..all.len() {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let first_entry = sides_at(all[start].1)[0];
            let (mut n, mut entry) = (start, first_entry);
            loop {
                seen[n] = true;
                let arc = all[n];
                let [s0, s1] = sides_at(arc.1);
                let exit = if entry == s0 { s1 } else { s0 };
                comp.push((arc, entry, exit));
                let tr = &self.triangles[arc.0];
                let p = self.point_on_side(tr, exit, arc.1, arc.2, w[tr[exit].edge]);
                let here = &ends[point_base[tr[exit].edge] + p as usize];
                let next = if here[0] == (n, exit) { here[1] } else { here[0] };
                if next == (start, first_entry) {
                    break;
                }
                if seen[next.0] {
                    return Err(Error::NotNormal);
                }
                n = next.0;
                entry = next.1;
            }
            components.push(comp);
        }
        Ok(components)
    }

    pub fn component_count(&self, c: &NormalCurve) -> Result<usize> {
        Ok(self.walk(c)?.len())
    }

    /// Homology class of each component, oriented by the walk.
    pub fn component_classes(&self, c: &NormalCurve) -> Result<Vec<Vec2>> {
        let comps = self.walk(c)?;
        Ok(comps
            .iter()
            .map(|comp| {
                let mut acc = Vec2::zero();
                for &((i, _, _), entry, exit) in comp {
                    let tr = &self.triangles[i];
                    let p = self.lifted_corners(tr);
                    acc = acc
                        .add(&p[side_tail(tr, exit)])
                        .sub(&p[side_tail(tr, entry)]);
                }
                acc
            })
            .collect())
    }

    /// Slope of a connected essential curve.
    pub fn slope(&self, c: &NormalCurve) -> Result<Slope> {
        if c.is_empty() {
            return Err(Error::TrivialCurve);
        }
        let classes = self.component_classes(c)?;
        if classes.len() != 1 {
            return Err(Error::DisconnectedCurve(classes.len()));
        }
        Slope::of_class(&classes[0]).ok_or(Error::TrivialCurve)
    }

    /// The curve with the given edge weights, if they satisfy the triangle
    /// inequalities with even perimeter in every triangle.
    pub fn curve_from_weights(&self, w: &[u64]) -> Option<NormalCurve> {
        let mut arcs = Vec::new();
        for tr in &self.triangles {
            let mut row = [0u64; 3];
            for (corner, slot) in row.iter_mut().enumerate() {
                let [a, b] = sides_at(corner);
                let twice = w[tr[a].edge] as i64 + w[tr[b].edge] as i64 - w[tr[corner].edge] as i64;
                if twice < 0 || twice % 2 != 0 {
                    return None;
                }
                *slot = (twice / 2) as u64;
            }
            arcs.push(row);
        }
        Some(NormalCurve { arcs })
    }

    /// Shortest connected essential normal curve of each slope, by exhaustive
    /// search over edge weights with total at most `horizon`.
    ///
    /// With `skip_vertex_linked` set, weight vectors whose curve occupies every
    /// corner are skipped: the innermost arcs then close up into a loop around
    /// the vertex, so the curve is either that loop or disconnected. This only
    /// holds for one-vertex tori.
    pub fn brute_force_min_lengths(&self, horizon: u64, skip_vertex_linked: bool) -> BTreeMap<Slope, u64> {
        assert_eq!(self.vectors.len(), 3, "brute force expects a one-vertex torus");
        let mut best: BTreeMap<Slope, u64> = BTreeMap::new();
        for total in (2..=horizon).step_by(2) {
            for a in 0..=total {
                for b in 0..=total - a {
                    let w = [a, b, total - a - b];
                    if skip_vertex_linked && !(0..3).any(|j| 2 * w[j] == total) {
                        continue;
                    }
                    let Some(c) = self.curve_from_weights(&w) else {
                        continue;
                    };
                    if let Ok(s) = self.slope(&c) {
                        best.entry(s).or_insert(total);
                    }
                }
            }
        }
        best
    }
}

/// Length of a shortest normal curve of slope `s` on a one-vertex torus with
/// edge slopes `t`: the sum of intersections with the three edges.
pub fn min_curve_length(t: &SlopeTriple, s: &Slope) -> BigInt {
    t.slopes().iter().map(|e| intersection(s, e)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64, y: i64) -> Slope {
        Slope::new(x, y).unwrap()
    }

    fn stated_t0() -> SlopeTriple {
        SlopeTriple::new(s(1, 0), s(1, 1), s(2, 1)).unwrap()
    }

    #[test]
    fn meridian_on_the_stated_triple_has_length_four() {
        assert_eq!(min_curve_length(&stated_t0(), &Slope::meridian()), BigInt::from(4));
        let m = TorusModel::from_triple(&stated_t0());
        let best = m.brute_force_min_lengths(8, false);
        assert_eq!(best[&Slope::meridian()], 4);
    }

    #[test]
    fn edge_slope_costs_the_other_two() {
        let t = stated_t0();
        for e in t.slopes() {
            let others: BigInt = t.slopes().iter().filter(|o| *o != e).map(|o| intersection(e, o)).sum();
            assert_eq!(min_curve_length(&t, e), others);
        }
    }

    #[test]
    fn vertex_link_is_trivial() {
        let m = TorusModel::from_triple(&stated_t0());
        let link = m.curve_from_weights(&[2, 2, 2]).unwrap();
        assert_eq!(m.component_count(&link).unwrap(), 1);
        assert_eq!(m.slope(&link), Err(Error::TrivialCurve));
    }

    #[test]
    fn vertex_link_skip_loses_nothing() {
        let m = TorusModel::from_triple(&SlopeTriple::new(s(2, 1), s(3, 2), s(5, 3)).unwrap());
        assert_eq!(m.brute_force_min_lengths(24, false), m.brute_force_min_lengths(24, true));
    }

    #[test]
    fn parallel_copies_are_disconnected() {
        let m = TorusModel::from_triple(&stated_t0());
        let c = m.curve_from_weights(&[2, 0, 2]).unwrap();
        assert_eq!(m.slope(&c), Err(Error::DisconnectedCurve(2)));
    }
}
