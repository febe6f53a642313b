//! The cell structure of a normal surface assembled from its coordinates.
//!
//! Points sit on tetrahedron edges, indexed by position from the lower
//! vertex; arcs sit in faces, indexed `(tet, face, corner, k)` with `k`
//! counted from the corner; discs are triangles and quads. Stacking order:
//! triangles at vertex `v` are numbered from `v` outwards, and quads of type
//! `{a,b}|{c,d}` from the `ab` side, so at corners `a`, `b` quad `q` is arc
//! `T + q` and at corners `c`, `d` it is arc `T + (Q − 1 − q)`.

use std::collections::HashMap;

use serde::Serialize;

use super::curve::NormalCurve;
use super::vector::{quad_first_side, NormalVector, QUAD_SPLITS};
use crate::error::{Error, Result};
use crate::tri::boundary::BoundaryComplex;
use crate::tri::perm::{face_vertices, EDGES};
use crate::tri::{Skeleton, Triangulation};
use crate::util::ParityUnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscKind {
    /// Cuts off the given vertex.
    Triangle(usize),
    /// Quad type `0..3`.
    Quad(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Disc {
    pub tet: usize,
    pub kind: DiscKind,
    pub index: u64,
}

/// `(tet, face, corner, k)`.
pub type ArcSlot = (usize, usize, usize, u64);

/// Position of disc `d` among the arcs around `corner`, i.e. its distance
/// from `corner` along the adjacent edges.
pub fn corner_index(v: &NormalVector, d: &Disc, corner: usize) -> u64 {
    match d.kind {
        DiscKind::Triangle(_) => d.index,
        DiscKind::Quad(k) => {
            let q = v.quads(d.tet, k);
            let t = v.triangles(d.tet, corner);
            if quad_first_side(k, corner) {
                t + d.index
            } else {
                t + (q - 1 - d.index)
            }
        }
    }
}

/// Boundary cycle of a disc: `(face, corner, sign)` per side, where the sign
/// says whether the cycle runs along the arc's canonical direction (from the
/// side towards the lower other vertex to the side towards the higher).
pub fn disc_cycle(kind: DiscKind) -> Vec<(usize, usize, bool)> {
    match kind {
        DiscKind::Triangle(v) => {
            let o: Vec<usize> = (0..4).filter(|&x| x != v).collect();
            let (a, b, c) = (o[0], o[1], o[2]);
            // v·a → v·b → v·c → v·a
            vec![(c, v, true), (a, v, true), (b, v, false)]
        }
        DiscKind::Quad(k) => {
            let [p, q, r, s] = QUAD_SPLITS[k];
            // pr → ps → qs → qr → pr
            vec![(q, p, true), (r, s, true), (p, q, false), (s, r, false)]
        }
    }
}

/// Tetrahedron vertices at the two ends of the side of a disc that lies in
/// `face` around `corner`, in canonical arc direction.
pub fn arc_edges(face: usize, corner: usize) -> ((usize, usize), (usize, usize)) {
    let o: Vec<usize> = face_vertices(face).into_iter().filter(|&x| x != corner).collect();
    ((corner, o[0]), (corner, o[1]))
}

/// A point on an edge class: `(class, position from the class tail)`.
pub type PointKey = (usize, u64);

#[derive(Clone, Debug)]
pub struct NormalComplex {
    pub vector: NormalVector,
    pub class_weights: Vec<u64>,
    pub discs: Vec<Disc>,
    pub disc_index: HashMap<Disc, usize>,
    pub arc_slots: Vec<ArcSlot>,
    pub arc_slot_index: HashMap<ArcSlot, usize>,
    /// Per arc slot: arc class and whether the slot's canonical direction is
    /// reversed relative to the class.
    pub arc_class: Vec<(usize, bool)>,
    pub arc_count: usize,
    /// Per arc slot: global points at its start and end.
    pub arc_points: Vec<(usize, usize)>,
    pub points: Vec<PointKey>,
    pub point_index: HashMap<PointKey, usize>,
    /// Per disc: `(arc slot, runs along canonical direction)`.
    pub disc_arcs: Vec<Vec<(usize, bool)>>,
    pub disc_component: Vec<usize>,
    pub component_count: usize,
    pub component_orientable: Vec<bool>,
}

/// Point key of position `p` (from `a`) on tetrahedron edge `a`–`b`.
pub fn point_key(sk: &Skeleton, weights: &[u64], tet: usize, a: usize, b: usize, p: u64) -> PointKey {
    let (class, rev) = sk.edge_between(tet, a, b);
    if rev {
        (class, weights[class] - 1 - p)
    } else {
        (class, p)
    }
}

impl NormalComplex {
    pub fn build(tri: &Triangulation, sk: &Skeleton, v: &NormalVector) -> Result<Self> {
        if v.tet_count() != tri.tet_count() {
            return Err(Error::SizeMismatch {
                expected: tri.tet_count(),
                got: v.tet_count(),
            });
        }
        if !super::vector::is_normal(tri, v)? {
            return Err(Error::NotNormal);
        }
        let class_weights = v.class_weights(sk);

        let mut discs = Vec::new();
        for t in 0..v.tet_count() {
            for c in 0..4 {
                for i in 0..v.triangles(t, c) {
                    discs.push(Disc {
                        tet: t,
                        kind: DiscKind::Triangle(c),
                        index: i,
                    });
                }
            }
            for k in 0..3 {
                for i in 0..v.quads(t, k) {
                    discs.push(Disc {
                        tet: t,
                        kind: DiscKind::Quad(k),
                        index: i,
                    });
                }
            }
        }
        let disc_index: HashMap<Disc, usize> = discs.iter().enumerate().map(|(i, d)| (*d, i)).collect();

        let mut arc_slots = Vec::new();
        let mut arc_slot_index = HashMap::new();
        for t in 0..v.tet_count() {
            for f in 0..4 {
                for c in face_vertices(f) {
                    for k in 0..v.arcs(t, f, c) {
                        arc_slot_index.insert((t, f, c, k), arc_slots.len());
                        arc_slots.push((t, f, c, k));
                    }
                }
            }
        }

        let mut points = Vec::new();
        let mut point_index = HashMap::new();
        let mut arc_points = Vec::with_capacity(arc_slots.len());
        for &(t, f, c, k) in &arc_slots {
            let ((a0, b0), (a1, b1)) = arc_edges(f, c);
            let mut ids = [0usize; 2];
            for (n, (a, b)) in [(a0, b0), (a1, b1)].into_iter().enumerate() {
                let key = point_key(sk, &class_weights, t, a, b, k);
                ids[n] = *point_index.entry(key).or_insert_with(|| {
                    points.push(key);
                    points.len() - 1
                });
            }
            arc_points.push((ids[0], ids[1]));
        }

        let mut arc_uf = ParityUnionFind::new(arc_slots.len());
        for ((t, f), (u, g), perm) in tri.interior_face_pairs() {
            for c in face_vertices(f) {
                let ((_, x), (_, y)) = arc_edges(f, c);
                let flip = perm.apply(x) > perm.apply(y);
                for k in 0..v.arcs(t, f, c) {
                    let a = arc_slot_index[&(t, f, c, k)];
                    let b = arc_slot_index[&(u, g, perm.apply(c), k)];
                    arc_uf.union(a, b, flip);
                }
            }
        }
        let (classes, arc_count) = arc_uf.classes();
        let arc_class: Vec<(usize, bool)> = (0..arc_slots.len())
            .map(|i| (classes[i], arc_uf.find(i).1))
            .collect();

        let disc_arcs: Vec<Vec<(usize, bool)>> = discs
            .iter()
            .map(|d| {
                disc_cycle(d.kind)
                    .into_iter()
                    .map(|(face, corner, sign)| {
                        let k = corner_index(v, d, corner);
                        (arc_slot_index[&(d.tet, face, corner, k)], sign)
                    })
                    .collect()
            })
            .collect();

        // Discs sharing an arc class are glued; orientations must be opposite
        // along the shared arc.
        let mut incid: Vec<Vec<(usize, bool)>> = vec![Vec::new(); arc_count];
        for (di, arcs) in disc_arcs.iter().enumerate() {
            for &(slot, sign) in arcs {
                let (cls, par) = arc_class[slot];
                incid[cls].push((di, sign ^ par));
            }
        }
        let mut orient = ParityUnionFind::new(discs.len());
        let mut bad = Vec::new();
        for inc in &incid {
            if inc.len() == 2 {
                let ((d1, s1), (d2, s2)) = (inc[0], inc[1]);
                if !orient.union(d1, d2, s1 == s2) {
                    bad.push(d1);
                }
            }
        }
        let (disc_component, component_count) = orient.classes();
        let mut component_orientable = vec![true; component_count];
        for d in bad {
            component_orientable[disc_component[d]] = false;
        }

        Ok(NormalComplex {
            vector: v.clone(),
            class_weights,
            discs,
            disc_index,
            arc_slots,
            arc_slot_index,
            arc_class,
            arc_count,
            arc_points,
            points,
            point_index,
            disc_arcs,
            disc_component,
            component_count,
            component_orientable,
        })
    }

    /// Arc class representatives by component, with their points.
    fn component_cells(&self) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let n = self.component_count;
        let mut v = vec![0u64; n];
        let mut e = vec![0u64; n];
        let mut f = vec![0u64; n];
        let mut arc_comp = vec![usize::MAX; self.arc_count];
        let mut point_comp = vec![usize::MAX; self.points.len()];
        for (di, arcs) in self.disc_arcs.iter().enumerate() {
            let c = self.disc_component[di];
            f[c] += 1;
            for &(slot, _) in arcs {
                arc_comp[self.arc_class[slot].0] = c;
                let (p, q) = self.arc_points[slot];
                point_comp[p] = c;
                point_comp[q] = c;
            }
        }
        for &c in &arc_comp {
            e[c] += 1;
        }
        for &c in &point_comp {
            v[c] += 1;
        }
        (v, e, f)
    }

    pub fn euler_characteristics(&self) -> Vec<i64> {
        let (v, e, f) = self.component_cells();
        (0..self.component_count)
            .map(|c| v[c] as i64 - e[c] as i64 + f[c] as i64)
            .collect()
    }

    /// Whether an arc slot lies in a boundary face.
    pub fn on_boundary(&self, tri: &Triangulation, slot: usize) -> bool {
        let (t, f, _, _) = self.arc_slots[slot];
        tri.gluing(t, f).is_none()
    }

    /// Boundary curve of one component (or all components with `None`),
    /// indexed like the boundary complex's triangles.
    pub fn boundary_curve(&self, bc: &BoundaryComplex, component: Option<usize>) -> NormalCurve {
        let mut arcs = vec![[0u64; 3]; bc.triangles.len()];
        let lookup: HashMap<(usize, usize), usize> = bc
            .triangles
            .iter()
            .enumerate()
            .map(|(i, tr)| ((tr.tet, tr.face), i))
            .collect();
        for (di, d_arcs) in self.disc_arcs.iter().enumerate() {
            if component.is_some_and(|c| self.disc_component[di] != c) {
                continue;
            }
            for &(slot, _) in d_arcs {
                let (t, f, c, _) = self.arc_slots[slot];
                if let Some(&i) = lookup.get(&(t, f)) {
                    let local = face_vertices(f).iter().position(|&x| x == c).unwrap();
                    arcs[i][local] += 1;
                }
            }
        }
        NormalCurve::new(arcs)
    }
}

/// One connected component of a reconstructed surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub boundary_curves: Vec<NormalCurve>,
    pub piece_count: u64,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructedSurface {
    pub components: Vec<SurfaceComponent>,
    pub euler_characteristic: i64,
    pub piece_count: u64,
    pub weight: u64,
}

/// Builds the surface of `v` and summarizes each component.
pub fn reconstruct(tri: &Triangulation, v: &NormalVector) -> Result<ReconstructedSurface> {
    let sk = Skeleton::compute(tri)?;
    let nc = NormalComplex::build(tri, &sk, v)?;
    let bc = BoundaryComplex::compute(tri, &sk);
    Ok(summarize(&nc, &bc))
}

pub fn summarize(nc: &NormalComplex, bc: &BoundaryComplex) -> ReconstructedSurface {
    let chis = nc.euler_characteristics();
    let mut pieces = vec![0u64; nc.component_count];
    for &c in &nc.disc_component {
        pieces[c] += 1;
    }
    let mut weight = vec![0u64; nc.component_count];
    let mut point_comp = vec![usize::MAX; nc.points.len()];
    for (di, arcs) in nc.disc_arcs.iter().enumerate() {
        for &(slot, _) in arcs {
            let (p, q) = nc.arc_points[slot];
            point_comp[p] = nc.disc_component[di];
            point_comp[q] = nc.disc_component[di];
        }
    }
    for &c in &point_comp {
        weight[c] += 1;
    }
    let components: Vec<SurfaceComponent> = (0..nc.component_count)
        .map(|c| {
            let curve = nc.boundary_curve(bc, Some(c));
            SurfaceComponent {
                euler_characteristic: chis[c],
                orientable: nc.component_orientable[c],
                boundary_curves: if curve.is_empty() { vec![] } else { vec![curve] },
                piece_count: pieces[c],
                weight: weight[c],
            }
        })
        .collect();
    ReconstructedSurface {
        euler_characteristic: chis.iter().sum(),
        piece_count: nc.discs.len() as u64,
        weight: nc.points.len() as u64,
        components,
    }
}

/// Euler characteristic from coordinates alone: points from edge-class
/// weights, arcs from disc corners (interior arcs are shared by two discs),
/// faces from the piece count.
pub fn euler_from_counts(tri: &Triangulation, v: &NormalVector) -> Result<i64> {
    let sk = Skeleton::compute(tri)?;
    let points: u64 = sk
        .edges
        .iter()
        .map(|e| {
            let (a, b) = EDGES[e.rep.1];
            v.edge_weight(e.rep.0, a, b)
        })
        .sum();
    let mut corners = 0u64;
    let mut pieces = 0u64;
    for t in 0..v.tet_count() {
        let tris: u64 = (0..4).map(|c| v.triangles(t, c)).sum();
        let quads: u64 = (0..3).map(|k| v.quads(t, k)).sum();
        corners += 3 * tris + 4 * quads;
        pieces += tris + quads;
    }
    let boundary_arcs: u64 = tri
        .boundary_faces()
        .into_iter()
        .map(|(t, f)| face_vertices(f).iter().map(|&c| v.arcs(t, f, c)).sum::<u64>())
        .sum();
    let twice_edges = corners + boundary_arcs;
    if !twice_edges.is_multiple_of(2) {
        return Err(Error::NotNormal);
    }
    Ok(points as i64 - (twice_edges / 2) as i64 + pieces as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layered::{base_t0, family};

    #[test]
    fn vertex_link_of_one_tet_solid_torus_is_a_disc() {
        let tri = base_t0().tri;
        let s = reconstruct(&tri, &NormalVector::vertex_link(1)).unwrap();
        assert_eq!(s.components.len(), 1);
        assert_eq!(s.euler_characteristic, 1);
        assert!(s.components[0].orientable);
        assert_eq!(s.piece_count, 4);
        assert_eq!(euler_from_counts(&tri, &NormalVector::vertex_link(1)).unwrap(), 1);
    }

    #[test]
    fn doubling_doubles_components() {
        for i in 0..3 {
            let tri = family(i).tri;
            let v = NormalVector::vertex_link(i + 1);
            let one = reconstruct(&tri, &v).unwrap();
            let two = reconstruct(&tri, &v.scale(2)).unwrap();
            assert_eq!(two.components.len(), 2 * one.components.len());
            assert_eq!(two.euler_characteristic, 2 * one.euler_characteristic);
            assert_eq!(two.weight, 2 * one.weight);
        }
    }

    #[test]
    fn quad_stacking_matches_edge_positions() {
        // Both ends of an arc agree with the disc's distance from the corner.
        let v = NormalVector::new(vec![[1, 0, 2, 1, 0, 3, 0]]);
        for q in 0..3 {
            let d = Disc {
                tet: 0,
                kind: DiscKind::Quad(1),
                index: q,
            };
            let [p, qq, r, s] = QUAD_SPLITS[1];
            // On edge p–r: distance from p plus distance from r is weight − 1.
            let w = v.edge_weight(0, p, r);
            assert_eq!(corner_index(&v, &d, p) + corner_index(&v, &d, r), w - 1);
            let w = v.edge_weight(0, qq, s);
            assert_eq!(corner_index(&v, &d, qq) + corner_index(&v, &d, s), w - 1);
        }
    }

    #[test]
    fn non_normal_input_is_rejected() {
        let tri = base_t0().tri;
        let v = NormalVector::new(vec![[1, 0, 0, 0, 0, 0, 0]]);
        assert_eq!(reconstruct(&tri, &v).unwrap_err(), Error::NotNormal);
    }
}
