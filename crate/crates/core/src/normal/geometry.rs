//! Straight-line realisation of a normal surface with exact rational
//! barycentric coordinates.
//!
//! The `k`-th of `w` points on an edge sits at parameter `(k+1)/(w+1)` from
//! the edge's lower end. Quads `pr → ps → qs → qr` are split into two flat
//! triangles along the diagonal `pr`–`qs`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::complex::{arc_edges, corner_index, disc_cycle, Disc, NormalComplex};
use super::vector::NormalVector;
use crate::error::Result;
use crate::tri::{Skeleton, Triangulation};

pub type Q = BigRational;
/// Barycentric coordinates in a tetrahedron.
pub type Bary = [Q; 4];

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Point at distance index `k` from `a` on tetrahedron edge `a`–`b` of weight `w`.
pub fn edge_point(a: usize, b: usize, k: u64, w: u64) -> Bary {
    let s = BigRational::new(BigInt::from(k + 1), BigInt::from(w + 1));
    let mut p: Bary = std::array::from_fn(|_| Q::zero());
    p[a] = Q::one() - &s;
    p[b] = s;
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoDisc {
    pub disc: Disc,
    /// Corners in boundary-cycle order.
    pub vertices: Vec<Bary>,
    /// Flat triangles as indices into `vertices`.
    pub pieces: Vec<[usize; 3]>,
}

/// A straight arc in a face, in the face's tetrahedron coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoArc {
    pub corner: usize,
    pub index: u64,
    pub start: Bary,
    pub end: Bary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometrizedSurface {
    pub discs: Vec<GeoDisc>,
    /// Arcs per `(tet, face)`.
    pub face_arcs: BTreeMap<(usize, usize), Vec<GeoArc>>,
}

pub fn geometrize(tri: &Triangulation, v: &NormalVector) -> Result<GeometrizedSurface> {
    let sk = Skeleton::compute(tri)?;
    let nc = NormalComplex::build(tri, &sk, v)?;
    Ok(geometrize_complex(&nc))
}

pub fn geometrize_complex(nc: &NormalComplex) -> GeometrizedSurface {
    let v = &nc.vector;
    let mut discs = Vec::with_capacity(nc.discs.len());
    for d in &nc.discs {
        let cycle = disc_cycle(d.kind);
        // Start of each side in cycle order.
        let vertices: Vec<Bary> = cycle
            .iter()
            .map(|&(face, corner, sign)| {
                let ((a0, b0), (a1, b1)) = arc_edges(face, corner);
                let (a, b) = if sign { (a0, b0) } else { (a1, b1) };
                let k = corner_index(v, d, corner);
                edge_point(a, b, k, v.edge_weight(d.tet, a, b))
            })
            .collect();
        let pieces = if vertices.len() == 3 {
            vec![[0, 1, 2]]
        } else {
            vec![[0, 1, 2], [0, 2, 3]]
        };
        discs.push(GeoDisc {
            disc: *d,
            vertices,
            pieces,
        });
    }
    let mut face_arcs: BTreeMap<(usize, usize), Vec<GeoArc>> = BTreeMap::new();
    for &(t, f, c, k) in &nc.arc_slots {
        let ((a0, b0), (a1, b1)) = arc_edges(f, c);
        face_arcs.entry((t, f)).or_default().push(GeoArc {
            corner: c,
            index: k,
            start: edge_point(a0, b0, k, v.edge_weight(t, a0, b0)),
            end: edge_point(a1, b1, k, v.edge_weight(t, a1, b1)),
        });
    }
    GeometrizedSurface { discs, face_arcs }
}

fn sub2(a: &[Q; 2], b: &[Q; 2]) -> [Q; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

/// Sign of the cross product `(b − a) × (c − a)`.
pub fn orient2(a: &[Q; 2], b: &[Q; 2], c: &[Q; 2]) -> Ordering {
    let u = sub2(b, a);
    let w = sub2(c, a);
    (&u[0] * &w[1] - &u[1] * &w[0]).cmp(&Q::zero())
}

fn on_segment(a: &[Q; 2], b: &[Q; 2], p: &[Q; 2]) -> bool {
    let within = |i: usize| {
        let (lo, hi) = if a[i] <= b[i] { (&a[i], &b[i]) } else { (&b[i], &a[i]) };
        lo <= &p[i] && &p[i] <= hi
    };
    orient2(a, b, p) == Ordering::Equal && within(0) && within(1)
}

/// Whether closed segments `ab` and `cd` share a point.
pub fn segments_meet(a: &[Q; 2], b: &[Q; 2], c: &[Q; 2], d: &[Q; 2]) -> bool {
    let o1 = orient2(a, b, c);
    let o2 = orient2(a, b, d);
    let o3 = orient2(c, d, a);
    let o4 = orient2(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Planar coordinates of a point of face `f`: drop coordinate `f` and the
/// last remaining one.
pub fn face_plane(f: usize, p: &Bary) -> [Q; 2] {
    let idx: Vec<usize> = (0..4).filter(|&i| i != f).collect();
    [p[idx[0]].clone(), p[idx[1]].clone()]
}

/// Every pair of arcs in every face is disjoint.
pub fn arcs_disjoint(g: &GeometrizedSurface) -> bool {
    for (&(_, f), arcs) in &g.face_arcs {
        let pts: Vec<([Q; 2], [Q; 2])> = arcs
            .iter()
            .map(|a| (face_plane(f, &a.start), face_plane(f, &a.end)))
            .collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                if segments_meet(&pts[i].0, &pts[i].1, &pts[j].0, &pts[j].1) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layered::{base_t0, family};

    #[test]
    fn vertex_link_triangles_cut_corners() {
        let tri = base_t0().tri;
        let g = geometrize(&tri, &NormalVector::vertex_link(1)).unwrap();
        assert_eq!(g.discs.len(), 4);
        for d in &g.discs {
            let super::super::complex::DiscKind::Triangle(v) = d.disc.kind else {
                panic!("quad in the vertex link")
            };
            // Each edge has two points, at 1/3 and 2/3; corners sit at 1/3 from v.
            for p in &d.vertices {
                assert_eq!(p[v], q(2, 3));
            }
        }
        assert!(arcs_disjoint(&g));
    }

    #[test]
    fn doubled_copies_stay_disjoint() {
        let tri = family(1).tri;
        let v = NormalVector::vertex_link(2).scale(2);
        assert!(arcs_disjoint(&geometrize(&tri, &v).unwrap()));
    }

    #[test]
    fn segment_predicate() {
        let p = |x: i64, y: i64| [q(x, 1), q(y, 1)];
        assert!(segments_meet(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(!segments_meet(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)));
        assert!(segments_meet(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 1)));
        assert!(!segments_meet(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
    }
}
