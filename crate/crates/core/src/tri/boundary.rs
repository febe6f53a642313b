//! The boundary surface of a triangulation as a 2-dimensional complex.

use serde::Serialize;

use super::perm::face_vertices;
use super::skeleton::Skeleton;
use super::triangulation::Triangulation;
use crate::util::ParityUnionFind;

/// Side of a boundary triangle, opposite one of its local corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Side {
    pub edge: usize,
    /// Walking from the lower to the higher corner agrees with the edge class.
    pub forward: bool,
}

/// A boundary face `(tet, face)`; local corners `0,1,2` are the face's
/// tetrahedron vertices in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTriangle {
    pub tet: usize,
    pub face: usize,
    pub tet_vertices: [usize; 3],
    /// `sides[j]` is opposite local corner `j`.
    pub sides: [Side; 3],
    /// Boundary vertex class of each local corner.
    pub corners: [usize; 3],
}

impl BoundaryTriangle {
    /// Local corners joined by side `j`, ascending.
    pub fn side_ends(j: usize) -> (usize, usize) {
        match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    /// Local side containing corners `a` and `b`.
    pub fn side_between(a: usize, b: usize) -> usize {
        3 - a - b
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceKind {
    Empty,
    Sphere,
    Torus,
    Other,
}

/// Boundary complex with a map back to the carrier faces.
#[derive(Clone, Debug)]
pub struct BoundaryComplex {
    pub triangles: Vec<BoundaryTriangle>,
    /// Boundary edge classes (indices into the skeleton's edge list).
    pub edges: Vec<usize>,
    pub vertex_count: usize,
    pub orientable: bool,
    pub components: usize,
    /// Every boundary edge is a side of exactly two boundary triangles.
    pub closed: bool,
}

impl BoundaryComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn kind(&self) -> SurfaceKind {
        if self.triangles.is_empty() {
            return SurfaceKind::Empty;
        }
        if !self.closed || self.components != 1 || !self.orientable {
            return SurfaceKind::Other;
        }
        match self.euler_characteristic() {
            2 => SurfaceKind::Sphere,
            0 => SurfaceKind::Torus,
            _ => SurfaceKind::Other,
        }
    }

    pub fn is_one_vertex_torus(&self) -> bool {
        self.kind() == SurfaceKind::Torus && self.vertex_count == 1
    }

    /// Position of a boundary edge class in [`Self::edges`].
    pub fn edge_slot(&self, edge: usize) -> Option<usize> {
        self.edges.iter().position(|&e| e == edge)
    }

    /// The two `(triangle, side)` slots carrying a boundary edge.
    pub fn sides_of(&self, edge: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, tr) in self.triangles.iter().enumerate() {
            for (j, s) in tr.sides.iter().enumerate() {
                if s.edge == edge {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn compute(tri: &Triangulation, sk: &Skeleton) -> Self {
        let mut triangles = Vec::new();
        let mut edges = Vec::new();
        for (t, f) in tri.boundary_faces() {
            let tv = face_vertices(f);
            let mut sides = [Side {
                edge: 0,
                forward: true,
            }; 3];
            for (j, side) in sides.iter_mut().enumerate() {
                let (a, b) = BoundaryTriangle::side_ends(j);
                let (edge, rev) = sk.edge_between(t, tv[a], tv[b]);
                *side = Side {
                    edge,
                    forward: !rev,
                };
                if !edges.contains(&edge) {
                    edges.push(edge);
                }
            }
            triangles.push(BoundaryTriangle {
                tet: t,
                face: f,
                tet_vertices: tv,
                sides,
                corners: [0; 3],
            });
        }
        edges.sort_unstable();

        // Glue sides in pairs; corners are identified along the way.
        let n = triangles.len();
        let mut corner_uf = ParityUnionFind::new(3 * n);
        let mut orient_uf = ParityUnionFind::new(n);
        let mut tri_uf = ParityUnionFind::new(n);
        let mut orientable = true;
        let mut closed = true;
        for &e in &edges {
            let mut slots = Vec::new();
            for (i, tr) in triangles.iter().enumerate() {
                for (j, s) in tr.sides.iter().enumerate() {
                    if s.edge == e {
                        slots.push((i, j));
                    }
                }
            }
            if slots.len() != 2 {
                closed = false;
                continue;
            }
            let ((i1, j1), (i2, j2)) = (slots[0], slots[1]);
            let tail_head = |i: usize, j: usize| {
                let (a, b) = BoundaryTriangle::side_ends(j);
                if triangles[i].sides[j].forward {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            let (t1, h1) = tail_head(i1, j1);
            let (t2, h2) = tail_head(i2, j2);
            corner_uf.union(3 * i1 + t1, 3 * i2 + t2, false);
            corner_uf.union(3 * i1 + h1, 3 * i2 + h2, false);
            tri_uf.union(i1, i2, false);
            // Orientation 0→1→2 runs side j forward iff j != 1.
            let dir = |i: usize, j: usize| (j != 1) == triangles[i].sides[j].forward;
            if !orient_uf.union(i1, i2, dir(i1, j1) == dir(i2, j2)) {
                orientable = false;
            }
        }
        let (corner_class, vertex_count) = corner_uf.classes();
        for (i, tr) in triangles.iter_mut().enumerate() {
            tr.corners = [
                corner_class[3 * i],
                corner_class[3 * i + 1],
                corner_class[3 * i + 2],
            ];
        }
        let (_, components) = tri_uf.classes();
        BoundaryComplex {
            triangles,
            edges,
            vertex_count,
            orientable,
            components,
            closed,
        }
    }
}

/// Boundary complex of `tri`.
pub fn boundary_complex(tri: &Triangulation) -> BoundaryComplex {
    let sk = Skeleton::compute(tri).expect("validated triangulation");
    BoundaryComplex::compute(tri, &sk)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_tet_solid_torus_boundary() {
        let tri = Triangulation::parse("tets 1\n0: 0:3012 - - 0:1230\n").unwrap();
        let b = boundary_complex(&tri);
        assert_eq!(b.triangles.len(), 2);
        assert_eq!(b.edges.len(), 3);
        assert_eq!(b.vertex_count, 1);
        assert_eq!(b.kind(), SurfaceKind::Torus);
        assert!(b.is_one_vertex_torus());
    }

    #[test]
    fn ball_boundary_is_sphere() {
        let b = boundary_complex(&Triangulation::ball());
        assert_eq!(b.euler_characteristic(), 2);
        assert_eq!(b.kind(), SurfaceKind::Sphere);
    }
}
