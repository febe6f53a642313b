//! Quotient cells of a triangulation: vertex, edge and face classes.

use serde::Serialize;

use super::perm::{face_vertices, EDGES};
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::util::ParityUnionFind;

/// An edge class of the quotient complex, oriented like its representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// Smallest `(tet, edge index)` in the class; fixes the orientation.
    pub rep: (usize, usize),
    pub degree: usize,
    pub boundary: bool,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClass {
    pub rep: (usize, usize),
    pub boundary: bool,
}

/// Full quotient bookkeeping for a triangulation.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub tet_count: usize,
    /// `vertex_of[t][v]`: vertex class of vertex `v` of tetrahedron `t`.
    pub vertex_of: Vec<[usize; 4]>,
    /// `edge_of[t][e]`: (edge class, reversed relative to the class).
    pub edge_of: Vec<[(usize, bool); 6]>,
    /// `face_of[t][f]`: face class.
    pub face_of: Vec<[usize; 4]>,
    pub vertex_boundary: Vec<bool>,
    pub edges: Vec<EdgeClass>,
    pub faces: Vec<FaceClass>,
}

/// Counts of quotient cells plus per-edge data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonSummary {
    pub vertex_classes: usize,
    pub edge_classes: usize,
    pub face_classes: usize,
    pub boundary_faces: usize,
    pub tetrahedra: usize,
    pub edge_degrees: Vec<usize>,
    pub edge_on_boundary: Vec<bool>,
}

impl SkeletonSummary {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_classes as i64 - self.edge_classes as i64 + self.face_classes as i64
            - self.tetrahedra as i64
    }
}

impl Skeleton {
    pub fn compute(tri: &Triangulation) -> Result<Self> {
        let n = tri.tet_count();
        let mut vuf = ParityUnionFind::new(4 * n);
        let mut euf = ParityUnionFind::new(6 * n);
        for (t, faces) in tri.gluings().iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                let fv = face_vertices(f);
                for &v in &fv {
                    vuf.union(4 * t + v, 4 * g.tet + g.perm.apply(v), false);
                }
                for (i, &a) in fv.iter().enumerate() {
                    for &b in &fv[i + 1..] {
                        let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                        let src = 6 * t + super::perm::edge_index(a, b);
                        let dst = 6 * g.tet + super::perm::edge_index(pa, pb);
                        if !euf.union(src, dst, pa > pb) {
                            return Err(Error::ReversedEdge { tet: t });
                        }
                    }
                }
            }
        }

        let (vclass, nv) = vuf.classes();
        let vertex_of: Vec<[usize; 4]> = (0..n)
            .map(|t| [vclass[4 * t], vclass[4 * t + 1], vclass[4 * t + 2], vclass[4 * t + 3]])
            .collect();

        let (eclass, ne) = euf.classes();
        let mut reps = vec![usize::MAX; ne];
        for (x, &c) in eclass.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = x;
            }
        }
        let mut edge_of = vec![[(0usize, false); 6]; n];
        let mut degree = vec![0usize; ne];
        for t in 0..n {
            for e in 0..6 {
                let x = 6 * t + e;
                let c = eclass[x];
                let (_, px) = euf.find(x);
                let (_, pr) = euf.find(reps[c]);
                edge_of[t][e] = (c, px ^ pr);
                degree[c] += 1;
            }
        }

        // Faces: a glued pair is one class, a boundary face its own.
        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        let mut edge_boundary = vec![false; ne];
        let mut vertex_boundary = vec![false; nv];
        for t in 0..n {
            for f in 0..4 {
                if face_of[t][f] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                face_of[t][f] = id;
                match tri.gluing(t, f) {
                    Some(g) => {
                        face_of[g.tet][g.perm.apply(f)] = id;
                        faces.push(FaceClass {
                            rep: (t, f),
                            boundary: false,
                        });
                    }
                    None => {
                        faces.push(FaceClass {
                            rep: (t, f),
                            boundary: true,
                        });
                        let fv = face_vertices(f);
                        for &v in &fv {
                            vertex_boundary[vertex_of[t][v]] = true;
                        }
                        for (i, &a) in fv.iter().enumerate() {
                            for &b in &fv[i + 1..] {
                                edge_boundary[edge_of[t][super::perm::edge_index(a, b)].0] = true;
                            }
                        }
                    }
                }
            }
        }

        let edges = (0..ne)
            .map(|c| {
                let (t, e) = (reps[c] / 6, reps[c] % 6);
                let (a, b) = EDGES[e];
                EdgeClass {
                    rep: (t, e),
                    degree: degree[c],
                    boundary: edge_boundary[c],
                    tail: vertex_of[t][a],
                    head: vertex_of[t][b],
                }
            })
            .collect();

        Ok(Skeleton {
            tet_count: n,
            vertex_of,
            edge_of,
            face_of,
            vertex_boundary,
            edges,
            faces,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_boundary.len()
    }

    /// Edge class of the tetrahedron edge `a`–`b`, and whether walking `a → b`
    /// runs against the class orientation.
    pub fn edge_between(&self, tet: usize, a: usize, b: usize) -> (usize, bool) {
        let (c, rev) = self.edge_of[tet][super::perm::edge_index(a, b)];
        (c, rev ^ (a > b))
    }

    pub fn summary(&self) -> SkeletonSummary {
        SkeletonSummary {
            vertex_classes: self.vertex_count(),
            edge_classes: self.edges.len(),
            face_classes: self.faces.len(),
            boundary_faces: self.faces.iter().filter(|f| f.boundary).count(),
            tetrahedra: self.tet_count,
            edge_degrees: self.edges.iter().map(|e| e.degree).collect(),
            edge_on_boundary: self.edges.iter().map(|e| e.boundary).collect(),
        }
    }
}

/// Quotient cell counts of `tri`.
pub fn skeleton(tri: &Triangulation) -> SkeletonSummary {
    Skeleton::compute(tri)
        .expect("validated triangulations have consistent edges")
        .summary()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_tet_solid_torus_counts() {
        let tri = Triangulation::parse("tets 1\n0: 0:3012 - - 0:1230\n").unwrap();
        let s = skeleton(&tri);
        assert_eq!(
            (s.vertex_classes, s.edge_classes, s.face_classes, s.tetrahedra),
            (1, 3, 3, 1)
        );
        assert_eq!(s.boundary_faces, 2);
        assert_eq!(s.euler_characteristic(), 0);
        let mut degrees = s.edge_degrees.clone();
        degrees.sort();
        assert_eq!(degrees, vec![1, 2, 3]);
        assert!(s.edge_on_boundary.iter().all(|&b| b));
    }

    #[test]
    fn ball_counts() {
        let s = skeleton(&Triangulation::ball());
        assert_eq!(
            (s.vertex_classes, s.edge_classes, s.face_classes, s.tetrahedra),
            (4, 6, 4, 1)
        );
        assert_eq!(s.euler_characteristic(), 1);
    }

    #[test]
    fn face_slots_and_degrees_add_up() {
        let tri = Triangulation::parse("tets 1\n0: 0:3012 - - 0:1230\n").unwrap();
        let sk = Skeleton::compute(&tri).unwrap();
        let total: usize = sk.edges.iter().map(|e| e.degree).sum();
        assert_eq!(total, 6 * tri.tet_count());
        let glued = 4 * tri.tet_count() - tri.boundary_faces().len();
        assert_eq!(glued % 2, 0);
    }
}
