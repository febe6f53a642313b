//! Normal coordinates: per tetrahedron four triangle counts `T0..T3` (one per
//! vertex) and three quad counts `Q0..Q2`.
//!
//! Quad `k` separates the vertex pairs in `QUAD_SPLITS[k]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tri::perm::{face_vertices, EDGES};
use crate::tri::{Skeleton, Triangulation};

/// `{a, b} | {c, d}` for quad types 0, 1, 2.
pub const QUAD_SPLITS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// Quad type whose two sides contain both `a` and `b` together.
pub fn quad_pairing(a: usize, b: usize) -> usize {
    QUAD_SPLITS
        .iter()
        .position(|q| {
            let (x, y) = (a.min(b), a.max(b));
            (q[0] == x && q[1] == y) || (q[2] == x && q[3] == y)
        })
        .expect("distinct vertices")
}

/// Whether vertex `v` is on the first side of quad type `k`.
pub fn quad_first_side(k: usize, v: usize) -> bool {
    QUAD_SPLITS[k][0] == v || QUAD_SPLITS[k][1] == v
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalVector {
    pub coords: Vec<[u64; 7]>,
}

/// A violated matching equation: arcs around `corner` in face `(tet, face)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub tet: usize,
    pub face: usize,
    pub corner: usize,
    pub here: u64,
    pub there: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl NormalVector {
    pub fn zero(tets: usize) -> Self {
        NormalVector {
            coords: vec![[0; 7]; tets],
        }
    }

    pub fn new(coords: Vec<[u64; 7]>) -> Self {
        NormalVector { coords }
    }

    /// All four triangle types once in every tetrahedron.
    pub fn vertex_link(tets: usize) -> Self {
        NormalVector {
            coords: vec![[1, 1, 1, 1, 0, 0, 0]; tets],
        }
    }

    pub fn tet_count(&self) -> usize {
        self.coords.len()
    }

    pub fn triangles(&self, t: usize, v: usize) -> u64 {
        self.coords[t][v]
    }

    pub fn quads(&self, t: usize, k: usize) -> u64 {
        self.coords[t][4 + k]
    }

    /// The nonzero quad type of tetrahedron `t` with its count.
    pub fn quad_type(&self, t: usize) -> Option<(usize, u64)> {
        (0..3).find(|&k| self.quads(t, k) > 0).map(|k| (k, self.quads(t, k)))
    }

    pub fn total(&self) -> u64 {
        self.coords.iter().flatten().sum()
    }

    pub fn add(&self, other: &NormalVector) -> Result<NormalVector> {
        if self.tet_count() != other.tet_count() {
            return Err(Error::SizeMismatch {
                expected: self.tet_count(),
                got: other.tet_count(),
            });
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| std::array::from_fn(|i| a[i] + b[i]))
            .collect();
        Ok(NormalVector { coords })
    }

    pub fn scale(&self, k: u64) -> NormalVector {
        NormalVector {
            coords: self.coords.iter().map(|c| c.map(|x| x * k)).collect(),
        }
    }

    /// Arcs around `corner` in the face of `t` opposite `face`.
    pub fn arcs(&self, t: usize, face: usize, corner: usize) -> u64 {
        self.triangles(t, corner) + self.quads(t, quad_pairing(corner, face))
    }

    /// Points on the tetrahedron edge `a`–`b`.
    pub fn edge_weight(&self, t: usize, a: usize, b: usize) -> u64 {
        let own = quad_pairing(a, b);
        let quads: u64 = (0..3).filter(|&k| k != own).map(|k| self.quads(t, k)).sum();
        self.triangles(t, a) + self.triangles(t, b) + quads
    }

    /// Weight per edge class, read from each class representative.
    pub fn class_weights(&self, sk: &Skeleton) -> Vec<u64> {
        sk.edges
            .iter()
            .map(|e| {
                let (a, b) = EDGES[e.rep.1];
                self.edge_weight(e.rep.0, a, b)
            })
            .collect()
    }

    /// Intersections with the 1-skeleton.
    pub fn weight(&self, sk: &Skeleton) -> u64 {
        self.class_weights(sk).iter().sum()
    }

    /// Parses `tet i: T a b c d | Q p q r` lines.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut coords = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Syntax {
                line: ln + 1,
                column: 1,
                message: m.to_string(),
            };
            let rest = line.strip_prefix("tet").ok_or_else(|| err("expected `tet`"))?;
            let (idx, body) = rest.split_once(':').ok_or_else(|| err("expected `:`"))?;
            let idx: usize = idx.trim().parse().map_err(|_| err("bad tetrahedron index"))?;
            if idx != coords.len() {
                return Err(err("tetrahedra must be listed in order"));
            }
            let (t, q) = body.split_once('|').ok_or_else(|| err("expected `|`"))?;
            let t: Vec<&str> = t.split_whitespace().collect();
            let q: Vec<&str> = q.split_whitespace().collect();
            if t.len() != 5 || t[0] != "T" || q.len() != 4 || q[0] != "Q" {
                return Err(err("expected `T a b c d | Q p q r`"));
            }
            let mut row = [0u64; 7];
            for (i, s) in t[1..].iter().chain(&q[1..]).enumerate() {
                row[i] = s.parse().map_err(|_| err("bad coordinate"))?;
            }
            coords.push(row);
        }
        Ok(NormalVector { coords })
    }
}

impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            writeln!(
                f,
                "tet {i}: T {} {} {} {} | Q {} {} {}",
                c[0], c[1], c[2], c[3], c[4], c[5], c[6]
            )?;
        }
        Ok(())
    }
}

/// At most one quad type per tetrahedron.
pub fn check_admissible(v: &NormalVector) -> bool {
    v.coords
        .iter()
        .all(|c| c[4..].iter().filter(|&&q| q > 0).count() <= 1)
}

/// Arc counts agree across every glued face.
pub fn check_matching(tri: &Triangulation, v: &NormalVector) -> Result<MatchingReport> {
    if v.tet_count() != tri.tet_count() {
        return Err(Error::SizeMismatch {
            expected: tri.tet_count(),
            got: v.tet_count(),
        });
    }
    let mut violations = Vec::new();
    for ((t, f), (u, g), perm) in tri.interior_face_pairs() {
        for c in face_vertices(f) {
            let here = v.arcs(t, f, c);
            let there = v.arcs(u, g, perm.apply(c));
            if here != there {
                violations.push(Violation {
                    tet: t,
                    face: f,
                    corner: c,
                    here,
                    there,
                });
            }
        }
    }
    Ok(MatchingReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// Both admissible and matching.
pub fn is_normal(tri: &Triangulation, v: &NormalVector) -> Result<bool> {
    Ok(check_admissible(v) && check_matching(tri, v)?.ok)
}
