//! Layered triangulations of the solid torus with tracked boundary slopes.
//!
//! Layering a tetrahedron on a boundary edge `e` glues two of its faces to
//! the two boundary triangles meeting `e`. Convention for the new
//! tetrahedron: its edge `23` is identified with `e` (vertex 2 at the tail
//! of `e`), face 0 goes to one boundary triangle and face 1 to the other,
//! and the new boundary edge is `01`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::slope::{elementary_move, Slope, SlopeTriple, Vec2};
use crate::tri::boundary::{BoundaryComplex, BoundaryTriangle};
use crate::tri::homology::{calibrate, kernel_slope_in_frame, EdgeFrame};
use crate::tri::perm::{edge_index, Perm4};
use crate::tri::{Gluing, Skeleton, Triangulation};

/// The one-tetrahedron solid torus: face 3 glued to face 0.
pub const T0_TEXT: &str = "tets 1\n0: 0:3012 - - 0:1230\n";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerStep {
    pub layer: usize,
    pub removed: Slope,
    pub inserted: Slope,
}

/// A triangulation together with oriented slope vectors on its boundary edges.
#[derive(Clone, Debug)]
pub struct LayeredTriangulation {
    pub tri: Triangulation,
    frame: EdgeFrame,
    pub history: Vec<LayerStep>,
}

impl LayeredTriangulation {
    /// Wraps a solid-torus-like triangulation, labelling its boundary by
    /// homology calibration.
    pub fn calibrated(tri: Triangulation) -> Result<Self> {
        let (frame, _, _) = calibrate(&tri)?;
        Ok(LayeredTriangulation {
            tri,
            frame,
            history: Vec::new(),
        })
    }

    pub fn frame(&self) -> &EdgeFrame {
        &self.frame
    }

    pub fn tet_count(&self) -> usize {
        self.tri.tet_count()
    }

    /// Boundary edge class to slope.
    pub fn boundary_slopes(&self) -> BTreeMap<usize, Slope> {
        let sk = Skeleton::compute(&self.tri).expect("validated triangulation");
        let bc = BoundaryComplex::compute(&self.tri, &sk);
        bc.edges
            .iter()
            .filter_map(|&e| self.frame.slope(&sk, e).map(|s| (e, s)))
            .collect()
    }

    pub fn triple(&self) -> SlopeTriple {
        let s: Vec<Slope> = self.boundary_slopes().into_values().collect();
        SlopeTriple::new(s[0].clone(), s[1].clone(), s[2].clone()).expect("layering keeps a Farey triple")
    }

    /// Boundary edge class carrying `slope`.
    pub fn edge_with_slope(&self, slope: &Slope) -> Option<usize> {
        self.boundary_slopes()
            .into_iter()
            .find(|(_, s)| s == slope)
            .map(|(e, _)| e)
    }

    /// Meridian measured in the tracked frame.
    pub fn meridian(&self) -> Result<Option<Slope>> {
        kernel_slope_in_frame(&self.tri, &self.frame)
    }

    /// Triangulation text with slope tags on boundary edge classes.
    pub fn labelled(&self) -> Triangulation {
        let labels = self
            .boundary_slopes()
            .into_iter()
            .map(|(e, s)| (e, s.to_string()))
            .collect();
        self.tri.clone().with_labels(labels)
    }
}

/// The one-tetrahedron layered solid torus.
pub fn base_t0() -> LayeredTriangulation {
    let tri = Triangulation::parse(T0_TEXT).expect("static triangulation");
    LayeredTriangulation::calibrated(tri).expect("one-tetrahedron solid torus calibrates")
}

/// Ordered vertices `(tail, head, opposite, missing)` of a boundary triangle
/// around the side carrying `e`, with `tail → head` along the class of `e`.
fn side_frame(sk: &Skeleton, tr: &BoundaryTriangle, side: usize) -> [usize; 4] {
    let (a, b) = BoundaryTriangle::side_ends(side);
    let (x, y) = (tr.tet_vertices[a], tr.tet_vertices[b]);
    let (_, rev) = sk.edge_between(tr.tet, x, y);
    let (tail, head) = if rev { (y, x) } else { (x, y) };
    [tail, head, tr.tet_vertices[side], tr.face]
}

fn perm(images: [usize; 4]) -> Perm4 {
    Perm4::new(images.map(|v| v as u8)).expect("bijection")
}

fn signed_vector(frame: &EdgeFrame, sk: &Skeleton, tet: usize, a: usize, b: usize) -> Option<Vec2> {
    let (class, rev) = sk.edge_between(tet, a, b);
    let v = frame.vector(sk, class)?;
    Some(if rev { v.neg() } else { v.clone() })
}

/// Layers a tetrahedron on boundary edge class `edge`.
pub fn layer(lt: &LayeredTriangulation, edge: usize) -> Result<LayeredTriangulation> {
    let sk = Skeleton::compute(&lt.tri)?;
    let bc = BoundaryComplex::compute(&lt.tri, &sk);
    if bc.edge_slot(edge).is_none() {
        return Err(Error::NotBoundaryEdge(edge));
    }
    let slots = bc.sides_of(edge);
    if slots.len() != 2 || slots[0].0 == slots[1].0 {
        return Err(Error::DegenerateAdjacency(edge));
    }
    let before = lt.triple();
    let removed = lt.frame.slope(&sk, edge).ok_or(Error::NotBoundaryEdge(edge))?;

    let mut result = None;
    for order in [[0usize, 1], [1, 0]] {
        let f1 = side_frame(&sk, &bc.triangles[slots[order[0]].0], slots[order[0]].1);
        let f2 = side_frame(&sk, &bc.triangles[slots[order[1]].0], slots[order[1]].1);
        let t1 = bc.triangles[slots[order[0]].0].tet;
        let t2 = bc.triangles[slots[order[1]].0].tet;
        // Face 0 = {1,2,3}: 1→opposite, 2→tail, 3→head, 0→missing.
        let g0 = Gluing {
            tet: t1,
            perm: perm([f1[3], f1[2], f1[0], f1[1]]),
        };
        // Face 1 = {0,2,3}: 0→opposite, 2→tail, 3→head, 1→missing.
        let g1 = Gluing {
            tet: t2,
            perm: perm([f2[2], f2[3], f2[0], f2[1]]),
        };
        let tri = lt.tri.with_tetrahedron([Some(g0), Some(g1), None, None])?;
        if tri.is_orientable() {
            result = Some(tri);
            break;
        }
    }
    let tri = result.ok_or_else(|| Error::Invalid("no orientable layering".into()))?;

    let new = tri.tet_count() - 1;
    let nsk = Skeleton::compute(&tri)?;
    let v02 = signed_vector(&lt.frame, &nsk, new, 0, 2).ok_or(Error::BoundaryNotTorus)?;
    let v12 = signed_vector(&lt.frame, &nsk, new, 1, 2).ok_or(Error::BoundaryNotTorus)?;
    // Triangle 012 on the new boundary: 0→1→2 is homotopic to 0→2.
    let v01 = v02.sub(&v12);
    let mut vectors = lt.frame.by_rep().clone();
    let (class01, rev01) = nsk.edge_of[new][edge_index(0, 1)];
    debug_assert!(!rev01);
    vectors.insert(nsk.edges[class01].rep, v01.clone());
    let frame = EdgeFrame::new(vectors);
    let inserted = Slope::from_vec(&v01).ok_or(Error::BoundaryNotTorus)?;

    let expected = elementary_move(&before, &removed)?;
    let mut history = lt.history.clone();
    history.push(LayerStep {
        layer: history.len() + 1,
        removed,
        inserted,
    });
    let out = LayeredTriangulation {
        tri,
        frame,
        history,
    };
    if out.triple() != expected {
        return Err(Error::Invalid(format!(
            "layering produced {} but the flip predicts {}",
            out.triple(),
            expected
        )));
    }
    Ok(out)
}

/// `T_i`: the base layered `i` times, each time on the edge with the oldest
/// (smallest) slope.
pub fn family(i: usize) -> LayeredTriangulation {
    let mut lt = base_t0();
    for _ in 0..i {
        let oldest = lt.triple().slopes()[0].clone();
        let e = lt.edge_with_slope(&oldest).expect("slope is on the boundary");
        lt = layer(&lt, e).expect("layering a one-vertex torus boundary");
    }
    lt
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::slope_seq;
    use crate::tri::{first_homology, solid_torus_candidate};

    fn s(x: i64, y: i64) -> Slope {
        Slope::new(x, y).unwrap()
    }

    #[test]
    fn base_has_one_tet_and_calibrated_slopes() {
        let t0 = base_t0();
        assert_eq!(t0.tet_count(), 1);
        assert_eq!(t0.triple().slopes(), &[s(1, 1), s(2, 1), s(3, 2)]);
        assert_eq!(t0.meridian().unwrap(), Some(Slope::meridian()));
    }

    #[test]
    fn first_layers() {
        let t0 = base_t0();
        let t1 = layer(&t0, t0.edge_with_slope(&s(1, 1)).unwrap()).unwrap();
        assert_eq!(t1.triple().slopes(), &[s(2, 1), s(3, 2), s(5, 3)]);
        assert_eq!(t1.history[0].inserted, s(5, 3));
        let t2 = layer(&t1, t1.edge_with_slope(&s(2, 1)).unwrap()).unwrap();
        assert_eq!(t2.triple().slopes(), &[s(3, 2), s(5, 3), s(8, 5)]);
    }

    #[test]
    fn layering_back_along_the_new_edge_backtracks() {
        let t0 = base_t0();
        let t1 = layer(&t0, t0.edge_with_slope(&s(1, 1)).unwrap()).unwrap();
        let t2 = layer(&t1, t1.edge_with_slope(&s(5, 3)).unwrap()).unwrap();
        assert_eq!(t2.triple(), t0.triple());
        assert_eq!(t2.tet_count(), 3);
    }

    #[test]
    fn family_matches_recursion_and_homology() {
        for i in 0..=12 {
            let lt = family(i);
            assert_eq!(lt.tet_count(), i + 1);
            let want = [slope_seq(i + 1), slope_seq(i + 2), slope_seq(i + 3)];
            assert_eq!(lt.triple().slopes(), &want, "i = {i}");
            assert_eq!(lt.meridian().unwrap(), Some(Slope::meridian()));
            let h = first_homology(&lt.tri).unwrap();
            assert_eq!((h.h1_rank, h.h1_torsion.len()), (1, 0));
            assert!(solid_torus_candidate(&lt.tri).unwrap().candidate);
        }
    }

    #[test]
    fn family_is_iterated_layering() {
        for i in 0..6 {
            let lt = family(i);
            let e = lt.edge_with_slope(&lt.triple().slopes()[0]).unwrap();
            assert_eq!(layer(&lt, e).unwrap().tri, family(i + 1).tri);
        }
    }

    #[test]
    fn interior_edge_is_rejected() {
        let t1 = family(1);
        let sk = Skeleton::compute(&t1.tri).unwrap();
        let interior = (0..sk.edges.len()).find(|&e| !sk.edges[e].boundary).unwrap();
        assert_eq!(layer(&t1, interior).unwrap_err(), Error::NotBoundaryEdge(interior));
    }

    #[test]
    fn labelled_text_round_trips() {
        let text = family(2).labelled().serialize();
        assert_eq!(Triangulation::parse(&text).unwrap().serialize(), family(2).tri.serialize());
    }
}
