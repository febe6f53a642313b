//! Integral first homology of a triangulation and of its boundary, the
//! meridian as the kernel of `H1(∂M) → H1(M)`, and slope calibration of the
//! boundary edges.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::boundary::{BoundaryComplex, BoundaryTriangle};
use super::perm::{edge_index, face_vertices};
use super::skeleton::Skeleton;
use super::snf::{self, Matrix, Smith};
use super::triangulation::Triangulation;
use crate::error::{Error, Result};
use crate::slope::{Slope, Vec2};

/// `H1` of a chain complex `C2 → C1 → C0` with the data needed to reduce
/// 1-cycles to coordinates.
#[derive(Clone, Debug)]
pub struct FirstHomology {
    edge_count: usize,
    cycles: Smith,
    relations: Smith,
    kernel_dim: usize,
}

impl FirstHomology {
    /// `d1` is `V × E`, `d2` is `E × F`.
    pub fn new(d1: &Matrix, vertices: usize, d2: &Matrix, edges: usize, faces: usize) -> Result<Self> {
        let cycles = snf::smith(d1, vertices, edges)?;
        let r1 = cycles.rank();
        let kernel_dim = edges - r1;
        // Express the boundaries of 2-cells in the kernel basis.
        let in_basis = snf::mul(&cycles.right_inv, d2, edges)?;
        let b: Matrix = in_basis[r1..].to_vec();
        let relations = snf::smith(&b, kernel_dim, faces)?;
        Ok(FirstHomology {
            edge_count: edges,
            cycles,
            relations,
            kernel_dim,
        })
    }

    pub fn rank(&self) -> usize {
        self.kernel_dim - self.relations.rank()
    }

    pub fn torsion(&self) -> Vec<i128> {
        self.relations
            .diagonal
            .iter()
            .copied()
            .filter(|&d| d > 1)
            .collect()
    }

    fn kernel_coords(&self, z: &[i128]) -> Result<Vec<i128>> {
        if z.len() != self.edge_count {
            return Err(Error::Invalid("chain has the wrong length".into()));
        }
        let c = snf::mul_vec(&self.cycles.right_inv, z)?;
        let r1 = self.cycles.rank();
        if c[..r1].iter().any(|&v| v != 0) {
            return Err(Error::Invalid("chain is not a cycle".into()));
        }
        Ok(c[r1..].to_vec())
    }

    /// Free coordinates of the class of a 1-cycle.
    pub fn free_coords(&self, z: &[i128]) -> Result<Vec<i128>> {
        let c = self.kernel_coords(z)?;
        let y = snf::mul_vec(&self.relations.left, &c)?;
        Ok(y[self.relations.rank()..].to_vec())
    }

    /// Torsion coordinates of the class of a 1-cycle, reduced mod each factor.
    pub fn torsion_coords(&self, z: &[i128]) -> Result<Vec<i128>> {
        let c = self.kernel_coords(z)?;
        let y = snf::mul_vec(&self.relations.left, &c)?;
        Ok(self
            .relations
            .diagonal
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 1)
            .map(|(i, &d)| y[i].rem_euclid(d))
            .collect())
    }

    /// 1-cycles whose classes form a basis of the free part.
    pub fn free_generators(&self) -> Result<Vec<Vec<i128>>> {
        let r1 = self.cycles.rank();
        let r2 = self.relations.rank();
        let mut out = Vec::new();
        for i in r2..self.kernel_dim {
            let c: Vec<i128> = (0..self.kernel_dim)
                .map(|r| self.relations.left_inv[r][i])
                .collect();
            let mut z = vec![0i128; self.edge_count];
            for (k, &ck) in c.iter().enumerate() {
                if ck == 0 {
                    continue;
                }
                for (e, ze) in z.iter_mut().enumerate() {
                    *ze = ze
                        .checked_add(ck.checked_mul(self.cycles.right[e][r1 + k]).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)?;
                }
            }
            out.push(z);
        }
        Ok(out)
    }
}

fn signed(rev: bool) -> i128 {
    if rev {
        -1
    } else {
        1
    }
}

/// Cellular `H1(M)` over vertex, edge and face classes.
pub fn manifold_homology(tri: &Triangulation, sk: &Skeleton) -> Result<FirstHomology> {
    let nv = sk.vertex_count();
    let ne = sk.edges.len();
    let nf = sk.faces.len();
    let mut d1 = snf::zeros(nv, ne);
    for (c, e) in sk.edges.iter().enumerate() {
        d1[e.head][c] += 1;
        d1[e.tail][c] -= 1;
    }
    let mut d2 = snf::zeros(ne, nf);
    for (k, face) in sk.faces.iter().enumerate() {
        let (t, f) = face.rep;
        let [a, b, c] = face_vertices(f);
        for (x, y, coef) in [(b, c, 1i128), (a, c, -1), (a, b, 1)] {
            let (cls, rev) = sk.edge_of[t][edge_index(x, y)];
            d2[cls][k] += coef * signed(rev);
        }
    }
    let _ = tri;
    FirstHomology::new(&d1, nv, &d2, ne, nf)
}

/// Cellular `H1(∂M)`; chains are indexed by position in `bc.edges`.
pub fn boundary_homology(bc: &BoundaryComplex) -> Result<FirstHomology> {
    let nv = bc.vertex_count;
    let nf = bc.triangles.len();
    let ne = bc.edges.len();
    let slot = |e: usize| bc.edge_slot(e).expect("boundary edge");
    let mut d1 = snf::zeros(nv, ne);
    for (k, &e) in bc.edges.iter().enumerate() {
        let (i, j) = bc.sides_of(e)[0];
        let tr = &bc.triangles[i];
        let (a, b) = BoundaryTriangle::side_ends(j);
        let (tail, head) = if tr.sides[j].forward { (a, b) } else { (b, a) };
        d1[tr.corners[head]][k] += 1;
        d1[tr.corners[tail]][k] -= 1;
    }
    let mut d2 = snf::zeros(ne, nf);
    for (k, tr) in bc.triangles.iter().enumerate() {
        // ∂[0,1,2] = [1,2] − [0,2] + [0,1]
        for (j, coef) in [(0usize, 1i128), (1, -1), (2, 1)] {
            let s = tr.sides[j];
            d2[slot(s.edge)][k] += coef * signed(!s.forward);
        }
    }
    FirstHomology::new(&d1, nv, &d2, ne, nf)
}

/// A chain over boundary slots as a chain over all edge classes.
fn lift(bc: &BoundaryComplex, chain: &[i128], edge_classes: usize) -> Vec<i128> {
    let mut z = vec![0i128; edge_classes];
    for (k, &e) in bc.edges.iter().enumerate() {
        z[e] = chain[k];
    }
    z
}

/// Homology invariants reported for a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub h1_rank: usize,
    pub h1_torsion: Vec<i128>,
    pub boundary_map_kernel_slope: Option<Slope>,
}

/// Oriented slope vectors of the boundary edge classes, keyed by the
/// representative `(tet, edge)` of each class so that frames survive
/// renumbering when tetrahedra are added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeFrame {
    vectors: BTreeMap<(usize, usize), Vec2>,
}

impl EdgeFrame {
    pub fn new(vectors: BTreeMap<(usize, usize), Vec2>) -> Self {
        EdgeFrame { vectors }
    }

    pub fn vector(&self, sk: &Skeleton, edge: usize) -> Option<&Vec2> {
        self.vectors.get(&sk.edges[edge].rep)
    }

    pub fn by_rep(&self) -> &BTreeMap<(usize, usize), Vec2> {
        &self.vectors
    }

    /// Class of an integer chain of edge classes.
    pub fn class_of(&self, sk: &Skeleton, chain: &[i128]) -> Option<Vec2> {
        let mut acc = Vec2::zero();
        for (e, &c) in chain.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let v = self.vector(sk, e)?;
            acc = acc.add(&v.scale(&BigInt::from(c)));
        }
        Some(acc)
    }

    /// Normalized slope label of a boundary edge class.
    pub fn slope(&self, sk: &Skeleton, edge: usize) -> Option<Slope> {
        self.vector(sk, edge).and_then(Slope::from_vec)
    }
}

/// Meridian data of a solid-torus-like triangulation.
#[derive(Clone, Debug)]
pub struct MeridianData {
    pub homology: FirstHomology,
    pub boundary_homology: FirstHomology,
    /// Kernel generator of `H1(∂M) → H1(M)` as a chain over all edge classes.
    pub meridian_chain: Option<Vec<i128>>,
    /// The boundary inclusion is onto the free part.
    pub surjective: bool,
}

/// Computes `H1(M)`, `H1(∂M)` and the boundary kernel.
pub fn meridian_data(tri: &Triangulation, sk: &Skeleton, bc: &BoundaryComplex) -> Result<MeridianData> {
    let homology = manifold_homology(tri, sk)?;
    let bh = boundary_homology(bc)?;
    let mut meridian_chain = None;
    let mut surjective = false;
    if bc.is_one_vertex_torus() && homology.rank() == 1 {
        let gens = bh.free_generators()?;
        if gens.len() == 2 {
            let ne = sk.edges.len();
            let h1 = homology.free_coords(&lift(bc, &gens[0], ne))?[0];
            let h2 = homology.free_coords(&lift(bc, &gens[1], ne))?[0];
            let g = h1.gcd(&h2);
            if g != 0 {
                surjective = g == 1;
                let (a, b) = (h2 / g, -h1 / g);
                let chain: Vec<i128> = gens[0]
                    .iter()
                    .zip(&gens[1])
                    .map(|(&u, &v)| a * u + b * v)
                    .collect();
                meridian_chain = Some(lift(bc, &chain, ne));
            }
        }
    }
    Ok(MeridianData {
        homology,
        boundary_homology: bh,
        meridian_chain,
        surjective,
    })
}

/// Coordinates of boundary edge classes and the meridian in a basis of `H1(∂M)`.
fn boundary_coords(md: &MeridianData, bc: &BoundaryComplex) -> Result<(Vec<(usize, [i128; 2])>, [i128; 2])> {
    let chain = md.meridian_chain.as_ref().ok_or(Error::BoundaryNotTorus)?;
    let to2 = |c: Vec<i128>| -> Result<[i128; 2]> {
        if c.len() != 2 {
            return Err(Error::BoundaryNotTorus);
        }
        Ok([c[0], c[1]])
    };
    let restricted: Vec<i128> = bc.edges.iter().map(|&e| chain[e]).collect();
    let m = to2(md.boundary_homology.free_coords(&restricted)?)?;
    let mut edges = Vec::new();
    for (k, &e) in bc.edges.iter().enumerate() {
        let mut z = vec![0i128; bc.edges.len()];
        z[k] = 1;
        edges.push((e, to2(md.boundary_homology.free_coords(&z)?)?));
    }
    Ok((edges, m))
}

/// Labels boundary edges by oriented slopes in a basis whose second vector is
/// the meridian found from homology.
///
/// The longitude is not canonical. It is fixed by two conventions: the edge
/// with the smallest nonzero meridian intersection (lowest class index on
/// ties) gets a label `(x, y)` with `0 < y ≤ x`, and of the two mirror images
/// the one with the lexicographically smaller sorted label list is used.
pub fn calibrate(tri: &Triangulation) -> Result<(EdgeFrame, Skeleton, BoundaryComplex)> {
    let sk = Skeleton::compute(tri)?;
    let bc = BoundaryComplex::compute(tri, &sk);
    if !bc.is_one_vertex_torus() {
        return Err(Error::BoundaryNotTorus);
    }
    let md = meridian_data(tri, &sk, &bc)?;
    let (edges, m) = boundary_coords(&md, &bc)?;
    // Longitude l with det(l, m) = 1.
    let eg = m[1].extended_gcd(&(-m[0]));
    let sign = eg.gcd.signum();
    let l = [eg.x * sign, eg.y * sign];
    debug_assert_eq!(l[0] * m[1] - l[1] * m[0], 1);
    let raw: Vec<(usize, i128, i128)> = edges
        .iter()
        .map(|&(e, [a, b])| (e, a * m[1] - b * m[0], l[0] * b - l[1] * a))
        .collect();

    let anchor = raw
        .iter()
        .filter(|(_, x, _)| *x != 0)
        .min_by_key(|(e, x, _)| (x.abs(), *e))
        .copied()
        .ok_or(Error::BoundaryNotTorus)?;

    let mut best: Option<(Vec<Slope>, Vec<(usize, Vec2)>)> = None;
    for mirror in [1i128, -1] {
        let (ax, ay) = (anchor.1, anchor.2 * mirror);
        // Normalize the anchor to x > 0, then shear y into (0, x].
        let (nx, ny) = if ax < 0 { (-ax, -ay) } else { (ax, ay) };
        let shift = (ny - 1).div_euclid(nx);
        let labelled: Vec<(usize, Vec2)> = raw
            .iter()
            .map(|&(e, x, y)| {
                let y = y * mirror - shift * x;
                (e, Vec2::new(x, y))
            })
            .collect();
        let mut key: Vec<Slope> = labelled
            .iter()
            .map(|(_, v)| Slope::from_vec(v).ok_or(Error::BoundaryNotTorus))
            .collect::<Result<_>>()?;
        key.sort();
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, labelled));
        }
    }
    let (_, labelled) = best.unwrap();
    let vectors = labelled
        .into_iter()
        .map(|(e, v)| (sk.edges[e].rep, v))
        .collect();
    Ok((EdgeFrame::new(vectors), sk, bc))
}

/// `H1(M)` rank and torsion, plus the boundary kernel slope in the calibrated frame.
pub fn first_homology(tri: &Triangulation) -> Result<HomologySummary> {
    let sk = Skeleton::compute(tri)?;
    let homology = manifold_homology(tri, &sk)?;
    let kernel = match calibrate(tri) {
        Ok((frame, sk, bc)) => {
            let md = meridian_data(tri, &sk, &bc)?;
            md.meridian_chain
                .as_ref()
                .and_then(|c| frame.class_of(&sk, c))
                .and_then(|v| Slope::of_class(&v))
        }
        Err(_) => None,
    };
    Ok(HomologySummary {
        h1_rank: homology.rank(),
        h1_torsion: homology.torsion(),
        boundary_map_kernel_slope: kernel,
    })
}

/// Kernel slope measured in an externally supplied frame.
pub fn kernel_slope_in_frame(tri: &Triangulation, frame: &EdgeFrame) -> Result<Option<Slope>> {
    let sk = Skeleton::compute(tri)?;
    let bc = BoundaryComplex::compute(tri, &sk);
    let md = meridian_data(tri, &sk, &bc)?;
    Ok(md
        .meridian_chain
        .as_ref()
        .and_then(|c| frame.class_of(&sk, c))
        .and_then(|v| Slope::of_class(&v)))
}

/// Necessary conditions for a solid torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateReport {
    pub candidate: bool,
    pub boundary_torus: bool,
    pub euler_zero: bool,
    pub h1_is_z: bool,
    pub primitive_kernel: bool,
    pub orientable: bool,
}

/// Boundary a single torus, `χ(M) = 0`, `H1(M) = Z` and a primitive boundary
/// kernel onto which the boundary surjects. These are necessary, not
/// sufficient, for a solid torus.
pub fn solid_torus_candidate(tri: &Triangulation) -> Result<CandidateReport> {
    let sk = Skeleton::compute(tri)?;
    let bc = BoundaryComplex::compute(tri, &sk);
    let boundary_torus = bc.kind() == super::boundary::SurfaceKind::Torus;
    let euler_zero = sk.summary().euler_characteristic() == 0;
    let md = meridian_data(tri, &sk, &bc)?;
    let h1_is_z = md.homology.rank() == 1 && md.homology.torsion().is_empty();
    let primitive_kernel = md.meridian_chain.is_some() && md.surjective;
    let orientable = tri.is_orientable();
    Ok(CandidateReport {
        candidate: boundary_torus && euler_zero && h1_is_z && primitive_kernel && orientable,
        boundary_torus,
        euler_zero,
        h1_is_z,
        primitive_kernel,
        orientable,
    })
}
