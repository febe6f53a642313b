//! The manifold obtained by cutting along a two-sided normal surface, and
//! its parallelity bundle.
//!
//! Each tetrahedron splits into corner regions, slabs between consecutive
//! discs of one type, and one or two central regions. A slab is a product
//! `disc × I`; strips between consecutive arcs in a face and segments
//! between consecutive points on an edge are its vertical boundary pieces.
//! The bundle is the union of the slabs with those pieces, and its base is
//! counted cell by cell: slabs give 2-cells, strips 1-cells, segments
//! 0-cells.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::normal::complex::{Disc, DiscKind};
use crate::normal::vector::{quad_first_side, quad_pairing};
use crate::normal::{min_curve_length, NormalComplex, NormalVector, TorusModel};
use crate::search::{as_meridian_disc, find_meridian_discs_in_frame, SearchBudget};
use crate::slope::SlopeTriple;
use crate::tri::homology::{calibrate, kernel_slope_in_frame};
use crate::tri::perm::face_vertices;
use crate::tri::{Skeleton, Triangulation};
use crate::util::ParityUnionFind;

/// A complementary piece of one tetrahedron.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    /// Between vertex `v` and the first triangle at `v`.
    Corner(usize),
    /// Between triangles `j` and `j + 1` at `v`.
    TriSlab(usize, u64),
    /// Between quads `j` and `j + 1`.
    QuadSlab(u64),
    /// The rest; side `1` is the far side of the quads, when there are any.
    Central(usize),
}

impl Region {
    pub fn is_slab(&self) -> bool {
        matches!(self, Region::TriSlab(..) | Region::QuadSlab(_))
    }
}

/// A piece of a tetrahedron face cut by normal arcs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FacePiece {
    Corner(usize),
    /// Between arcs `k` and `k + 1` around a corner.
    Strip(usize, u64),
    Center,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    #[serde(rename = "D-")]
    DMinus,
    #[serde(rename = "D+")]
    DPlus,
    A,
}

impl Label {
    fn of_side(positive: bool) -> Label {
        if positive {
            Label::DPlus
        } else {
            Label::DMinus
        }
    }
}

fn central_side(v: &NormalVector, t: usize, x: usize) -> Region {
    match v.quad_type(t) {
        Some((k, _)) if !quad_first_side(k, x) => Region::Central(1),
        _ => Region::Central(0),
    }
}

pub fn tet_regions(v: &NormalVector, t: usize) -> Vec<Region> {
    let mut out = Vec::new();
    for c in 0..4 {
        let n = v.triangles(t, c);
        if n > 0 {
            out.push(Region::Corner(c));
        }
        for j in 0..n.saturating_sub(1) {
            out.push(Region::TriSlab(c, j));
        }
    }
    out.push(Region::Central(0));
    if let Some((_, q)) = v.quad_type(t) {
        for j in 0..q - 1 {
            out.push(Region::QuadSlab(j));
        }
        out.push(Region::Central(1));
    }
    out
}

pub fn face_pieces(v: &NormalVector, t: usize, f: usize) -> Vec<FacePiece> {
    let mut out = Vec::new();
    for c in face_vertices(f) {
        let n = v.arcs(t, f, c);
        if n > 0 {
            out.push(FacePiece::Corner(c));
        }
        for k in 0..n.saturating_sub(1) {
            out.push(FacePiece::Strip(c, k));
        }
    }
    out.push(FacePiece::Center);
    out
}

/// The region of tetrahedron `t` containing a face piece of face `f`.
pub fn region_of_face_piece(v: &NormalVector, t: usize, f: usize, p: FacePiece) -> Region {
    match p {
        FacePiece::Corner(c) => {
            if v.triangles(t, c) > 0 {
                Region::Corner(c)
            } else {
                central_side(v, t, c)
            }
        }
        FacePiece::Strip(c, k) => {
            let tri = v.triangles(t, c);
            if k + 1 < tri {
                Region::TriSlab(c, k)
            } else if k + 1 == tri {
                central_side(v, t, c)
            } else {
                let (kind, q) = v.quad_type(t).expect("quad arcs need quads");
                let m = k - tri;
                Region::QuadSlab(if quad_first_side(kind, c) { m } else { q - 2 - m })
            }
        }
        FacePiece::Center => {
            let Some((k, _)) = v.quad_type(t) else {
                return Region::Central(0);
            };
            // The quads cut off the face corner on the side of `f`.
            let far = face_vertices(f)
                .into_iter()
                .find(|&x| quad_pairing(x, f) != k)
                .expect("two face corners lie across the quads");
            central_side(v, t, far)
        }
    }
}

/// Regions behind and ahead of a disc in its stacking direction: away from
/// the vertex for triangles, from the first side for quads.
pub fn disc_regions(v: &NormalVector, d: &Disc) -> (Region, Region) {
    match d.kind {
        DiscKind::Triangle(c) => {
            let n = v.triangles(d.tet, c);
            let behind = if d.index == 0 {
                Region::Corner(c)
            } else {
                Region::TriSlab(c, d.index - 1)
            };
            let ahead = if d.index + 1 < n {
                Region::TriSlab(c, d.index)
            } else {
                central_side(v, d.tet, c)
            };
            (behind, ahead)
        }
        DiscKind::Quad(k) => {
            let q = v.quads(d.tet, k);
            let behind = if d.index == 0 {
                Region::Central(0)
            } else {
                Region::QuadSlab(d.index - 1)
            };
            let ahead = if d.index + 1 < q {
                Region::QuadSlab(d.index)
            } else {
                Region::Central(1)
            };
            (behind, ahead)
        }
    }
}

/// Whether the stacking direction of `kind` points away from `corner`
/// within a face.
pub fn away_from(kind: DiscKind, corner: usize) -> bool {
    match kind {
        DiscKind::Triangle(_) => true,
        DiscKind::Quad(k) => quad_first_side(k, corner),
    }
}

/// Per arc slot, the disc it bounds.
pub fn slot_discs(nc: &NormalComplex) -> Vec<usize> {
    let mut slot_disc = vec![usize::MAX; nc.arc_slots.len()];
    for (di, arcs) in nc.disc_arcs.iter().enumerate() {
        for &(slot, _) in arcs {
            slot_disc[slot] = di;
        }
    }
    slot_disc
}

/// Transverse orientation per disc, as agreement with its stacking
/// direction. Fails for one-sided surfaces.
pub fn coorientation(tri: &Triangulation, nc: &NormalComplex) -> Result<Vec<bool>> {
    let v = &nc.vector;
    let slot_disc = slot_discs(nc);
    let mut co = ParityUnionFind::new(nc.discs.len());
    for ((t, f), (u, g), perm) in tri.interior_face_pairs() {
        for c in face_vertices(f) {
            for k in 0..v.arcs(t, f, c) {
                let d1 = slot_disc[nc.arc_slot_index[&(t, f, c, k)]];
                let d2 = slot_disc[nc.arc_slot_index[&(u, g, perm.apply(c), k)]];
                let s1 = away_from(nc.discs[d1].kind, c);
                let s2 = away_from(nc.discs[d2].kind, perm.apply(c));
                if !co.union(d1, d2, s1 != s2) {
                    return Err(Error::NotMeridianDisc("one-sided surface".into()));
                }
            }
        }
    }
    Ok((0..nc.discs.len()).map(|d| !co.find(d).1).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DiscPatch {
    pub disc: Disc,
    pub label: Label,
    /// Index into `CutComplex::regions`.
    pub region: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryPatch {
    pub tet: usize,
    pub face: usize,
    pub piece: FacePiece,
    pub region: usize,
}

#[derive(Clone, Debug)]
pub struct CutComplex {
    pub regions: Vec<(usize, Region)>,
    /// Region pairs meeting across each interior face piece.
    pub adjacency: Vec<(usize, usize)>,
    pub disc_patches: Vec<DiscPatch>,
    /// The annulus `A`: pieces of boundary faces.
    pub boundary_patches: Vec<BoundaryPatch>,
    pub region_component: Vec<usize>,
    pub component_count: usize,
    pub euler_characteristic: i64,
    pub annulus_euler: i64,
    tri: Triangulation,
    skeleton: Skeleton,
    complex: NormalComplex,
    region_index: HashMap<(usize, Region), usize>,
    /// Per disc: whether its coorientation agrees with the stacking direction.
    coorientation: Vec<bool>,
}

/// Counts for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutSummary {
    pub regions: usize,
    pub components: usize,
    pub euler_characteristic: i64,
    pub annulus_euler: i64,
    pub d_minus_patches: usize,
    pub d_plus_patches: usize,
    pub a_patches: usize,
}

impl CutComplex {
    pub fn vector(&self) -> &NormalVector {
        &self.complex.vector
    }

    pub fn region_id(&self, tet: usize, r: Region) -> Option<usize> {
        self.region_index.get(&(tet, r)).copied()
    }

    pub fn summary(&self) -> CutSummary {
        let count = |l: Label| self.disc_patches.iter().filter(|p| p.label == l).count();
        CutSummary {
            regions: self.regions.len(),
            components: self.component_count,
            euler_characteristic: self.euler_characteristic,
            annulus_euler: self.annulus_euler,
            d_minus_patches: count(Label::DMinus),
            d_plus_patches: count(Label::DPlus),
            a_patches: self.boundary_patches.len(),
        }
    }

    /// Label of the copy of disc `d` facing along (`ahead`) or against its
    /// stacking direction.
    fn copy_label(&self, d: &Disc, ahead: bool) -> Label {
        let i = self.complex.disc_index[d];
        Label::of_side(self.coorientation[i] == ahead)
    }
}

/// Cuts along `v`, which must be two-sided (every meridian disc is).
pub fn cut_along(tri: &Triangulation, v: &NormalVector) -> Result<CutComplex> {
    let sk = Skeleton::compute(tri)?;
    let nc = NormalComplex::build(tri, &sk, v)?;

    let coorientation = coorientation(tri, &nc)?;

    let mut regions = Vec::new();
    let mut region_index = HashMap::new();
    for t in 0..tri.tet_count() {
        for r in tet_regions(v, t) {
            region_index.insert((t, r), regions.len());
            regions.push((t, r));
        }
    }

    let mut uf = ParityUnionFind::new(regions.len());
    let mut adjacency = Vec::new();
    let mut face_piece_count = 0usize;
    for ((t, f), (u, g), perm) in tri.interior_face_pairs() {
        for p in face_pieces(v, t, f) {
            let q = match p {
                FacePiece::Corner(c) => FacePiece::Corner(perm.apply(c)),
                FacePiece::Strip(c, k) => FacePiece::Strip(perm.apply(c), k),
                FacePiece::Center => FacePiece::Center,
            };
            let a = region_index[&(t, region_of_face_piece(v, t, f, p))];
            let b = region_index[&(u, region_of_face_piece(v, u, g, q))];
            uf.union(a, b, false);
            adjacency.push((a, b));
            face_piece_count += 1;
        }
    }
    let mut boundary_patches = Vec::new();
    for (t, f) in tri.boundary_faces() {
        for p in face_pieces(v, t, f) {
            boundary_patches.push(BoundaryPatch {
                tet: t,
                face: f,
                piece: p,
                region: region_index[&(t, region_of_face_piece(v, t, f, p))],
            });
        }
    }
    face_piece_count += boundary_patches.len();
    let (region_component, component_count) = uf.classes();

    let mut disc_patches = Vec::new();
    for (i, d) in nc.discs.iter().enumerate() {
        let (behind, ahead) = disc_regions(v, d);
        for (r, is_ahead) in [(behind, false), (ahead, true)] {
            disc_patches.push(DiscPatch {
                disc: *d,
                label: Label::of_side(coorientation[i] == is_ahead),
                region: region_index[&(d.tet, r)],
            });
        }
    }

    // Cells of the cut manifold: surface points, arcs and discs appear twice.
    let points = nc.points.len() as i64;
    let segs: i64 = nc.class_weights.iter().map(|&w| w as i64 + 1).sum();
    let vertex_classes = sk.vertex_count() as i64;
    let euler_characteristic = vertex_classes + 2 * points - (segs + 2 * nc.arc_count as i64)
        + (face_piece_count as i64 + 2 * nc.discs.len() as i64)
        - regions.len() as i64;

    let bdry_classes: Vec<usize> = (0..sk.edges.len()).filter(|&c| sk.edges[c].boundary).collect();
    let bdry_vertices = (0..sk.vertex_boundary.len()).filter(|&x| sk.vertex_boundary[x]).count() as i64;
    let bdry_points: i64 = bdry_classes.iter().map(|&c| nc.class_weights[c] as i64).sum();
    let bdry_segs: i64 = bdry_classes.iter().map(|&c| nc.class_weights[c] as i64 + 1).sum();
    let bdry_arcs = (0..nc.arc_slots.len()).filter(|&s| nc.on_boundary(tri, s)).count() as i64;
    let annulus_euler = bdry_vertices + 2 * bdry_points - (bdry_segs + 2 * bdry_arcs) + boundary_patches.len() as i64;

    Ok(CutComplex {
        regions,
        adjacency,
        disc_patches,
        boundary_patches,
        region_component,
        component_count,
        euler_characteristic,
        annulus_euler,
        tri: tri.clone(),
        skeleton: sk,
        complex: nc,
        region_index,
        coorientation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundleComponent {
    pub slabs: Vec<(usize, Region)>,
    pub base_euler: i64,
    /// Base cells `(vertices, edges, faces)`.
    pub base_cells: (usize, usize, usize),
    pub base_orientable: bool,
    pub meets_dminus: bool,
    pub meets_dplus: bool,
    pub meets_a: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    Slab(usize),
    /// Canonical `(tet, face, corner, k)`.
    Strip(usize, usize, usize, u64),
    /// `(edge class, j)`: between points `j` and `j + 1` from the class tail.
    Segment(usize, u64),
}

/// Slabs grouped through shared strips and segments.
pub fn parallelity_bundle(x: &CutComplex) -> Vec<BundleComponent> {
    let v = x.vector();
    let sk = &x.skeleton;
    let tri = &x.tri;
    let mut ids: BTreeMap<Node, usize> = BTreeMap::new();
    let mut edges: Vec<(Node, Node, bool)> = Vec::new();
    let mut at_a: BTreeSet<Node> = BTreeSet::new();

    let canonical_strip = |t: usize, f: usize, c: usize, k: u64| -> Node {
        match tri.gluing(t, f) {
            Some(g) => {
                let other = (g.tet, g.perm.apply(f), g.perm.apply(c), k);
                Node::Strip(t, f, c, k).min(Node::Strip(other.0, other.1, other.2, other.3))
            }
            None => Node::Strip(t, f, c, k),
        }
    };

    for (ri, &(t, r)) in x.regions.iter().enumerate() {
        if !r.is_slab() {
            continue;
        }
        let slab = Node::Slab(ri);
        ids.entry(slab).or_default();
        for f in 0..4 {
            for p in face_pieces(v, t, f) {
                let FacePiece::Strip(c, k) = p else { continue };
                if region_of_face_piece(v, t, f, p) != r {
                    continue;
                }
                let strip = canonical_strip(t, f, c, k);
                let flip = match r {
                    Region::QuadSlab(_) => !quad_first_side(v.quad_type(t).expect("quad slab").0, c),
                    _ => false,
                };
                edges.push((slab, strip, flip));
                if tri.gluing(t, f).is_none() {
                    at_a.insert(strip);
                }
                for o in face_vertices(f).into_iter().filter(|&o| o != c) {
                    let (cls, rev) = sk.edge_between(t, c, o);
                    let w = x.complex.class_weights[cls];
                    let j = if rev { w - 2 - k } else { k };
                    let seg = Node::Segment(cls, j);
                    edges.push((strip, seg, rev));
                    if sk.edges[cls].boundary {
                        at_a.insert(seg);
                    }
                }
            }
        }
    }
    for &(a, b, _) in &edges {
        ids.entry(a).or_default();
        ids.entry(b).or_default();
    }
    for (i, val) in ids.values_mut().enumerate() {
        *val = i;
    }
    let mut uf = ParityUnionFind::new(ids.len());
    let mut twisted = Vec::new();
    for &(a, b, flip) in &edges {
        if !uf.union(ids[&a], ids[&b], flip) {
            twisted.push(ids[&a]);
        }
    }
    let (class, count) = uf.classes();

    struct Acc {
        slabs: Vec<(usize, Region)>,
        cells: [usize; 3],
        orientable: bool,
        minus: bool,
        plus: bool,
        a: bool,
    }
    let mut acc: Vec<Acc> = (0..count)
        .map(|_| Acc {
            slabs: Vec::new(),
            cells: [0; 3],
            orientable: true,
            minus: false,
            plus: false,
            a: false,
        })
        .collect();
    for (node, &i) in &ids {
        let a = &mut acc[class[i]];
        a.a |= at_a.contains(node);
        match *node {
            Node::Slab(ri) => {
                let (t, r) = x.regions[ri];
                a.slabs.push((t, r));
                a.cells[2] += 1;
                let (kind, j) = match r {
                    Region::TriSlab(c, j) => (DiscKind::Triangle(c), j),
                    Region::QuadSlab(j) => (DiscKind::Quad(v.quad_type(t).expect("quad slab").0), j),
                    _ => unreachable!(),
                };
                let lower = Disc { tet: t, kind, index: j };
                let upper = Disc { tet: t, kind, index: j + 1 };
                for l in [x.copy_label(&lower, true), x.copy_label(&upper, false)] {
                    match l {
                        Label::DMinus => a.minus = true,
                        Label::DPlus => a.plus = true,
                        Label::A => {}
                    }
                }
            }
            Node::Strip(..) => a.cells[1] += 1,
            Node::Segment(..) => a.cells[0] += 1,
        }
    }
    for i in twisted {
        acc[class[i]].orientable = false;
    }
    let mut out: Vec<BundleComponent> = acc
        .into_iter()
        .map(|a| BundleComponent {
            base_euler: a.cells[0] as i64 - a.cells[1] as i64 + a.cells[2] as i64,
            base_cells: (a.cells[0], a.cells[1], a.cells[2]),
            slabs: a.slabs,
            base_orientable: a.orientable,
            meets_dminus: a.minus,
            meets_dplus: a.plus,
            meets_a: a.a,
        })
        .collect();
    out.sort_by(|p, q| p.slabs.cmp(&q.slabs));
    out
}

/// Components meeting the annulus.
pub fn bundle_prime(components: &[BundleComponent]) -> Vec<BundleComponent> {
    components.iter().filter(|c| c.meets_a).cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    /// Every bundle component is a product.
    pub claim1: bool,
    /// Every component meeting `A` meets both `D−` and `D+`.
    pub claim2: bool,
    /// `None` when minimality could not be decided.
    pub minimal: Option<bool>,
    pub components: Vec<BundleComponent>,
    pub details: Vec<String>,
}

/// Whether `v` is a meridian disc of least `(boundary length, weight)`.
///
/// A disc whose boundary has the length of the shortest normal meridian
/// curve is minimal iff no disc has smaller weight; the latter is settled by
/// a weight-bounded search, with pieces bounded through corner counts.
pub fn is_minimal_disc(tri: &Triangulation, v: &NormalVector) -> Result<Option<bool>> {
    let (frame, sk, bc) = calibrate(tri)?;
    let meridian = kernel_slope_in_frame(tri, &frame)?.ok_or(Error::BoundaryNotTorus)?;
    let model = TorusModel::from_boundary(&bc, &sk, &frame)?;
    let Some(disc) = as_meridian_disc(tri, &sk, &bc, &model, &meridian, v)? else {
        return Ok(Some(false));
    };
    let (length, weight) = disc.complexity;
    let slopes = model.edge_slopes();
    let shortest = match slopes.as_slice() {
        [a, b, c] => SlopeTriple::new(a.clone(), b.clone(), c.clone())
            .map(|t| min_curve_length(&t, &meridian))
            .ok(),
        _ => None,
    };
    let max_degree = sk.edges.iter().map(|e| e.degree as u64).max().unwrap_or(0);
    if weight == 0 {
        return Ok(Some(true));
    }
    let piece_cap = ((weight - 1) * max_degree).div_ceil(3);
    let budget = SearchBudget::pieces(piece_cap).with_weight(weight - 1);
    let lighter = find_meridian_discs_in_frame(tri, &frame, budget)?;
    if lighter.discs.iter().any(|d| d.complexity.0 <= length) {
        return Ok(Some(false));
    }
    if shortest == Some(BigInt::from(length)) && lighter.complete {
        return Ok(Some(true));
    }
    Ok(None)
}

pub fn check_claims(tri: &Triangulation, v: &NormalVector) -> Result<ClaimsReport> {
    let cut = cut_along(tri, v)?;
    let components = parallelity_bundle(&cut);
    let mut details = Vec::new();
    for (i, c) in components.iter().enumerate() {
        if !c.base_orientable {
            details.push(format!("component {i}: twisted fibres"));
        }
        if c.meets_a && !(c.meets_dminus && c.meets_dplus) {
            let side = if c.meets_dminus { "D-" } else { "D+" };
            details.push(format!("component {i}: meets A and only {side}"));
        }
    }
    let claim1 = components.iter().all(|c| c.base_orientable);
    let claim2 = components
        .iter()
        .all(|c| !c.meets_a || (c.meets_dminus && c.meets_dplus));
    let minimal = is_minimal_disc(tri, v)?;
    if minimal != Some(true) {
        details.push("input not minimal".into());
    }
    Ok(ClaimsReport {
        claim1,
        claim2,
        minimal,
        components,
        details,
    })
}
