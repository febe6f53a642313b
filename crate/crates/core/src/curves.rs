//! Piecewise-linear closed curves in a triangulation, carried either by
//! faces (curves in the 2-skeleton) or by tetrahedra (curves transverse to
//! it), with exact rational coordinates.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bundle::{away_from, coorientation, slot_discs};
use crate::error::{Error, Result};
use crate::golden::at_least_golden_power;
use crate::layered::family;
use crate::normal::complex::DiscKind;
use crate::normal::geometry::{face_plane, geometrize_complex, orient2, segments_meet, Bary, Q};
use crate::normal::vector::QUAD_SPLITS;
use crate::normal::{NormalComplex, NormalVector};
use crate::search::family_meridian_disc;
use crate::slope::{x_seq, Slope};
use crate::tri::perm::{face_vertices, EDGES};
use crate::tri::{Skeleton, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Carrier {
    /// Face `face` of tetrahedron `tet`.
    Face { tet: usize, face: usize },
    Tet { tet: usize },
}

impl Carrier {
    pub fn tet(&self) -> usize {
        match *self {
            Carrier::Face { tet, .. } | Carrier::Tet { tet } => tet,
        }
    }
}

mod bary_text {
    use super::Bary;
    use num_rational::BigRational;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Bary, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(p.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Bary, D::Error> {
        let raw: [String; 4] = Deserialize::deserialize(d)?;
        let mut out: Vec<BigRational> = Vec::with_capacity(4);
        for r in &raw {
            out.push(r.parse().map_err(|_| D::Error::custom(format!("bad rational `{r}`")))?);
        }
        Ok(std::array::from_fn(|i| out[i].clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub carrier: Carrier,
    /// Barycentric coordinates in the carrier's tetrahedron.
    #[serde(with = "bary_text")]
    pub start: Bary,
    #[serde(with = "bary_text")]
    pub end: Bary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PLCurve {
    pub segments: Vec<Segment>,
}

fn zeros(p: &Bary) -> Vec<usize> {
    (0..4).filter(|&i| p[i].is_zero()).collect()
}

/// Carries `p` (on face `f` of `t`) across the gluing of that face.
fn across(tri: &Triangulation, t: usize, f: usize, p: &Bary) -> Option<(usize, Bary)> {
    let g = tri.gluing(t, f)?;
    let mut q: Bary = std::array::from_fn(|_| Q::zero());
    for (i, x) in p.iter().enumerate() {
        q[g.perm.apply(i)] = x.clone();
    }
    Some((g.tet, q))
}

/// Least `(tet, coordinates)` among all copies of a point.
pub fn canonical_point(tri: &Triangulation, t: usize, p: &Bary) -> (usize, Bary) {
    let mut seen: BTreeSet<(usize, Bary)> = BTreeSet::new();
    let mut stack = vec![(t, p.clone())];
    while let Some((u, q)) = stack.pop() {
        if !seen.insert((u, q.clone())) {
            continue;
        }
        for f in zeros(&q) {
            if let Some(next) = across(tri, u, f, &q) {
                stack.push(next);
            }
        }
    }
    seen.into_iter().next().expect("nonempty orbit")
}

/// The carrier face class representative with the segment mapped onto it.
fn canonical_carrier(tri: &Triangulation, s: &Segment) -> (Carrier, Bary, Bary) {
    match s.carrier {
        Carrier::Tet { .. } => (s.carrier, s.start.clone(), s.end.clone()),
        Carrier::Face { tet, face } => match tri.gluing(tet, face) {
            Some(g) if (g.tet, g.perm.apply(face)) < (tet, face) => {
                let (_, a) = across(tri, tet, face, &s.start).expect("glued");
                let (_, b) = across(tri, tet, face, &s.end).expect("glued");
                (
                    Carrier::Face {
                        tet: g.tet,
                        face: g.perm.apply(face),
                    },
                    a,
                    b,
                )
            }
            _ => (s.carrier, s.start.clone(), s.end.clone()),
        },
    }
}

fn valid_bary(p: &Bary) -> bool {
    p.iter().all(|x| !x.is_negative()) && p.iter().sum::<Q>() == Q::one()
}

impl PLCurve {
    /// Closed, inside the carriers, away from vertices, never running along
    /// an edge.
    pub fn validate(&self, tri: &Triangulation) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedCurve(m));
        if self.segments.is_empty() {
            return bad("no segments".into());
        }
        for (i, s) in self.segments.iter().enumerate() {
            if s.carrier.tet() >= tri.tet_count() {
                return bad(format!("segment {i}: no such tetrahedron"));
            }
            for p in [&s.start, &s.end] {
                if !valid_bary(p) {
                    return bad(format!("segment {i}: not barycentric"));
                }
                if zeros(p).len() >= 3 {
                    return bad(format!("segment {i}: passes through a vertex"));
                }
            }
            if s.start == s.end {
                return bad(format!("segment {i}: degenerate"));
            }
            let shared: Vec<usize> = zeros(&s.start).into_iter().filter(|i| s.end[*i].is_zero()).collect();
            match s.carrier {
                Carrier::Face { face, .. } => {
                    if face >= 4 || !s.start[face].is_zero() || !s.end[face].is_zero() {
                        return bad(format!("segment {i}: leaves its face"));
                    }
                    if shared.len() >= 2 {
                        return bad(format!("segment {i}: runs along an edge"));
                    }
                }
                Carrier::Tet { .. } => {
                    if !shared.is_empty() {
                        return bad(format!("segment {i}: lies in a face"));
                    }
                }
            }
        }
        let n = self.segments.len();
        for i in 0..n {
            let s = &self.segments[i];
            let next = &self.segments[(i + 1) % n];
            if canonical_point(tri, s.carrier.tet(), &s.end) != canonical_point(tri, next.carrier.tet(), &next.start) {
                return bad(format!("segment {i} does not meet segment {}", (i + 1) % n));
            }
        }
        Ok(())
    }

    /// Distinct points of the curve on edges.
    pub fn one_skeleton_hits(&self, tri: &Triangulation) -> usize {
        let mut pts = BTreeSet::new();
        for s in &self.segments {
            for p in [&s.start, &s.end] {
                if zeros(p).len() == 2 {
                    pts.insert(canonical_point(tri, s.carrier.tet(), p));
                }
            }
        }
        pts.len()
    }

    /// Whether some point of the curve lies on the boundary surface.
    pub fn meets_boundary(&self, tri: &Triangulation) -> bool {
        let on_boundary = |t: usize, p: &Bary| {
            let (u, q) = canonical_point(tri, t, p);
            // Every copy of a boundary point has a copy on a boundary face.
            let mut found = false;
            let mut stack = vec![(u, q)];
            let mut seen = BTreeSet::new();
            while let Some((u, q)) = stack.pop() {
                if !seen.insert((u, q.clone())) {
                    continue;
                }
                for f in zeros(&q) {
                    match across(tri, u, f, &q) {
                        Some(next) => stack.push(next),
                        None => found = true,
                    }
                }
            }
            found
        };
        self.segments.iter().any(|s| {
            matches!(s.carrier, Carrier::Face { tet, face } if tri.gluing(tet, face).is_none())
                || on_boundary(s.carrier.tet(), &s.start)
                || on_boundary(s.carrier.tet(), &s.end)
        })
    }

    /// Splits segment `i` at parameter `lambda` strictly inside it.
    pub fn subdivide(&self, i: usize, lambda: &Q) -> PLCurve {
        let s = &self.segments[i];
        let mid: Bary = std::array::from_fn(|k| &s.start[k] + (&s.end[k] - &s.start[k]) * lambda);
        let mut segments = self.segments.clone();
        segments[i] = Segment {
            carrier: s.carrier,
            start: s.start.clone(),
            end: mid.clone(),
        };
        segments.insert(
            i + 1,
            Segment {
                carrier: s.carrier,
                start: mid,
                end: s.end.clone(),
            },
        );
        PLCurve { segments }
    }
}

fn sub3(a: &Bary, b: &Bary) -> [Q; 3] {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

fn cross(u: &[Q; 3], w: &[Q; 3]) -> [Q; 3] {
    [
        &u[1] * &w[2] - &u[2] * &w[1],
        &u[2] * &w[0] - &u[0] * &w[2],
        &u[0] * &w[1] - &u[1] * &w[0],
    ]
}

fn dot(u: &[Q; 3], w: &[Q; 3]) -> Q {
    &u[0] * &w[0] + &u[1] * &w[1] + &u[2] * &w[2]
}

/// Sign of the signed volume of `abcd`.
fn orient3(a: &Bary, b: &Bary, c: &Bary, d: &Bary) -> Ordering {
    dot(&cross(&sub3(b, a), &sub3(c, a)), &sub3(d, a)).cmp(&Q::zero())
}

/// Projects coplanar points onto a coordinate plane on which triangle `pqr`
/// stays non-degenerate.
fn project(p: &Bary, q: &Bary, r: &Bary) -> impl Fn(&Bary) -> [Q; 2] {
    let n = cross(&sub3(q, p), &sub3(r, p));
    let drop = (0..3).find(|&i| !n[i].is_zero()).unwrap_or(2);
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    move |x: &Bary| [x[keep[0]].clone(), x[keep[1]].clone()]
}

fn in_triangle(a: &[Q; 2], b: &[Q; 2], c: &[Q; 2], x: &[Q; 2]) -> bool {
    let o = [orient2(a, b, x), orient2(b, c, x), orient2(c, a, x)];
    !(o.contains(&Ordering::Less) && o.contains(&Ordering::Greater))
}

/// `Some(true)` when `ab` passes through triangle `pqr` from the side of
/// `behind`, `Some(false)` the other way, `None` when they miss.
fn segment_through_triangle(a: &Bary, b: &Bary, tri: [&Bary; 3], behind: &Bary) -> Result<Option<bool>> {
    let [p, q, r] = tri;
    let sa = orient3(p, q, r, a);
    let sb = orient3(p, q, r, b);
    let touching = |x: &Bary| {
        let pr = project(p, q, r);
        in_triangle(&pr(p), &pr(q), &pr(r), &pr(x))
    };
    if sa == Ordering::Equal || sb == Ordering::Equal {
        if (sa == Ordering::Equal && touching(a)) || (sb == Ordering::Equal && touching(b)) {
            return Err(Error::NotTransverse("segment endpoint on the surface".into()));
        }
        if sa == sb {
            // Both in the plane but clear of the triangle.
            let pr = project(p, q, r);
            let (x, y) = (pr(a), pr(b));
            let (u, v, w) = (pr(p), pr(q), pr(r));
            if segments_meet(&x, &y, &u, &v) || segments_meet(&x, &y, &v, &w) || segments_meet(&x, &y, &w, &u) {
                return Err(Error::NotTransverse("segment lies in the surface plane".into()));
            }
        }
        return Ok(None);
    }
    if sa == sb {
        return Ok(None);
    }
    let o = [orient3(a, b, p, q), orient3(a, b, q, r), orient3(a, b, r, p)];
    let pos = o.iter().filter(|&&x| x == Ordering::Greater).count();
    let neg = o.iter().filter(|&&x| x == Ordering::Less).count();
    if pos > 0 && neg > 0 {
        return Ok(None);
    }
    if pos == 3 || neg == 3 {
        return Ok(Some(orient3(p, q, r, behind) == sa));
    }
    Err(Error::NotTransverse("segment meets a disc edge".into()))
}

fn vertex_point(v: usize) -> Bary {
    std::array::from_fn(|i| if i == v { Q::one() } else { Q::zero() })
}

/// Signed count of crossings with the normal surface `v`, positive along
/// its coorientation.
pub fn algebraic_intersection(tri: &Triangulation, c: &PLCurve, v: &NormalVector) -> Result<i64> {
    c.validate(tri)?;
    let sk = Skeleton::compute(tri)?;
    let nc = NormalComplex::build(tri, &sk, v)?;
    let sigma = coorientation(tri, &nc)?;
    let slot_disc = slot_discs(&nc);
    let geo = geometrize_complex(&nc);
    let mut total = 0i64;
    for s in &c.segments {
        match s.carrier {
            Carrier::Face { tet, face } => {
                let a = face_plane(face, &s.start);
                let b = face_plane(face, &s.end);
                for arc in geo.face_arcs.get(&(tet, face)).into_iter().flatten() {
                    let x = face_plane(face, &arc.start);
                    let y = face_plane(face, &arc.end);
                    if !segments_meet(&a, &b, &x, &y) {
                        continue;
                    }
                    let oa = orient2(&x, &y, &a);
                    let ob = orient2(&x, &y, &b);
                    let o1 = orient2(&a, &b, &x);
                    let o2 = orient2(&a, &b, &y);
                    let eq = Ordering::Equal;
                    if oa == eq || ob == eq || o1 == eq || o2 == eq || oa == ob || o1 == o2 {
                        return Err(Error::NotTransverse(format!("segment touches an arc in face {face} of tet {tet}")));
                    }
                    let corner = face_plane(face, &vertex_point(arc.corner));
                    let away = oa == orient2(&x, &y, &corner);
                    let slot = nc.arc_slot_index[&(tet, face, arc.corner, arc.index)];
                    let d = slot_disc[slot];
                    let forward = sigma[d] == away_from(nc.discs[d].kind, arc.corner);
                    total += if away == forward { 1 } else { -1 };
                }
            }
            Carrier::Tet { tet } => {
                for gd in geo.discs.iter().filter(|g| g.disc.tet == tet) {
                    let behind = match gd.disc.kind {
                        DiscKind::Triangle(x) => vertex_point(x),
                        DiscKind::Quad(k) => vertex_point(QUAD_SPLITS[k][0]),
                    };
                    let d = nc.disc_index[&gd.disc];
                    let mut hits = Vec::new();
                    for piece in &gd.pieces {
                        let tri3 = [&gd.vertices[piece[0]], &gd.vertices[piece[1]], &gd.vertices[piece[2]]];
                        if let Some(dir) = segment_through_triangle(&s.start, &s.end, tri3, &behind)? {
                            hits.push(dir);
                        }
                    }
                    for dir in hits {
                        total += if dir == sigma[d] { 1 } else { -1 };
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Pairwise disjointness of segments sharing a carrier, apart from the
/// common endpoint of cyclic neighbours.
pub fn is_embedded(tri: &Triangulation, c: &PLCurve) -> Result<bool> {
    c.validate(tri)?;
    let n = c.segments.len();
    let mapped: Vec<(Carrier, Bary, Bary)> = c.segments.iter().map(|s| canonical_carrier(tri, s)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let (ci, a, b) = &mapped[i];
            let (cj, x, y) = &mapped[j];
            if ci != cj {
                continue;
            }
            let neighbours = j == i + 1 || (i == 0 && j == n - 1);
            if !segments_meet_3d(a, b, x, y) {
                continue;
            }
            if !neighbours {
                return Ok(false);
            }
            // Neighbours may share one endpoint but must not overlap.
            let collinear = cross(&sub3(b, a), &sub3(y, x)).iter().all(|q| q.is_zero())
                && cross(&sub3(b, a), &sub3(x, a)).iter().all(|q| q.is_zero());
            if collinear {
                return Ok(false);
            }
        }
    }
    // A segment's own ends may coincide in the quotient only for a one-segment loop.
    if n > 1 {
        let mut seen = BTreeSet::new();
        for s in &c.segments {
            if !seen.insert(canonical_point(tri, s.carrier.tet(), &s.start)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn segments_meet_3d(a: &Bary, b: &Bary, x: &Bary, y: &Bary) -> bool {
    if orient3(a, b, x, y) != Ordering::Equal {
        return false;
    }
    let u = sub3(b, a);
    let w = sub3(y, x);
    let mut n = cross(&u, &w);
    if n.iter().all(|q| q.is_zero()) {
        n = cross(&u, &sub3(x, a));
    }
    if n.iter().all(|q| q.is_zero()) {
        // All four points on one line: compare along the dominant axis.
        let axis = (0..3).find(|&i| !u[i].is_zero()).unwrap_or(0);
        let (lo1, hi1) = minmax(&a[axis], &b[axis]);
        let (lo2, hi2) = minmax(&x[axis], &y[axis]);
        return lo1 <= hi2 && lo2 <= hi1;
    }
    let drop = (0..3).find(|&i| !n[i].is_zero()).unwrap_or(2);
    let keep: Vec<usize> = (0..3).filter(|&i| i != drop).collect();
    let pr = |p: &Bary| [p[keep[0]].clone(), p[keep[1]].clone()];
    segments_meet(&pr(a), &pr(b), &pr(x), &pr(y))
}

fn minmax<'a>(p: &'a Q, q: &'a Q) -> (&'a Q, &'a Q) {
    if p <= q {
        (p, q)
    } else {
        (q, p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcCount {
    /// Keyed by face class or tetrahedron.
    pub counts: BTreeMap<usize, usize>,
    pub max: usize,
}

impl ArcCount {
    fn from(counts: BTreeMap<usize, usize>) -> Self {
        let max = counts.values().copied().max().unwrap_or(0);
        ArcCount { counts, max }
    }
}

/// Straight arcs in the interior of each face class.
pub fn arcs_per_face(tri: &Triangulation, c: &PLCurve) -> Result<ArcCount> {
    c.validate(tri)?;
    let sk = Skeleton::compute(tri)?;
    let mut counts = BTreeMap::new();
    for s in &c.segments {
        if let Carrier::Face { tet, face } = s.carrier {
            *counts.entry(sk.face_of[tet][face]).or_insert(0) += 1;
        }
    }
    Ok(ArcCount::from(counts))
}

/// Arcs per tetrahedron of a transverse curve, whose endpoints must lie in
/// open faces.
pub fn arcs_per_tet(tri: &Triangulation, c: &PLCurve) -> Result<ArcCount> {
    c.validate(tri)?;
    let mut counts = BTreeMap::new();
    for (i, s) in c.segments.iter().enumerate() {
        let Carrier::Tet { tet } = s.carrier else {
            return Err(Error::MalformedCurve(format!("segment {i} is not transverse")));
        };
        if zeros(&s.start).len() != 1 || zeros(&s.end).len() != 1 {
            return Err(Error::MalformedCurve(format!("segment {i}: endpoint off the open faces")));
        }
        *counts.entry(tet).or_insert(0) += 1;
    }
    Ok(ArcCount::from(counts))
}

pub const MAX_ARCS_PER_FACE: usize = 10;
pub const MAX_ARCS_PER_TET: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    PreCore,
    Core,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCertificate {
    pub i: usize,
    pub curve: PLCurve,
    /// The curve pushed off the 2-skeleton into a tetrahedron.
    pub transverse: PLCurve,
    pub kind: CurveKind,
    pub witness_disc: NormalVector,
    pub algebraic_pairing: i64,
    pub transverse_pairing: i64,
    pub embedded: bool,
    pub max_arcs_per_face: usize,
    pub max_arcs_per_tet: Option<usize>,
    pub one_skeleton_hits: usize,
    /// Edge class met by the curve, and its slope in the layering frame.
    pub edge_class: usize,
    pub edge_slope: Option<Slope>,
}

impl CurveCertificate {
    /// Embedded, pairing `±1` with the witness, arc bounds respected.
    pub fn holds(&self) -> bool {
        self.embedded
            && self.algebraic_pairing.abs() == 1
            && self.transverse_pairing == self.algebraic_pairing
            && self.max_arcs_per_face <= MAX_ARCS_PER_FACE
            && self.max_arcs_per_tet.is_none_or(|m| m <= MAX_ARCS_PER_TET)
    }
}

fn point_on_edge(a: usize, b: usize, s: &Q) -> Bary {
    let mut p: Bary = std::array::from_fn(|_| Q::zero());
    p[a] = Q::one() - s;
    p[b] = s.clone();
    p
}

/// Rationals in `(0, 1)` by increasing denominator.
fn parameters() -> impl Iterator<Item = Q> {
    (2i64..).flat_map(|d| {
        (1..d)
            .filter(move |n| num_integer::Integer::gcd(n, &d) == 1)
            .map(move |n| BigRational::new(n.into(), d.into()))
    })
}

/// Finds a one-segment loop in a face of `T_i` through a single edge point
/// pairing `±1` with a meridian disc, and pushes it off the 2-skeleton.
///
/// Patterns are tried in order of tetrahedron, face and ordered edge pair;
/// the loop runs inside the face from a point on one edge to its copy on
/// another edge of the same class.
pub fn make_61_curve(i: usize) -> Result<CurveCertificate> {
    let lt = family(i);
    let tri = &lt.tri;
    let sk = Skeleton::compute(tri)?;
    let witness = family_meridian_disc(i)?;
    let weights = witness.class_weights(&sk);
    for t in 0..tri.tet_count() {
        for f in 0..4 {
            if tri.gluing(t, f).is_none() {
                continue;
            }
            let fv = face_vertices(f);
            let face_edges: Vec<(usize, usize)> = EDGES
                .iter()
                .copied()
                .filter(|(a, b)| fv.contains(a) && fv.contains(b))
                .collect();
            for &(a, b) in &face_edges {
                for &(c, d) in &face_edges {
                    if (a, b) == (c, d) {
                        continue;
                    }
                    let (cls, rev1) = sk.edge_between(t, a, b);
                    let (cls2, rev2) = sk.edge_between(t, c, d);
                    if cls != cls2 {
                        continue;
                    }
                    // Clear of the points of the witness and of its double.
                    let w = weights[cls];
                    let taken: BTreeSet<Q> = [w, 2 * w]
                        .into_iter()
                        .flat_map(|m| (0..m).map(move |k| BigRational::new((k + 1).into(), (m + 1).into())))
                        .collect();
                    let u = parameters().find(|u| !taken.contains(u)).expect("infinitely many rationals");
                    let flip = |x: &Q, r: bool| if r { Q::one() - x } else { x.clone() };
                    let p = point_on_edge(a, b, &flip(&u, rev1));
                    let q = point_on_edge(c, d, &flip(&u, rev2));
                    if canonical_point(tri, t, &p) != canonical_point(tri, t, &q) {
                        continue;
                    }
                    let curve = PLCurve {
                        segments: vec![Segment {
                            carrier: Carrier::Face { tet: t, face: f },
                            start: p.clone(),
                            end: q.clone(),
                        }],
                    };
                    let pairing = match algebraic_intersection(tri, &curve, &witness) {
                        Ok(x) => x,
                        Err(Error::NotTransverse(_)) => continue,
                        Err(e) => return Err(e),
                    };
                    if pairing.abs() != 1 {
                        continue;
                    }
                    let transverse = push_off(tri, t, f, &p, &q, &witness)?;
                    let transverse_pairing = algebraic_intersection(tri, &transverse, &witness)?;
                    let kind = if curve.meets_boundary(tri) {
                        CurveKind::PreCore
                    } else {
                        CurveKind::Core
                    };
                    return Ok(CurveCertificate {
                        i,
                        embedded: is_embedded(tri, &curve)?,
                        max_arcs_per_face: arcs_per_face(tri, &curve)?.max,
                        max_arcs_per_tet: match kind {
                            CurveKind::Core => Some(arcs_per_tet(tri, &transverse)?.max),
                            CurveKind::PreCore => None,
                        },
                        one_skeleton_hits: curve.one_skeleton_hits(tri),
                        edge_class: cls,
                        edge_slope: lt.frame().slope(&sk, cls),
                        curve,
                        transverse,
                        kind,
                        witness_disc: witness,
                        algebraic_pairing: pairing,
                        transverse_pairing,
                    });
                }
            }
        }
    }
    Err(Error::Invalid(format!("no one-segment loop found in T_{i}")))
}

/// A straight arc through tetrahedron `t` shadowing the face loop `p → q`:
/// one end is pushed off its edge into face `f`, the other is its copy
/// across the gluing. The offset is below the smallest gap between the
/// surface's edge points.
fn push_off(tri: &Triangulation, t: usize, f: usize, p: &Bary, q: &Bary, witness: &NormalVector) -> Result<PLCurve> {
    let w_max = witness.coords.iter().map(|c| c.iter().sum::<u64>()).max().unwrap_or(0) as i64 + 2;
    let eps = BigRational::new(BigInt::one(), BigInt::from(8 * w_max * w_max));
    let nudge = |x: &Bary| -> Result<Bary> {
        let third = face_vertices(f)
            .into_iter()
            .find(|&v| x[v].is_zero())
            .ok_or_else(|| Error::MalformedCurve("loop end is not on an edge".into()))?;
        let heavy = (0..4).filter(|&v| v != f && v != third).max_by_key(|&v| x[v].clone()).expect("edge point");
        let mut y = x.clone();
        y[third] = eps.clone();
        y[heavy] = &y[heavy] - &eps;
        Ok(y)
    };
    let glued = |x: &Bary| -> Result<Bary> {
        match across(tri, t, f, x) {
            Some((u, y)) if u == t => Ok(y),
            _ => Err(Error::MalformedCurve("loop face not glued to its own tetrahedron".into())),
        }
    };
    let (start, end) = if glued(p)? == *q {
        let s = nudge(p)?;
        let e = glued(&s)?;
        (s, e)
    } else if glued(q)? == *p {
        let e = nudge(q)?;
        let s = glued(&e)?;
        (s, e)
    } else {
        return Err(Error::MalformedCurve("loop ends are not copies across the face".into()));
    };
    Ok(PLCurve {
        segments: vec![Segment {
            carrier: Carrier::Tet { tet: t },
            start,
            end,
        }],
    })
}

/// Checks on an arbitrary closed curve against a surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCheck {
    pub embedded: bool,
    /// `None` when the curve is not transverse to the surface.
    pub pairing: Option<i64>,
    pub max_arcs_per_face: usize,
    /// Only for curves made of tetrahedron arcs.
    pub max_arcs_per_tet: Option<usize>,
    pub one_skeleton_hits: usize,
    pub meets_boundary: bool,
}

impl CurveCheck {
    pub fn holds(&self) -> bool {
        self.embedded
            && self.pairing.is_some_and(|p| p.abs() == 1)
            && self.max_arcs_per_face <= MAX_ARCS_PER_FACE
            && self.max_arcs_per_tet.is_none_or(|m| m <= MAX_ARCS_PER_TET)
    }
}

pub fn check_curve(tri: &Triangulation, c: &PLCurve, v: &NormalVector) -> Result<CurveCheck> {
    c.validate(tri)?;
    let pairing = match algebraic_intersection(tri, c, v) {
        Ok(x) => Some(x),
        Err(Error::NotTransverse(_)) => None,
        Err(e) => return Err(e),
    };
    let all_tet = c.segments.iter().all(|s| matches!(s.carrier, Carrier::Tet { .. }));
    Ok(CurveCheck {
        embedded: is_embedded(tri, c)?,
        pairing,
        max_arcs_per_face: arcs_per_face(tri, c)?.max,
        max_arcs_per_tet: if all_tet { Some(arcs_per_tet(tri, c)?.max) } else { None },
        one_skeleton_hits: c.one_skeleton_hits(tri),
        meets_boundary: c.meets_boundary(tri),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrecoreLength {
    pub i: usize,
    #[serde(serialize_with = "crate::slope::serialize_bigint")]
    pub min_length: BigInt,
    pub argmin: i64,
    pub third_bound_holds: bool,
    pub golden_bound_holds: bool,
}

/// Least number of 1-skeleton points of a curve of slope `(1, n)` on the
/// boundary of `T_i`, over `|n| ≤ window`.
pub fn min_boundary_precore_length(i: usize, window: i64) -> PrecoreLength {
    let triple = family(i).triple();
    let mut best: Option<(BigInt, i64)> = None;
    for n in -window..=window {
        let s = Slope::new(1, n).expect("primitive");
        let len = triple.intersection_sum(&s);
        if best.as_ref().is_none_or(|(b, _)| &len < b) {
            best = Some((len, n));
        }
    }
    let (min_length, argmin) = best.expect("nonempty window");
    let x = x_seq(i + 2);
    PrecoreLength {
        i,
        third_bound_holds: BigInt::from(3) * &min_length >= x,
        golden_bound_holds: at_least_golden_power(&BigRational::from_integer(min_length.clone()), i as i64 - 1),
        min_length,
        argmin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layered::base_t0;
    use crate::normal::geometry::q;
    use proptest::prelude::*;

    fn face_loop() -> PLCurve {
        // One segment in face 3 of the base tetrahedron, from edge 01 to edge 12.
        PLCurve {
            segments: vec![Segment {
                carrier: Carrier::Face { tet: 0, face: 3 },
                start: [q(3, 4), q(1, 4), q(0, 1), q(0, 1)],
                end: [q(0, 1), q(3, 4), q(1, 4), q(0, 1)],
            }],
        }
    }

    #[test]
    fn face_loop_closes_up() {
        let tri = base_t0().tri;
        face_loop().validate(&tri).unwrap();
        assert_eq!(face_loop().one_skeleton_hits(&tri), 1);
        assert!(is_embedded(&tri, &face_loop()).unwrap());
    }

    #[test]
    fn open_chain_is_malformed() {
        let tri = base_t0().tri;
        let mut c = face_loop();
        c.segments[0].end = [q(0, 1), q(1, 2), q(1, 2), q(0, 1)];
        assert!(matches!(c.validate(&tri), Err(Error::MalformedCurve(_))));
    }

    #[test]
    fn crossing_segments_are_not_embedded() {
        let tri = base_t0().tri;
        // Chords A→B and C→D cross; A, C, B, D alternate around the face.
        let pa = [q(2, 3), q(1, 3), q(0, 1), q(0, 1)];
        let pb = [q(1, 3), q(0, 1), q(2, 3), q(0, 1)];
        let pc = [q(0, 1), q(1, 2), q(1, 2), q(0, 1)];
        let pd = [q(2, 3), q(0, 1), q(1, 3), q(0, 1)];
        let seg = |s: &Bary, e: &Bary| Segment {
            carrier: Carrier::Face { tet: 0, face: 3 },
            start: s.clone(),
            end: e.clone(),
        };
        let (a, b, c, d) = (seg(&pa, &pb), seg(&pb, &pc), seg(&pc, &pd), seg(&pd, &pa));
        let curve = PLCurve { segments: vec![a, b, c, d] };
        curve.validate(&tri).unwrap();
        assert!(!is_embedded(&tri, &curve).unwrap());
    }

    #[test]
    fn vertex_link_pairs_trivially() {
        let tri = base_t0().tri;
        let x = algebraic_intersection(&tri, &face_loop(), &NormalVector::vertex_link(1)).unwrap();
        assert_eq!(x, 0);
    }

    #[test]
    fn base_curve_is_precore() {
        let c = make_61_curve(0).unwrap();
        assert_eq!(c.one_skeleton_hits, 1);
        assert_eq!(c.kind, CurveKind::PreCore);
        assert_eq!(c.algebraic_pairing.abs(), 1);
        assert!(c.holds());
        assert_eq!(c.max_arcs_per_face, 1);
    }

    #[test]
    fn curve_becomes_core_after_layering() {
        for i in 1..=3 {
            let c = make_61_curve(i).unwrap();
            assert_eq!(c.kind, CurveKind::Core, "i = {i}");
            assert_eq!(c.one_skeleton_hits, 1);
            assert_eq!(c.max_arcs_per_tet, Some(1));
            assert!(c.holds());
        }
    }

    #[test]
    fn doubling_the_disc_doubles_the_pairing() {
        let c = make_61_curve(0).unwrap();
        let tri = base_t0().tri;
        let once = algebraic_intersection(&tri, &c.curve, &c.witness_disc).unwrap();
        let twice = algebraic_intersection(&tri, &c.curve, &c.witness_disc.scale(2)).unwrap();
        assert_eq!(twice, 2 * once);
        let t1 = algebraic_intersection(&tri, &c.transverse, &c.witness_disc.scale(2)).unwrap();
        assert_eq!(t1, 2 * once);
    }

    #[test]
    fn transverse_shape_is_checked() {
        let tri = base_t0().tri;
        assert!(arcs_per_tet(&tri, &face_loop()).is_err());
        let c = make_61_curve(0).unwrap();
        assert_eq!(arcs_per_tet(&tri, &c.transverse).unwrap().max, 1);
    }

    #[test]
    fn generic_check_agrees_with_certificate() {
        let c = make_61_curve(1).unwrap();
        let tri = family(1).tri;
        let chk = check_curve(&tri, &c.curve, &c.witness_disc).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.pairing, Some(c.algebraic_pairing));
        let t = check_curve(&tri, &c.transverse, &c.witness_disc).unwrap();
        assert_eq!(t.max_arcs_per_tet, Some(1));
        assert_eq!(t.pairing, Some(c.algebraic_pairing));
    }

    #[test]
    fn json_round_trip() {
        let c = face_loop();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"3/4\""));
        let back: PLCurve = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn precore_lengths() {
        let r = min_boundary_precore_length(0, 50);
        assert!(r.third_bound_holds && r.golden_bound_holds);
        for i in 0..=12 {
            let r = min_boundary_precore_length(i, 200);
            assert!(r.third_bound_holds && r.golden_bound_holds, "i = {i}");
        }
        assert_eq!(min_boundary_precore_length(10, 200).argmin, 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn pairing_survives_refinement(n in 1i64..50, d in 2i64..60, pick in 0usize..2) {
            prop_assume!(n < d);
            let cert = make_61_curve(0).unwrap();
            let tri = base_t0().tri;
            let curve = if pick == 0 { &cert.curve } else { &cert.transverse };
            let fine = curve.subdivide(0, &q(n, d));
            match algebraic_intersection(&tri, &fine, &cert.witness_disc) {
                Ok(x) => prop_assert_eq!(x, cert.algebraic_pairing),
                Err(Error::NotTransverse(_)) => prop_assume!(false),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }
}
