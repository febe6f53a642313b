//! Bounded exhaustive enumeration of normal surfaces and meridian discs.
//!
//! Coordinates are assigned one at a time in tetrahedron order. A matching
//! equation whose last variable is being assigned forces that variable;
//! partially assigned equations are pruned by the range their free
//! variables can still cover. The quad choices of the first tetrahedra split
//! the work into independent branches.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::golden::at_least_golden_power;
use crate::layered::family;
use crate::normal::complex::summarize;
use crate::normal::vector::quad_pairing;
use crate::normal::{euler_from_counts, NormalComplex, NormalVector, ReconstructedSurface, TorusModel};
use crate::slope::{slope_seq, x_seq, Slope};
use crate::tri::homology::{calibrate, kernel_slope_in_frame, EdgeFrame};
use crate::tri::perm::{face_vertices, EDGES};
use crate::tri::{BoundaryComplex, Skeleton, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// `u64::MAX` means unbounded and serializes as `null`.
    #[serde(serialize_with = "unbounded_as_null")]
    pub max_weight: u64,
    pub max_piece_count: u64,
    #[serde(with = "secs")]
    pub time_limit: Duration,
}

fn unbounded_as_null<S: Serializer>(w: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    match *w {
        u64::MAX => s.serialize_none(),
        w => s.serialize_u64(w),
    }
}

mod secs {
    use serde::Serializer;
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }
}

impl SearchBudget {
    pub fn pieces(max_piece_count: u64) -> Self {
        SearchBudget {
            max_weight: u64::MAX,
            max_piece_count,
            time_limit: Duration::from_secs(600),
        }
    }

    /// Generous enough to reach the minimal disc of `T_i` for small `i`:
    /// three times `x_{i+3}` pieces.
    pub fn default_for(i: usize) -> Self {
        let cap = x_seq(i + 3) * 3u32;
        Self::pieces(u64::try_from(cap).unwrap_or(u64::MAX))
    }

    pub fn with_weight(mut self, max_weight: u64) -> Self {
        self.max_weight = max_weight;
        self
    }

    pub fn with_time_limit(mut self, t: Duration) -> Self {
        self.time_limit = t;
        self
    }
}

/// Vectors within budget, sorted by piece count and then coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub vectors: Vec<NormalVector>,
    /// False when the time limit cut the search short.
    pub complete: bool,
}

struct System {
    n: usize,
    /// Dense rows over the `7n` coordinates.
    equations: Vec<Vec<i64>>,
    /// Equations completed by assigning each coordinate.
    closing: Vec<Vec<usize>>,
    /// Equations with at least one coordinate, per coordinate, for pruning.
    touching: Vec<Vec<usize>>,
    /// Per equation and step: sums of positive and negative coefficients of
    /// coordinates after that step.
    tail_pos: Vec<Vec<i64>>,
    tail_neg: Vec<Vec<i64>>,
    /// Weight contributed per unit of each coordinate.
    weight_coef: Vec<u64>,
}

impl System {
    fn new(tri: &Triangulation, sk: &Skeleton) -> Self {
        let n = tri.tet_count();
        let m = 7 * n;
        let mut equations = Vec::new();
        for ((t, f), (u, g), perm) in tri.interior_face_pairs() {
            for c in face_vertices(f) {
                let mut row = vec![0i64; m];
                let pc = perm.apply(c);
                row[7 * t + c] += 1;
                row[7 * t + 4 + quad_pairing(c, f)] += 1;
                row[7 * u + pc] -= 1;
                row[7 * u + 4 + quad_pairing(pc, g)] -= 1;
                if row.iter().any(|&x| x != 0) && !equations.contains(&row) {
                    equations.push(row);
                }
            }
        }
        let mut closing = vec![Vec::new(); m];
        let mut touching = vec![Vec::new(); m];
        let mut tail_pos = Vec::new();
        let mut tail_neg = Vec::new();
        for (e, row) in equations.iter().enumerate() {
            let last = row.iter().rposition(|&x| x != 0).unwrap();
            closing[last].push(e);
            for (j, &a) in row.iter().enumerate() {
                if a != 0 && j < last {
                    touching[j].push(e);
                }
            }
            let mut pos = vec![0i64; m + 1];
            let mut neg = vec![0i64; m + 1];
            for j in (0..m).rev() {
                pos[j] = pos[j + 1] + row[j].max(0);
                neg[j] = neg[j + 1] + row[j].min(0);
            }
            tail_pos.push(pos);
            tail_neg.push(neg);
        }
        let mut weight_coef = vec![0u64; m];
        for cls in &sk.edges {
            let (t, e) = cls.rep;
            let (a, b) = EDGES[e];
            weight_coef[7 * t + a] += 1;
            weight_coef[7 * t + b] += 1;
            let own = quad_pairing(a, b);
            for k in 0..3 {
                if k != own {
                    weight_coef[7 * t + 4 + k] += 1;
                }
            }
        }
        System {
            n,
            equations,
            closing,
            touching,
            tail_pos,
            tail_neg,
            weight_coef,
        }
    }
}

/// Quad choice per tetrahedron: `None` forces all quads zero, `Some(k)`
/// forces quad `k` positive and the others zero.
type QuadChoice = Option<usize>;

struct Dfs<'a> {
    sys: &'a System,
    budget: SearchBudget,
    prefix: &'a [QuadChoice],
    /// Values pinned for the leading coordinates.
    fixed: &'a [u64],
    x: Vec<u64>,
    sums: Vec<i64>,
    out: Vec<NormalVector>,
    deadline: Instant,
    timed_out: &'a AtomicBool,
    nodes: u64,
}

impl Dfs<'_> {
    fn bounds(&self, j: usize, pieces: u64, weight: u64) -> Option<(u64, u64)> {
        let t = j / 7;
        let local = j % 7;
        let remaining = self.budget.max_piece_count - pieces;
        let mut hi = remaining;
        let w = self.sys.weight_coef[j];
        if let Some(cap) = self.budget.max_weight.saturating_sub(weight).checked_div(w) {
            hi = hi.min(cap);
        }
        let mut lo = 0;
        if local >= 4 {
            let k = local - 4;
            let choice = self.prefix.get(t).copied();
            match choice {
                Some(None) => hi = 0,
                Some(Some(c)) if c == k => lo = 1,
                Some(Some(_)) => hi = 0,
                None => {
                    // Free: at most one nonzero quad.
                    if (0..k).any(|i| self.x[7 * t + 4 + i] > 0) {
                        hi = 0;
                    }
                }
            }
        }
        if let Some(&f) = self.fixed.get(j) {
            return (lo <= f && f <= hi).then_some((f, f));
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn feasible_after(&self, j: usize, remaining: u64) -> bool {
        let r = remaining as i64;
        self.sys.touching[j].iter().all(|&e| {
            let s = self.sums[e];
            s + self.sys.tail_pos[e][j + 1] * r >= 0 && s + self.sys.tail_neg[e][j + 1] * r <= 0
        })
    }

    fn run(&mut self, j: usize, pieces: u64, weight: u64) {
        if self.timed_out.load(Ordering::Relaxed) {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline {
            self.timed_out.store(true, Ordering::Relaxed);
            return;
        }
        if j == 7 * self.sys.n {
            let coords = self
                .x
                .chunks(7)
                .map(|c| std::array::from_fn(|i| c[i]))
                .collect();
            self.out.push(NormalVector::new(coords));
            return;
        }
        let Some((lo, mut hi)) = self.bounds(j, pieces, weight) else {
            return;
        };
        let mut lo = lo;
        // Equations closed by this coordinate force its value.
        for &e in &self.sys.closing[j] {
            let a = self.sys.equations[e][j];
            let s = self.sums[e];
            if s % a != 0 {
                return;
            }
            let v = -s / a;
            if v < lo as i64 || v > hi as i64 {
                return;
            }
            lo = v as u64;
            hi = v as u64;
        }
        for val in lo..=hi {
            self.x[j] = val;
            let col: Vec<usize> = self.sys.touching[j]
                .iter()
                .chain(&self.sys.closing[j])
                .copied()
                .collect();
            for &e in &col {
                self.sums[e] += self.sys.equations[e][j] * val as i64;
            }
            let np = pieces + val;
            let nw = weight + self.sys.weight_coef[j] * val;
            if self.feasible_after(j, self.budget.max_piece_count - np) {
                self.run(j + 1, np, nw);
            }
            for &e in &col {
                self.sums[e] -= self.sys.equations[e][j] * val as i64;
            }
        }
        self.x[j] = 0;
    }
}

fn prefixes(depth: usize) -> Vec<Vec<QuadChoice>> {
    let mut out: Vec<Vec<QuadChoice>> = vec![vec![]];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p| {
                [None, Some(0), Some(1), Some(2)].into_iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every admissible matching vector with at most `max_piece_count` pieces and
/// weight at most `max_weight`, each exactly once.
pub fn enumerate_admissible(tri: &Triangulation, budget: SearchBudget) -> Result<Enumeration> {
    enumerate_with_fixed(tri, budget, &[])
}

/// Like [`enumerate_admissible`] with the leading coordinates (tetrahedron
/// major) pinned to `fixed`.
pub fn enumerate_with_fixed(tri: &Triangulation, budget: SearchBudget, fixed: &[u64]) -> Result<Enumeration> {
    let sk = Skeleton::compute(tri)?;
    let sys = System::new(tri, &sk);
    let deadline = Instant::now() + budget.time_limit;
    let timed_out = AtomicBool::new(false);
    let free_tets = sys.n - fixed.len() / 7;
    let branches: Vec<Vec<QuadChoice>> = prefixes(free_tets.min(3))
        .into_iter()
        .map(|p| {
            let mut full: Vec<QuadChoice> = fixed
                .chunks(7)
                .map(|c| (4..7).find(|&i| c[i] > 0).map(|i| i - 4))
                .collect();
            full.extend(p);
            full
        })
        .collect();
    let parts: Vec<Vec<NormalVector>> = branches
        .par_iter()
        .map(|prefix| {
            let mut dfs = Dfs {
                sys: &sys,
                budget,
                prefix,
                fixed,
                x: vec![0; 7 * sys.n],
                sums: vec![0; sys.equations.len()],
                out: Vec::new(),
                deadline,
                timed_out: &timed_out,
                nodes: 0,
            };
            dfs.run(0, 0, 0);
            dfs.out
        })
        .collect();
    let mut vectors: Vec<NormalVector> = parts.into_iter().flatten().collect();
    vectors.sort_by(|a, b| (a.total(), &a.coords).cmp(&(b.total(), &b.coords)));
    Ok(Enumeration {
        vectors,
        complete: !timed_out.load(Ordering::Relaxed),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridianDisc {
    pub vector: NormalVector,
    pub surface: ReconstructedSurface,
    /// `(boundary length, weight)`, compared lexicographically.
    pub complexity: (u64, u64),
}

impl MeridianDisc {
    pub fn piece_count(&self) -> u64 {
        self.surface.piece_count
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianSearch {
    pub meridian: Slope,
    pub discs: Vec<MeridianDisc>,
    pub complete: bool,
    pub examined: usize,
}

/// Recognises `v` as a meridian disc: connected, `χ = 1`, orientable, one
/// boundary curve of the given slope.
pub fn as_meridian_disc(
    tri: &Triangulation,
    sk: &Skeleton,
    bc: &BoundaryComplex,
    model: &TorusModel,
    meridian: &Slope,
    v: &NormalVector,
) -> Result<Option<MeridianDisc>> {
    if euler_from_counts(tri, v)? != 1 {
        return Ok(None);
    }
    let nc = NormalComplex::build(tri, sk, v)?;
    if nc.component_count != 1 {
        return Ok(None);
    }
    let surface = summarize(&nc, bc);
    let comp = &surface.components[0];
    if comp.euler_characteristic != 1 || !comp.orientable || comp.boundary_curves.len() != 1 {
        return Ok(None);
    }
    let curve = &comp.boundary_curves[0];
    match model.slope(curve) {
        Ok(s) if &s == meridian => {}
        _ => return Ok(None),
    }
    let length = model.length(curve)?;
    let weight = surface.weight;
    Ok(Some(MeridianDisc {
        vector: v.clone(),
        surface,
        complexity: (length, weight),
    }))
}

/// Filters the enumeration by the meridian-disc test, measuring slopes in
/// `frame`. The meridian is recomputed from homology.
pub fn find_meridian_discs_in_frame(tri: &Triangulation, frame: &EdgeFrame, budget: SearchBudget) -> Result<MeridianSearch> {
    let sk = Skeleton::compute(tri)?;
    let bc = BoundaryComplex::compute(tri, &sk);
    let meridian = kernel_slope_in_frame(tri, frame)?.ok_or(Error::BoundaryNotTorus)?;
    let model = TorusModel::from_boundary(&bc, &sk, frame)?;
    let en = enumerate_admissible(tri, budget)?;
    let found: Vec<Option<MeridianDisc>> = en
        .vectors
        .par_iter()
        .map(|v| as_meridian_disc(tri, &sk, &bc, &model, &meridian, v))
        .collect::<Result<_>>()?;
    Ok(MeridianSearch {
        meridian,
        discs: found.into_iter().flatten().collect(),
        complete: en.complete,
        examined: en.vectors.len(),
    })
}

pub fn find_meridian_discs(tri: &Triangulation, budget: SearchBudget) -> Result<MeridianSearch> {
    let (frame, _, _) = calibrate(tri)?;
    find_meridian_discs_in_frame(tri, &frame, budget)
}

/// Meridian discs of `T_i` agreeing with `prev` on the older tetrahedra,
/// adding at most `max_new` pieces in the newest one.
pub fn extend_meridian_disc(i: usize, prev: &NormalVector, max_new: u64) -> Result<Option<NormalVector>> {
    let lt = family(i);
    if prev.tet_count() + 1 != lt.tet_count() {
        return Err(Error::SizeMismatch {
            expected: lt.tet_count() - 1,
            got: prev.tet_count(),
        });
    }
    let sk = Skeleton::compute(&lt.tri)?;
    let bc = BoundaryComplex::compute(&lt.tri, &sk);
    let meridian = kernel_slope_in_frame(&lt.tri, lt.frame())?.ok_or(Error::BoundaryNotTorus)?;
    let model = TorusModel::from_boundary(&bc, &sk, lt.frame())?;
    let fixed: Vec<u64> = prev.coords.iter().flatten().copied().collect();
    let en = enumerate_with_fixed(&lt.tri, SearchBudget::pieces(prev.total() + max_new), &fixed)?;
    for v in &en.vectors {
        if as_meridian_disc(&lt.tri, &sk, &bc, &model, &meridian, v)?.is_some() {
            return Ok(Some(v.clone()));
        }
    }
    Ok(None)
}

/// A meridian disc of `T_i` grown one tetrahedron at a time from the
/// minimal disc of `T_0`, taking the fewest new pieces at each step.
pub fn family_meridian_disc(i: usize) -> Result<NormalVector> {
    let lt = family(0);
    let mut v = minimal_complexity_disc_in_frame(&lt.tri, lt.frame(), SearchBudget::default_for(0))?
        .ok_or_else(|| Error::Invalid("no meridian disc in the base".into()))?
        .disc
        .vector;
    for j in 1..=i {
        let cap = u64::try_from(x_seq(j + 3)).unwrap_or(u64::MAX);
        v = extend_meridian_disc(j, &v, cap)?
            .ok_or_else(|| Error::Invalid(format!("meridian disc does not extend to T_{j}")))?;
    }
    Ok(v)
}

/// Lexicographically least `(boundary length, weight)`, ties broken by the
/// vector's text form.
pub fn minimal_of(discs: &[MeridianDisc]) -> Option<&MeridianDisc> {
    discs
        .iter()
        .min_by(|a, b| (a.complexity, a.vector.to_string()).cmp(&(b.complexity, b.vector.to_string())))
}

/// Outcome of a bounded search that may be unable to decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// The least-complexity disc found, certified minimal when the budget
/// provably covers every disc of smaller complexity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalDisc {
    pub disc: MeridianDisc,
    /// Boundary length equals the shortest meridian curve and the weight
    /// budget was not binding.
    pub certified: bool,
}

/// Minimal-complexity disc within budget. Boundary length can never drop
/// below the shortest normal meridian curve, so a disc attaining that length
/// found under an unbounded weight budget is minimal among all discs with at
/// most `max_piece_count` pieces.
pub fn minimal_complexity_disc_in_frame(tri: &Triangulation, frame: &EdgeFrame, budget: SearchBudget) -> Result<Option<MinimalDisc>> {
    let search = find_meridian_discs_in_frame(tri, frame, budget)?;
    let Some(best) = minimal_of(&search.discs).cloned() else {
        return Ok(None);
    };
    let sk = Skeleton::compute(tri)?;
    let bc = BoundaryComplex::compute(tri, &sk);
    let model = TorusModel::from_boundary(&bc, &sk, frame)?;
    let m = search.meridian.as_vec();
    let shortest: BigInt = model.vectors.iter().map(|e| e.det(&m).abs()).sum();
    let certified = search.complete && BigInt::from(best.complexity.0) == shortest && budget.max_weight == u64::MAX;
    Ok(Some(MinimalDisc { disc: best, certified }))
}

pub fn minimal_complexity_disc(tri: &Triangulation, budget: SearchBudget) -> Result<Option<MinimalDisc>> {
    let (frame, _, _) = calibrate(tri)?;
    minimal_complexity_disc_in_frame(tri, &frame, budget)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report611 {
    pub i: usize,
    pub status: Status,
    pub discs_found: usize,
    pub complete: bool,
    pub min_piece_count: Option<u64>,
    /// `x_{i+2}`.
    #[serde(serialize_with = "crate::slope::serialize_bigint")]
    pub bound: BigInt,
    pub golden_bound_holds: bool,
    pub edge_bound_holds: bool,
    /// Least points any disc has on the edge of slope `s_{i+2}`.
    pub min_hits_on_edge: Option<u64>,
}

/// Every normal meridian disc of `T_i` within budget has at least `x_{i+2}`
/// pieces, at least `φ^{i+1}` pieces, and meets the `s_{i+2}` edge at least
/// `x_{i+2}` times.
pub fn verify_61_1(i: usize, budget: SearchBudget) -> Result<Report611> {
    let lt = family(i);
    let search = find_meridian_discs_in_frame(&lt.tri, lt.frame(), budget)?;
    let bound = x_seq(i + 2);
    let sk = Skeleton::compute(&lt.tri)?;
    let edge = lt.edge_with_slope(&slope_seq(i + 2));
    let min_pieces = search.discs.iter().map(|d| d.piece_count()).min();
    let hits: Option<u64> = edge.and_then(|e| {
        search
            .discs
            .iter()
            .map(|d| d.vector.class_weights(&sk)[e])
            .min()
    });
    let piece_ok = search.discs.iter().all(|d| BigInt::from(d.piece_count()) >= bound);
    let golden_ok = search
        .discs
        .iter()
        .all(|d| at_least_golden_power(&BigRational::from_integer(d.piece_count().into()), i as i64 + 1));
    let edge_ok = match edge {
        Some(e) => search.discs.iter().all(|d| BigInt::from(d.vector.class_weights(&sk)[e]) >= bound),
        None => false,
    };
    let status = if !(piece_ok && golden_ok && edge_ok) {
        Status::Fail
    } else if search.discs.is_empty() || !search.complete {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    Ok(Report611 {
        i,
        status,
        discs_found: search.discs.len(),
        complete: search.complete,
        min_piece_count: min_pieces,
        bound,
        golden_bound_holds: golden_ok,
        edge_bound_holds: edge_ok,
        min_hits_on_edge: hits,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report612 {
    pub i: usize,
    pub status: Status,
    pub window: i64,
    #[serde(serialize_with = "crate::slope::serialize_bigint")]
    pub min_value: BigInt,
    pub argmin: i64,
    #[serde(serialize_with = "crate::slope::serialize_bigint")]
    pub x: BigInt,
    pub third_bound_holds: bool,
    pub golden_bound_holds: bool,
}

/// `min_n |n·x_{i+2} − y_{i+2}|` over `|n| ≤ window` is at least `x_{i+2}/3`
/// and at least `φ^{i−1}`.
pub fn verify_61_2(i: usize, window: i64) -> Report612 {
    let s = slope_seq(i + 2);
    let (x, y) = (s.x().clone(), s.y().clone());
    let mut best: Option<(BigInt, i64)> = None;
    for n in -window..=window {
        let v = (BigInt::from(n) * &x - &y).abs();
        // Ties go to positive n, then to the smallest |n|.
        let key = |v: &BigInt, n: i64| (v.clone(), n <= 0, n.abs());
        if best.as_ref().is_none_or(|(b, m)| key(&v, n) < key(b, *m)) {
            best = Some((v, n));
        }
    }
    let (min_value, argmin) = best.expect("nonempty window");
    let third = BigInt::from(3) * &min_value >= x;
    let golden = at_least_golden_power(&BigRational::from_integer(min_value.clone()), i as i64 - 1);
    Report612 {
        i,
        status: if third && golden { Status::Pass } else { Status::Fail },
        window,
        min_value,
        argmin,
        x,
        third_bound_holds: third,
        golden_bound_holds: golden,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layered::base_t0;
    use crate::normal::is_normal;

    #[test]
    fn zero_budget_gives_only_zero() {
        let tri = base_t0().tri;
        let en = enumerate_admissible(&tri, SearchBudget::pieces(0)).unwrap();
        assert_eq!(en.vectors, vec![NormalVector::zero(1)]);
        assert!(en.complete);
    }

    #[test]
    fn vertex_link_is_enumerated() {
        let tri = base_t0().tri;
        let en = enumerate_admissible(&tri, SearchBudget::pieces(4)).unwrap();
        assert!(en.vectors.contains(&NormalVector::vertex_link(1)));
        for v in &en.vectors {
            assert!(is_normal(&tri, v).unwrap());
        }
    }

    /// Independent oracle: every admissible vector with small entries, filtered
    /// by the matching equations.
    fn brute(tri: &Triangulation, max_total: u64) -> Vec<NormalVector> {
        let n = tri.tet_count();
        let mut out = Vec::new();
        let mut x = vec![0u64; 7 * n];
        fn rec(j: usize, left: u64, x: &mut Vec<u64>, tri: &Triangulation, out: &mut Vec<NormalVector>) {
            if j == x.len() {
                let v = NormalVector::new(x.chunks(7).map(|c| std::array::from_fn(|i| c[i])).collect());
                if is_normal(tri, &v).unwrap() {
                    out.push(v);
                }
                return;
            }
            for val in 0..=left {
                x[j] = val;
                rec(j + 1, left - val, x, tri, out);
            }
            x[j] = 0;
        }
        rec(0, max_total, &mut x, tri, &mut out);
        out.sort_by(|a, b| (a.total(), &a.coords).cmp(&(b.total(), &b.coords)));
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let tri = base_t0().tri;
        assert_eq!(enumerate_admissible(&tri, SearchBudget::pieces(6)).unwrap().vectors, brute(&tri, 6));
        let tri = family(1).tri;
        assert_eq!(enumerate_admissible(&tri, SearchBudget::pieces(3)).unwrap().vectors, brute(&tri, 3));
    }

    #[test]
    fn larger_budget_extends_the_prefix() {
        let tri = family(1).tri;
        let a = enumerate_admissible(&tri, SearchBudget::pieces(6)).unwrap().vectors;
        let b = enumerate_admissible(&tri, SearchBudget::pieces(8)).unwrap().vectors;
        assert_eq!(&b[..a.len()], &a[..]);
        assert!(b[a.len()..].iter().all(|v| v.total() > 6));
    }

    #[test]
    fn weight_budget_filters() {
        let tri = family(1).tri;
        let sk = Skeleton::compute(&tri).unwrap();
        let all = enumerate_admissible(&tri, SearchBudget::pieces(6)).unwrap().vectors;
        let light = enumerate_admissible(&tri, SearchBudget::pieces(6).with_weight(5)).unwrap().vectors;
        let want: Vec<_> = all.into_iter().filter(|v| v.weight(&sk) <= 5).collect();
        assert_eq!(light, want);
    }

    #[test]
    fn one_tet_solid_torus_has_a_meridian_disc() {
        let lt = base_t0();
        let s = find_meridian_discs_in_frame(&lt.tri, lt.frame(), SearchBudget::pieces(8)).unwrap();
        assert_eq!(s.meridian, Slope::meridian());
        assert!(!s.discs.is_empty());
        assert!(s.discs.iter().all(|d| d.piece_count() >= 2));
    }

    #[test]
    fn minimal_disc_boundary_is_shortest_meridian() {
        for i in 0..=2 {
            let lt = family(i);
            let m = minimal_complexity_disc_in_frame(&lt.tri, lt.frame(), SearchBudget::default_for(i))
                .unwrap()
                .expect("disc within budget");
            assert!(m.certified, "i = {i}");
            let shortest = crate::normal::min_curve_length(&lt.triple(), &Slope::meridian());
            assert_eq!(BigInt::from(m.disc.complexity.0), shortest);
            assert!(is_normal(&lt.tri, &m.disc.vector).unwrap());
        }
    }

    #[test]
    fn small_discs_respect_the_piece_bound() {
        for i in 0..=2 {
            let r = verify_61_1(i, SearchBudget::default_for(i)).unwrap();
            assert_eq!(r.status, Status::Pass, "{r:?}");
            assert!(BigInt::from(r.min_piece_count.unwrap()) >= x_seq(i + 2));
        }
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let r = verify_61_1(2, SearchBudget::pieces(4)).unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        assert_eq!(r.discs_found, 0);
    }

    #[test]
    fn grown_disc_is_the_minimal_one() {
        for i in 0..=3 {
            let lt = family(i);
            let m = minimal_complexity_disc_in_frame(&lt.tri, lt.frame(), SearchBudget::default_for(i))
                .unwrap()
                .unwrap();
            assert_eq!(family_meridian_disc(i).unwrap(), m.disc.vector, "i = {i}");
        }
    }

    #[test]
    fn fixed_prefix_restricts_enumeration() {
        let tri = family(1).tri;
        let all = enumerate_admissible(&tri, SearchBudget::pieces(8)).unwrap().vectors;
        let head = [1, 0, 0, 1, 1, 0, 0];
        let pinned = enumerate_with_fixed(&tri, SearchBudget::pieces(8), &head).unwrap().vectors;
        let want: Vec<_> = all.into_iter().filter(|v| v.coords[0] == head).collect();
        assert_eq!(pinned, want);
    }

    #[test]
    fn arithmetic_bound() {
        let r = verify_61_2(0, 50);
        assert_eq!((r.min_value.clone(), r.argmin), (BigInt::from(1), 1));
        assert_eq!(r.status, Status::Pass);
        assert_eq!(verify_61_2(5, 100).argmin, 1);
        for i in 0..=20 {
            assert_eq!(verify_61_2(i, 1000).status, Status::Pass, "i = {i}");
        }
    }
}
