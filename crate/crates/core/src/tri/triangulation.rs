//! Generalized triangulations: tetrahedra whose faces are glued in pairs by
//! affine maps, stored as a gluing table.
//!
//! Exchange format:
//!
//! ```text
//! tets 1
//! 0: 0:3012 - - 0:1230
//! ```
//!
//! Each tetrahedron line lists, for faces `0..4` (face `j` is opposite vertex
//! `j`), either `-` for a boundary face or `t:abcd`, meaning the face is glued
//! to tetrahedron `t` by the map sending vertex `k` to the `k`-th digit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::perm::Perm4;
use crate::error::{Error, Result};

/// Destination of a glued face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

/// Immutable gluing table of a 3-dimensional generalized triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
    labels: BTreeMap<usize, String>,
}

impl Triangulation {
    /// Builds and validates a triangulation from a gluing table.
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self> {
        let tri = Triangulation {
            gluings,
            labels: BTreeMap::new(),
        };
        tri.validate()?;
        // Rejects edges identified with themselves in reverse.
        super::skeleton::Skeleton::compute(&tri)?;
        Ok(tri)
    }

    /// A single tetrahedron with every face on the boundary.
    pub fn ball() -> Self {
        Triangulation {
            gluings: vec![[None; 4]],
            labels: BTreeMap::new(),
        }
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    /// Optional string tags keyed by edge class index.
    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Self {
        self.labels = labels;
        self
    }

    /// All boundary faces, in `(tet, face)` order.
    pub fn boundary_faces(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if g.is_none() {
                    out.push((t, f));
                }
            }
        }
        out
    }

    /// Glued face pairs, each listed once from its lexicographically smaller side.
    pub fn interior_face_pairs(&self) -> Vec<((usize, usize), (usize, usize), Perm4)> {
        let mut out = Vec::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                if let Some(g) = g {
                    let other = (g.tet, g.perm.apply(f));
                    if (t, f) < other {
                        out.push(((t, f), other, g.perm));
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let n = self.gluings.len();
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(Error::TetOutOfRange {
                        tet: t,
                        face: f,
                        target: g.tet,
                        count: n,
                    });
                }
                let tf = g.perm.apply(f);
                if g.tet == t && tf == f {
                    return Err(Error::SelfGluing { tet: t, face: f });
                }
                let back = self.gluings[g.tet][tf];
                let ok = matches!(back, Some(b) if b.tet == t && b.perm == g.perm.inverse());
                if !ok {
                    return Err(Error::Involution {
                        tet: t,
                        face: f,
                        target: g.tet,
                        target_face: tf,
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether the tetrahedra admit orientations making every gluing
    /// orientation-reversing.
    pub fn is_orientable(&self) -> bool {
        let n = self.tet_count();
        let mut sign: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if sign[start].is_some() {
                continue;
            }
            sign[start] = Some(true);
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                let st = sign[t].unwrap();
                for g in self.gluings[t].iter().flatten() {
                    // An odd gluing map joins equally oriented tetrahedra.
                    let want = if g.perm.is_even() { !st } else { st };
                    match sign[g.tet] {
                        None => {
                            sign[g.tet] = Some(want);
                            stack.push(g.tet);
                        }
                        Some(s) if s != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Appends a tetrahedron with the given gluings, filling in the reverse
    /// gluings on the existing tetrahedra, and revalidates.
    pub fn with_tetrahedron(&self, faces: [Option<Gluing>; 4]) -> Result<Self> {
        let mut gluings = self.gluings.clone();
        let new = gluings.len();
        gluings.push([None; 4]);
        for (f, g) in faces.iter().enumerate() {
            if let Some(g) = g {
                if g.tet == new {
                    return Err(Error::Invalid("new tetrahedron glued to itself".into()));
                }
                let tf = g.perm.apply(f);
                if gluings[g.tet][tf].is_some() {
                    return Err(Error::Invalid(format!(
                        "face ({},{}) is already glued",
                        g.tet, tf
                    )));
                }
                gluings[new][f] = Some(*g);
                gluings[g.tet][tf] = Some(Gluing {
                    tet: new,
                    perm: g.perm.inverse(),
                });
            }
        }
        Triangulation::new(gluings)
    }

    /// Parses the exchange text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut count: Option<usize> = None;
        let mut rows: BTreeMap<usize, [Option<Gluing>; 4]> = BTreeMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            if line.trim().is_empty() {
                continue;
            }
            let syntax = |col: usize, msg: &str| Error::Syntax {
                line: line_no,
                column: col,
                message: msg.to_string(),
            };
            let tokens = tokenize(line);
            if count.is_none() {
                let (c0, w0) = tokens[0];
                if w0 != "tets" || tokens.len() != 2 {
                    return Err(syntax(c0, "expected `tets N`"));
                }
                let (c1, w1) = tokens[1];
                count = Some(w1.parse().map_err(|_| syntax(c1, "expected a count"))?);
                continue;
            }
            let n = count.unwrap();
            let (c0, head) = tokens[0];
            let idx: usize = head
                .strip_suffix(':')
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| syntax(c0, "expected `<index>:`"))?;
            if idx >= n {
                return Err(syntax(c0, "tetrahedron index out of range"));
            }
            if rows.contains_key(&idx) {
                return Err(syntax(c0, "duplicate tetrahedron line"));
            }
            if tokens.len() != 5 {
                return Err(syntax(c0, "expected four face tokens"));
            }
            let mut faces = [None; 4];
            for (f, &(col, tok)) in tokens[1..].iter().enumerate() {
                if tok == "-" {
                    continue;
                }
                let (t, p) = tok
                    .split_once(':')
                    .ok_or_else(|| syntax(col, "expected `-` or `t:abcd`"))?;
                let t: usize = t.parse().map_err(|_| syntax(col, "bad tetrahedron index"))?;
                let digits: Vec<u8> = p.bytes().map(|b| b.wrapping_sub(b'0')).collect();
                if digits.len() != 4 {
                    return Err(syntax(col, "permutation needs four digits"));
                }
                let perm = Perm4::new([digits[0], digits[1], digits[2], digits[3]])
                    .ok_or_else(|| syntax(col, "not a permutation of 0123"))?;
                faces[f] = Some(Gluing { tet: t, perm });
            }
            rows.insert(idx, faces);
        }
        let n = count.ok_or(Error::Syntax {
            line: 1,
            column: 1,
            message: "missing `tets N` header".into(),
        })?;
        if rows.len() != n {
            return Err(Error::Syntax {
                line: text.lines().count().max(1),
                column: 1,
                message: format!("expected {n} tetrahedron lines, found {}", rows.len()),
            });
        }
        Triangulation::new(rows.into_values().collect())
    }

    /// Canonical text: header, then one line per tetrahedron in index order.
    pub fn serialize(&self) -> String {
        let mut out = format!("tets {}\n", self.tet_count());
        for (t, faces) in self.gluings.iter().enumerate() {
            let _ = write!(out, "{t}:");
            for g in faces {
                match g {
                    None => out.push_str(" -"),
                    Some(g) => {
                        let _ = write!(out, " {}:{}", g.tet, g.perm);
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

impl Triangulation {
    /// Canonical text followed by one `# edge <class> <label>` comment per label.
    pub fn serialize_labelled(&self) -> String {
        let mut out = self.serialize();
        for (e, l) in &self.labels {
            let _ = writeln!(out, "# edge {e} {l}");
        }
        out
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const T0: &str = "tets 1\n0: 0:3012 - - 0:1230\n";

    #[test]
    fn parses_one_tet_solid_torus() {
        let tri = Triangulation::parse(T0).unwrap();
        assert_eq!(tri.tet_count(), 1);
        assert_eq!(tri.serialize(), T0);
        assert!(tri.is_orientable());
    }

    #[test]
    fn parses_ball_with_comments() {
        let tri = Triangulation::parse("# a ball\ntets 1\n0: - - - -  # all boundary\n").unwrap();
        assert_eq!(tri, Triangulation::ball());
        assert_eq!(tri.boundary_faces().len(), 4);
    }

    #[test]
    fn rejects_broken_involution() {
        // face (0,0) goes to (0,1) but (0,1) goes to (0,2).
        let err = Triangulation::parse("tets 1\n0: 0:1023 0:0213 - -\n").unwrap_err();
        assert!(matches!(err, Error::Involution { .. }), "{err:?}");
    }

    #[test]
    fn rejects_self_gluing() {
        let err = Triangulation::parse("tets 1\n0: 0:0132 - - -\n").unwrap_err();
        assert_eq!(err, Error::SelfGluing { tet: 0, face: 0 });
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Triangulation::parse("tets 1\n0: - x - -\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 2,
                column: 6,
                message: "expected `-` or `t:abcd`".into()
            }
        );
        assert!(matches!(
            Triangulation::parse("tets 2\n0: - - - -\n"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            Triangulation::parse("0: - - - -\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn rejects_reversed_edge() {
        // Folding face 123 onto face 023 by swapping 0 and 1 fixes edge 23 but
        // glues edge 02 to 12; gluing face 3 onto face 2 reversing 0,1 flips edge 01.
        let err = Triangulation::parse("tets 1\n0: - - 0:1032 0:1032\n").unwrap_err();
        assert!(matches!(err, Error::ReversedEdge { .. }), "{err:?}");
    }
}
