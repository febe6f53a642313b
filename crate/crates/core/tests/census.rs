//! Every one-tetrahedron triangulation that passes the solid-torus test has
//! boundary edges meeting the meridian 1, 2 and 3 times.

use solid_torus::layered::LayeredTriangulation;
use solid_torus::slope::{intersection, Slope};
use solid_torus::tri::{solid_torus_candidate, Perm4, Triangulation};

fn perms() -> Vec<Perm4> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    if let Some(p) = Perm4::new([a, b, c, d]) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Single tetrahedron with face `f` glued to face `p(f)` by `p`.
fn one_gluing(f: usize, p: Perm4) -> String {
    let g = p.apply(f);
    let mut toks = vec!["-".to_string(); 4];
    toks[f] = format!("0:{p}");
    toks[g] = format!("0:{}", p.inverse());
    format!("tets 1\n0: {}\n", toks.join(" "))
}

#[test]
fn one_tetrahedron_solid_tori_are_123() {
    assert_eq!(perms().len(), 24);
    let mut candidates = 0;
    let mut parsed = 0;
    for f in 0..4 {
        for p in perms() {
            if p.apply(f) == f {
                continue;
            }
            let Ok(tri) = Triangulation::parse(&one_gluing(f, p)) else {
                continue;
            };
            parsed += 1;
            let Ok(report) = solid_torus_candidate(&tri) else {
                continue;
            };
            if !report.candidate {
                continue;
            }
            candidates += 1;
            let lt = LayeredTriangulation::calibrated(tri).expect("candidate calibrates");
            let m = lt.meridian().unwrap().expect("meridian");
            assert_eq!(m, Slope::meridian());
            let mut hits: Vec<i64> = lt
                .triple()
                .slopes()
                .iter()
                .map(|s| i64::try_from(intersection(s, &m)).unwrap())
                .collect();
            hits.sort();
            assert_eq!(hits, vec![1, 2, 3], "{}", one_gluing(f, p));
        }
    }
    assert!(parsed > 0);
    assert!(candidates > 0);
}
