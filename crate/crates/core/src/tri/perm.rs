use std::fmt;

/// A permutation of the tetrahedron vertex labels `{0,1,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its images, returning `None` unless it is a bijection.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(&self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0u8; 4];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Self {
        let mut out = [0u8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    /// Sign of the permutation, `true` for even.
    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The six edges of a tetrahedron, as ordered vertex pairs `(a, b)` with `a < b`.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`EDGES`] of the edge joining `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: ({a},{b})"),
    }
}

/// Vertices of the face opposite `face`, ascending.
pub fn face_vertices(face: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != face {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// The two vertices other than `a` and `b`, ascending.
pub fn complement(a: usize, b: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&v| v != a && v != b);
    let c = rest.next().unwrap();
    let d = rest.next().unwrap();
    (c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_compose() {
        let p = Perm4::new([1, 2, 3, 0]).unwrap();
        assert_eq!(p.inverse().images(), [3, 0, 1, 2]);
        assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
        assert!(!p.is_even());
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
    }

    #[test]
    fn edge_indices_round_trip() {
        for (i, &(a, b)) in EDGES.iter().enumerate() {
            assert_eq!(edge_index(a, b), i);
            assert_eq!(edge_index(b, a), i);
        }
    }
}
