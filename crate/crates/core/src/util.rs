/// Union-find with a parity bit on every element relative to its root.
///
/// Plain connectivity uses parity 0 everywhere; oriented gluings (edges glued
/// with a flip, discs glued with opposite orientation) use parity 1.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Compress, accumulating parity from the top down.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Records `parity(a) ^ parity(b) == flip`. Returns `false` on contradiction.
    pub fn union(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return (pa ^ pb) == flip;
        }
        let rel = pa ^ pb ^ flip;
        if self.rank[ra] < self.rank[rb] {
            self.parent[ra] = rb;
            self.parity[ra] = rel;
        } else {
            self.parent[rb] = ra;
            self.parity[rb] = rel;
            if self.rank[ra] == self.rank[rb] {
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Dense class index per element, numbered by first occurrence.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for x in 0..n {
            let (r, _) = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        (out, next)
    }
}
