//! Smith normal form over the integers with unimodular transforms.
//!
//! Desk-scale chain complexes only; entries are `i128` with checked arithmetic.

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<i128>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mul(a: &Matrix, b: &Matrix, inner: usize) -> Result<Matrix> {
    let rows = a.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            let aik = a[i][k];
            if aik == 0 {
                continue;
            }
            for j in 0..cols {
                let p = aik.checked_mul(b[k][j]).ok_or(Error::Overflow)?;
                out[i][j] = out[i][j].checked_add(p).ok_or(Error::Overflow)?;
            }
        }
    }
    Ok(out)
}

pub fn mul_vec(a: &Matrix, v: &[i128]) -> Result<Vec<i128>> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).try_fold(0i128, |acc, (&x, &y)| {
                x.checked_mul(y)
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(Error::Overflow)
            })
        })
        .collect()
}

/// `left · a · right = diag(d)` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<i128>,
    pub left: Matrix,
    pub left_inv: Matrix,
    pub right: Matrix,
    pub right_inv: Matrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    m: Matrix,
    left: Matrix,
    left_inv: Matrix,
    right: Matrix,
    right_inv: Matrix,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

impl Work {
    // row_i += k * row_j  (left-multiplication by an elementary matrix)
    fn add_row(&mut self, i: usize, j: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for c in 0..self.m[0].len() {
            self.m[i][c] = ck(self.m[i][c].checked_add(ck(k.checked_mul(self.m[j][c]))?))?;
        }
        for c in 0..self.left.len() {
            self.left[i][c] = ck(self.left[i][c].checked_add(ck(k.checked_mul(self.left[j][c]))?))?;
        }
        // inverse: col_j -= k * col_i
        for r in 0..self.left_inv.len() {
            self.left_inv[r][j] =
                ck(self.left_inv[r][j].checked_sub(ck(k.checked_mul(self.left_inv[r][i]))?))?;
        }
        Ok(())
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap(i, j);
        self.left.swap(i, j);
        for row in self.left_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn neg_row(&mut self, i: usize) {
        for x in self.m[i].iter_mut() {
            *x = -*x;
        }
        for x in self.left[i].iter_mut() {
            *x = -*x;
        }
        for row in self.left_inv.iter_mut() {
            row[i] = -row[i];
        }
    }

    // col_i += k * col_j
    fn add_col(&mut self, i: usize, j: usize, k: i128) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for r in 0..self.m.len() {
            self.m[r][i] = ck(self.m[r][i].checked_add(ck(k.checked_mul(self.m[r][j]))?))?;
        }
        for r in 0..self.right.len() {
            self.right[r][i] = ck(self.right[r][i].checked_add(ck(k.checked_mul(self.right[r][j]))?))?;
        }
        // inverse: row_j -= k * row_i
        for c in 0..self.right_inv.len() {
            self.right_inv[j][c] =
                ck(self.right_inv[j][c].checked_sub(ck(k.checked_mul(self.right_inv[i][c]))?))?;
        }
        Ok(())
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.m.iter_mut() {
            row.swap(i, j);
        }
        for row in self.right.iter_mut() {
            row.swap(i, j);
        }
        self.right_inv.swap(i, j);
    }
}

/// Computes the Smith normal form of a `rows × cols` matrix.
pub fn smith(a: &Matrix, rows: usize, cols: usize) -> Result<Smith> {
    let mut w = Work {
        m: if rows == 0 || cols == 0 {
            zeros(rows, cols.max(1))
        } else {
            a.clone()
        },
        left: identity(rows),
        left_inv: identity(rows),
        right: identity(cols),
        right_inv: identity(cols),
    };
    if rows == 0 || cols == 0 {
        w.m = zeros(rows, cols);
        return Ok(Smith {
            rows,
            cols,
            diagonal: vec![],
            left: w.left,
            left_inv: w.left_inv,
            right: w.right,
            right_inv: w.right_inv,
        });
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = w.m[r][c];
                if v != 0 && best.is_none_or(|(br, bc)| v.abs() < w.m[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        loop {
            let p = w.m[t][t];
            let mut dirty = false;
            for r in t + 1..rows {
                let q = w.m[r][t].div_euclid(p);
                w.add_row(r, t, -q)?;
                if w.m[r][t] != 0 {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                let q = w.m[t][c].div_euclid(p);
                w.add_col(c, t, -q)?;
                if w.m[t][c] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // Move the smallest remainder into the pivot position and repeat.
                let mut best = (t, t);
                for r in t..rows {
                    if w.m[r][t] != 0 && w.m[r][t].abs() < w.m[best.0][best.1].abs() {
                        best = (r, t);
                    }
                }
                for c in t..cols {
                    if w.m[t][c] != 0 && w.m[t][c].abs() < w.m[best.0][best.1].abs() {
                        best = (t, c);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // Divisibility: every remaining entry must be a multiple of the pivot.
            let mut fix = None;
            'outer: for r in t + 1..rows {
                for c in t + 1..cols {
                    if w.m[r][c] % p != 0 {
                        fix = Some(r);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(r) => w.add_row(t, r, 1)?,
                None => break,
            }
        }
        if w.m[t][t] < 0 {
            w.neg_row(t);
        }
        t += 1;
    }
    let diagonal = (0..t).map(|i| w.m[i][i]).collect();
    Ok(Smith {
        rows,
        cols,
        diagonal,
        left: w.left,
        left_inv: w.left_inv,
        right: w.right,
        right_inv: w.right_inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &Matrix) {
        let rows = a.len();
        let cols = a[0].len();
        let s = smith(a, rows, cols).unwrap();
        let d = mul(&mul(&s.left, a, rows).unwrap(), &s.right, cols).unwrap();
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j && i < s.rank() { s.diagonal[i] } else { 0 };
                assert_eq!(d[i][j], want, "{a:?}");
            }
        }
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(mul(&s.left, &s.left_inv, rows).unwrap(), identity(rows));
        assert_eq!(mul(&s.right, &s.right_inv, cols).unwrap(), identity(cols));
    }

    #[test]
    fn small_matrices() {
        check(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        check(&vec![vec![0, 0], vec![0, 3]]);
        check(&vec![vec![2, 0], vec![0, 3]]);
        check(&vec![vec![1, 1, 0], vec![0, 2, 1]]);
        let s = smith(&vec![vec![2, 0], vec![0, 3]], 2, 2).unwrap();
        assert_eq!(s.diagonal, vec![1, 6]);
    }

    proptest::proptest! {
        #[test]
        fn transforms_are_consistent(entries in proptest::collection::vec(-4i128..5, 12)) {
            let a: Matrix = entries.chunks(4).map(|c| c.to_vec()).collect();
            check(&a);
        }
    }
}
