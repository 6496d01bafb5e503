//! Smith normal form over the integers with unimodular transforms.

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .and_then(|p| p.checked_add(out.get(i, j)))
                        .ok_or(Error::Overflow)?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).try_fold(0i64, |acc, k| {
                    self.get(i, k)
                        .checked_mul(v[k])
                        .and_then(|p| p.checked_add(acc))
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// Rows `from..` as a new matrix.
    pub fn row_tail(&self, from: usize) -> IntMatrix {
        IntMatrix {
            rows: self.rows - from,
            cols: self.cols,
            data: self.data[from * self.cols..].to_vec(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for c in 0..self.cols {
            let v = q
                .checked_mul(self.get(src, c))
                .and_then(|p| p.checked_add(self.get(dst, c)))
                .ok_or(Error::Overflow)?;
            self.set(dst, c, v);
        }
        Ok(())
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: i64) -> Result<()> {
        for r in 0..self.rows {
            let v = q
                .checked_mul(self.get(r, src))
                .and_then(|p| p.checked_add(self.get(r, dst)))
                .ok_or(Error::Overflow)?;
            self.set(r, dst, v);
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c);
            self.set(r, c, v);
        }
    }
}

/// `p * a * q = d` with `p`, `q` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }
}

struct Calc {
    a: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    // row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        self.a.add_row(dst, src, k)?;
        self.p.add_row(dst, src, k)?;
        self.p_inv.add_col(src, dst, -k)
    }

    // col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        self.a.add_col(dst, src, k)?;
        self.q.add_col(dst, src, k)?;
        self.q_inv.add_row(src, dst, -k)
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.p.negate_row(r);
        // the inverse of a sign flip is itself, applied on the other side
        for i in 0..self.p_inv.rows {
            let v = -self.p_inv.get(i, r);
            self.p_inv.set(i, r, v);
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, i64)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let v = self.a.get(r, c).abs();
                if v != 0 && best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((r, c, v));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn run(&mut self) -> Result<usize> {
        let limit = self.a.rows.min(self.a.cols);
        let mut t = 0;
        while t < limit {
            let Some((r, c)) = self.min_nonzero(t) else {
                break;
            };
            self.swap_rows(t, r);
            self.swap_cols(t, c);
            loop {
                let pivot = self.a.get(t, t);
                let mut dirty = false;
                for r in t + 1..self.a.rows {
                    let v = self.a.get(r, t);
                    if v != 0 {
                        self.add_row(r, t, -(v / pivot))?;
                        dirty |= self.a.get(r, t) != 0;
                    }
                }
                for c in t + 1..self.a.cols {
                    let v = self.a.get(t, c);
                    if v != 0 {
                        self.add_col(c, t, -(v / pivot))?;
                        dirty |= self.a.get(t, c) != 0;
                    }
                }
                if dirty {
                    // a smaller remainder exists in row or column t; move it to the pivot
                    let (r, c) = self.min_in_cross(t);
                    self.swap_rows(t, r);
                    self.swap_cols(t, c);
                    continue;
                }
                // divisibility: every remaining entry must be a multiple of the pivot
                let bad = (t + 1..self.a.rows)
                    .find(|&r| (t + 1..self.a.cols).any(|c| self.a.get(r, c) % pivot != 0));
                match bad {
                    Some(r) => self.add_row(t, r, 1)?,
                    None => break,
                }
            }
            if self.a.get(t, t) < 0 {
                self.negate_row(t);
            }
            t += 1;
        }
        Ok(t)
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t, self.a.get(t, t).abs());
        for r in t + 1..self.a.rows {
            let v = self.a.get(r, t).abs();
            if v != 0 && v < best.2 {
                best = (r, t, v);
            }
        }
        for c in t + 1..self.a.cols {
            let v = self.a.get(t, c).abs();
            if v != 0 && v < best.2 {
                best = (t, c, v);
            }
        }
        (best.0, best.1)
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<Snf> {
    let mut calc = Calc {
        a: a.clone(),
        p: IntMatrix::identity(a.rows),
        p_inv: IntMatrix::identity(a.rows),
        q: IntMatrix::identity(a.cols),
        q_inv: IntMatrix::identity(a.cols),
    };
    let rank = calc.run()?;
    Ok(Snf {
        d: calc.a,
        p: calc.p,
        p_inv: calc.p_inv,
        q: calc.q,
        q_inv: calc.q_inv,
        rank,
    })
}
