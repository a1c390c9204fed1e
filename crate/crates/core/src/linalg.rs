//! Dense matrices over F_p with exact Gaussian elimination: reduced row
//! echelon form, canonical kernel vectors, rank and determinants.
//!
//! Pivoting is deterministic (first nonzero entry, lowest row index), so
//! kernel vectors and the witnesses derived from them are reproducible
//! across runs.

use crate::ffield::FieldCtx;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFp {
    rows: usize,
    cols: usize,
    data: Vec<u64>, // row-major
}

impl MatFp {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatFp {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        MatFp {
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u64], ctx: &FieldCtx) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for (c, &x) in v.iter().enumerate() {
                    acc = ctx.add(acc, ctx.mul(self.get(r, c), x));
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns in
    /// increasing order.
    pub fn rref(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0usize;
        for col in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let Some(pr) = (next_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(next_row, pr);
            let inv = ctx.inv(self.get(next_row, col));
            for c in col..self.cols {
                let v = ctx.mul(self.get(next_row, c), inv);
                self.set(next_row, c, v);
            }
            for r in 0..self.rows {
                if r == next_row {
                    continue;
                }
                let f = self.get(r, col);
                if f == 0 {
                    continue;
                }
                for c in col..self.cols {
                    let v = ctx.sub(self.get(r, c), ctx.mul(f, self.get(next_row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        pivots
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.clone().rref(ctx).len()
    }

    /// A canonical nonzero kernel vector, or `None` when the kernel is
    /// trivial: the reduced-echelon basis vector attached to the first
    /// free column (that free variable set to 1, the rest to 0).
    pub fn kernel_vector(&self, ctx: &FieldCtx) -> Option<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref(ctx);
        if pivots.len() == self.cols {
            return None;
        }
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut v = vec![0u64; self.cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            if pc < free {
                v[pc] = ctx.neg(m.get(r, free));
            }
        }
        Some(v)
    }

    /// Determinant of a square matrix by elimination with deterministic
    /// pivoting.
    pub fn determinant(&self, ctx: &FieldCtx) -> u64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| m.get(r, col) != 0) else {
                return 0;
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = ctx.neg(det);
            }
            let pivot = m.get(col, col);
            det = ctx.mul(det, pivot);
            let inv = ctx.inv(pivot);
            for r in col + 1..n {
                let f = ctx.mul(m.get(r, col), inv);
                if f == 0 {
                    continue;
                }
                for c in col..n {
                    let v = ctx.sub(m.get(r, c), ctx.mul(f, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}
