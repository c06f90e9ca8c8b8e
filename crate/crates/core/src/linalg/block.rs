//! Block-sparse square matrix with `m x m` dense blocks.

use crate::scalar::Real;

/// Rows of blocks; each row keeps a short list of `(column, block)` with
/// blocks stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockMatrix<T> {
    blocks: usize,
    m: usize,
    rows: Vec<Vec<(usize, Vec<T>)>>,
}

impl<T: Real> BlockMatrix<T> {
    pub fn new(blocks: usize, m: usize) -> Self {
        Self {
            blocks,
            m,
            rows: vec![Vec::new(); blocks],
        }
    }

    pub fn identity(blocks: usize, m: usize) -> Self {
        let mut a = Self::new(blocks, m);
        a.add_identity(T::one());
        a
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.blocks * self.m
    }

    pub fn clear(&mut self) {
        self.rows.iter_mut().for_each(Vec::clear);
    }

    pub fn block_mut(&mut self, r: usize, c: usize) -> &mut [T] {
        let m = self.m;
        let row = &mut self.rows[r];
        let pos = match row.iter().position(|(col, _)| *col == c) {
            Some(p) => p,
            None => {
                row.push((c, vec![T::zero(); m * m]));
                row.len() - 1
            }
        };
        &mut row[pos].1
    }

    pub fn block(&self, r: usize, c: usize) -> Option<&[T]> {
        self.rows[r]
            .iter()
            .find(|(col, _)| *col == c)
            .map(|(_, b)| b.as_slice())
    }

    /// `A[r][c] += s * blk`.
    pub fn add_scaled_block(&mut self, r: usize, c: usize, s: T, blk: &[T]) {
        for (a, &b) in self.block_mut(r, c).iter_mut().zip(blk) {
            *a += s * b;
        }
    }

    /// `A += s I`.
    pub fn add_identity(&mut self, s: T) {
        let m = self.m;
        for r in 0..self.blocks {
            let b = self.block_mut(r, r);
            for d in 0..m {
                b[d * m + d] += s;
            }
        }
    }

    /// Iterates `(block row, block column, block)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &[T])> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, b)| (r, *c, b.as_slice())))
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[T], y: &mut [T]) {
        let m = self.m;
        y.iter_mut().for_each(|v| *v = T::zero());
        for (r, c, b) in self.iter() {
            for i in 0..m {
                let mut acc = T::zero();
                for j in 0..m {
                    acc += b[i * m + j] * x[c * m + j];
                }
                y[r * m + i] += acc;
            }
        }
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<T> {
        let n = self.dim();
        let m = self.m;
        let mut d = vec![T::zero(); n * n];
        for (r, c, b) in self.iter() {
            for i in 0..m {
                for j in 0..m {
                    d[(r * m + i) * n + c * m + j] += b[i * m + j];
                }
            }
        }
        d
    }

    /// Infinity norm.
    pub fn norm_inf(&self) -> T {
        let m = self.m;
        let mut best = T::zero();
        for row in &self.rows {
            for i in 0..m {
                let mut s = T::zero();
                for (_, b) in row {
                    for j in 0..m {
                        s += b[i * m + j].abs();
                    }
                }
                best = best.max(s);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulate_and_multiply() {
        let mut a = BlockMatrix::<f64>::new(3, 2);
        a.add_identity(2.0);
        a.add_scaled_block(0, 2, 1.0, &[1.0, 0.0, 0.0, 1.0]);
        a.add_scaled_block(0, 2, 1.0, &[1.0, 0.0, 0.0, 1.0]);
        let x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let mut y = [0.0; 6];
        a.matvec(&x, &mut y);
        assert_eq!(y, [12.0, 16.0, 6.0, 8.0, 10.0, 12.0]);
        assert_eq!(a.norm_inf(), 4.0);
        let d = a.to_dense();
        assert_eq!(d[4], 2.0);
    }
}
