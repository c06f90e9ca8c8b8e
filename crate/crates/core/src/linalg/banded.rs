//! Banded LU with partial pivoting and a low-rank correction for entries
//! outside the band (periodic corner blocks).

use super::{BlockMatrix, LinalgError};
use crate::scalar::Real;

/// Dense LU of a small square matrix, row-major, with partial pivoting.
#[derive(Debug, Clone)]
pub(crate) struct DenseLu<T> {
    n: usize,
    a: Vec<T>,
    piv: Vec<usize>,
}

impl<T: Real> DenseLu<T> {
    pub(crate) fn factor(n: usize, mut a: Vec<T>) -> Result<Self, LinalgError> {
        let mut piv = vec![0; n];
        for k in 0..n {
            let mut p = k;
            for r in k + 1..n {
                if a[r * n + k].abs() > a[p * n + k].abs() {
                    p = r;
                }
            }
            piv[k] = p;
            if a[p * n + k] == T::zero() || !a[p * n + k].is_finite() {
                return Err(LinalgError::Singular { index: k });
            }
            if p != k {
                // multipliers stay in place; the solve swaps interleaved
                for j in k..n {
                    a.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a[k * n + k];
            for r in k + 1..n {
                let l = a[r * n + k] / pivot;
                a[r * n + k] = l;
                if l != T::zero() {
                    for j in k + 1..n {
                        let u = a[k * n + j];
                        a[r * n + j] -= l * u;
                    }
                }
            }
        }
        Ok(Self { n, a, piv })
    }

    pub(crate) fn solve(&self, b: &mut [T]) {
        let n = self.n;
        for k in 0..n {
            b.swap(k, self.piv[k]);
            for r in k + 1..n {
                let l = self.a[r * n + k];
                b[r] -= l * b[k];
            }
        }
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..n {
                s -= self.a[k * n + j] * b[j];
            }
            b[k] = s / self.a[k * n + k];
        }
    }
}

/// Factorization of a block-sparse matrix split as `A = A_band + U S^T`,
/// where `A_band` keeps blocks with `|c - r| <= band` and `S` selects the
/// scalar columns touched by the remaining entries.
#[derive(Debug, Clone)]
pub struct BandedLu<T> {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    ab: Vec<T>,
    piv: Vec<usize>,
    corner_cols: Vec<usize>,
    /// `A_band^{-1} U`, column-major `n x r`.
    z: Vec<T>,
    capacitance: Option<DenseLu<T>>,
}

impl<T: Real> BandedLu<T> {
    fn at(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.kl - i)
    }

    pub fn factor(a: &BlockMatrix<T>, band: usize) -> Result<Self, LinalgError> {
        let m = a.block_size();
        let n = a.dim();
        let nb = a.blocks();
        let kl = ((band + 1) * m - 1).min(n.saturating_sub(1));
        let ku = kl;
        let width = 2 * kl + ku + 1;
        let mut lu = Self {
            n,
            kl,
            ku,
            width,
            ab: vec![T::zero(); n * width],
            piv: vec![0; n],
            corner_cols: Vec::new(),
            z: Vec::new(),
            capacitance: None,
        };

        // (row, col, value) outside the band
        let mut corners: Vec<(usize, usize, T)> = Vec::new();
        for (r, c, b) in a.iter() {
            let in_band = r.abs_diff(c) <= band || nb <= band + 1;
            for i in 0..m {
                for j in 0..m {
                    let v = b[i * m + j];
                    if v == T::zero() {
                        continue;
                    }
                    let (gi, gj) = (r * m + i, c * m + j);
                    if in_band && gi.abs_diff(gj) <= kl {
                        let idx = lu.at(gi, gj);
                        lu.ab[idx] += v;
                    } else {
                        corners.push((gi, gj, v));
                    }
                }
            }
        }
        lu.factor_band()?;

        if !corners.is_empty() {
            let mut cols: Vec<usize> = corners.iter().map(|c| c.1).collect();
            cols.sort_unstable();
            cols.dedup();
            let r = cols.len();
            let mut z = vec![T::zero(); n * r];
            for &(gi, gj, v) in &corners {
                let k = cols.binary_search(&gj).expect("column collected above");
                z[k * n + gi] += v;
            }
            for k in 0..r {
                lu.solve_band(&mut z[k * n..(k + 1) * n]);
            }
            // I + S^T Z
            let mut cap = vec![T::zero(); r * r];
            for (i, &ci) in cols.iter().enumerate() {
                for k in 0..r {
                    cap[i * r + k] = z[k * n + ci];
                }
                cap[i * r + i] += T::one();
            }
            lu.capacitance = Some(DenseLu::factor(r, cap)?);
            lu.corner_cols = cols;
            lu.z = z;
        }
        Ok(lu)
    }

    fn factor_band(&mut self) -> Result<(), LinalgError> {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        let scale = self.ab.iter().fold(T::zero(), |s, v| s.max(v.abs()));
        for k in 0..n {
            let last = (k + kl).min(n - 1);
            let mut p = k;
            let mut best = self.ab[self.at(k, k)].abs();
            for r in k + 1..=last {
                let v = self.ab[self.at(r, k)].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            self.piv[k] = p;
            if !(best > scale * T::epsilon() * T::lit(1e-3)) || !best.is_finite() {
                return Err(LinalgError::Singular { index: k });
            }
            let jmax = (k + kl + ku).min(n - 1);
            if p != k {
                for j in k..=jmax {
                    let (a, b) = (self.at(k, j), self.at(p, j));
                    self.ab.swap(a, b);
                }
            }
            let pivot = self.ab[self.at(k, k)];
            for r in k + 1..=last {
                let idx = self.at(r, k);
                let l = self.ab[idx] / pivot;
                self.ab[idx] = l;
                if l == T::zero() {
                    continue;
                }
                for j in k + 1..=jmax {
                    let u = self.ab[self.at(k, j)];
                    let t = self.at(r, j);
                    self.ab[t] -= l * u;
                }
            }
        }
        Ok(())
    }

    fn solve_band(&self, b: &mut [T]) {
        let n = self.n;
        let (kl, ku) = (self.kl, self.ku);
        for k in 0..n {
            b.swap(k, self.piv[k]);
            let bk = b[k];
            if bk != T::zero() {
                for r in k + 1..=(k + kl).min(n - 1) {
                    b[r] -= self.ab[self.at(r, k)] * bk;
                }
            }
        }
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..=(k + kl + ku).min(n - 1) {
                s -= self.ab[self.at(k, j)] * b[j];
            }
            b[k] = s / self.ab[self.at(k, k)];
        }
    }

    /// Overwrites `b` with `A^{-1} b`.
    pub fn solve(&self, b: &mut [T]) {
        self.solve_band(b);
        if let Some(cap) = &self.capacitance {
            let n = self.n;
            let mut w: Vec<T> = self.corner_cols.iter().map(|&c| b[c]).collect();
            cap.solve(&mut w);
            for (k, &wk) in w.iter().enumerate() {
                let zk = &self.z[k * n..(k + 1) * n];
                for (bi, &zi) in b.iter_mut().zip(zk) {
                    *bi -= zi * wk;
                }
            }
        }
    }
}
