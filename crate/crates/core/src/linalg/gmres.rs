//! Restarted GMRES right-preconditioned with ILU(0).

use super::{BlockMatrix, LinalgError};
use crate::scalar::Real;

/// Scalar CSR copy of a block matrix with sorted columns.
#[derive(Debug, Clone)]
struct Csr<T> {
    n: usize,
    ptr: Vec<usize>,
    col: Vec<usize>,
    val: Vec<T>,
    diag: Vec<usize>,
}

impl<T: Real> Csr<T> {
    fn from_blocks(a: &BlockMatrix<T>) -> Self {
        let m = a.block_size();
        let n = a.dim();
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for (r, c, b) in a.iter() {
            for i in 0..m {
                for j in 0..m {
                    rows[r * m + i].push((c * m + j, b[i * m + j]));
                }
            }
        }
        let mut ptr = vec![0];
        let mut col = Vec::new();
        let mut val = Vec::new();
        let mut diag = vec![usize::MAX; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_by_key(|e| e.0);
            let start = col.len();
            for &(c, v) in row.iter() {
                if col.len() > start && *col.last().expect("non-empty") == c {
                    *val.last_mut().expect("non-empty") += v;
                } else {
                    col.push(c);
                    val.push(v);
                }
            }
            if let Some(p) = col[start..].iter().position(|&c| c == i) {
                diag[i] = start + p;
            }
            ptr.push(col.len());
        }
        Self { n, ptr, col, val, diag }
    }

    fn matvec(&self, x: &[T], y: &mut [T]) {
        for i in 0..self.n {
            let mut s = T::zero();
            for p in self.ptr[i]..self.ptr[i + 1] {
                s += self.val[p] * x[self.col[p]];
            }
            y[i] = s;
        }
    }
}

/// Incomplete LU on the sparsity pattern of the matrix.
#[derive(Debug, Clone)]
struct Ilu0<T> {
    lu: Csr<T>,
}

impl<T: Real> Ilu0<T> {
    fn new(mut a: Csr<T>) -> Result<Self, LinalgError> {
        for i in 0..a.n {
            if a.diag[i] == usize::MAX {
                return Err(LinalgError::Singular { index: i });
            }
            for p in a.ptr[i]..a.diag[i] {
                let k = a.col[p];
                let pivot = a.val[a.diag[k]];
                if pivot == T::zero() {
                    return Err(LinalgError::Singular { index: k });
                }
                let l = a.val[p] / pivot;
                a.val[p] = l;
                // row_i -= l * row_k on the shared pattern right of k
                let (mut q, qend) = (a.diag[k] + 1, a.ptr[k + 1]);
                let mut s = p + 1;
                let send = a.ptr[i + 1];
                while q < qend && s < send {
                    match a.col[q].cmp(&a.col[s]) {
                        std::cmp::Ordering::Less => q += 1,
                        std::cmp::Ordering::Greater => s += 1,
                        std::cmp::Ordering::Equal => {
                            let u = a.val[q];
                            a.val[s] -= l * u;
                            q += 1;
                            s += 1;
                        }
                    }
                }
            }
            if a.val[a.diag[i]] == T::zero() {
                return Err(LinalgError::Singular { index: i });
            }
        }
        Ok(Self { lu: a })
    }

    fn apply(&self, x: &mut [T]) {
        let a = &self.lu;
        for i in 0..a.n {
            let mut s = x[i];
            for p in a.ptr[i]..a.diag[i] {
                s -= a.val[p] * x[a.col[p]];
            }
            x[i] = s;
        }
        for i in (0..a.n).rev() {
            let mut s = x[i];
            for p in a.diag[i] + 1..a.ptr[i + 1] {
                s -= a.val[p] * x[a.col[p]];
            }
            x[i] = s / a.val[a.diag[i]];
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresConfig {
    pub restart: usize,
    pub tol: f64,
    pub max_restarts: usize,
}

impl Default for GmresConfig {
    fn default() -> Self {
        Self {
            restart: 30,
            tol: 1e-12,
            max_restarts: 200,
        }
    }
}

fn norm2<T: Real>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |s, &x| s + x * x).sqrt()
}

/// Solves `A x = b` to `||b - A x||_2 <= tol (1 + ||b||_inf)`, starting from `x`.
pub fn gmres_ilu0<T: Real>(
    a: &BlockMatrix<T>,
    b: &[T],
    x: &mut [T],
    cfg: GmresConfig,
) -> Result<usize, LinalgError> {
    let csr = Csr::from_blocks(a);
    let pre = Ilu0::new(csr.clone())?;
    let n = csr.n;
    let k = cfg.restart.max(1);
    let bnorm = b.iter().fold(T::zero(), |s, v| s.max(v.abs()));
    let target = T::lit(cfg.tol) * (T::one() + bnorm);
    let mut r = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let mut basis: Vec<Vec<T>> = vec![vec![T::zero(); n]; k + 1];
    let mut hess = vec![T::zero(); (k + 1) * k];
    let (mut cs, mut sn) = (vec![T::zero(); k], vec![T::zero(); k]);
    let mut g = vec![T::zero(); k + 1];
    let mut iters = 0;
    let mut res = T::infinity();

    for _ in 0..cfg.max_restarts {
        csr.matvec(x, &mut r);
        for i in 0..n {
            r[i] = b[i] - r[i];
        }
        res = norm2(&r);
        if res <= target {
            return Ok(iters);
        }
        basis[0].iter_mut().zip(&r).for_each(|(q, &v)| *q = v / res);
        g.iter_mut().for_each(|v| *v = T::zero());
        g[0] = res;
        let mut used = 0;
        for j in 0..k {
            iters += 1;
            w.copy_from_slice(&basis[j]);
            pre.apply(&mut w);
            let mut av = vec![T::zero(); n];
            csr.matvec(&w, &mut av);
            for i in 0..=j {
                let h: T = av.iter().zip(&basis[i]).fold(T::zero(), |s, (&p, &q)| s + p * q);
                hess[i * k + j] = h;
                av.iter_mut().zip(&basis[i]).for_each(|(p, &q)| *p -= h * q);
            }
            let hn = norm2(&av);
            hess[(j + 1) * k + j] = hn;
            if hn > T::zero() {
                basis[j + 1].iter_mut().zip(&av).for_each(|(q, &p)| *q = p / hn);
            }
            for i in 0..j {
                let (a0, a1) = (hess[i * k + j], hess[(i + 1) * k + j]);
                hess[i * k + j] = cs[i] * a0 + sn[i] * a1;
                hess[(i + 1) * k + j] = -sn[i] * a0 + cs[i] * a1;
            }
            let (a0, a1) = (hess[j * k + j], hess[(j + 1) * k + j]);
            let rho = (a0 * a0 + a1 * a1).sqrt();
            cs[j] = if rho > T::zero() { a0 / rho } else { T::one() };
            sn[j] = if rho > T::zero() { a1 / rho } else { T::zero() };
            hess[j * k + j] = rho;
            hess[(j + 1) * k + j] = T::zero();
            g[j + 1] = -sn[j] * g[j];
            g[j] = cs[j] * g[j];
            used = j + 1;
            if g[j + 1].abs() <= target * T::lit(0.1) || hn == T::zero() {
                break;
            }
        }
        // back substitution and update x += M^{-1} V y
        let mut y = vec![T::zero(); used];
        for i in (0..used).rev() {
            let mut s = g[i];
            for l in i + 1..used {
                s -= hess[i * k + l] * y[l];
            }
            y[i] = s / hess[i * k + i];
        }
        w.iter_mut().for_each(|v| *v = T::zero());
        for (l, &yl) in y.iter().enumerate() {
            w.iter_mut().zip(&basis[l]).for_each(|(p, &q)| *p += yl * q);
        }
        pre.apply(&mut w);
        x.iter_mut().zip(&w).for_each(|(p, &q)| *p += q);
    }
    csr.matvec(x, &mut r);
    for i in 0..n {
        r[i] = b[i] - r[i];
    }
    let fin = norm2(&r);
    if fin <= target {
        return Ok(iters);
    }
    Err(LinalgError::NotConverged {
        iterations: iters,
        residual: fin.min(res).to_f64_lossy(),
    })
}
