//! Dense row-major matrices and the direct solvers used by the basis
//! transforms, scattered-node systems, and rank-revealing elimination.
//!
//! Everything here is deliberately plain `f64` dense storage. The matrix
//! identities the crate guarantees are stated for sizes up to a few hundred,
//! where dense triangular substitution and partial-pivoting LU are both fast
//! and easy to audit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[f64]> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::SizeMismatch {
                    what: "matrix row",
                    expected: ncols,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
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
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(b * self.cols);
        head[a * self.cols..(a + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let src = other.row(k);
                let dst = out.row_mut(i);
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len(), "matvec dimension mismatch");
        self.data
            .chunks_exact(self.cols)
            .map(|row| dot(row, x))
            .collect()
    }

    /// y = A^T x without forming the transpose.
    pub fn transpose_matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, x.len(), "matvec dimension mismatch");
        let mut y = vec![0.0; self.cols];
        for (row, &xi) in self.data.chunks_exact(self.cols).zip(x) {
            if xi == 0.0 {
                continue;
            }
            for (yj, &a) in y.iter_mut().zip(row) {
                *yj += xi * a;
            }
        }
        y
    }

    /// Operator infinity norm: maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        self.data
            .chunks_exact(self.cols.max(1))
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// max |self - other| entrywise.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// True iff every entry strictly above the diagonal is exactly zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| self.row(r)[r + 1..].iter().all(|&v| v == 0.0))
    }

    /// True iff every entry strictly below the diagonal is exactly zero.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| self.row(r)[..r.min(self.cols)].iter().all(|&v| v == 0.0))
    }

    /// Inverse of a lower-triangular matrix by forward substitution on unit
    /// vectors. Triangularity of the result is exact by construction.
    pub fn invert_lower_triangular(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut inv = Matrix::zeros(n, n);
        for j in 0..n {
            // Column j of the inverse is zero above row j.
            let djj = self.get(j, j);
            if djj == 0.0 {
                return Err(Error::SingularMatrix);
            }
            inv.set(j, j, 1.0 / djj);
            for i in j + 1..n {
                let mut s = 0.0;
                for k in j..i {
                    s += self.get(i, k) * inv.get(k, j);
                }
                let dii = self.get(i, i);
                if dii == 0.0 {
                    return Err(Error::SingularMatrix);
                }
                inv.set(i, j, -s / dii);
            }
        }
        Ok(inv)
    }

    /// Inverse of an upper-triangular matrix by back substitution on unit
    /// vectors.
    pub fn invert_upper_triangular(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut inv = Matrix::zeros(n, n);
        for j in (0..n).rev() {
            let djj = self.get(j, j);
            if djj == 0.0 {
                return Err(Error::SingularMatrix);
            }
            inv.set(j, j, 1.0 / djj);
            for i in (0..j).rev() {
                let mut s = 0.0;
                for k in i + 1..=j {
                    s += self.get(i, k) * inv.get(k, j);
                }
                let dii = self.get(i, i);
                if dii == 0.0 {
                    return Err(Error::SingularMatrix);
                }
                inv.set(i, j, -s / dii);
            }
        }
        Ok(inv)
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LU factorization with partial (row) pivoting, kept for repeated solves.
#[derive(Debug, Clone)]
pub struct PivotedLu {
    lu: Matrix,
    perm: Vec<usize>,
    min_pivot: f64,
    max_pivot: f64,
}

impl PivotedLu {
    /// Factor a square matrix. Fails only on an exactly zero pivot; near
    /// singularity is reported through [`PivotedLu::cond_estimate`] so callers
    /// can apply their own thresholds.
    pub fn factor(a: &Matrix) -> Result<Self> {
        assert_eq!(a.rows(), a.cols(), "LU requires a square matrix");
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = f64::INFINITY;
        let mut max_pivot = 0.0f64;
        for k in 0..n {
            let mut p = k;
            let mut best = lu.get(k, k).abs();
            for r in k + 1..n {
                let v = lu.get(r, k).abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 {
                return Err(Error::SingularMatrix);
            }
            lu.swap_rows(k, p);
            perm.swap(k, p);
            min_pivot = min_pivot.min(best);
            max_pivot = max_pivot.max(best);
            let pivot = lu.get(k, k);
            for r in k + 1..n {
                let factor = lu.get(r, k) / pivot;
                lu.set(r, k, factor);
                if factor == 0.0 {
                    continue;
                }
                for c in k + 1..n {
                    let v = lu.get(r, c) - factor * lu.get(k, c);
                    lu.set(r, c, v);
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            min_pivot,
            max_pivot,
        })
    }

    /// Cheap pivot-ratio condition estimate `max |u_kk| / min |u_kk|`.
    pub fn cond_estimate(&self) -> f64 {
        if self.min_pivot == 0.0 {
            f64::INFINITY
        } else {
            self.max_pivot / self.min_pivot
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        assert_eq!(b.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        // Forward substitution with the unit-lower factor.
        for i in 1..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self.lu.get(i, k) * x[k];
            }
            x[i] = s;
        }
        // Back substitution with the upper factor.
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.lu.get(i, k) * x[k];
            }
            x[i] = s / self.lu.get(i, i);
        }
        x
    }

    pub fn inverse(&self) -> Matrix {
        let n = self.lu.rows();
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.solve(&e);
            e[j] = 0.0;
            for i in 0..n {
                inv.set(i, j, col[i]);
            }
        }
        inv
    }
}

/// Least-squares solution of an overdetermined system by Householder QR.
///
/// Returns `x` minimizing `||a x - b||_2`. Requires `a.rows() >= a.cols()`
/// and full column rank.
pub fn least_squares(a: &Matrix, b: &[f64]) -> Result<Vec<f64>> {
    let (m, n) = (a.rows(), a.cols());
    assert!(m >= n, "least_squares requires rows >= cols");
    assert_eq!(b.len(), m);
    let mut r = a.clone();
    let mut rhs = b.to_vec();
    for k in 0..n {
        // Householder vector for column k.
        let mut norm = 0.0;
        for i in k..m {
            norm += r.get(i, k) * r.get(i, k);
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            return Err(Error::SingularMatrix);
        }
        let alpha = if r.get(k, k) >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| r.get(i, k)).collect();
        v[0] -= alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            return Err(Error::SingularMatrix);
        }
        // Apply the reflector to the remaining columns and to the rhs.
        for c in k..n {
            let mut s = 0.0;
            for (off, vi) in v.iter().enumerate() {
                s += vi * r.get(k + off, c);
            }
            let beta = 2.0 * s / vnorm2;
            for (off, vi) in v.iter().enumerate() {
                let val = r.get(k + off, c) - beta * vi;
                r.set(k + off, c, val);
            }
        }
        let mut s = 0.0;
        for (off, vi) in v.iter().enumerate() {
            s += vi * rhs[k + off];
        }
        let beta = 2.0 * s / vnorm2;
        for (off, vi) in v.iter().enumerate() {
            rhs[k + off] -= beta * vi;
        }
    }
    // Back substitution on the leading n x n upper triangle.
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s -= r.get(i, j) * x[j];
        }
        let rii = r.get(i, i);
        if rii == 0.0 {
            return Err(Error::SingularMatrix);
        }
        x[i] = s / rii;
    }
    Ok(x)
}
