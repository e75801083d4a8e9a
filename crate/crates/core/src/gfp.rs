//! Dense matrices over the prime field GF(p).
//!
//! Modules use row vectors: a group element acts as `v ↦ v·M`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime: a^(p-2).
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let p = self.p as u64;
        let mut out = Matrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) as u64 + a * other.get(k, j) as u64) % p;
                    out.set(i, j, v as u32);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + self.p - y) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = ((*x as u64 * c as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    /// `v·M` for a row vector `v`.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = (*o + x as u64 * self.get(i, j) as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in 0..self.cols {
                let v = (self.get(r, j) as u64 * inv as u64 % p as u64) as u32;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = (self.get(i, j) as u64 + (p - f) as u64 * self.get(r, j) as u64)
                        % p as u64;
                    self.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}` (column vectors), as a list of vectors.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m.get(r, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// Row-reduced basis of the span of `vectors`.
pub fn span_basis(p: u32, dim: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(p, vectors);
    let r = m.rref().len();
    debug_assert_eq!(m.cols(), dim);
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Basis of the space of `T` with `A_i·T = T·B_i` for all `i`: the module
/// homomorphisms between row modules given by `A_i` and `B_i`.
pub fn intertwiners(p: u32, a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    assert_eq!(a.len(), b.len());
    let n = a.first().map_or(0, |m| m.rows());
    let k = b.first().map_or(0, |m| m.rows());
    if a.is_empty() {
        // No constraints: all n×k matrices.
        return (0..n * k)
            .map(|idx| {
                let mut m = Matrix::zero(p, n, k);
                m.set(idx / k, idx % k, 1);
                m
            })
            .collect();
    }
    let unknowns = n * k;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        for i in 0..n {
            for j in 0..k {
                let mut row = vec![0u32; unknowns];
                // (A T)_{ij} = Σ_l A_{il} T_{lj}
                for l in 0..n {
                    let idx = l * k + j;
                    row[idx] = (row[idx] + ai.get(i, l)) % p;
                }
                // (T B)_{ij} = Σ_l T_{il} B_{lj}
                for l in 0..k {
                    let idx = i * k + l;
                    row[idx] = (row[idx] + p - bi.get(l, j)) % p;
                }
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(p, &rows)
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zero(p, n, k);
            for (idx, x) in v.into_iter().enumerate() {
                m.set(idx / k, idx % k, x);
            }
            m
        })
        .collect()
}

/// All `p^len` coefficient vectors, in lexicographic order, excluding zero.
pub(crate) fn nonzero_combinations(p: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
    (1..total).map(move |mut c| {
        let mut v = vec![0u32; len];
        for x in v.iter_mut() {
            *x = (c % p as u64) as u32;
            c /= p as u64;
        }
        v
    })
}

/// Linear combination `Σ c_i M_i`.
pub(crate) fn combine(p: u32, basis: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut acc = Matrix::zero(p, basis[0].rows(), basis[0].cols());
    for (m, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

/// Some invertible member of the span of `basis`, searched exhaustively up
/// to `limit` combinations.
pub fn find_invertible(p: u32, basis: &[Matrix], limit: u64) -> Option<Matrix> {
    if basis.is_empty() {
        return None;
    }
    if let Some(m) = basis.iter().find(|m| m.is_invertible()) {
        return Some(m.clone());
    }
    nonzero_combinations(p, basis.len())
        .take(limit as usize)
        .map(|c| combine(p, basis, &c))
        .find(|m| m.is_invertible())
}
