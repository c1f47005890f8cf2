//! Dense linear algebra over small prime fields.
//!
//! Entries are residues stored one per byte, so p must be below 256. Rank
//! computations over F_2 switch to rows packed into machine words.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

struct Tables {
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Tables {
    fn new(p: u32) -> Self {
        let n = p as usize;
        let mut mul = vec![0u8; n * n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            for b in 0..n {
                let prod = (a * b) % n;
                mul[a * n + b] = prod as u8;
                if prod == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Tables { mul, inv }
    }
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        if !(2..256).contains(&p) || !crate::galois::is_prime(p as u64) {
            return Err(Error::Unsupported(format!("F_p linear algebra needs a prime p < 256, got {p}")));
        }
        Ok(FpMatrix { p, rows, cols, data: vec![0; rows * cols] })
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has length {} not {cols}", r.len())));
            }
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = (x as u32 % p) as u8;
            }
        }
        Ok(m)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j] as u32
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = (v % self.p) as u8;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows().map(|r| r.to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u8]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("row of length {} into {} columns", row.len(), self.cols)));
        }
        self.data.extend(row.iter().map(|&x| (x as u32 % self.p) as u8));
        self.rows += 1;
        Ok(())
    }

    pub fn truncate_rows(&mut self, n: usize) {
        if n < self.rows {
            self.rows = n;
            self.data.truncate(n * self.cols);
        }
    }

    /// Permutes rows: row i of the result is row `order[i]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> FpMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for &i in order {
            data.extend_from_slice(self.row(i));
        }
        FpMatrix { p: self.p, rows: order.len(), cols: self.cols, data }
    }

    /// Row-vector product `digits * self`, with `digits` of length `num_rows()`.
    pub fn left_mul(&self, digits: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = vec![0u64; self.cols];
        for (i, &d) in digits.iter().enumerate().take(self.rows) {
            if d == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(i)) {
                *o = (*o + d as u64 * x as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Reduces to reduced row-echelon form in place. Nonzero rows end up first
    /// and zero rows are dropped; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let t = Tables::new(self.p);
        let pivots = self.echelon(&t, true);
        self.truncate_rows(pivots.len());
        pivots
    }

    fn echelon(&mut self, t: &Tables, reduce_above: bool) -> Vec<usize> {
        let (p, cols) = (self.p as usize, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = t.inv[self.data[r * cols + c] as usize] as usize;
            if inv != 1 {
                for j in c..cols {
                    let x = self.data[r * cols + j] as usize;
                    self.data[r * cols + j] = t.mul[inv * p + x];
                }
            }
            let (head, tail) = self.data.split_at_mut(r * cols);
            let (pivot_row, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u8]| {
                let f = row[c] as usize;
                if f == 0 {
                    return;
                }
                let neg = (p - f) * p;
                for j in c..cols {
                    let s = row[j] as usize + t.mul[neg + pivot_row[j] as usize] as usize;
                    row[j] = if s >= p { (s - p) as u8 } else { s as u8 };
                }
            };
            for row in rest.chunks_mut(cols) {
                eliminate(row);
            }
            if reduce_above {
                for row in head.chunks_mut(cols) {
                    eliminate(row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.p == 2 {
            return BitMatrix::from_matrix(self).rank();
        }
        let mut m = self.clone();
        m.echelon(&Tables::new(self.p), false).len()
    }

    /// Basis of the right kernel {x : self * x = 0}, in reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis: Vec<Vec<u8>> = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u8; self.cols];
                v[f] = 1;
                for (i, &c) in pivots.iter().enumerate() {
                    let a = m.get(i, f);
                    v[c] = ((p - a) % p) as u8;
                }
                v
            })
            .collect();
        if !basis.is_empty() {
            let mut b = FpMatrix::from_rows(p, self.cols, &basis).expect("valid p");
            b.rref();
            basis = b.to_rows();
        }
        basis
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zeros(self.p, n, 2 * n).ok()?;
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
        let mut inv = FpMatrix::zeros(self.p, n, n).ok()?;
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Is `v` in the row space? Requires `self` to be in reduced echelon form
    /// with the given pivots.
    pub fn reduces_to_zero(&self, pivots: &[usize], v: &[u8]) -> bool {
        let p = self.p;
        let mut w: Vec<u32> = v.iter().map(|&x| x as u32 % p).collect();
        for (i, &c) in pivots.iter().enumerate() {
            let f = w[c];
            if f == 0 {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(self.row(i)) {
                *x = (*x + (p - f) * r as u32) % p;
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// Rows over F_2 packed 64 entries per word.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn from_matrix(m: &FpMatrix) -> Self {
        let words = m.num_cols().div_ceil(64);
        let rows = m
            .rows()
            .map(|r| {
                let mut w = vec![0u64; words];
                for (j, &x) in r.iter().enumerate() {
                    if x & 1 == 1 {
                        w[j / 64] |= 1 << (j % 64);
                    }
                }
                w
            })
            .collect();
        BitMatrix { words, rows }
    }

    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        for c in 0..self.words * 64 {
            let (w, bit) = (c / 64, 1u64 << (c % 64));
            let Some(pr) = (rank..self.rows.len()).find(|&i| self.rows[i][w] & bit != 0) else {
                continue;
            };
            self.rows.swap(pr, rank);
            let pivot = self.rows[rank].clone();
            for row in self.rows.iter_mut().skip(rank + 1) {
                if row[w] & bit != 0 {
                    for (x, y) in row.iter_mut().zip(&pivot).skip(w) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
            if rank == self.rows.len() {
                break;
            }
        }
        rank
    }
}
