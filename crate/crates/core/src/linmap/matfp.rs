// SPDX-License-Identifier: Apache-2.0

//! Dense matrices over a prime field with exact Gaussian elimination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Row-major matrix over `F_p`. Columns are images of basis vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatFp {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u16>,
}

/// Wire form: row-major digits with an `(n, p)` header. `cols` is only
/// written for non-square matrices.
#[derive(Serialize, Deserialize)]
struct MatRepr {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cols: Option<usize>,
    p: u32,
    data: Vec<u16>,
}

impl Serialize for MatFp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatRepr {
            n: self.rows,
            cols: (self.rows != self.cols).then_some(self.cols),
            p: self.p,
            data: self.data.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatFp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = MatRepr::deserialize(d)?;
        let cols = r.cols.unwrap_or(r.n);
        if r.data.len() != r.n * cols || r.data.iter().any(|&x| x as u32 >= r.p) {
            return Err(serde::de::Error::custom("malformed matrix"));
        }
        Ok(MatFp { rows: r.n, cols, p: r.p, data: r.data })
    }
}

impl fmt::Debug for MatFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatFp {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl MatFp {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        MatFp { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = (x % p) as u16;
            }
        }
        m
    }

    /// Builds a matrix from its columns.
    pub fn from_cols(p: u32, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, cols.len(), p);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.data[i * cols.len() + j] = (x % p) as u16;
            }
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, p: u32, data: Vec<u16>) -> Self {
        assert_eq!(data.len(), rows * cols);
        MatFp { rows, cols, p, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    /// Row-major entries.
    pub fn data(&self) -> &[u16] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c] as u32
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = (v % self.p) as u16;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &MatFp) -> MatFp {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u32 + b as u32) % p) as u16)
            .collect();
        MatFp { data, ..*self }
    }

    /// `self += c * other` in place.
    pub fn add_scaled_assign(&mut self, c: u32, other: &MatFp) {
        let p = self.p;
        let c = c % p;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = ((*a as u32 + c * b as u32) % p) as u16;
        }
    }

    pub fn sub(&self, other: &MatFp) -> MatFp {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u32) -> MatFp {
        let p = self.p;
        let c = c % p;
        let data = self.data.iter().map(|&a| ((a as u32 * c) % p) as u16).collect();
        MatFp { data, ..*self }
    }

    pub fn mul(&self, other: &MatFp) -> MatFp {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let p = self.p as u64;
        let mut out = vec![0u16; n * m];
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            for l in 0..k {
                let a = self.data[i * k + l] as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[l * m..(l + 1) * m];
                for (x, &b) in acc.iter_mut().zip(row) {
                    *x += a * b as u64;
                }
            }
            for j in 0..m {
                out[i * m + j] = (acc[j] % p) as u16;
            }
        }
        MatFp { rows: n, cols: m, p: self.p, data: out }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn transpose(&self) -> MatFp {
        let mut t = MatFp::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn pow(&self, mut e: u128) -> MatFp {
        assert!(self.is_square());
        let mut result = MatFp::identity(self.rows, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.data[r * cols + c] as u32, p);
            for j in c..cols {
                self.data[r * cols + j] = ((self.data[r * cols + j] as u32 * inv) % p) as u16;
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c] as u32;
                if f == 0 {
                    continue;
                }
                let f = p - f;
                for j in c..cols {
                    let v = self.data[i * cols + j] as u32 + f * self.data[r * cols + j] as u32;
                    self.data[i * cols + j] = (v % p) as u16;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (MatFp, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Full rank for a square matrix, with early exit on the first missing pivot.
    pub fn is_invertible(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let p = self.p;
        let mut a: Vec<u32> = self.data.iter().map(|&x| x as u32).collect();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a[i * n + c] != 0) else {
                return false;
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
            }
            let inv = inv_mod(a[c * n + c], p);
            for i in c + 1..n {
                let f = a[i * n + c];
                if f == 0 {
                    continue;
                }
                let f = (p - f) * inv % p;
                for j in c..n {
                    a[i * n + j] = (a[i * n + j] + f * a[c * n + j]) % p;
                }
            }
        }
        true
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, piv) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (row, &pc) in piv.iter().enumerate() {
                    let x = r.get(row, f);
                    v[pc] = (p - x) % p;
                }
                v
            })
            .collect()
    }

    pub fn invert(&self) -> Result<MatFp> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "cannot invert {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = MatFp::zeros(n, 2 * n, self.p);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.data[i * n + j];
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let mut inv = MatFp::zeros(n, n, self.p);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = aug.data[i * 2 * n + n + j];
            }
        }
        Ok(inv)
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block2(a: &MatFp, b: &MatFp, c: &MatFp, d: &MatFp) -> MatFp {
        let (h, w) = (a.rows, a.cols);
        let mut out = MatFp::zeros(2 * h, 2 * w, a.p);
        for (blk, (ro, co)) in [(a, (0, 0)), (b, (0, w)), (c, (h, 0)), (d, (h, w))] {
            assert_eq!((blk.rows, blk.cols), (h, w));
            for i in 0..h {
                for j in 0..w {
                    out.data[(ro + i) * 2 * w + co + j] = blk.data[i * w + j];
                }
            }
        }
        out
    }
}
