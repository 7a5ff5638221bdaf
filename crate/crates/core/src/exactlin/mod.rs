//! Dense linear algebra over prime fields.

pub mod poly;
mod span;

pub use poly::Poly;
pub use span::RowSpace;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The prime field `F_p` for `2 <= p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > (1u64 << 31) - 1 || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.p as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric lift into `(-p/2, p/2]`, handy for display.
    pub fn to_signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Row-major dense matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix<F_{}>{}x{}", self.field.p, self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds from raw residues; entries are reduced mod p.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        let p = field.p;
        let data = data.into_iter().map(|x| x % p).collect();
        FpMatrix { field, rows, cols, data }
    }

    /// Builds from signed integer rows. All rows must share a length.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| field.from_i64(x)));
        }
        FpMatrix { field, rows: r, cols: c, data }
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p);
            }
        }
        FpMatrix { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u32>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn scalar(field: PrimeField, n: usize, s: u32) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = s % field.p;
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p;
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn into_data(self) -> Vec<u32> {
        self.data
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| x as i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let p = self.field.p as u64;
        let (n, m) = (self.rows, other.cols);
        let mut out = vec![0u32; n * m];
        // Accumulate in u64, reducing only when the sum may overflow.
        let limit = u64::MAX - (p - 1) * (p - 1);
        let mut acc = vec![0u64; m];
        for i in 0..n {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * m..(k + 1) * m];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                    if *x > limit {
                        *x %= p;
                    }
                }
            }
            for (o, x) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
                *o = (*x % p) as u32;
            }
        }
        FpMatrix { field: self.field, rows: n, cols: m, data: out }
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    s = (s + *a as u64 * *b as u64) % p;
                }
                s as u32
            })
            .collect()
    }

    fn zip_with(&self, other: &FpMatrix, f: impl Fn(u32, u32) -> u32) -> FpMatrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        FpMatrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: u32) -> FpMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s % f.p)).collect();
        FpMatrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.field.p - 1)
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: u32, other: &FpMatrix) {
        assert_eq!(self.shape(), other.shape());
        let f = self.field;
        if s == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, f.mul(s, b));
        }
    }

    pub fn hstack(blocks: &[&FpMatrix]) -> FpMatrix {
        let first = blocks.first().expect("hstack of nothing");
        let rows = first.rows;
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(first.field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&FpMatrix]) -> FpMatrix {
        let first = blocks.first().expect("vstack of nothing");
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        FpMatrix { field: first.field, rows, cols, data }
    }

    pub fn block_diag(field: PrimeField, blocks: &[&FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FpMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(i));
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        Self::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_columns(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        Self::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    /// In-place reduced row echelon form; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let elim = |row: &mut [u32]| {
                let k = row[c];
                if k != 0 {
                    let nk = f.neg(k);
                    for j in c..cols {
                        if prow[j] != 0 {
                            row[j] = f.add(row[j], f.mul(nk, prow[j]));
                        }
                    }
                }
            };
            before.chunks_mut(cols).for_each(elim);
            after.chunks_mut(cols).for_each(elim);
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form, pivot columns and rank.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>, usize) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().2
    }

    /// Columns form a basis of the null space.
    pub fn kernel_basis(&self) -> FpMatrix {
        let (r, pivots, rank) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = FpMatrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Columns form a basis of the column space (a subset of the original columns).
    pub fn image_basis(&self) -> FpMatrix {
        let (_, pivots, _) = self.rref();
        self.select_columns(&pivots)
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &FpMatrix) -> Result<Option<FpMatrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs {} rows",
                self.rows, b.rows
            )));
        }
        let aug = FpMatrix::hstack(&[self, b]);
        let (r, pivots, _) = aug.rref();
        let n = self.cols;
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = FpMatrix::zeros(self.field, n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, n + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = FpMatrix::hstack(&[self, &FpMatrix::identity(self.field, n)]);
        let (r, pivots, _) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("non-square input".into()));
        }
        Ok(self.pow(self.rows as u64).is_zero())
    }

    /// Smallest `k` with `rank m^k = rank m^{k+1}`, with bases of `ker m^k` and `im m^k`.
    pub fn fitting_power(&self) -> Result<(usize, FpMatrix, FpMatrix)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("non-square input".into()));
        }
        let mut k = 0;
        let mut cur = FpMatrix::identity(self.field, self.rows);
        let mut rank = self.rows;
        loop {
            let next = cur.mul(self);
            let next_rank = next.rank();
            if next_rank == rank {
                break;
            }
            cur = next;
            rank = next_rank;
            k += 1;
        }
        Ok((k, cur.kernel_basis(), cur.image_basis()))
    }

    /// `Σ c_i m^i`.
    pub fn eval_poly(&self, f: &Poly) -> FpMatrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = FpMatrix::zeros(self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn min_poly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut powers = vec![FpMatrix::identity(self.field, n)];
        let mut span = RowSpace::tracked(self.field, n * n);
        loop {
            let last = powers.last().unwrap();
            if let Some(dep) = span.insert_tracked(last.data.clone()) {
                // last = Σ dep_i P_i  ⇒  t^k − Σ dep_i t^i.
                let f = self.field;
                let mut c: Vec<u32> = dep.iter().map(|&x| f.neg(x)).collect();
                c.push(1);
                return Poly::new(f, c);
            }
            let next = last.mul(self);
            powers.push(next);
        }
    }

    /// Companion matrix of a monic polynomial (ones on the subdiagonal).
    pub fn companion(f: &Poly) -> FpMatrix {
        let d = f.degree().expect("companion of zero polynomial");
        let fld = f.field();
        let mut m = FpMatrix::zeros(fld, d, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, fld.neg(f.coeffs()[i]));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2147483647).is_ok());
        assert!(PrimeField::new(1u64 << 31).is_err());
    }

    #[test]
    fn rref_examples() {
        let id = FpMatrix::identity(f(2), 2);
        let (r, piv, rank) = id.rref();
        assert_eq!((r, piv, rank), (id.clone(), vec![0, 1], 2));

        let z = FpMatrix::zeros(f(3), 3, 3);
        let (r, piv, rank) = z.rref();
        assert_eq!((r, piv, rank), (z.clone(), vec![], 0));

        let m = FpMatrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]);
        let (r, _, rank) = m.rref();
        assert_eq!(r, FpMatrix::from_rows(f(5), &[vec![1, 2], vec![0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(f(3), 4).kernel_basis().cols(), 0);
        assert_eq!(FpMatrix::zeros(f(3), 3, 3).kernel_basis(), FpMatrix::identity(f(3), 3));
        let k = FpMatrix::from_rows(f(2), &[vec![1, 1]]).kernel_basis();
        assert_eq!(k, FpMatrix::from_rows(f(2), &[vec![1], vec![1]]));
    }

    #[test]
    fn solve_examples() {
        let b = FpMatrix::from_rows(f(7), &[vec![3], vec![5]]);
        assert_eq!(FpMatrix::identity(f(7), 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(FpMatrix::zeros(f(7), 2, 2).solve(&b).unwrap(), None);
        let a = FpMatrix::from_rows(f(2), &[vec![1, 1], vec![0, 1]]);
        let rhs = FpMatrix::from_rows(f(2), &[vec![0], vec![1]]);
        assert_eq!(
            a.solve(&rhs).unwrap(),
            Some(FpMatrix::from_rows(f(2), &[vec![1], vec![1]]))
        );
        assert!(a.solve(&FpMatrix::zeros(f(2), 3, 1)).is_err());
    }

    #[test]
    fn fitting_examples() {
        let n = FpMatrix::from_rows(f(5), &[vec![0, 1, 2], vec![0, 0, 3], vec![0, 0, 0]]);
        assert!(n.is_nilpotent().unwrap());
        let (_, ker, im) = n.fitting_power().unwrap();
        assert_eq!((ker.cols(), im.cols()), (3, 0));

        let id = FpMatrix::identity(f(5), 3);
        assert!(!id.is_nilpotent().unwrap());
        let (k, ker, im) = id.fitting_power().unwrap();
        assert_eq!((k, ker.cols(), im.cols()), (0, 0, 3));

        let m = FpMatrix::from_rows(f(2), &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 1]]);
        let (k, ker, im) = m.fitting_power().unwrap();
        assert_eq!((k, ker.cols(), im.cols()), (2, 2, 1));

        assert!(FpMatrix::zeros(f(2), 2, 3).fitting_power().is_err());
    }

    #[test]
    fn min_poly_of_companion_is_itself() {
        let fld = f(3);
        let p = Poly::new(fld, vec![1, 0, 2, 1]);
        let c = FpMatrix::companion(&p);
        assert_eq!(c.min_poly(), p);
        assert!(c.eval_poly(&p).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = FpMatrix::from_rows(f(7), &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(FpMatrix::from_rows(f(7), &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }
}
