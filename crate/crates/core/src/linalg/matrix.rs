use std::fmt;

use crate::error::{Error, Result};
use crate::modulus::Modulus;

/// Dense row-major matrix of residues modulo `n`.
///
/// Zero-row and zero-column shapes are legal and behave like ordinary
/// matrices under multiplication and block assembly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatZn {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl MatZn {
    pub fn zeros(modulus: &Modulus, rows: usize, cols: usize) -> Self {
        MatZn { modulus: modulus.clone(), rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(modulus: &Modulus, size: usize) -> Self {
        Self::scalar(modulus, size, 1)
    }

    pub fn scalar(modulus: &Modulus, size: usize, r: u64) -> Self {
        let mut m = Self::zeros(modulus, size, size);
        let r = modulus.reduce(r);
        for i in 0..size {
            m.entries[i * size + i] = r;
        }
        m
    }

    /// Builds a matrix from row-major entries, reducing every entry mod `n`.
    pub fn from_entries(modulus: &Modulus, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|x| modulus.reduce(x)).collect();
        Ok(MatZn { modulus: modulus.clone(), rows, cols, entries })
    }

    /// Same as [`MatZn::from_entries`] but accepts signed integers.
    pub fn from_signed(modulus: &Modulus, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let e = entries.iter().map(|&x| modulus.reduce_signed(x)).collect();
        Self::from_entries(modulus, rows, cols, e)
    }

    /// Convenience constructor for literal matrices; panics on ragged input.
    pub fn from_rows(modulus: &Modulus, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_signed(modulus, rows.len(), cols, &flat).expect("shape checked")
    }

    pub fn column(modulus: &Modulus, v: &[u64]) -> Self {
        Self::from_entries(modulus, v.len(), 1, v.to_vec()).expect("shape")
    }

    #[inline]
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.entries[r * self.cols + c] = self.modulus.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn from_row_vecs(modulus: &Modulus, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            entries.extend(r.iter().map(|&x| modulus.reduce(x)));
        }
        MatZn { modulus: modulus.clone(), rows: rows.len(), cols, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus.get(), other.modulus.get()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = &self.modulus;
        let mut out = Self::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = m.add(out.entries[idx], m.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or modulus mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = &self.modulus;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| m.add(a, b)).collect();
        Ok(MatZn { modulus: m.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix sum")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(self.modulus.get() - 1)
    }

    pub fn scale(&self, r: u64) -> Self {
        let m = &self.modulus;
        let r = m.reduce(r);
        let entries = self.entries.iter().map(|&a| m.mul(a, r)).collect();
        MatZn { modulus: m.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length");
        let m = &self.modulus;
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| m.add(acc, m.mul(a, b)))).collect()
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatZn) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.entries[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatZn {
        let mut out = Self::zeros(&self.modulus, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.entries[r * cols + c] = self.get(r0 + r, c0 + c);
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`; basis pair `(a, b)` maps to index
    /// `a * other.dim + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let m = &self.modulus;
        let mut out = Self::zeros(m, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.entries[(i * other.rows + k) * out.cols + j * other.cols + l] = m.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(&self.modulus, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut out = Self::zeros(&self.modulus, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// Block diagonal `[[a, 0], [0, b]]`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(&self.modulus, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }
}

impl fmt::Debug for MatZn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatZn[{}]{}x{}[", self.modulus.get(), self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for (c, x) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}
