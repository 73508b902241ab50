//! Bit-packed linear algebra over GF(2).
//!
//! Everything the simplicial matroid needs reduces to three questions about
//! Z₂ vectors: how many are independent, is a vector in the span of a given
//! set, and which combination produces it. [`Gf2Matrix`] answers these with
//! row reduction on a private copy; [`EchelonBasis`] answers them one vector at
//! a time for greedy matroid algorithms.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A dense vector over GF(2), packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn singleton(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len` with ones at `indices`.
    ///
    /// Repeated indices toggle, so the result is the Z₂ sum of unit vectors.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.toggle(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Bitwise complement within the logical length.
    pub fn complement(&self) -> BitVec {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.clear_tail();
        out
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Number of positions set in both vectors.
    pub fn intersection_count(&self, other: &BitVec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// True when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// Row-major bit matrix over GF(2).
///
/// The matrix is immutable once built; the transpose used for column access
/// is computed lazily and cached.
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
    transpose: OnceLock<Box<Gf2Matrix>>,
}

impl Clone for Gf2Matrix {
    fn clone(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
            transpose: OnceLock::new(),
        }
    }
}

impl PartialEq for Gf2Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Gf2Matrix {}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_rows(cols, vec![BitVec::zeros(cols); rows]).expect("consistent widths")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| BitVec::singleton(n, i)).collect())
            .expect("consistent widths")
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
            transpose: OnceLock::new(),
        })
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self> {
        let mut data = vec![BitVec::zeros(columns.len()); rows];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for i in col.iter_ones() {
                data[i].set(j, true);
            }
        }
        Self::from_rows(columns.len(), data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn transpose(&self) -> &Gf2Matrix {
        self.transpose.get_or_init(|| {
            let mut t = vec![BitVec::zeros(self.rows); self.cols];
            for (i, row) in self.data.iter().enumerate() {
                for j in row.iter_ones() {
                    t[j].set(i, true);
                }
            }
            Box::new(Gf2Matrix::from_rows(self.rows, t).expect("consistent widths"))
        })
    }

    pub fn column(&self, c: usize) -> &BitVec {
        self.transpose().row(c)
    }

    /// Computes `M·x`.
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = BitVec::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(x) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if other.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let t = other.transpose();
        let rows = self
            .data
            .iter()
            .map(|row| {
                let mut out = BitVec::zeros(other.cols);
                for j in 0..other.cols {
                    if row.dot(t.row(j)) {
                        out.set(j, true);
                    }
                }
                out
            })
            .collect();
        Gf2Matrix::from_rows(other.cols, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        let mut basis = EchelonBasis::new(self.cols);
        self.data
            .iter()
            .filter(|row| basis.insert((*row).clone()))
            .count()
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        (
            Gf2Matrix::from_rows(self.cols, rows).expect("consistent widths"),
            pivots,
        )
    }

    /// Solves `M·x = b`, returning `None` when `b` is outside the column span.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let augmented: Vec<BitVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = BitVec::zeros(self.cols + 1);
                for j in row.iter_ones() {
                    r.set(j, true);
                }
                r.set(self.cols, b.get(i));
                r
            })
            .collect();
        let (reduced, pivots) = Gf2Matrix::from_rows(self.cols + 1, augmented)?.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            if reduced.get(r, self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// A basis of the right kernel `{x : M·x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = BitVec::singleton(self.cols, f);
                for (r, &p) in pivots.iter().enumerate() {
                    if reduced.get(r, f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// True iff `v` lies in the span of the selected columns.
    pub fn in_span(&self, selected_cols: &[usize], v: &BitVec) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut basis = EchelonBasis::new(self.rows);
        for &c in selected_cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    bound: self.cols,
                });
            }
            basis.insert(self.column(c).clone());
        }
        Ok(basis.contains(v))
    }
}

/// Incremental echelon basis: accepts vectors one at a time and reports
/// whether each one enlarges the span.
///
/// Every stored vector has a distinct lowest set bit (its pivot), so reducing
/// a candidate touches at most `rank` stored vectors.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    vectors: Vec<BitVec>,
    pivot_owner: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            vectors: Vec::new(),
            pivot_owner: vec![None; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, mut v: BitVec) -> BitVec {
        while let Some(p) = v.first_one() {
            match self.pivot_owner[p] {
                Some(owner) => v.xor_assign(&self.vectors[owner]),
                None => break,
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Adds `v` if it is independent of the current basis. Returns whether
    /// the rank grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let reduced = self.reduce(v);
        match reduced.first_one() {
            Some(p) => {
                self.pivot_owner[p] = Some(self.vectors.len());
                self.vectors.push(reduced);
                true
            }
            None => false,
        }
    }
}
