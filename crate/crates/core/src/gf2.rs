//! Word-packed GF(2) vectors and a reduced row-echelon basis.
//!
//! Rows of a [`Gf2Basis`] are kept fully reduced: every pivot column holds a
//! single one, in the row that owns it. Reducing a vector therefore takes one
//! pass (one XOR per pivot bit set in the input), and two bases spanning the
//! same space hold identical rows no matter the insertion order.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A packed bit vector of fixed length. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector with the given positions set. Repeated positions toggle.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = BitVec::zeros(len);
        for i in ones {
            v.toggle(i);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, position 0 first.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set position.
    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from_word(0)
    }

    fn first_one_from_word(&self, start: usize) -> Option<usize> {
        self.words[start..]
            .iter()
            .position(|&w| w != 0)
            .map(|k| (start + k) * WORD + self.words[start + k].trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    /// `self ^= other`. Panics on length mismatch.
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor of vectors of different length");
        self.xor_from_word(other, 0);
    }

    #[inline]
    fn xor_from_word(&mut self, other: &BitVec, start: usize) {
        for (a, b) in self.words[start..].iter_mut().zip(&other.words[start..]) {
            *a ^= *b;
        }
    }

    /// `self &= other`.
    pub fn and_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "and of vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    /// Popcount of `self & other`.
    pub fn and_count(&self, other: &BitVec) -> usize {
        assert_eq!(self.len, other.len, "and of vectors of different length");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Whether `self & other` has any set bit.
    pub fn intersects(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        self.and_count(other) % 2 == 1
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

impl std::ops::BitXor for &BitVec {
    type Output = BitVec;

    fn bitxor(self, rhs: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

/// Iterator over set positions, ascending.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

const NO_ROW: u32 = u32::MAX;

/// Reduced row-echelon basis of a subspace of GF(2)^dim.
///
/// The pivot of a row is its lowest set bit.
#[derive(Clone)]
pub struct Gf2Basis {
    dim: usize,
    // Rows in insertion order; `row_at` maps a pivot column to its slot.
    store: Vec<BitVec>,
    row_at: Vec<u32>,
}

impl Gf2Basis {
    pub fn new(dim: usize) -> Self {
        Gf2Basis {
            dim,
            store: Vec::new(),
            row_at: vec![NO_ROW; dim],
        }
    }

    pub fn from_vectors<'a, I>(dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a BitVec>,
    {
        let mut basis = Gf2Basis::new(dim);
        for v in vectors {
            basis.insert(v)?;
        }
        Ok(basis)
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.store.len()
    }

    fn check_len(&self, v: &BitVec) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `v` minus its projection onto the span, i.e. `v` with every pivot bit
    /// cleared by the owning row.
    pub fn reduce(&self, v: &BitVec) -> Result<BitVec> {
        self.check_len(v)?;
        let mut r = v.clone();
        if self.store.is_empty() {
            return Ok(r);
        }
        for i in v.iter_ones() {
            let slot = self.row_at[i];
            if slot != NO_ROW {
                let row = &self.store[slot as usize];
                r.xor_from_word(row, i / WORD);
            }
        }
        Ok(r)
    }

    /// Reduces `v` and, if the residual is nonzero, adds it as a new row and
    /// clears its pivot from every other row.
    pub fn insert(&mut self, v: &BitVec) -> Result<(BitVec, bool)> {
        self.check_len(v)?;
        if self.rank() == self.dim {
            return Ok((BitVec::zeros(self.dim), false));
        }
        let residual = self.reduce(v)?;
        let Some(pivot) = residual.first_one() else {
            return Ok((residual, false));
        };
        let start = pivot / WORD;
        for row in &mut self.store {
            if row.get(pivot) {
                row.xor_from_word(&residual, start);
            }
        }
        self.row_at[pivot] = self.store.len() as u32;
        self.store.push(residual.clone());
        Ok((residual, true))
    }

    pub fn contains(&self, v: &BitVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Pivot positions, strictly increasing.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows().map(|(p, _)| p).collect()
    }

    /// `(pivot, row)` pairs in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &BitVec)> + '_ {
        self.row_at
            .iter()
            .enumerate()
            .filter(|(_, &slot)| slot != NO_ROW)
            .map(move |(p, &slot)| (p, &self.store[slot as usize]))
    }

    /// Basis of the null space of the matrix whose rows span this basis:
    /// one vector per free (non-pivot) column.
    pub fn null_space(&self) -> Gf2Basis {
        let mut free: Vec<Option<BitVec>> = (0..self.dim)
            .map(|c| {
                (self.row_at[c] == NO_ROW).then(|| {
                    let mut v = BitVec::zeros(self.dim);
                    v.set(c, true);
                    v
                })
            })
            .collect();
        for (pivot, row) in self.rows() {
            for c in row.iter_ones().skip(1) {
                if let Some(v) = free[c].as_mut() {
                    v.set(pivot, true);
                }
            }
        }
        let mut out = Gf2Basis::new(self.dim);
        for v in free.into_iter().flatten() {
            out.insert(&v).expect("lengths agree");
        }
        out
    }
}

impl PartialEq for Gf2Basis {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.rank() == other.rank()
            && self.rows().zip(other.rows()).all(|(a, b)| a == b)
    }
}

impl Eq for Gf2Basis {}

impl fmt::Debug for Gf2Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf2Basis")
            .field("dim", &self.dim)
            .field("rows", &self.rows().map(|(_, r)| r).collect::<Vec<_>>())
            .finish()
    }
}

/// Basis of `{x : <x, v> = 0 for every input v}`.
pub fn orthogonal_complement(vectors: &[BitVec], dim: usize) -> Result<Gf2Basis> {
    Ok(Gf2Basis::from_vectors(dim, vectors)?.null_space())
}
