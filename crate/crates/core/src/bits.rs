//! Bit-packed binary vectors and streaming GF(2) elimination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A binary word packed little-endian into `u64`s: bit `i` lives in word
/// `i / 64` at position `i % 64`. Bits past `len` are always zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![!0; word_count(len)],
        };
        v.clear_tail();
        v
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => v.set(i, true),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "bit value {other} at position {i}"
                    )))
                }
            }
        }
        Ok(v)
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<Self> {
        let bits: Vec<u8> = text
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidParameter(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::from_bits(&bits)
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert_eq!(words.len(), word_count(len));
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let m = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(Self {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    pub fn xor_assign(&mut self, other: &Self) -> Result<()> {
        self.check_len(other)?;
        xor_into(&mut self.words, &other.words);
        Ok(())
    }

    pub fn distance(&self, other: &Self) -> Result<usize> {
        self.check_len(other)?;
        Ok(xor_weight(&self.words, &other.words))
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub fn hamming_weight(x: &BitVector) -> usize {
    x.weight()
}

pub fn hamming_distance(x: &BitVector, y: &BitVector) -> Result<usize> {
    x.distance(y)
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

#[inline]
pub(crate) fn xor_weight(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x ^ y).count_ones() as usize)
        .sum()
}

/// Incremental GF(2) row reduction.
///
/// Every stored row is reduced against all earlier rows and keyed by its
/// lowest set bit, so reducing a new row in insertion order clears each pivot
/// exactly once and only touches words from the pivot word onward.
#[derive(Debug, Clone)]
pub struct Gf2Basis {
    len: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Gf2Basis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }

    fn reduce_words(&self, row: &mut [u64]) {
        for (basis_row, &p) in self.rows.iter().zip(&self.pivots) {
            let w = p / 64;
            if (row[w] >> (p % 64)) & 1 == 1 {
                xor_into(&mut row[w..], &basis_row[w..]);
            }
        }
    }

    /// Inserts a row; returns true if it increased the rank.
    pub fn insert_words(&mut self, mut row: Vec<u64>) -> bool {
        debug_assert_eq!(row.len(), word_count(self.len));
        self.reduce_words(&mut row);
        match row.iter().position(|&w| w != 0) {
            Some(w) => {
                self.pivots.push(w * 64 + row[w].trailing_zeros() as usize);
                self.rows.push(row);
                true
            }
            None => false,
        }
    }

    pub fn insert(&mut self, v: &BitVector) -> Result<bool> {
        if v.len() != self.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: v.len(),
            });
        }
        Ok(self.insert_words(v.words().to_vec()))
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        if v.len() != self.len {
            return false;
        }
        let mut row = v.words().to_vec();
        self.reduce_words(&mut row);
        row.iter().all(|&w| w == 0)
    }

    /// Merges another basis of the same length into this one.
    pub fn absorb(&mut self, other: Gf2Basis) {
        for row in other.rows {
            if self.is_full() {
                break;
            }
            self.insert_words(row);
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = BitVector> + '_ {
        self.rows
            .iter()
            .map(|r| BitVector::from_words(r.clone(), self.len))
    }
}

/// GF(2) rank of a set of equal-length words.
pub fn rank_of<'a>(len: usize, words: impl IntoIterator<Item = &'a BitVector>) -> usize {
    let mut basis = Gf2Basis::new(len);
    for w in words {
        if basis.is_full() {
            break;
        }
        basis.insert_words(w.words().to_vec());
    }
    basis.rank()
}
