//! Carlet's generalized Gray map φ: Z_{2^s} → Z_2^{2^{s-1}} and its
//! coordinatewise extension Φ.
//!
//! With `Y` the `(s-1) × 2^{s-1}` matrix whose column `j` is the binary
//! expansion of `j` (least significant bit in the first row),
//! `φ(u) = (u_{s-1}, …, u_{s-1}) + (u_0, …, u_{s-2}) Y`. Bit `j` of `φ(u)` is
//! therefore `u_{s-1} XOR parity(low(u) AND j)` where `low(u) = u mod 2^{s-1}`,
//! which is what the word-level code below evaluates.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::ring::{check_exponent, RingScalar, RingVector};

/// `PARITY_PATTERNS[m]` has bit `t` set iff `parity(m & t) == 1`, for `t < 64`.
const PARITY_PATTERNS: [u64; 64] = {
    let mut table = [0u64; 64];
    let mut m: usize = 0;
    while m < 64 {
        let mut word = 0u64;
        let mut t: usize = 0;
        while t < 64 {
            if (m & t).count_ones() & 1 == 1 {
                word |= 1 << t;
            }
            t += 1;
        }
        table[m] = word;
        m += 1;
    }
    table
};

/// Number of binary coordinates each ring coordinate expands to.
#[inline]
pub fn block_len(s: u32) -> usize {
    1usize << (s - 1)
}

/// The matrix `Y` with its rows as bit vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayMatrix {
    s: u32,
    rows: Vec<BitVector>,
}

impl GrayMatrix {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn columns(&self) -> usize {
        block_len(self.s)
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.rows.iter().map(|r| r.get(j) as u8).collect()
    }
}

pub fn gray_matrix(s: u32) -> Result<GrayMatrix> {
    check_exponent(s)?;
    let cols = block_len(s);
    let rows = (0..s - 1)
        .map(|i| {
            let mut row = BitVector::zeros(cols);
            for j in 0..cols {
                row.set(j, (j >> i) & 1 == 1);
            }
            row
        })
        .collect();
    Ok(GrayMatrix { s, rows })
}

/// Writes `φ(u)` for block `index` into a word buffer holding consecutive
/// blocks of `2^{s-1}` bits.
#[inline]
pub(crate) fn write_block(words: &mut [u64], index: usize, u: u32, s: u32) {
    let low = u & ((1u32 << (s - 1)) - 1);
    let constant = if (u >> (s - 1)) & 1 == 1 { !0u64 } else { 0 };
    let b = block_len(s);
    if b < 64 {
        let pattern = (PARITY_PATTERNS[low as usize] ^ constant) & ((1u64 << b) - 1);
        let bit = index * b;
        words[bit / 64] |= pattern << (bit % 64);
    } else {
        let per_block = b / 64;
        let base = PARITY_PATTERNS[(low & 63) as usize] ^ constant;
        let high = low >> 6;
        let start = index * per_block;
        for (w, slot) in words[start..start + per_block].iter_mut().enumerate() {
            // columns 64w..64w+63 share the high part of j, which is w
            let flip = if (high & w as u32).count_ones() & 1 == 1 {
                !0u64
            } else {
                0
            };
            *slot = base ^ flip;
        }
    }
}

pub fn phi(u: RingScalar) -> BitVector {
    let s = u.s();
    let b = block_len(s);
    let mut words = vec![0u64; b.div_ceil(64)];
    write_block(&mut words, 0, u.value(), s);
    BitVector::from_words(words, b)
}

/// Word buffer of `Φ(coords)` without constructing a `RingVector`.
pub(crate) fn phi_words(coords: &[u32], s: u32) -> Vec<u64> {
    let bits = coords.len() * block_len(s);
    let mut words = vec![0u64; bits.div_ceil(64)];
    for (i, &c) in coords.iter().enumerate() {
        write_block(&mut words, i, c, s);
    }
    words
}

pub fn phi_vector(v: &RingVector) -> BitVector {
    let s = v.s();
    BitVector::from_words(phi_words(v.coords(), s), v.len() * block_len(s))
}

fn decode_block(bits: &BitVector, offset: usize, s: u32) -> u32 {
    let top = bits.get(offset) as u32;
    let mut u = top << (s - 1);
    for i in 0..s - 1 {
        u |= ((bits.get(offset + (1 << i)) as u32) ^ top) << i;
    }
    u
}

pub fn phi_inverse(bits: &BitVector, s: u32) -> Result<RingScalar> {
    check_exponent(s)?;
    let b = block_len(s);
    if bits.len() != b {
        return Err(Error::LengthMismatch {
            left: b,
            right: bits.len(),
        });
    }
    let u = RingScalar::new(decode_block(bits, 0, s), s)?;
    if phi(u) != *bits {
        return Err(Error::NotInImage);
    }
    Ok(u)
}

pub fn phi_inverse_vector(bits: &BitVector, s: u32) -> Result<RingVector> {
    check_exponent(s)?;
    let b = block_len(s);
    if bits.is_empty() || !bits.len().is_multiple_of(b) {
        return Err(Error::LengthMismatch {
            left: bits.len().div_ceil(b).max(1) * b,
            right: bits.len(),
        });
    }
    let coords = (0..bits.len() / b)
        .map(|j| decode_block(bits, j * b, s))
        .collect();
    let v = RingVector::new(coords, s)?;
    if phi_vector(&v) != *bits {
        return Err(Error::NotInImage);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(v: u32, s: u32) -> RingScalar {
        RingScalar::new(v, s).unwrap()
    }

    fn bits(text: &str) -> BitVector {
        BitVector::parse(text).unwrap()
    }

    /// Direct evaluation of `u_{s-1}·1 + (u_0..u_{s-2}) Y` over GF(2).
    fn phi_by_matrix(u: u32, s: u32) -> BitVector {
        let y = gray_matrix(s).unwrap();
        let expansion = sc(u, s).binary_expansion();
        let mut out = BitVector::zeros(block_len(s));
        for j in 0..block_len(s) {
            let col = y.column(j);
            let dot: u8 = col.iter().zip(&expansion).map(|(a, b)| a & b).sum::<u8>() & 1;
            out.set(j, (dot ^ expansion[s as usize - 1]) == 1);
        }
        out
    }

    #[test]
    fn gray_matrix_examples() {
        let y2 = gray_matrix(2).unwrap();
        assert_eq!(y2.rows(), &[bits("01")]);
        assert_eq!(y2.columns(), 2);
        let y3 = gray_matrix(3).unwrap();
        assert_eq!(y3.rows(), &[bits("0101"), bits("0011")]);
        assert!(gray_matrix(1).unwrap().rows().is_empty());
        assert!(gray_matrix(0).is_err());
    }

    #[test]
    fn gray_matrix_columns_enumerate_all_binary_tuples() {
        for s in 2..=7 {
            let y = gray_matrix(s).unwrap();
            let cols: std::collections::BTreeSet<Vec<u8>> =
                (0..y.columns()).map(|j| y.column(j)).collect();
            assert_eq!(cols.len(), block_len(s));
        }
    }

    #[test]
    fn quaternary_table() {
        let expect = ["00", "01", "11", "10"];
        for (u, e) in expect.iter().enumerate() {
            assert_eq!(phi(sc(u as u32, 2)), bits(e));
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(sc(1, 3)), bits("0101"));
        for s in 1..=10 {
            assert_eq!(phi(sc(1 << (s - 1), s)), BitVector::ones(block_len(s)));
            assert!(phi(sc(0, s)).is_zero());
        }
    }

    #[test]
    fn word_level_map_matches_matrix_definition() {
        for s in 1..=9 {
            for u in 0..(1u32 << s) {
                assert_eq!(phi(sc(u, s)), phi_by_matrix(u, s), "s={s} u={u}");
            }
        }
        // spot-check the multi-word path at larger s
        for s in [10u32, 12] {
            for u in [1u32, 77, 513, (1 << (s - 1)) + 5, (1 << s) - 1] {
                assert_eq!(phi(sc(u, s)), phi_by_matrix(u, s), "s={s} u={u}");
            }
        }
    }

    #[test]
    fn phi_vector_examples() {
        let v = RingVector::new(vec![0, 1, 2, 3], 2).unwrap();
        assert_eq!(phi_vector(&v), bits("00011110"));
        assert!(phi_vector(&RingVector::zero(5, 3).unwrap()).is_zero());
        let v = RingVector::new(vec![2, 2], 2).unwrap();
        assert_eq!(phi_vector(&v), bits("1111"));
    }

    #[test]
    fn phi_vector_is_blockwise_concatenation() {
        for s in [1u32, 3, 7, 8] {
            let coords: Vec<u32> = (0..9).map(|i| (i * 37 + 5) % (1 << s)).collect();
            let v = RingVector::new(coords.clone(), s).unwrap();
            let image = phi_vector(&v);
            let b = block_len(s);
            for (j, &c) in coords.iter().enumerate() {
                let block = phi(sc(c, s));
                for t in 0..b {
                    assert_eq!(image.get(j * b + t), block.get(t));
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(phi_inverse(&bits("10"), 2).unwrap().value(), 3);
        for s in 1..=6 {
            assert_eq!(
                phi_inverse(&BitVector::zeros(block_len(s)), s)
                    .unwrap()
                    .value(),
                0
            );
        }
        assert_eq!(phi_inverse(&bits("0100"), 3), Err(Error::NotInImage));
        assert!(phi_inverse(&bits("010"), 3).is_err());
    }

    #[test]
    fn inverse_round_trips_and_image_count() {
        for s in 1..=8 {
            let mut images = std::collections::BTreeSet::new();
            for u in 0..(1u32 << s) {
                let img = phi(sc(u, s));
                assert_eq!(phi_inverse(&img, s).unwrap().value(), u);
                images.insert(img);
            }
            assert_eq!(images.len(), 1 << s);
        }
        // every non-image of length 4 is rejected (s = 3 has 8 images of 16 words)
        let mut rejected = 0;
        for w in 0u8..16 {
            let b =
                BitVector::from_bits(&[(w & 1), (w >> 1) & 1, (w >> 2) & 1, (w >> 3) & 1]).unwrap();
            if phi_inverse(&b, 3).is_err() {
                rejected += 1;
            }
        }
        assert_eq!(rejected, 8);
    }

    #[test]
    fn vector_inverse() {
        let v = RingVector::new(vec![3, 0, 5, 7, 4], 3).unwrap();
        assert_eq!(phi_inverse_vector(&phi_vector(&v), 3).unwrap(), v);
        assert_eq!(
            phi_inverse_vector(&bits("01000000"), 3),
            Err(Error::NotInImage)
        );
        assert!(phi_inverse_vector(&bits("010"), 3).is_err());
    }
}
