//! Arithmetic in the chain ring Z_{2^s}.
//!
//! Residues are held in `u32` slots and the exponent `s` is limited to
//! [`MAX_S`]. A [`RingVector`] carries its exponent once for all coordinates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported exponent.
pub const MAX_S: u32 = 16;

pub(crate) fn check_exponent(s: u32) -> Result<()> {
    if s == 0 || s > MAX_S {
        return Err(Error::InvalidParameter(format!(
            "exponent s={s} outside 1..={MAX_S}"
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn mask(s: u32) -> u32 {
    (1u32 << s) - 1
}

/// 2-adic valuation of a nonzero residue, or `s` for zero.
#[inline]
pub fn valuation(x: u32, s: u32) -> u32 {
    if x == 0 {
        s
    } else {
        x.trailing_zeros().min(s)
    }
}

/// Multiplicative inverse of an odd residue modulo 2^s (Newton iteration).
#[inline]
pub fn inverse_unit(u: u32, s: u32) -> u32 {
    debug_assert!(u & 1 == 1);
    let mut x: u32 = 1;
    for _ in 0..5 {
        x = x.wrapping_mul(2u32.wrapping_sub(u.wrapping_mul(x)));
    }
    x & mask(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingScalar {
    value: u32,
    s: u32,
}

impl RingScalar {
    pub fn new(value: u32, s: u32) -> Result<Self> {
        check_exponent(s)?;
        if value > mask(s) {
            return Err(Error::InvalidParameter(format!(
                "residue {value} outside [0, 2^{s})"
            )));
        }
        Ok(Self { value, s })
    }

    /// Reduces an arbitrary integer modulo 2^s.
    pub fn reduce(value: i64, s: u32) -> Result<Self> {
        check_exponent(s)?;
        let m = 1i64 << s;
        Ok(Self {
            value: value.rem_euclid(m) as u32,
            s,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn s(self) -> u32 {
        self.s
    }

    /// Bits `[u_0, ..., u_{s-1}]`, least significant first.
    pub fn binary_expansion(self) -> Vec<u8> {
        (0..self.s).map(|i| ((self.value >> i) & 1) as u8).collect()
    }

    pub fn odot(self, other: Self) -> Result<Self> {
        same_modulus(self.s, other.s)?;
        Ok(Self {
            value: self.value & other.value,
            s: self.s,
        })
    }

    pub fn lee_weight(self) -> u32 {
        lee_weight(self.value, self.s)
    }

    pub fn order(self) -> u32 {
        order_of(self.value, self.s)
    }

    // fallible (the moduli may differ), so not the std operator traits
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Result<Self> {
        same_modulus(self.s, other.s)?;
        Ok(Self {
            value: self.value.wrapping_add(other.value) & mask(self.s),
            s: self.s,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Result<Self> {
        same_modulus(self.s, other.s)?;
        Ok(Self {
            value: self.value.wrapping_mul(other.value) & mask(self.s),
            s: self.s,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Self {
            value: self.value.wrapping_neg() & mask(self.s),
            s: self.s,
        }
    }
}

impl fmt::Display for RingScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn same_modulus(left: u32, right: u32) -> Result<()> {
    if left != right {
        return Err(Error::ModulusMismatch { left, right });
    }
    Ok(())
}

/// `min(u, 2^s - u)`.
#[inline]
pub fn lee_weight(u: u32, s: u32) -> u32 {
    let u = u & mask(s);
    u.min((1u32 << s) - u)
}

/// Smallest power of two `2^j` with `2^j * u == 0 (mod 2^s)`.
#[inline]
pub fn order_of(u: u32, s: u32) -> u32 {
    1u32 << (s - valuation(u & mask(s), s))
}

/// A vector over Z_{2^s}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingVector {
    s: u32,
    coords: Vec<u32>,
}

impl RingVector {
    pub fn new(coords: Vec<u32>, s: u32) -> Result<Self> {
        check_exponent(s)?;
        if coords.is_empty() {
            return Err(Error::InvalidParameter("vector length must be >= 1".into()));
        }
        if let Some(&bad) = coords.iter().find(|&&c| c > mask(s)) {
            return Err(Error::InvalidParameter(format!(
                "residue {bad} outside [0, 2^{s})"
            )));
        }
        Ok(Self { s, coords })
    }

    /// Builds a vector, reducing every coordinate modulo 2^s.
    pub fn from_reduced(coords: impl IntoIterator<Item = i64>, s: u32) -> Result<Self> {
        check_exponent(s)?;
        let m = 1i64 << s;
        let coords: Vec<u32> = coords.into_iter().map(|c| c.rem_euclid(m) as u32).collect();
        Self::new(coords, s)
    }

    pub(crate) fn from_raw(coords: Vec<u32>, s: u32) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|&c| c <= mask(s)));
        Self { s, coords }
    }

    pub fn zero(n: usize, s: u32) -> Result<Self> {
        Self::new(vec![0; n], s)
    }

    pub fn constant(value: u32, n: usize, s: u32) -> Result<Self> {
        Self::new(vec![value; n], s)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> RingScalar {
        RingScalar {
            value: self.coords[i],
            s: self.s,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        same_modulus(self.s, other.s)?;
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let m = mask(self.s);
        Ok(Self::from_raw(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.wrapping_add(*b) & m)
                .collect(),
            self.s,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let m = mask(self.s);
        Ok(Self::from_raw(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.wrapping_sub(*b) & m)
                .collect(),
            self.s,
        ))
    }

    pub fn neg(&self) -> Self {
        let m = mask(self.s);
        Self::from_raw(
            self.coords.iter().map(|a| a.wrapping_neg() & m).collect(),
            self.s,
        )
    }

    pub fn scale(&self, scalar: RingScalar) -> Result<Self> {
        same_modulus(self.s, scalar.s)?;
        Ok(self.scale_by(scalar.value))
    }

    pub(crate) fn scale_by(&self, lambda: u32) -> Self {
        let m = mask(self.s);
        Self::from_raw(
            self.coords
                .iter()
                .map(|a| a.wrapping_mul(lambda) & m)
                .collect(),
            self.s,
        )
    }

    /// Coordinatewise bitwise product of binary expansions.
    pub fn odot(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_raw(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a & b)
                .collect(),
            self.s,
        ))
    }

    pub fn lee_weight(&self) -> u64 {
        self.coords
            .iter()
            .map(|&c| lee_weight(c, self.s) as u64)
            .sum()
    }

    /// Order of the vector in the additive group: the maximum coordinate order.
    pub fn order(&self) -> u32 {
        self.coords
            .iter()
            .map(|&c| order_of(c, self.s))
            .max()
            .unwrap_or(1)
    }

    /// Minimal 2-adic valuation over all coordinates (`s` for the zero vector).
    pub fn valuation(&self) -> u32 {
        self.coords
            .iter()
            .map(|&c| valuation(c, self.s))
            .min()
            .unwrap_or(self.s)
    }
}

impl fmt::Display for RingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(v: u32, s: u32) -> RingScalar {
        RingScalar::new(v, s).unwrap()
    }

    fn vec(c: &[u32], s: u32) -> RingVector {
        RingVector::new(c.to_vec(), s).unwrap()
    }

    #[test]
    fn binary_expansion_examples() {
        assert_eq!(sc(6, 3).binary_expansion(), vec![0, 1, 1]);
        assert_eq!(sc(0, 4).binary_expansion(), vec![0, 0, 0, 0]);
        assert_eq!(sc(7, 4).binary_expansion(), vec![1, 1, 1, 0]);
    }

    #[test]
    fn binary_expansion_reconstructs_value() {
        for s in 1..=8 {
            for u in 0..(1u32 << s) {
                let bits = sc(u, s).binary_expansion();
                let back: u32 = bits.iter().enumerate().map(|(i, &b)| (b as u32) << i).sum();
                assert_eq!(back, u);
            }
        }
    }

    #[test]
    fn odot_examples() {
        assert_eq!(sc(1, 2).odot(sc(3, 2)).unwrap().value(), 1);
        assert_eq!(sc(3, 2).odot(sc(3, 2)).unwrap().value(), 3);
        for u in 0..8 {
            assert_eq!(sc(u, 3).odot(sc(0, 3)).unwrap().value(), 0);
        }
        assert_eq!(
            sc(1, 2).odot(sc(1, 3)),
            Err(Error::ModulusMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn carry_decomposition_of_addition() {
        // u + v = (u xor v) + 2 (u odot v) for all residues
        for s in 1..=6u32 {
            let m = 1u32 << s;
            for u in 0..m {
                for v in 0..m {
                    let odot = sc(u, s).odot(sc(v, s)).unwrap().value();
                    assert_eq!((u + v) % m, ((u ^ v) + 2 * odot) % m);
                }
            }
        }
    }

    #[test]
    fn odot_algebra() {
        for s in 1..=5u32 {
            let m = 1u32 << s;
            let half = m >> 1;
            for u in 0..m {
                assert_eq!(sc(u, s).odot(sc(u, s)).unwrap().value(), u);
                let h = sc(u, s).odot(sc(half, s)).unwrap().value();
                assert!(h == 0 || h == half);
                for v in 0..m {
                    let uv = sc(u, s).odot(sc(v, s)).unwrap();
                    assert_eq!(uv, sc(v, s).odot(sc(u, s)).unwrap());
                    for w in 0..m {
                        assert_eq!(
                            uv.odot(sc(w, s)).unwrap(),
                            sc(u, s).odot(sc(v, s).odot(sc(w, s)).unwrap()).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lee_weight_examples() {
        assert_eq!(sc(3, 2).lee_weight(), 1);
        for s in 1..=5 {
            assert_eq!(sc(0, s).lee_weight(), 0);
        }
        assert_eq!(vec(&[0, 1, 2, 3], 2).lee_weight(), 4);
        for s in 1..=6u32 {
            let m = 1u32 << s;
            for u in 1..m {
                assert_eq!(lee_weight(u, s), lee_weight(m - u, s));
            }
        }
    }

    #[test]
    fn vector_arithmetic() {
        let a = vec(&[0, 1, 2, 3], 2);
        let b = vec(&[1, 1, 1, 1], 2);
        assert_eq!(a.add(&b).unwrap(), vec(&[1, 2, 3, 0], 2));
        assert_eq!(a.scale(sc(2, 2)).unwrap(), vec(&[0, 2, 0, 2], 2));
        assert_eq!(vec(&[1, 3], 2).neg(), vec(&[3, 1], 2));
        assert_eq!(
            a.add(&vec(&[1, 1], 2)),
            Err(Error::LengthMismatch { left: 4, right: 2 })
        );
        assert_eq!(
            a.add(&vec(&[1, 1, 1, 1], 3)),
            Err(Error::ModulusMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn orders() {
        assert_eq!(sc(2, 2).order(), 2);
        assert_eq!(sc(0, 3).order(), 1);
        assert_eq!(vec(&[0, 2, 0, 2], 2).order(), 2);
        assert_eq!(vec(&[0, 1, 2, 3], 2).order(), 4);
        for s in 1..=8u32 {
            for i in 0..s {
                assert_eq!(sc(1 << i, s).order(), 1 << (s - i));
            }
        }
    }

    #[test]
    fn unit_inverse() {
        for s in 1..=16u32 {
            for u in (1..(1u32 << s.min(10))).step_by(2) {
                assert_eq!(u.wrapping_mul(inverse_unit(u, s)) & mask(s), 1);
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(RingScalar::new(4, 2).is_err());
        assert!(RingScalar::new(0, 0).is_err());
        assert!(RingScalar::new(0, 17).is_err());
        assert!(RingVector::new(vec![], 2).is_err());
        assert!(RingVector::new(vec![0, 8], 3).is_err());
        assert_eq!(RingScalar::reduce(-1, 3).unwrap().value(), 7);
    }
}
