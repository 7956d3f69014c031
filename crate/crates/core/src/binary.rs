//! Binary codes as explicit word sets, and their structural invariants.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::bits::{xor_weight, BitVector, Gf2Basis};
use crate::code::Budget;
use crate::error::{Error, Result};

/// A nonempty set of equal-length binary words in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryCode {
    len: usize,
    words: Vec<BitVector>,
}

impl BinaryCode {
    pub fn new(len: usize, words: Vec<BitVector>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidParameter(
                "a binary code needs at least one word".into(),
            ));
        }
        if let Some(w) = words.iter().find(|w| w.len() != len) {
            return Err(Error::LengthMismatch {
                left: len,
                right: w.len(),
            });
        }
        let mut seen = FxHashSet::default();
        for w in &words {
            if !seen.insert(w.words()) {
                return Err(Error::InvalidParameter(format!("duplicate codeword {w}")));
            }
        }
        Ok(Self { len, words })
    }

    pub(crate) fn new_unchecked(len: usize, words: Vec<BitVector>) -> Self {
        Self { len, words }
    }

    /// Bit length of the words.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Number of codewords.
    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[BitVector] {
        &self.words
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        self.words.contains(x)
    }

    pub fn contains_zero(&self) -> bool {
        self.words.iter().any(BitVector::is_zero)
    }

    /// Same words, ignoring order.
    pub fn same_set(&self, other: &BinaryCode) -> bool {
        if self.len != other.len || self.size() != other.size() {
            return false;
        }
        let mine: FxHashSet<&[u64]> = self.words.iter().map(BitVector::words).collect();
        other.words.iter().all(|w| mine.contains(w.words()))
    }

    pub fn is_subset_of(&self, other: &BinaryCode) -> bool {
        if self.len != other.len {
            return false;
        }
        let theirs: FxHashSet<&[u64]> = other.words.iter().map(BitVector::words).collect();
        self.words.iter().all(|w| theirs.contains(w.words()))
    }

    /// The linear code spanned by `generators`.
    pub fn span(len: usize, generators: &[BitVector]) -> Result<Self> {
        let mut basis = Gf2Basis::new(len);
        for g in generators {
            basis.insert(g)?;
        }
        let rows: Vec<BitVector> = basis.rows().collect();
        if rows.len() > 30 {
            return Err(Error::BudgetExceeded {
                what: "span words",
                needed: 1u128 << rows.len(),
                limit: 1 << 30,
            });
        }
        let mut words = vec![BitVector::zeros(len)];
        for r in &rows {
            let shifted: Vec<BitVector> = words
                .iter()
                .map(|w| w.xor(r).expect("equal lengths"))
                .collect();
            words.extend(shifted);
        }
        Ok(Self { len, words })
    }
}

fn log2_exact(m: usize) -> Option<usize> {
    m.is_power_of_two().then(|| m.trailing_zeros() as usize)
}

pub(crate) struct WorkMeter {
    used: AtomicU64,
    exceeded: AtomicBool,
    limit: u64,
    what: &'static str,
}

impl WorkMeter {
    pub(crate) fn new(limit: u64, what: &'static str) -> Self {
        Self {
            used: AtomicU64::new(0),
            exceeded: AtomicBool::new(false),
            limit,
            what,
        }
    }

    /// Charges `units`; returns false once the limit is crossed.
    pub(crate) fn charge(&self, units: u64) -> bool {
        let total = self.used.fetch_add(units, Ordering::Relaxed) + units;
        if total > self.limit {
            self.exceeded.store(true, Ordering::Relaxed);
            return false;
        }
        !self.exceeded.load(Ordering::Relaxed)
    }

    pub(crate) fn finish(&self) -> Result<()> {
        if self.exceeded.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded {
                what: self.what,
                needed: self.used.load(Ordering::Relaxed) as u128,
                limit: self.limit as u128,
            });
        }
        Ok(())
    }
}

pub(crate) const PAIR_CHUNK: u64 = 256;

/// `K(C) = {x : x + C = C}`.
///
/// Any kernel element `x` satisfies `x + c_0 ∈ C` for a fixed `c_0 ∈ C`, so
/// the candidates are `c_0 + C` (just `C` when the zero word is present).
/// Each candidate is tested against every codeword with early exit.
pub fn kernel_binary(c: &BinaryCode, budget: &Budget) -> Result<BinaryCode> {
    let base = c
        .words
        .iter()
        .find(|w| w.is_zero())
        .unwrap_or(&c.words[0])
        .clone();
    let index: FxHashSet<&[u64]> = c.words.iter().map(BitVector::words).collect();
    let meter = WorkMeter::new(budget.max_pair_work, "kernel pairs");
    let nwords = base.words().len();

    let kernel: Vec<BitVector> = c
        .words
        .par_iter()
        .map_init(
            || vec![0u64; nwords],
            |scratch, w| {
                let candidate: Vec<u64> = w
                    .words()
                    .iter()
                    .zip(base.words())
                    .map(|(a, b)| a ^ b)
                    .collect();
                for (i, v) in c.words.iter().enumerate() {
                    if (i as u64).is_multiple_of(PAIR_CHUNK) && !meter.charge(PAIR_CHUNK) {
                        return None;
                    }
                    for ((s, a), b) in scratch.iter_mut().zip(&candidate).zip(v.words()) {
                        *s = a ^ b;
                    }
                    if !index.contains(scratch.as_slice()) {
                        return None;
                    }
                }
                Some(BitVector::from_words(candidate, c.len))
            },
        )
        .flatten()
        .collect();
    meter.finish()?;
    Ok(BinaryCode::new_unchecked(c.len, kernel))
}

/// `log2 |K|` for a linear code `K`.
pub fn kernel_dimension(k: &BinaryCode) -> Result<usize> {
    if !is_linear(k, &Budget::default())? {
        return Err(Error::NotLinear);
    }
    Ok(log2_exact(k.size()).expect("linear codes have power-of-two size"))
}

/// Dimension of the linear span, by parallel elimination over chunks whose
/// partial bases are merged in chunk order.
pub fn rank_binary(c: &BinaryCode, budget: &Budget) -> Result<usize> {
    if c.size() as u64 > budget.max_rank_rows {
        return Err(Error::BudgetExceeded {
            what: "rank rows",
            needed: c.size() as u128,
            limit: budget.max_rank_rows as u128,
        });
    }
    let len = c.len;
    let partial: Vec<Gf2Basis> = c
        .words
        .par_chunks(1024)
        .map(|chunk| {
            let mut b = Gf2Basis::new(len);
            for w in chunk {
                if b.is_full() {
                    break;
                }
                b.insert_words(w.words().to_vec());
            }
            b
        })
        .collect();
    let mut basis = Gf2Basis::new(len);
    for b in partial {
        basis.absorb(b);
    }
    Ok(basis.rank())
}

/// True iff the code is closed under XOR.
pub fn is_linear(c: &BinaryCode, budget: &Budget) -> Result<bool> {
    Ok(match log2_exact(c.size()) {
        Some(dim) => c.contains_zero() && rank_binary(c, budget)? == dim,
        None => false,
    })
}

/// Minimum pairwise Hamming distance by a full pair scan.
pub fn min_hamming_distance(c: &BinaryCode, budget: &Budget) -> Result<usize> {
    let m = c.size() as u64;
    if m < 2 {
        return Err(Error::InvalidParameter(
            "minimum distance needs at least two codewords".into(),
        ));
    }
    let pairs = m * (m - 1) / 2;
    if pairs > budget.max_pair_work {
        return Err(Error::BudgetExceeded {
            what: "distance pairs",
            needed: pairs as u128,
            limit: budget.max_pair_work as u128,
        });
    }
    let words = &c.words;
    Ok((0..words.len())
        .into_par_iter()
        .map(|i| {
            words[i + 1..]
                .iter()
                .map(|w| xor_weight(words[i].words(), w.words()))
                .min()
                .unwrap_or(usize::MAX)
        })
        .min()
        .expect("at least two words"))
}

/// Weight → number of codewords of that weight.
pub fn weight_distribution(c: &BinaryCode) -> BTreeMap<usize, u64> {
    let mut dist = BTreeMap::new();
    for w in &c.words {
        *dist.entry(w.weight()).or_insert(0) += 1;
    }
    dist
}

/// Length `n`, `2n` codewords, minimum distance `n/2`.
pub fn is_hadamard(c: &BinaryCode, budget: &Budget) -> Result<bool> {
    if c.size() != 2 * c.len() || !c.len().is_multiple_of(2) {
        return Ok(false);
    }
    Ok(min_hamming_distance(c, budget)? == c.len() / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(words: &[&str]) -> BinaryCode {
        let words: Vec<BitVector> = words.iter().map(|w| BitVector::parse(w).unwrap()).collect();
        BinaryCode::new(words[0].len(), words).unwrap()
    }

    /// Kernel by its definition over all of Z_2^n.
    fn kernel_by_definition(c: &BinaryCode) -> Vec<BitVector> {
        let n = c.len();
        let mut out = Vec::new();
        for x in 0u32..(1 << n) {
            let bits: Vec<u8> = (0..n).map(|i| ((x >> i) & 1) as u8).collect();
            let x = BitVector::from_bits(&bits).unwrap();
            if c.words().iter().all(|w| c.contains(&w.xor(&x).unwrap())) {
                out.push(x);
            }
        }
        out
    }

    #[test]
    fn construction_checks() {
        assert!(BinaryCode::new(2, vec![]).is_err());
        let dup = vec![
            BitVector::parse("01").unwrap(),
            BitVector::parse("01").unwrap(),
        ];
        assert!(BinaryCode::new(2, dup).is_err());
        assert!(BinaryCode::new(3, vec![BitVector::parse("01").unwrap()]).is_err());
    }

    #[test]
    fn linear_code_is_its_own_kernel() {
        let c = code(&["0000", "1100", "0011", "1111"]);
        let k = kernel_binary(&c, &Budget::default()).unwrap();
        assert!(k.same_set(&c));
        assert_eq!(kernel_dimension(&k).unwrap(), 2);
        assert_eq!(rank_binary(&c, &Budget::default()).unwrap(), 2);
        assert!(is_linear(&c, &Budget::default()).unwrap());
    }

    #[test]
    fn singleton_zero_kernel() {
        let c = code(&["000"]);
        let k = kernel_binary(&c, &Budget::default()).unwrap();
        assert_eq!(k.words(), &[BitVector::zeros(3)]);
        assert_eq!(kernel_dimension(&k).unwrap(), 0);
    }

    #[test]
    fn kernel_matches_definition_on_small_codes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for trial in 0..60 {
            let n = rng.gen_range(2..=7);
            let m = rng.gen_range(1..=(1usize << n).min(12));
            let mut set = std::collections::BTreeSet::new();
            if trial % 2 == 0 {
                set.insert(0u32);
            }
            while set.len() < m {
                set.insert(rng.gen_range(0..(1u32 << n)));
            }
            let words: Vec<BitVector> = set
                .iter()
                .map(|&x| {
                    BitVector::from_bits(&(0..n).map(|i| ((x >> i) & 1) as u8).collect::<Vec<_>>())
                        .unwrap()
                })
                .collect();
            let c = BinaryCode::new(n, words).unwrap();
            let fast = kernel_binary(&c, &Budget::default()).unwrap();
            let slow = BinaryCode::new(n, kernel_by_definition(&c)).unwrap();
            assert!(fast.same_set(&slow), "trial {trial}");
        }
    }

    #[test]
    fn kernel_dimension_rejects_nonlinear() {
        let c = code(&["000", "110", "011"]);
        assert_eq!(kernel_dimension(&c), Err(Error::NotLinear));
        assert!(!is_linear(&c, &Budget::default()).unwrap());
    }

    #[test]
    fn distances_and_weights() {
        let c = code(&["00", "11"]);
        assert_eq!(min_hamming_distance(&c, &Budget::default()).unwrap(), 2);
        assert!(min_hamming_distance(&code(&["01"]), &Budget::default()).is_err());
        let c = code(&["0000", "0111", "1110", "1001"]);
        let dist = weight_distribution(&c);
        assert_eq!(dist, BTreeMap::from([(0, 1), (2, 1), (3, 2)]));
    }

    #[test]
    fn hadamard_property() {
        // first-order Reed-Muller code of length 4
        let rm = code(&[
            "0000", "0101", "0011", "0110", "1111", "1010", "1100", "1001",
        ]);
        assert!(is_hadamard(&rm, &Budget::default()).unwrap());
        assert!(!is_hadamard(&code(&["00", "10"]), &Budget::default()).unwrap());
    }

    #[test]
    fn span_enumerates_subspace() {
        let gens: Vec<BitVector> = ["1100", "0110", "1010"]
            .iter()
            .map(|w| BitVector::parse(w).unwrap())
            .collect();
        let s = BinaryCode::span(4, &gens).unwrap();
        assert_eq!(s.size(), 4);
        assert!(is_linear(&s, &Budget::default()).unwrap());
    }

    #[test]
    fn kernel_budget_is_enforced() {
        let c = code(&["0000", "1100", "0011", "1111"]);
        let tight = Budget {
            max_pair_work: 1,
            ..Budget::default()
        };
        assert!(matches!(
            kernel_binary(&c, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
