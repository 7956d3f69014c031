//! Invariants of Z_{2^s}-linear codes: Gray images, kernels by two
//! independent routes, rank, distances, and aggregated reports.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::binary::{self, BinaryCode, WorkMeter, PAIR_CHUNK};
use crate::bits::{BitVector, Gf2Basis};
use crate::code::{AdditiveCode, Budget, CodeType};
use crate::constructions::FamilySpec;
use crate::error::{Error, Result};
use crate::gray::{block_len, phi_vector, phi_words};
use crate::ring::{mask, RingVector};

/// Codewords per parallel enumeration chunk.
const CHUNK: u64 = 1 << 10;

fn chunks(total: u64) -> Vec<(u64, u64)> {
    (0..total.div_ceil(CHUNK))
        .map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(total)))
        .collect()
}

pub fn binary_length(c: &AdditiveCode) -> usize {
    c.n() * block_len(c.s())
}

fn check_image_bits(c: &AdditiveCode, budget: &Budget) -> Result<u64> {
    let size = c.size(budget)?;
    let bits = size as u128 * binary_length(c) as u128;
    if bits > budget.max_image_bits as u128 {
        return Err(Error::BudgetExceeded {
            what: "image bits",
            needed: bits,
            limit: budget.max_image_bits as u128,
        });
    }
    Ok(size)
}

/// `Φ(C)`, in the code's enumeration order.
pub fn gray_image(c: &AdditiveCode, budget: &Budget) -> Result<BinaryCode> {
    let size = check_image_bits(c, budget)?;
    let len = binary_length(c);
    let s = c.s();
    let parts: Vec<Vec<BitVector>> = chunks(size)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut out = Vec::with_capacity((hi - lo) as usize);
            c.enumerate_range(lo, hi, budget)
                .expect("range within code size")
                .for_each_raw(|w| out.push(BitVector::from_words(phi_words(w, s), len)));
            out
        })
        .collect();
    Ok(BinaryCode::new_unchecked(
        len,
        parts.into_iter().flatten().collect(),
    ))
}

/// Rank of `Φ(C)` streamed straight from the enumeration, without
/// materializing the image.
pub fn image_rank(c: &AdditiveCode, budget: &Budget) -> Result<usize> {
    let size = c.size(budget)?;
    if size > budget.max_rank_rows {
        return Err(Error::BudgetExceeded {
            what: "rank rows",
            needed: size as u128,
            limit: budget.max_rank_rows as u128,
        });
    }
    let len = binary_length(c);
    let s = c.s();
    let partial: Vec<Gf2Basis> = chunks(size)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut basis = Gf2Basis::new(len);
            c.enumerate_range(lo, hi, budget)
                .expect("range within code size")
                .try_for_each_raw(|w| {
                    basis.insert_words(phi_words(w, s));
                    !basis.is_full()
                });
            basis
        })
        .collect();
    let mut basis = Gf2Basis::new(len);
    for b in partial {
        basis.absorb(b);
    }
    Ok(basis.rank())
}

/// Hamming weight distribution of `Φ(C)`, streamed.
pub fn image_weight_distribution(
    c: &AdditiveCode,
    budget: &Budget,
) -> Result<BTreeMap<usize, u64>> {
    let size = c.size(budget)?;
    let s = c.s();
    let parts: Vec<BTreeMap<usize, u64>> = chunks(size)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut dist = BTreeMap::new();
            c.enumerate_range(lo, hi, budget)
                .expect("range within code size")
                .for_each_raw(|w| {
                    let weight: usize = phi_words(w, s)
                        .iter()
                        .map(|x| x.count_ones() as usize)
                        .sum();
                    *dist.entry(weight).or_insert(0) += 1;
                });
            dist
        })
        .collect();
    let mut dist = BTreeMap::new();
    for part in parts {
        for (w, count) in part {
            *dist.entry(w).or_insert(0) += count;
        }
    }
    Ok(dist)
}

/// Minimum distance of `Φ(C)` as its minimum nonzero weight. The Gray map
/// satisfies `d_H(Φ(u), Φ(v)) = wt_H(Φ(u - v))`, so for an additive code this
/// equals the pairwise minimum.
pub fn image_min_distance(c: &AdditiveCode, budget: &Budget) -> Result<Option<usize>> {
    let dist = image_weight_distribution(c, budget)?;
    Ok(dist.keys().copied().find(|&w| w > 0))
}

/// Codewords `u ∈ C` whose images lie in `K(Φ(C))`, found through the
/// criterion `2 (u ⊙ v) ∈ C` for all `v ∈ C`.
///
/// The set is a union of cosets of the torsion subcode but need not be closed
/// under ring addition, so it is kept as an explicit list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveKernel {
    s: u32,
    n: usize,
    members: Vec<RingVector>,
}

impl AdditiveKernel {
    pub fn members(&self) -> &[RingVector] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `log2` of the size; the image is a linear code so the size is a power
    /// of two.
    pub fn dimension(&self) -> usize {
        self.members.len().trailing_zeros() as usize
    }

    pub fn gray_image(&self) -> BinaryCode {
        let len = self.n * block_len(self.s);
        BinaryCode::new_unchecked(len, self.members.iter().map(phi_vector).collect())
    }

    pub fn contains(&self, v: &RingVector) -> bool {
        self.members.contains(v)
    }
}

/// True iff `2 (u ⊙ v) ∈ C` for every `v ∈ C`, scanning `v` in enumeration
/// order with early exit.
fn passes_kernel_test(c: &AdditiveCode, u: &[u32], budget: &Budget, meter: &WorkMeter) -> bool {
    let m = mask(c.s());
    let mut scratch = vec![0u32; u.len()];
    let mut count = 0u64;
    c.enumerate(budget)
        .expect("size checked by caller")
        .try_for_each_raw(|v| {
            count += 1;
            if count.is_multiple_of(PAIR_CHUNK) && !meter.charge(PAIR_CHUNK) {
                return false;
            }
            for ((w, &a), &b) in scratch.iter_mut().zip(u).zip(v) {
                *w = ((a & b) << 1) & m;
            }
            c.contains_raw(&mut scratch)
        })
}

pub fn kernel_additive(c: &AdditiveCode, budget: &Budget) -> Result<AdditiveKernel> {
    c.size(budget)?;
    let torsion = c.torsion_subcode();
    let torsion_words: Vec<Vec<u32>> = torsion
        .enumerate(budget)?
        .map(|v| v.coords().to_vec())
        .collect();
    let reps = c.torsion_coset_representatives();
    let meter = WorkMeter::new(budget.max_pair_work, "kernel pairs");

    let passing: Vec<Vec<u32>> = (0..reps.total())
        .into_par_iter()
        .filter_map(|i| {
            let u = reps.get(i);
            // the torsion coset itself always qualifies
            if u.iter().all(|&x| x == 0) || passes_kernel_test(c, &u, budget, &meter) {
                Some(u)
            } else {
                None
            }
        })
        .collect();
    meter.finish()?;

    let m = mask(c.s());
    let mut members = Vec::with_capacity(passing.len() * torsion_words.len());
    for rep in &passing {
        for t in &torsion_words {
            let coords = rep
                .iter()
                .zip(t)
                .map(|(a, b)| a.wrapping_add(*b) & m)
                .collect();
            members.push(RingVector::from_raw(coords, c.s()));
        }
    }
    Ok(AdditiveKernel {
        s: c.s(),
        n: c.n(),
        members,
    })
}

/// The binary span of `Φ(H_b)` and `Φ(Σ_{i=0}^{s-2} 2^i · 1)` for the
/// Hadamard code `H^{k,0,…,0}`: the kernel predicted for it, to be compared
/// against a computed kernel.
pub fn hadamard_kernel_expected(s: u32, k: usize, budget: &Budget) -> Result<BinaryCode> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "expected Hadamard kernel needs k >= 2".into(),
        ));
    }
    let h = FamilySpec::hadamard_k(s, k).code()?;
    let len = binary_length(&h);
    let mut generators: Vec<BitVector> = h
        .torsion_subcode()
        .enumerate(budget)?
        .map(|v| phi_vector(&v))
        .collect();
    let constant: u32 = (0..s.saturating_sub(1)).map(|i| 1u32 << i).sum();
    generators.push(phi_vector(&RingVector::constant(constant, h.n(), s)?));
    BinaryCode::span(len, &generators)
}

/// All computed invariants of one code instance. Fields that could not be
/// computed within budget are `None` and `skipped` says why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub family: String,
    pub s: u32,
    pub k: Option<u32>,
    pub u: Option<u32>,
    pub n: usize,
    pub binary_length: usize,
    /// `|C|`.
    pub size: u128,
    /// Serialized as `(n;t_1,…,t_s)`.
    #[serde(rename = "type", serialize_with = "serialize_display")]
    pub ctype: CodeType,
    pub ker: Option<usize>,
    pub rank: Option<usize>,
    pub min_dist: Option<usize>,
    /// `(weight, count)` pairs in increasing weight order.
    pub weights: Option<Vec<(usize, u64)>>,
    pub linear: Option<bool>,
    /// Both kernel routes produced the same set.
    pub kernels_agree: Option<bool>,
    pub skipped: Option<String>,
}

fn serialize_display<S: Serializer>(
    value: &CodeType,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

impl InvariantReport {
    pub fn is_complete(&self) -> bool {
        self.skipped.is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Fills every field, cross-checking the kernel through both the binary
/// definition and the additive criterion.
pub fn invariant_report(spec: &FamilySpec, budget: &Budget) -> Result<InvariantReport> {
    code_report(spec.family.name(), spec.k, spec.u, &spec.code()?, budget)
}

/// As [`invariant_report`] for an arbitrary code, labelled `family`.
pub fn code_report(
    family: &str,
    k: Option<u32>,
    u: Option<u32>,
    code: &AdditiveCode,
    budget: &Budget,
) -> Result<InvariantReport> {
    let mut report = InvariantReport {
        family: family.to_string(),
        s: code.s(),
        k,
        u,
        n: code.n(),
        binary_length: binary_length(code),
        size: 1u128.checked_shl(code.log2_size()).unwrap_or(u128::MAX),
        ctype: code.code_type().clone(),
        ker: None,
        rank: None,
        min_dist: None,
        weights: None,
        linear: None,
        kernels_agree: None,
        skipped: None,
    };
    if let Err(e) = fill_report(code, budget, &mut report) {
        match e {
            Error::BudgetExceeded { .. } => report.skipped = Some(e.to_string()),
            other => return Err(other),
        }
    }
    Ok(report)
}

fn fill_report(code: &AdditiveCode, budget: &Budget, report: &mut InvariantReport) -> Result<()> {
    let weights = image_weight_distribution(code, budget)?;
    report.min_dist = weights.keys().copied().find(|&w| w > 0);
    report.weights = Some(weights.into_iter().collect());

    let rank = image_rank(code, budget)?;
    report.rank = Some(rank);
    report.linear = Some(rank == code.log2_size() as usize);

    let image = gray_image(code, budget)?;
    let by_definition = binary::kernel_binary(&image, budget)?;
    drop(image);
    let by_criterion = kernel_additive(code, budget)?;
    let agree = by_criterion.gray_image().same_set(&by_definition);
    report.kernels_agree = Some(agree);
    report.ker = Some(binary::kernel_dimension(&by_definition)?);
    Ok(())
}
