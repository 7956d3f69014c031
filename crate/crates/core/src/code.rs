//! Z_{2^s}-additive codes given by generator matrices.
//!
//! The normal form used throughout is an echelon form over the chain ring
//! built with full pivoting: at every step the pivot is an entry of minimal
//! 2-adic valuation over the whole remaining submatrix (leftmost column, then
//! topmost row on ties), scaled to an exact power of two and cleared from all
//! remaining rows. Entries above a later pivot `2^v` are then reduced into
//! `[0, 2^v)`. Rows come out ordered by `(valuation, pivot column)`.
//!
//! Every row then has order exactly `2^{s-v}` and the code is the direct sum
//! of the cyclic groups the rows generate. The form is canonical: two
//! generator matrices span the same code iff their normal forms coincide.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{check_exponent, inverse_unit, mask, valuation, RingVector};

/// Limits on exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of codewords enumerated for one code.
    pub max_codewords: u64,
    /// Maximum number of elementary pair tests in a kernel scan.
    pub max_pair_work: u64,
    /// Maximum number of rows streamed into a rank computation.
    pub max_rank_rows: u64,
    /// Maximum number of bits held by a materialized binary image.
    pub max_image_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_codewords: 1 << 22,
            max_pair_work: 1 << 34,
            max_rank_rows: 1 << 22,
            max_image_bits: 1 << 32,
        }
    }
}

impl Budget {
    pub fn with_max_codewords(mut self, max: u64) -> Self {
        self.max_codewords = max;
        self
    }

    pub(crate) fn check_codewords(&self, log2_size: u32) -> Result<u64> {
        if log2_size >= 63 || (1u64 << log2_size) > self.max_codewords {
            return Err(Error::BudgetExceeded {
                what: "codewords",
                needed: 1u128 << log2_size.min(127),
                limit: self.max_codewords as u128,
            });
        }
        Ok(1u64 << log2_size)
    }
}

/// Rows over Z_{2^s} of common length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorMatrix {
    s: u32,
    n: usize,
    rows: Vec<RingVector>,
}

impl GeneratorMatrix {
    pub fn new(s: u32, n: usize, rows: Vec<RingVector>) -> Result<Self> {
        check_exponent(s)?;
        if n == 0 {
            return Err(Error::InvalidParameter("code length must be >= 1".into()));
        }
        for r in &rows {
            if r.s() != s {
                return Err(Error::ModulusMismatch {
                    left: s,
                    right: r.s(),
                });
            }
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: r.len(),
                });
            }
        }
        Ok(Self { s, n, rows })
    }

    /// Builds a matrix from raw residue rows, which must already be reduced.
    pub fn from_rows(s: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.first().map(Vec::len).ok_or_else(|| {
            Error::InvalidParameter("generator matrix needs at least one row".into())
        })?;
        let rows = rows
            .into_iter()
            .map(|r| RingVector::new(r, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(s, n, rows)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[RingVector] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.rows[row].coords()[col]
    }

    pub fn column(&self, col: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r.coords()[col]).collect()
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// `(n; t_1, …, t_s)`: `t_j` generators of order `2^{s-j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeType {
    pub n: usize,
    pub ts: Vec<usize>,
}

impl CodeType {
    pub fn s(&self) -> u32 {
        self.ts.len() as u32
    }

    /// `log2 |C| = Σ (s - j + 1) t_j`.
    pub fn log2_size(&self) -> u32 {
        let s = self.s() as usize;
        self.ts
            .iter()
            .enumerate()
            .map(|(j, &t)| ((s - j) * t) as u32)
            .sum()
    }

    /// Dimension of the subcode of codewords of order at most two.
    pub fn torsion_dimension(&self) -> usize {
        self.ts.iter().sum()
    }
}

impl fmt::Display for CodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.n)?;
        for (i, t) in self.ts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Pivot {
    col: usize,
    val: u32,
}

/// Echelonizes `rows` in place; returns the reduced rows with their pivots.
fn echelon(s: u32, n: usize, rows: Vec<Vec<u32>>) -> (Vec<Vec<u32>>, Vec<Pivot>) {
    let m = mask(s);
    let mut remaining: Vec<Vec<u32>> = rows;
    let mut done: Vec<Vec<u32>> = Vec::new();
    let mut pivots: Vec<Pivot> = Vec::new();

    loop {
        remaining.retain(|r| r.iter().any(|&x| x != 0));
        // (valuation, column, row index)
        let mut best: Option<(u32, usize, usize)> = None;
        for (ri, r) in remaining.iter().enumerate() {
            for (c, &x) in r.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let v = valuation(x, s);
                let key = (v, c, ri);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((v, col, ri)) = best else { break };
        let mut p = remaining.remove(ri);
        let inv = inverse_unit(p[col] >> v, s);
        for x in p.iter_mut() {
            *x = x.wrapping_mul(inv) & m;
        }
        debug_assert_eq!(p[col], 1 << v);
        for r in remaining.iter_mut() {
            let q = r[col] >> v;
            if q != 0 {
                for (x, &y) in r.iter_mut().zip(&p) {
                    *x = x.wrapping_sub(q.wrapping_mul(y)) & m;
                }
            }
        }
        done.push(p);
        pivots.push(Pivot { col, val: v });
    }

    for (j, &Pivot { col, val }) in pivots.iter().enumerate() {
        let (upper, lower) = done.split_at_mut(j);
        let pj = &lower[0];
        for r in upper.iter_mut() {
            let q = r[col] >> val;
            if q != 0 {
                for (x, &y) in r.iter_mut().zip(pj) {
                    *x = x.wrapping_sub(q.wrapping_mul(y)) & m;
                }
            }
        }
    }
    debug_assert!(done.iter().all(|r| r.len() == n));
    (done, pivots)
}

pub fn normal_form(g: &GeneratorMatrix) -> GeneratorMatrix {
    let (rows, _) = echelon(
        g.s,
        g.n,
        g.rows.iter().map(|r| r.coords().to_vec()).collect(),
    );
    GeneratorMatrix {
        s: g.s,
        n: g.n,
        rows: rows
            .into_iter()
            .map(|r| RingVector::from_raw(r, g.s))
            .collect(),
    }
}

/// A subgroup of Z_{2^s}^n with its normal form computed eagerly.
#[derive(Debug, Clone)]
pub struct AdditiveCode {
    gen: GeneratorMatrix,
    normal: Vec<Vec<u32>>,
    pivots: Vec<Pivot>,
    ctype: CodeType,
}

impl PartialEq for AdditiveCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen.s == other.gen.s && self.gen.n == other.gen.n && self.normal == other.normal
    }
}

impl Eq for AdditiveCode {}

impl AdditiveCode {
    pub fn new(gen: GeneratorMatrix) -> Self {
        let (normal, pivots) = echelon(
            gen.s,
            gen.n,
            gen.rows.iter().map(|r| r.coords().to_vec()).collect(),
        );
        let mut ts = vec![0usize; gen.s as usize];
        for p in &pivots {
            ts[p.val as usize] += 1;
        }
        let ctype = CodeType { n: gen.n, ts };
        Self {
            gen,
            normal,
            pivots,
            ctype,
        }
    }

    pub fn from_rows(s: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        Ok(Self::new(GeneratorMatrix::from_rows(s, rows)?))
    }

    /// The code `{0}` of length `n`.
    pub fn zero(s: u32, n: usize) -> Result<Self> {
        Ok(Self::new(GeneratorMatrix::new(s, n, Vec::new())?))
    }

    pub fn s(&self) -> u32 {
        self.gen.s
    }

    pub fn n(&self) -> usize {
        self.gen.n
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.gen
    }

    pub fn normal_form(&self) -> GeneratorMatrix {
        GeneratorMatrix {
            s: self.gen.s,
            n: self.gen.n,
            rows: self
                .normal
                .iter()
                .map(|r| RingVector::from_raw(r.clone(), self.gen.s))
                .collect(),
        }
    }

    pub fn code_type(&self) -> &CodeType {
        &self.ctype
    }

    pub fn log2_size(&self) -> u32 {
        self.ctype.log2_size()
    }

    /// Pivot columns and valuations of the normal form, in row order.
    pub fn pivots(&self) -> Vec<(usize, u32)> {
        self.pivots.iter().map(|p| (p.col, p.val)).collect()
    }

    /// Coefficient ranges `2^{s-v}` of the normal-form rows.
    fn radices(&self) -> Vec<u32> {
        self.pivots
            .iter()
            .map(|p| 1u32 << (self.gen.s - p.val))
            .collect()
    }

    /// Membership by greedy reduction against the normal form.
    pub fn contains(&self, x: &RingVector) -> Result<bool> {
        if x.s() != self.s() {
            return Err(Error::ModulusMismatch {
                left: self.s(),
                right: x.s(),
            });
        }
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: x.len(),
            });
        }
        let mut work = x.coords().to_vec();
        Ok(self.contains_raw(&mut work))
    }

    /// Reduces `work` in place; true iff it reduced to zero.
    pub(crate) fn contains_raw(&self, work: &mut [u32]) -> bool {
        let m = mask(self.s());
        for (row, p) in self.normal.iter().zip(&self.pivots) {
            let e = work[p.col];
            if e == 0 {
                continue;
            }
            if e & ((1 << p.val) - 1) != 0 {
                return false;
            }
            let q = e >> p.val;
            for (x, &y) in work.iter_mut().zip(row) {
                *x = x.wrapping_sub(q.wrapping_mul(y)) & m;
            }
        }
        work.iter().all(|&x| x == 0)
    }

    pub fn size(&self, budget: &Budget) -> Result<u64> {
        budget.check_codewords(self.log2_size())
    }

    /// Streams every codeword once, lexicographically in the normal-form
    /// coefficients (first row slowest).
    pub fn enumerate(&self, budget: &Budget) -> Result<Codewords<'_>> {
        let total = self.size(budget)?;
        Ok(Codewords::new(self, 0, total))
    }

    /// The codewords with enumeration indices in `start..end`.
    pub fn enumerate_range(&self, start: u64, end: u64, budget: &Budget) -> Result<Codewords<'_>> {
        let total = self.size(budget)?;
        if start > end || end > total {
            return Err(Error::InvalidParameter(format!(
                "range {start}..{end} outside 0..{total}"
            )));
        }
        Ok(Codewords::new(self, start, end))
    }

    /// Codeword with the given enumeration index.
    pub fn codeword_at(&self, index: u64) -> Result<RingVector> {
        if self.log2_size() < 64 && index >= (1u64 << self.log2_size()) {
            return Err(Error::InvalidParameter(format!(
                "codeword index {index} out of range"
            )));
        }
        let digits = self.digits_of(index);
        Ok(RingVector::from_raw(self.combine(&digits), self.s()))
    }

    fn digits_of(&self, mut index: u64) -> Vec<u32> {
        let radices = self.radices();
        let mut digits = vec![0u32; radices.len()];
        for (d, &r) in digits.iter_mut().zip(&radices).rev() {
            *d = (index % r as u64) as u32;
            index /= r as u64;
        }
        digits
    }

    fn combine(&self, digits: &[u32]) -> Vec<u32> {
        let m = mask(self.s());
        let mut out = vec![0u32; self.n()];
        for (row, &a) in self.normal.iter().zip(digits) {
            if a != 0 {
                for (x, &y) in out.iter_mut().zip(row) {
                    *x = x.wrapping_add(a.wrapping_mul(y)) & m;
                }
            }
        }
        out
    }

    pub fn codewords(&self, budget: &Budget) -> Result<Vec<RingVector>> {
        Ok(self.enumerate(budget)?.collect())
    }

    /// Codewords of order at most two.
    pub fn torsion_subcode(&self) -> AdditiveCode {
        let s = self.s();
        let rows = self
            .normal
            .iter()
            .zip(&self.pivots)
            .map(|(r, p)| RingVector::from_raw(r.clone(), s).scale_by(1 << (s - p.val - 1)))
            .collect();
        AdditiveCode::new(GeneratorMatrix {
            s,
            n: self.n(),
            rows,
        })
    }

    /// `{2^i r : r a normal-form row of order 2^j, 0 <= i < j}`.
    pub fn two_basis(&self) -> Vec<RingVector> {
        let s = self.s();
        let mut out = Vec::with_capacity(self.log2_size() as usize);
        for (r, p) in self.normal.iter().zip(&self.pivots) {
            let row = RingVector::from_raw(r.clone(), s);
            for i in 0..(s - p.val) {
                out.push(row.scale_by(1 << i));
            }
        }
        out
    }

    /// Restriction to the 1-based coordinate positions in `indices`.
    pub fn restrict(&self, indices: &[usize]) -> Result<AdditiveCode> {
        if indices.is_empty() {
            return Err(Error::InvalidParameter("empty coordinate set".into()));
        }
        let n = self.n();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidIndex { index: bad, len: n });
        }
        let rows = self
            .gen
            .rows
            .iter()
            .map(|r| {
                RingVector::from_raw(
                    indices.iter().map(|&i| r.coords()[i - 1]).collect(),
                    self.s(),
                )
            })
            .collect();
        Ok(AdditiveCode::new(GeneratorMatrix {
            s: self.s(),
            n: indices.len(),
            rows,
        }))
    }

    /// Enumeration indices of one representative per coset of the torsion
    /// subcode: the top coefficient bit of every row is fixed to zero.
    pub(crate) fn torsion_coset_representatives(&self) -> CosetRepresentatives<'_> {
        let radices: Vec<u32> = self.radices().iter().map(|r| r >> 1).collect();
        CosetRepresentatives {
            code: self,
            total: radices.iter().map(|&r| r as u64).product(),
            radices,
            next: 0,
        }
    }
}

/// Odometer over normal-form coefficients.
///
/// Stepping a digit adds its row once; wrapping a digit past `2^{s-v}` adds
/// the row one more time, which is zero because the row has that order.
pub struct Codewords<'a> {
    code: &'a AdditiveCode,
    radices: Vec<u32>,
    digits: Vec<u32>,
    current: Vec<u32>,
    remaining: u64,
}

impl<'a> Codewords<'a> {
    fn new(code: &'a AdditiveCode, start: u64, end: u64) -> Self {
        let digits = code.digits_of(start);
        let current = code.combine(&digits);
        Self {
            code,
            radices: code.radices(),
            digits,
            current,
            remaining: end - start,
        }
    }

    fn step(&mut self) {
        let m = mask(self.code.s());
        for i in (0..self.digits.len()).rev() {
            let row = &self.code.normal[i];
            for (x, &y) in self.current.iter_mut().zip(row) {
                *x = x.wrapping_add(y) & m;
            }
            self.digits[i] += 1;
            if self.digits[i] == self.radices[i] {
                self.digits[i] = 0;
            } else {
                return;
            }
        }
    }

    /// Calls `f` on every remaining codeword without allocating.
    pub fn for_each_raw(mut self, mut f: impl FnMut(&[u32])) {
        while self.remaining > 0 {
            f(&self.current);
            self.remaining -= 1;
            if self.remaining > 0 {
                self.step();
            }
        }
    }

    /// Like [`Codewords::for_each_raw`] but stops when `f` returns false.
    /// Returns false iff stopped early.
    pub fn try_for_each_raw(mut self, mut f: impl FnMut(&[u32]) -> bool) -> bool {
        while self.remaining > 0 {
            if !f(&self.current) {
                return false;
            }
            self.remaining -= 1;
            if self.remaining > 0 {
                self.step();
            }
        }
        true
    }
}

impl Iterator for Codewords<'_> {
    type Item = RingVector;

    fn next(&mut self) -> Option<RingVector> {
        if self.remaining == 0 {
            return None;
        }
        let out = RingVector::from_raw(self.current.clone(), self.code.s());
        self.remaining -= 1;
        if self.remaining > 0 {
            self.step();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

pub(crate) struct CosetRepresentatives<'a> {
    code: &'a AdditiveCode,
    radices: Vec<u32>,
    total: u64,
    next: u64,
}

impl CosetRepresentatives<'_> {
    pub(crate) fn total(&self) -> u64 {
        self.total
    }

    /// Representative number `index`, as raw coordinates.
    pub(crate) fn get(&self, mut index: u64) -> Vec<u32> {
        let mut digits = vec![0u32; self.radices.len()];
        for (d, &r) in digits.iter_mut().zip(&self.radices).rev() {
            *d = (index % r as u64) as u32;
            index /= r as u64;
        }
        self.code.combine(&digits)
    }
}

impl Iterator for CosetRepresentatives<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.next >= self.total {
            return None;
        }
        let out = self.get(self.next);
        self.next += 1;
        Some(out)
    }
}
