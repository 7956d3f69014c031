//! Reproduction of the published (kernel dimension, rank) table for the
//! Hadamard codes `H^{k+1,0,…,0}` and the simplex codes of types α and β,
//! `1 <= k <= 4`, over Z_4, Z_8 and Z_16.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::Budget;
use crate::constructions::FamilySpec;
use crate::error::{Error, Result};
use crate::invariants::{image_rank, kernel_additive};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Row {
    /// `H^{k+1,0,…,0}`.
    Hadamard,
    SimplexAlpha,
    SimplexBeta,
}

impl Row {
    pub const ALL: [Row; 3] = [Row::Hadamard, Row::SimplexAlpha, Row::SimplexBeta];

    pub fn label(self) -> &'static str {
        match self {
            Row::Hadamard => "H^{k+1,0,...,0}",
            Row::SimplexAlpha => "S^alpha_k",
            Row::SimplexBeta => "S^beta_k",
        }
    }

    pub fn spec(self, s: u32, k: u32) -> FamilySpec {
        match self {
            Row::Hadamard => FamilySpec::hadamard_k(s, k as usize + 1),
            Row::SimplexAlpha => FamilySpec::simplex_alpha(s, k),
            Row::SimplexBeta => FamilySpec::simplex_beta(s, k),
        }
    }
}

/// A published entry: `(ker, rank)`, with either part possibly missing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedValue {
    pub ker: Option<usize>,
    pub rank: Option<usize>,
}

impl PublishedValue {
    const fn full(ker: usize, rank: usize) -> Self {
        Self {
            ker: Some(ker),
            rank: Some(rank),
        }
    }

    const fn ker_only(ker: usize) -> Self {
        Self {
            ker: Some(ker),
            rank: None,
        }
    }

    const ABSENT: Self = Self {
        ker: None,
        rank: None,
    };

    pub fn is_complete(&self) -> bool {
        self.ker.is_some() && self.rank.is_some()
    }
}

impl fmt::Display for PublishedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        write!(f, "({},{})", part(self.ker), part(self.rank))
    }
}

const fn v(ker: usize, rank: usize) -> PublishedValue {
    PublishedValue::full(ker, rank)
}

/// Published values indexed by `(s, row)`, columns `k = 1..=4`.
const PUBLISHED: [(u32, Row, [PublishedValue; 4]); 9] = [
    (2, Row::Hadamard, [v(3, 8), v(4, 7), v(5, 11), v(6, 16)]),
    (2, Row::SimplexAlpha, [v(2, 2), v(2, 5), v(3, 9), v(4, 14)]),
    (
        2,
        Row::SimplexBeta,
        [PublishedValue::ABSENT, v(2, 5), v(3, 9), v(4, 14)],
    ),
    (3, Row::Hadamard, [v(3, 8), v(4, 17), v(5, 32), v(6, 56)]),
    (
        3,
        Row::SimplexAlpha,
        [v(1, 4), v(2, 12), v(3, 26), v(4, 49)],
    ),
    (
        3,
        Row::SimplexBeta,
        [PublishedValue::ABSENT, v(2, 12), v(3, 26), v(4, 49)],
    ),
    (
        4,
        Row::Hadamard,
        [v(3, 14), v(4, 44), v(5, 121), PublishedValue::ker_only(6)],
    ),
    (
        4,
        Row::SimplexAlpha,
        [v(1, 7), v(2, 32), v(3, 101), PublishedValue::ker_only(4)],
    ),
    (
        4,
        Row::SimplexBeta,
        [
            PublishedValue::ABSENT,
            v(2, 32),
            v(3, 101),
            PublishedValue::ker_only(4),
        ],
    ),
];

pub fn published(s: u32, row: Row, k: u32) -> Option<PublishedValue> {
    PUBLISHED
        .iter()
        .find(|(ps, pr, _)| *ps == s && *pr == row)
        .and_then(|(_, _, vals)| vals.get((k as usize).checked_sub(1)?).copied())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "reason")]
pub enum CellStatus {
    Match,
    Mismatch,
    /// Not computed: a budget would be exceeded.
    SkippedBudget(String),
    /// The published table has no complete value for this cell.
    #[serde(rename = "skipped-by-paper")]
    SkippedUnpublished,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellStatus::Match => f.write_str("MATCH"),
            CellStatus::Mismatch => f.write_str("MISMATCH"),
            CellStatus::SkippedBudget(_) => f.write_str("SKIPPED(budget)"),
            CellStatus::SkippedUnpublished => f.write_str("SKIPPED-BY-PAPER"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub s: u32,
    pub row: Row,
    pub k: u32,
    pub published: PublishedValue,
    pub ker: Option<usize>,
    pub rank: Option<usize>,
    pub status: CellStatus,
    /// One of the largest cells (Z_16 with k = 3, Z_8 with k = 4).
    pub extended: bool,
}

impl Cell {
    pub fn computed(&self) -> PublishedValue {
        PublishedValue {
            ker: self.ker,
            rank: self.rank,
        }
    }
}

pub fn is_extended(s: u32, k: u32) -> bool {
    matches!((s, k), (4, 3) | (3, 4))
}

/// `(ker, rank)` of the Gray image of one table entry.
pub fn compute_cell_values(row: Row, s: u32, k: u32, budget: &Budget) -> Result<(usize, usize)> {
    let code = row.spec(s, k).code()?;
    let kernel = kernel_additive(&code, budget)?;
    let rank = image_rank(&code, budget)?;
    Ok((kernel.dimension(), rank))
}

pub fn compute_cell(row: Row, s: u32, k: u32, budget: &Budget) -> Result<Cell> {
    let published_value = published(s, row, k)
        .ok_or_else(|| Error::InvalidParameter(format!("no table entry for s={s} k={k}")))?;
    let mut cell = Cell {
        s,
        row,
        k,
        published: published_value,
        ker: None,
        rank: None,
        status: CellStatus::SkippedUnpublished,
        extended: is_extended(s, k),
    };
    if !published_value.is_complete() {
        return Ok(cell);
    }
    match compute_cell_values(row, s, k, budget) {
        Ok((ker, rank)) => {
            cell.ker = Some(ker);
            cell.rank = Some(rank);
            cell.status = if cell.computed() == published_value {
                CellStatus::Match
            } else {
                CellStatus::Mismatch
            };
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            cell.status = CellStatus::SkippedBudget(e.to_string())
        }
        Err(e) => return Err(e),
    }
    Ok(cell)
}

/// Which cells to compute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSelection {
    pub s_values: Vec<u32>,
    pub k_max: u32,
    pub include_extended: bool,
}

impl Default for TableSelection {
    fn default() -> Self {
        Self {
            s_values: vec![2, 3, 4],
            k_max: 4,
            include_extended: true,
        }
    }
}

/// Every selected cell, in table order (ring, then row, then `k`). Cells left
/// out of the selection are not returned.
pub fn reproduce(selection: &TableSelection, budget: &Budget) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for &(s, row, _) in PUBLISHED.iter() {
        if !selection.s_values.contains(&s) {
            continue;
        }
        for k in 1..=selection.k_max.min(4) {
            if is_extended(s, k) && !selection.include_extended {
                continue;
            }
            cells.push(compute_cell(row, s, k, budget)?);
        }
    }
    Ok(cells)
}

pub fn format_cell(c: &Cell) -> String {
    let computed = if c.ker.is_some() {
        c.computed().to_string()
    } else {
        "-".to_string()
    };
    let mut line = format!(
        "Z{:<3} {:<16} k={}  published {:<9} computed {:<9} {}",
        1u32 << c.s,
        c.row.label(),
        c.k,
        c.published.to_string(),
        computed,
        c.status
    );
    if let CellStatus::SkippedBudget(reason) = &c.status {
        line.push_str(&format!(" [{reason}]"));
    }
    line
}

pub fn format_table(cells: &[Cell]) -> String {
    let mut out = String::new();
    for c in cells {
        out.push_str(&format_cell(c));
        out.push('\n');
    }
    out
}

pub fn has_mismatch(cells: &[Cell]) -> bool {
    cells.iter().any(|c| c.status == CellStatus::Mismatch)
}
