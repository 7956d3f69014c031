//! Generator matrices of the simplex (types α and β), Hadamard and MacDonald
//! families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::{AdditiveCode, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::ring::check_exponent;

type Rows = Vec<Vec<u32>>;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn check_ring(s: u32) -> Result<()> {
    check_exponent(s)?;
    if s < 2 {
        return Err(invalid(format!("s={s}: simplex families need s >= 2")));
    }
    Ok(())
}

fn matrix(s: u32, rows: Rows) -> GeneratorMatrix {
    GeneratorMatrix::from_rows(s, rows).expect("constructed rows are well-formed")
}

/// Stacks `top` over `blocks` copies of `below`, where `top` is constant on
/// each block with the values produced by `value(block)`.
fn block_stack(below: &[Vec<u32>], blocks: usize, value: impl Fn(usize) -> u32) -> Rows {
    let width = below[0].len();
    let mut out = Vec::with_capacity(below.len() + 1);
    out.push(
        (0..blocks)
            .flat_map(|b| std::iter::repeat_n(value(b), width))
            .collect(),
    );
    for row in below {
        out.push(row.iter().copied().cycle().take(width * blocks).collect());
    }
    out
}

fn alpha_rows(s: u32, k: u32) -> Rows {
    let q = 1usize << s;
    let mut g: Rows = vec![(0..q as u32).collect()];
    for _ in 1..k {
        g = block_stack(&g, q, |b| b as u32);
    }
    g
}

/// `G_k^α`: all `2^{sk}` distinct columns of Z_{2^s}^k.
pub fn simplex_alpha(s: u32, k: u32) -> Result<GeneratorMatrix> {
    check_ring(s)?;
    if k == 0 {
        return Err(invalid("simplex type α needs k >= 1"));
    }
    check_width(s as u64 * k as u64)?;
    Ok(matrix(s, alpha_rows(s, k)))
}

fn check_width(log2_len: u64) -> Result<()> {
    if log2_len > 28 {
        return Err(Error::BudgetExceeded {
            what: "matrix columns",
            needed: 1u128 << log2_len.min(127),
            limit: 1 << 28,
        });
    }
    Ok(())
}

/// Splices `left` and `right` column-wise.
fn concat(left: Rows, right: &Rows) -> Rows {
    left.into_iter()
        .zip(right)
        .map(|(mut l, r)| {
            l.extend_from_slice(r);
            l
        })
        .collect()
}

fn beta_rows(s: u32, k: u32) -> Rows {
    let q = 1u32 << s;
    let half = (q / 2) as usize;
    // G_2^β
    let mut g: Rows = {
        let mut top = vec![1u32; q as usize];
        top.extend((0..half as u32).map(|j| 2 * j));
        let mut bottom: Vec<u32> = (0..q).collect();
        bottom.extend(std::iter::repeat_n(1, half));
        vec![top, bottom]
    };
    for j in 3..=k {
        let left = block_stack(&alpha_rows(s, j - 1), 1, |_| 1);
        let right = block_stack(&g, half, |b| 2 * b as u32);
        g = concat(left, &right);
    }
    g
}

/// Length `2^{(s-1)(k-1)} (2^k - 1)` of `G_k^β`.
pub fn simplex_beta_length(s: u32, k: u32) -> usize {
    (1usize << ((s - 1) * (k - 1))) * ((1usize << k) - 1)
}

/// `G_k^β`, built from `G_2^β` by stacking `1` over `G_{k-1}^α` beside
/// `0, 2, …, 2^s - 2` over copies of `G_{k-1}^β`.
pub fn simplex_beta(s: u32, k: u32) -> Result<GeneratorMatrix> {
    check_ring(s)?;
    if k < 2 {
        return Err(invalid("simplex type β needs k >= 2"));
    }
    check_width((s as u64) * (k as u64))?;
    Ok(matrix(s, beta_rows(s, k)))
}

/// `A^{t_1,…,t_s}`, grown from `A^{1,0,…,0} = (1)`: first `t_1 - 1` rows of
/// order `2^s`, then `t_2` rows of order `2^{s-1}`, and so on. Each step
/// places the new row on top, so the all-one row ends up last.
pub fn hadamard_gen(s: u32, ts: &[usize]) -> Result<GeneratorMatrix> {
    check_exponent(s)?;
    if ts.len() != s as usize {
        return Err(invalid(format!(
            "Hadamard type needs {s} entries, got {}",
            ts.len()
        )));
    }
    if ts[0] == 0 {
        return Err(invalid("Hadamard type needs t_1 >= 1"));
    }
    let log2_len: u64 = ts
        .iter()
        .enumerate()
        .map(|(idx, &t)| {
            let i = idx as u64 + 1;
            let steps = if i == 1 { t as u64 - 1 } else { t as u64 };
            steps * (s as u64 - i + 1)
        })
        .sum();
    check_width(log2_len)?;
    let mut a: Rows = vec![vec![1]];
    for (idx, &t) in ts.iter().enumerate() {
        let i = idx as u32 + 1;
        let steps = if i == 1 { t - 1 } else { t };
        let blocks = 1usize << (s - i + 1);
        let step = 1u32 << (i - 1);
        for _ in 0..steps {
            a = block_stack(&a, blocks, |b| b as u32 * step);
        }
    }
    Ok(matrix(s, a))
}

fn last_row_is_all_one(a: &GeneratorMatrix) -> Result<()> {
    match a.rows().last() {
        Some(r) if r.coords().iter().all(|&x| x == 1) => Ok(()),
        _ => Err(Error::StructureViolation(
            "last row is not the all-one row".into(),
        )),
    }
}

/// `Ã`: the matrix without its all-one last row.
pub fn strip_all_one_row(a: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    last_row_is_all_one(a)?;
    let mut rows = a.rows().to_vec();
    rows.pop();
    GeneratorMatrix::new(a.s(), a.n(), rows)
}

/// `A_r`: the all-one last row moved to the top.
pub fn rotate_all_one_row(a: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    last_row_is_all_one(a)?;
    let mut rows = a.rows().to_vec();
    rows.rotate_right(1);
    GeneratorMatrix::new(a.s(), a.n(), rows)
}

fn check_macdonald(k: u32, u: u32) -> Result<()> {
    if k < 2 {
        return Err(invalid("MacDonald codes need k >= 2"));
    }
    if u == 0 || u >= k {
        return Err(invalid(format!(
            "MacDonald parameter u={u} outside 1..={}",
            k - 1
        )));
    }
    Ok(())
}

/// Checks that the columns at `cols` (0-based) form `0` over `lower`.
fn assert_deleted_block(
    g: &GeneratorMatrix,
    cols: &[usize],
    lower: &GeneratorMatrix,
) -> Result<()> {
    let zero_rows = g.row_count() - lower.row_count();
    for (b, &c) in cols.iter().enumerate() {
        let column = g.column(c);
        if column[..zero_rows].iter().any(|&x| x != 0) {
            return Err(Error::StructureViolation(format!(
                "deleted column {} is not zero in its top {zero_rows} rows",
                c + 1
            )));
        }
        if column[zero_rows..] != lower.column(b)[..] {
            return Err(Error::StructureViolation(format!(
                "deleted column {} does not match the removed simplex block",
                c + 1
            )));
        }
    }
    Ok(())
}

fn delete_columns(g: &GeneratorMatrix, cols: &[usize]) -> GeneratorMatrix {
    let mut drop = vec![false; g.n()];
    for &c in cols {
        drop[c] = true;
    }
    let rows = g
        .rows()
        .iter()
        .map(|r| {
            r.coords()
                .iter()
                .zip(&drop)
                .filter(|(_, &d)| !d)
                .map(|(&x, _)| x)
                .collect()
        })
        .collect();
    matrix(g.s(), rows)
}

/// `G_{k,u}^α`: `G_k^α` without its first `2^{su}` columns, which must be
/// `0` over `G_u^α`.
pub fn macdonald_alpha(s: u32, k: u32, u: u32) -> Result<GeneratorMatrix> {
    check_macdonald(k, u)?;
    let g = simplex_alpha(s, k)?;
    let lower = simplex_alpha(s, u)?;
    let cols: Vec<usize> = (0..lower.n()).collect();
    assert_deleted_block(&g, &cols, &lower)?;
    Ok(delete_columns(&g, &cols))
}

/// 1-based positions of the `0 / G_u^β` block inside `G_k^β`:
/// `D_{u+1} = {2^{su}+1, …, 2^{su}+n_u}` and
/// `D_j = 2^{s(j-1)} + D_{j-1}` for `u+1 < j <= k`.
pub fn beta_deletion_indices(s: u32, k: u32, u: u32) -> Result<Vec<usize>> {
    check_ring(s)?;
    check_macdonald(k, u)?;
    if u < 2 {
        return Err(invalid(
            "u=1 unsupported for type β: there is no G_1^β block to delete",
        ));
    }
    let n_u = simplex_beta_length(s, u);
    let mut offset = 1usize << (s * u);
    for j in (u + 2)..=k {
        offset += 1usize << (s * (j - 1));
    }
    Ok((offset + 1..=offset + n_u).collect())
}

/// `G_{k,u}^β`: `G_k^β` without the columns of [`beta_deletion_indices`].
pub fn macdonald_beta(s: u32, k: u32, u: u32) -> Result<GeneratorMatrix> {
    let indices = beta_deletion_indices(s, k, u)?;
    let g = simplex_beta(s, k)?;
    let lower = simplex_beta(s, u)?;
    let cols: Vec<usize> = indices.iter().map(|i| i - 1).collect();
    assert_deleted_block(&g, &cols, &lower)?;
    Ok(delete_columns(&g, &cols))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SimplexAlpha,
    SimplexBeta,
    Hadamard,
    MacdonaldAlpha,
    MacdonaldBeta,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::SimplexAlpha,
        Family::SimplexBeta,
        Family::Hadamard,
        Family::MacdonaldAlpha,
        Family::MacdonaldBeta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SimplexAlpha => "simplex-alpha",
            Family::SimplexBeta => "simplex-beta",
            Family::Hadamard => "hadamard",
            Family::MacdonaldAlpha => "macdonald-alpha",
            Family::MacdonaldBeta => "macdonald-beta",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| invalid(format!("unknown family {s:?}")))
    }
}

/// One member of a family: which matrix to build and with what parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub s: u32,
    pub k: Option<u32>,
    pub u: Option<u32>,
    pub ts: Option<Vec<usize>>,
}

impl FamilySpec {
    pub fn simplex_alpha(s: u32, k: u32) -> Self {
        Self {
            family: Family::SimplexAlpha,
            s,
            k: Some(k),
            u: None,
            ts: None,
        }
    }

    pub fn simplex_beta(s: u32, k: u32) -> Self {
        Self {
            family: Family::SimplexBeta,
            s,
            k: Some(k),
            u: None,
            ts: None,
        }
    }

    pub fn hadamard(s: u32, ts: Vec<usize>) -> Self {
        Self {
            family: Family::Hadamard,
            s,
            k: None,
            u: None,
            ts: Some(ts),
        }
    }

    /// `H^{k,0,…,0}`.
    pub fn hadamard_k(s: u32, k: usize) -> Self {
        let mut ts = vec![0; s as usize];
        if let Some(t) = ts.first_mut() {
            *t = k;
        }
        Self::hadamard(s, ts)
    }

    pub fn macdonald_alpha(s: u32, k: u32, u: u32) -> Self {
        Self {
            family: Family::MacdonaldAlpha,
            s,
            k: Some(k),
            u: Some(u),
            ts: None,
        }
    }

    pub fn macdonald_beta(s: u32, k: u32, u: u32) -> Self {
        Self {
            family: Family::MacdonaldBeta,
            s,
            k: Some(k),
            u: Some(u),
            ts: None,
        }
    }

    fn need_k(&self) -> Result<u32> {
        self.k
            .ok_or_else(|| invalid(format!("{} needs k", self.family)))
    }

    fn need_u(&self) -> Result<u32> {
        self.u
            .ok_or_else(|| invalid(format!("{} needs u", self.family)))
    }

    /// Hadamard type, taken from `ts` or else `(k, 0, …, 0)`.
    pub fn hadamard_type(&self) -> Result<Vec<usize>> {
        match (&self.ts, self.k) {
            (Some(ts), _) => Ok(ts.clone()),
            (None, Some(k)) => Ok(Self::hadamard_k(self.s, k as usize).ts.unwrap_or_default()),
            (None, None) => Err(invalid("hadamard needs a type or k")),
        }
    }

    pub fn generator(&self) -> Result<GeneratorMatrix> {
        match self.family {
            Family::SimplexAlpha => simplex_alpha(self.s, self.need_k()?),
            Family::SimplexBeta => simplex_beta(self.s, self.need_k()?),
            Family::Hadamard => hadamard_gen(self.s, &self.hadamard_type()?),
            Family::MacdonaldAlpha => macdonald_alpha(self.s, self.need_k()?, self.need_u()?),
            Family::MacdonaldBeta => macdonald_beta(self.s, self.need_k()?, self.need_u()?),
        }
    }

    pub fn code(&self) -> Result<AdditiveCode> {
        Ok(AdditiveCode::new(self.generator()?))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} s={}", self.family, self.s)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(u) = self.u {
            write!(f, " u={u}")?;
        }
        if let Some(ts) = &self.ts {
            let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            write!(f, " type={}", parts.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(g: &GeneratorMatrix) -> Vec<Vec<u32>> {
        g.rows().iter().map(|r| r.coords().to_vec()).collect()
    }

    fn parse_rows(text: &[&str]) -> Vec<Vec<u32>> {
        text.iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| c.to_digit(10).unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn simplex_alpha_examples() {
        assert_eq!(rows(&simplex_alpha(2, 1).unwrap()), vec![vec![0, 1, 2, 3]]);
        assert_eq!(
            rows(&simplex_alpha(2, 2).unwrap()),
            parse_rows(&["0000 1111 2222 3333", "0123 0123 0123 0123"])
        );
        assert!(simplex_alpha(2, 0).is_err());
        assert!(simplex_alpha(1, 2).is_err());
    }

    #[test]
    fn simplex_alpha_columns_are_all_tuples() {
        for (s, k) in [(2, 3), (3, 2), (4, 2)] {
            let g = simplex_alpha(s, k).unwrap();
            let cols: std::collections::BTreeSet<Vec<u32>> =
                (0..g.n()).map(|c| g.column(c)).collect();
            assert_eq!(cols.len(), 1 << (s * k));
            assert_eq!(g.n(), 1 << (s * k));
        }
    }

    #[test]
    fn simplex_beta_examples() {
        assert_eq!(
            rows(&simplex_beta(2, 2).unwrap()),
            vec![vec![1, 1, 1, 1, 0, 2], vec![0, 1, 2, 3, 1, 1]]
        );
        assert_eq!(
            rows(&simplex_beta(2, 3).unwrap()),
            parse_rows(&[
                "1111 1111 1111 1111 000000 222222",
                "0000 1111 2222 3333 111102 111102",
                "0123 0123 0123 0123 012311 012311",
            ])
        );
        assert_eq!(simplex_beta(3, 2).unwrap().n(), 12);
        assert!(simplex_beta(2, 1).is_err());
    }

    #[test]
    fn simplex_beta_length_recursion() {
        for s in 2..=4 {
            for k in 2..=4 {
                let n = simplex_beta(s, k).unwrap().n();
                assert_eq!(n, simplex_beta_length(s, k));
                if k > 2 {
                    assert_eq!(
                        n,
                        (1 << (s * (k - 1))) + (1 << (s - 1)) * simplex_beta_length(s, k - 1)
                    );
                }
            }
        }
    }

    #[test]
    fn hadamard_examples() {
        assert_eq!(
            rows(&hadamard_gen(2, &[3, 0]).unwrap()),
            parse_rows(&[
                "0000 1111 2222 3333",
                "0123 0123 0123 0123",
                "1111 1111 1111 1111"
            ])
        );
        for s in 1..=5 {
            let mut ts = vec![0; s as usize];
            ts[0] = 1;
            assert_eq!(rows(&hadamard_gen(s, &ts).unwrap()), vec![vec![1]]);
        }
        assert!(hadamard_gen(2, &[0, 1]).is_err());
        assert!(hadamard_gen(2, &[1]).is_err());
    }

    #[test]
    fn hadamard_length_is_product_of_step_factors() {
        for (s, ts) in [
            (2u32, vec![2usize, 1]),
            (3, vec![1, 1, 1]),
            (3, vec![2, 0, 2]),
            (4, vec![2, 1, 0, 1]),
        ] {
            let g = hadamard_gen(s, &ts).unwrap();
            let mut expect = 1usize;
            for (idx, &t) in ts.iter().enumerate() {
                let i = idx as u32 + 1;
                let steps = if i == 1 { t - 1 } else { t };
                expect *= (1usize << (s - i + 1)).pow(steps as u32);
            }
            assert_eq!(g.n(), expect);
            assert_eq!(g.row_count(), ts.iter().sum::<usize>());
            assert!(g.rows().last().unwrap().coords().iter().all(|&x| x == 1));
            let code = AdditiveCode::new(g);
            assert_eq!(code.code_type().ts, ts);
        }
    }

    #[test]
    fn strip_and_rotate() {
        let a = hadamard_gen(2, &[3, 0]).unwrap();
        assert_eq!(strip_all_one_row(&a).unwrap(), simplex_alpha(2, 2).unwrap());
        let a2 = hadamard_gen(3, &[2, 0, 0]).unwrap();
        assert_eq!(
            strip_all_one_row(&a2).unwrap(),
            simplex_alpha(3, 1).unwrap()
        );
        let g = simplex_alpha(2, 2).unwrap();
        assert!(matches!(
            strip_all_one_row(&g),
            Err(Error::StructureViolation(_))
        ));
        assert!(matches!(
            rotate_all_one_row(&g),
            Err(Error::StructureViolation(_))
        ));

        let r = rotate_all_one_row(&a).unwrap();
        assert_eq!(
            rows(&r),
            parse_rows(&[
                "1111 1111 1111 1111",
                "0000 1111 2222 3333",
                "0123 0123 0123 0123"
            ])
        );
        let mut rest = rows(&r);
        rest.remove(0);
        assert_eq!(rest, rows(&strip_all_one_row(&a).unwrap()));
        let one = hadamard_gen(2, &[1, 0]).unwrap();
        assert_eq!(rotate_all_one_row(&one).unwrap(), one);
    }

    #[test]
    fn macdonald_alpha_examples() {
        let g = macdonald_alpha(2, 2, 1).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(rows(&g), parse_rows(&["1111 2222 3333", "0123 0123 0123"]));
        assert_eq!(macdonald_alpha(2, 3, 1).unwrap().n(), 60);
        assert_eq!(macdonald_alpha(3, 3, 2).unwrap().n(), 512 - 64);
        assert!(macdonald_alpha(2, 2, 2).is_err());
        assert!(macdonald_alpha(2, 2, 0).is_err());
    }

    #[test]
    fn beta_deletion_examples() {
        assert_eq!(
            beta_deletion_indices(2, 3, 2).unwrap(),
            (17..=22).collect::<Vec<_>>()
        );
        assert_eq!(
            beta_deletion_indices(2, 4, 2).unwrap(),
            (81..=86).collect::<Vec<_>>()
        );
        for (s, k, u) in [(2, 4, 3), (3, 3, 2), (3, 4, 2)] {
            assert_eq!(
                beta_deletion_indices(s, k, u).unwrap().len(),
                simplex_beta_length(s, u)
            );
        }
        assert!(beta_deletion_indices(2, 3, 1).is_err());
    }

    #[test]
    fn macdonald_beta_examples() {
        let g = macdonald_beta(2, 3, 2).unwrap();
        assert_eq!(g.n(), 22);
        let full = simplex_beta(2, 3).unwrap();
        let mut expect = rows(&full);
        for r in expect.iter_mut() {
            r.drain(16..22);
        }
        assert_eq!(rows(&g), expect);
        for (s, k, u) in [(2, 4, 2), (2, 4, 3), (3, 3, 2)] {
            let g = macdonald_beta(s, k, u).unwrap();
            assert_eq!(g.n(), simplex_beta_length(s, k) - simplex_beta_length(s, u));
        }
        let err = macdonald_beta(2, 3, 1).unwrap_err();
        assert!(err.to_string().contains("u=1 unsupported for type β"));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("simplex".parse::<Family>().is_err());
    }

    #[test]
    fn family_spec_builds() {
        assert_eq!(
            FamilySpec::simplex_alpha(2, 2).generator().unwrap(),
            simplex_alpha(2, 2).unwrap()
        );
        assert_eq!(
            FamilySpec::hadamard_k(2, 3).generator().unwrap(),
            hadamard_gen(2, &[3, 0]).unwrap()
        );
        let k_only = FamilySpec {
            family: Family::Hadamard,
            s: 3,
            k: Some(2),
            u: None,
            ts: None,
        };
        assert_eq!(k_only.hadamard_type().unwrap(), vec![2, 0, 0]);
        let missing = FamilySpec {
            family: Family::MacdonaldAlpha,
            s: 2,
            k: Some(3),
            u: None,
            ts: None,
        };
        assert!(missing.generator().is_err());
    }
}
