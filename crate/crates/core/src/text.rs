//! Plain-text formats shared with the command line.
//!
//! Matrix files start with `s=<s> rows=<k> cols=<n>` followed by `k` lines of
//! `n` space-separated residues. Binary listings start with
//! `len=<bits> count=<m>` followed by `m` lines of `0`/`1` characters.

use std::fmt::Write as _;

use crate::binary::BinaryCode;
use crate::bits::BitVector;
use crate::code::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::ring::RingVector;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses `key=value` pairs from a header line, in the given key order.
fn header_fields(line: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != keys.len() {
        return Err(parse_err(
            1,
            format!("expected header with fields {keys:?}"),
        ));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(part, key)| {
            let value = part
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| parse_err(1, format!("expected {key}=<value>, got {part:?}")))?;
            value
                .parse::<usize>()
                .map_err(|e| parse_err(1, format!("bad {key} value {value:?}: {e}")))
        })
        .collect()
}

pub fn write_matrix(g: &GeneratorMatrix) -> String {
    let mut out = format!("s={} rows={} cols={}\n", g.s(), g.row_count(), g.n());
    for row in g.rows() {
        writeln!(out, "{row}").unwrap();
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<GeneratorMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let fields = header_fields(header, &["s", "rows", "cols"])?;
    let (s, k, n) = (fields[0] as u32, fields[1], fields[2]);
    let mut rows = Vec::with_capacity(k);
    for (idx, line) in lines {
        let coords = line
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|e| parse_err(idx + 1, format!("bad entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != n {
            return Err(parse_err(
                idx + 1,
                format!("expected {n} entries, found {}", coords.len()),
            ));
        }
        let row = RingVector::new(coords, s).map_err(|e| parse_err(idx + 1, e.to_string()))?;
        rows.push(row);
    }
    if rows.len() != k {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {k} rows, found {}", rows.len()),
        ));
    }
    GeneratorMatrix::new(s, n, rows)
}

pub fn write_binary_code(c: &BinaryCode) -> String {
    let mut out = String::with_capacity(c.size() * (c.len() + 1) + 32);
    writeln!(out, "len={} count={}", c.len(), c.size()).unwrap();
    for w in c.words() {
        writeln!(out, "{w}").unwrap();
    }
    out
}

pub fn parse_binary_code(text: &str) -> Result<BinaryCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let fields = header_fields(header, &["len", "count"])?;
    let (len, count) = (fields[0], fields[1]);
    let mut words = Vec::with_capacity(count);
    for (idx, line) in lines {
        let w = BitVector::parse(line.trim()).map_err(|e| parse_err(idx + 1, e.to_string()))?;
        if w.len() != len {
            return Err(parse_err(
                idx + 1,
                format!("expected {len} bits, found {}", w.len()),
            ));
        }
        words.push(w);
    }
    if words.len() != count {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {count} words, found {}", words.len()),
        ));
    }
    BinaryCode::new(len, words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::simplex_alpha;

    #[test]
    fn matrix_text_layout() {
        let g = simplex_alpha(2, 1).unwrap();
        assert_eq!(write_matrix(&g), "s=2 rows=1 cols=4\n0 1 2 3\n");
    }

    #[test]
    fn matrix_round_trip() {
        let g = simplex_alpha(3, 2).unwrap();
        assert_eq!(parse_matrix(&write_matrix(&g)).unwrap(), g);
    }

    #[test]
    fn matrix_parse_errors() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("s=2 rows=1\n0 1").is_err());
        assert!(parse_matrix("s=2 rows=1 cols=3\n0 1").is_err());
        assert!(parse_matrix("s=2 rows=1 cols=2\n0 4").is_err());
        assert!(parse_matrix("s=2 rows=2 cols=2\n0 1").is_err());
        assert!(parse_matrix("s=2 rows=1 cols=2\n0 x").is_err());
    }

    #[test]
    fn binary_listing_round_trip() {
        let words = ["0000", "0110", "1111"]
            .iter()
            .map(|w| BitVector::parse(w).unwrap())
            .collect();
        let c = BinaryCode::new(4, words).unwrap();
        let text = write_binary_code(&c);
        assert!(text.starts_with("len=4 count=3\n0000\n"));
        assert_eq!(parse_binary_code(&text).unwrap(), c);
        assert!(parse_binary_code("len=4 count=1\n010").is_err());
        assert!(parse_binary_code("len=4 count=2\n0101").is_err());
    }
}
