//! Matrix exchange format.
//!
//! ```text
//! rows cols nnz
//! row col value
//! ...
//! ```
//!
//! Indices are zero-based, values are decimal integers of any size. Emission
//! is row-major, so a parse/emit round trip is byte-identical for emitted
//! text. Blank lines and lines starting with `#` are ignored on input.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::sparse::SparseIntMatrix;

pub fn to_text(m: &SparseIntMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz()).unwrap();
    for (r, c, v) in m.iter() {
        writeln!(out, "{r} {c} {v}").unwrap();
    }
    out
}

pub fn from_text(text: &str) -> Result<SparseIntMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing header `rows cols nnz`"))?;
    let h = fields(hline, header, 3)?;
    let rows = parse_usize(hline, &h[0])?;
    let cols = parse_usize(hline, &h[1])?;
    let nnz = parse_usize(hline, &h[2])?;

    let mut triplets = Vec::with_capacity(nnz);
    let mut seen = std::collections::BTreeSet::new();
    for (lineno, line) in lines.by_ref().take(nnz) {
        let f = fields(lineno, line, 3)?;
        let r = parse_usize(lineno, &f[0])?;
        let c = parse_usize(lineno, &f[1])?;
        let v: BigInt = f[2]
            .1
            .parse()
            .map_err(|_| Error::parse(lineno, f[2].0, format!("invalid integer {:?}", f[2].1)))?;
        if r >= rows || c >= cols {
            return Err(Error::parse(
                lineno,
                f[0].0,
                format!("index ({r}, {c}) outside a {rows}x{cols} matrix"),
            ));
        }
        if v == BigInt::from(0) {
            return Err(Error::parse(lineno, f[2].0, "explicit zero entry"));
        }
        if !seen.insert((r, c)) {
            return Err(Error::parse(lineno, f[0].0, format!("duplicate entry ({r}, {c})")));
        }
        triplets.push((r, c, v));
    }
    if triplets.len() != nnz {
        return Err(Error::parse(
            hline,
            h[2].0,
            format!("header declares {nnz} entries, found {}", triplets.len()),
        ));
    }
    if let Some((lineno, _)) = lines.next() {
        return Err(Error::parse(lineno, 1, "trailing data after the declared entries"));
    }
    SparseIntMatrix::from_triplets(rows, cols, triplets)
}

/// Splits a line into exactly `n` whitespace-separated fields with their
/// one-based starting columns.
fn fields(lineno: usize, line: &str, n: usize) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, line[s..i].to_string()));
                start = None;
            }
            _ => {}
        }
    }
    if out.len() != n {
        return Err(Error::parse(
            lineno,
            1,
            format!("expected {n} fields, found {}", out.len()),
        ));
    }
    Ok(out)
}

fn parse_usize(lineno: usize, (col, s): &(usize, String)) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(lineno, *col, format!("invalid index or count {s:?}")))
}
