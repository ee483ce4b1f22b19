//! Plain-text formats for the mapping matrix.
//!
//! Triplet format: a `gamma rho` header line followed by one `row col`
//! pair (0-based) per nonzero. Grid format: the same header followed by one
//! line of `0`/`1` characters per row.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sparse::BinaryMatrix;

use super::mapping::SparseMapping;

pub fn to_triplets(f: &SparseMapping) -> String {
    let mut out = format!("{} {}\n", f.gamma(), f.rho());
    for (r, c) in f.matrix().entries() {
        let _ = writeln!(out, "{r} {c}");
    }
    out
}

pub fn to_grid(f: &SparseMapping) -> String {
    let mut out = format!("{} {}\n", f.gamma(), f.rho());
    for row in f.matrix().to_dense() {
        out.extend(row.iter().map(|&b| if b == 1 { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, usize)> {
    let (ln, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    let nums = parse_pair(header, ln)?;
    Ok(nums)
}

fn parse_pair(line: &str, ln: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse {
            line: ln,
            msg: format!("expected two integers, got '{line}'"),
        }),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_triplets(text: &str) -> Result<SparseMapping> {
    let mut lines = content_lines(text);
    let (gamma, rho) = parse_header(&mut lines)?;
    let mut entries = Vec::new();
    for (ln, line) in lines {
        entries.push(parse_pair(line, ln)?);
    }
    let m = BinaryMatrix::from_entries(gamma * rho, gamma * gamma, entries)?;
    SparseMapping::from_matrix(gamma, rho, m)
}

pub fn parse_grid(text: &str) -> Result<SparseMapping> {
    let mut lines = content_lines(text);
    let (gamma, rho) = parse_header(&mut lines)?;
    let mut rows = Vec::new();
    for (ln, line) in lines {
        let row: Result<Vec<u8>> = line
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse {
                    line: ln,
                    msg: format!("unexpected character '{ch}'"),
                }),
            })
            .collect();
        rows.push(row?);
    }
    SparseMapping::from_matrix(gamma, rho, BinaryMatrix::from_dense(&rows)?)
}
