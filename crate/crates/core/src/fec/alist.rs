//! The alist text format for sparse parity-check matrices (1-based indices,
//! zero padding allowed).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sparse::BinaryMatrix;

pub fn to_alist(h: &BinaryMatrix) -> String {
    let (m, n) = (h.nrows(), h.ncols());
    let max_c = (0..n).map(|c| h.col_weight(c)).max().unwrap_or(0);
    let max_r = (0..m).map(|r| h.row_weight(r)).max().unwrap_or(0);
    let mut out = format!("{n} {m}\n{max_c} {max_r}\n");
    let join = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "{}", join((0..n).map(|c| h.col_weight(c)).collect()));
    let _ = writeln!(out, "{}", join((0..m).map(|r| h.row_weight(r)).collect()));
    for c in 0..n {
        let _ = writeln!(out, "{}", join(h.col(c).iter().map(|r| r + 1).collect()));
    }
    for r in 0..m {
        let _ = writeln!(out, "{}", join(h.row(r).iter().map(|c| c + 1).collect()));
    }
    out
}

pub fn parse_alist(text: &str) -> Result<BinaryMatrix> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)));
    let mut next = || -> Result<usize> {
        let (line, t) = tokens.next().ok_or(Error::Parse {
            line: 0,
            msg: "unexpected end of alist".into(),
        })?;
        t.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("bad integer '{t}'"),
        })
    };
    let n = next()?;
    let m = next()?;
    let _max_c = next()?;
    let _max_r = next()?;
    let col_w: Vec<usize> = (0..n).map(|_| next()).collect::<Result<_>>()?;
    let _row_w: Vec<usize> = (0..m).map(|_| next()).collect::<Result<_>>()?;
    let mut entries = Vec::new();
    for (c, &w) in col_w.iter().enumerate() {
        for _ in 0..w {
            let r = next()?;
            if r == 0 {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("column {} lists row 0", c + 1),
                });
            }
            entries.push((r - 1, c));
        }
    }
    // the row lists are redundant and may be padded; they are not required
    BinaryMatrix::from_entries(m, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fec::gallager_construct;

    #[test]
    fn round_trip() {
        let h = gallager_construct(20, 3, 4, 1)
            .unwrap()
            .parity_matrix()
            .clone();
        let text = to_alist(&h);
        assert!(text.starts_with("20 15\n3 4\n"));
        assert_eq!(parse_alist(&text).unwrap(), h);
        assert!(parse_alist("2 1\n1").is_err());
    }
}
