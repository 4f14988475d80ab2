use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Plaintext matrix fixture: a `numR numC nnz` header followed by one
/// `r c w` line per entry, where `w` may be `INF`. Blank lines and lines
/// starting with `#` are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixText {
    pub num_rows: usize,
    pub num_cols: usize,
    pub entries: Vec<(usize, usize, Weight)>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

impl FromStr for MatrixText {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(hl, format!("bad header field {t:?}"))))
            .collect::<Result<_>>()?;
        let [num_rows, num_cols, nnz] = h[..] else {
            return Err(parse_err(hl, "header must be `numR numC nnz`"));
        };
        let mut entries = Vec::with_capacity(nnz);
        for (ln, l) in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            let [r, c, w] = t[..] else {
                return Err(parse_err(ln, "entry must be `r c w`"));
            };
            let r: usize = r.parse().map_err(|_| parse_err(ln, "bad row index"))?;
            let c: usize = c.parse().map_err(|_| parse_err(ln, "bad column index"))?;
            let w: Weight = w.parse().map_err(|e: Error| parse_err(ln, e.to_string()))?;
            if r >= num_rows || c >= num_cols {
                return Err(parse_err(ln, format!("({r}, {c}) outside {num_rows}x{num_cols}")));
            }
            entries.push((r, c, w));
        }
        if entries.len() != nnz {
            return Err(parse_err(
                hl,
                format!("header announces {nnz} entries, found {}", entries.len()),
            ));
        }
        Ok(MatrixText {
            num_rows,
            num_cols,
            entries,
        })
    }
}

impl fmt::Display for MatrixText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.num_rows, self.num_cols, self.entries.len())?;
        for (r, c, w) in &self.entries {
            writeln!(f, "{r} {c} {w}")?;
        }
        Ok(())
    }
}
