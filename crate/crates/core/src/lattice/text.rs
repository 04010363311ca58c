use num_bigint::BigInt;

use super::LatticeBasis;
use crate::{Error, Result};

/// Reads the `n m` header followed by `n` rows of `m` integers; `#` starts a comment line.
pub fn parse_basis(src: &str) -> Result<LatticeBasis> {
    let mut lines = src
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::input("empty basis file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line: hline,
                msg: format!("bad dimension `{t}`"),
            })
        })
        .collect::<Result<_>>()?;
    let [n, m] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "header must be `n m`".into(),
        });
    };
    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        if rows.len() == n {
            return Err(Error::Parse {
                line,
                msg: format!("more than {n} rows"),
            });
        }
        let row: Vec<BigInt> = text
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("bad integer `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        if row.len() != m {
            return Err(Error::Parse {
                line,
                msg: format!("expected {m} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::input(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    LatticeBasis::new(rows)
}

pub fn write_basis(b: &LatticeBasis) -> String {
    let mut out = format!("{} {}\n", b.n(), b.m());
    for row in b.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
