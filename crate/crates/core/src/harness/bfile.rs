//! OEIS b-file reading.
//!
//! A b-file holds one `index value` pair per line. Lines starting with `#`
//! are comments; blank lines and surrounding whitespace are ignored.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BFileRecord {
    pub index: i64,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn parse_integer(tok: &str) -> Option<BigInt> {
    let digits = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    tok.parse().ok()
}

/// Parses b-file text. Errors carry 1-based line numbers.
pub fn parse_bfile(text: &str) -> Result<Vec<BFileRecord>> {
    let mut out: Vec<BFileRecord> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let (Some(i), Some(v), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(Error::Malformed { line: line_no, msg: format!("expected `index value`, got `{line}`") });
        };
        let index: i64 = parse_integer(i)
            .and_then(|b| i64::try_from(b).ok())
            .ok_or_else(|| Error::Malformed { line: line_no, msg: format!("bad index `{i}`") })?;
        let value = parse_integer(v)
            .ok_or_else(|| Error::Malformed { line: line_no, msg: format!("bad value `{v}`") })?;
        if let Some(prev) = out.last() {
            if index <= prev.index {
                return Err(Error::Malformed {
                    line: line_no,
                    msg: format!("index {index} does not increase (previous {})", prev.index),
                });
            }
        }
        out.push(BFileRecord { index, value });
    }
    Ok(out)
}
