use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Inclusive index range written `a..b`; a bare `a` means `a..a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NRange {
    pub start: u64,
    pub end: u64,
}

impl NRange {
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if start > end {
            return Err(Error::Parse(format!("empty range {start}..{end}")));
        }
        Ok(NRange { start, end })
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.start..=self.end
    }

    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for NRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| -> Result<u64> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("invalid range `{s}`")));
            }
            t.parse().map_err(|_| Error::Parse(format!("invalid range `{s}`")))
        };
        match s.split_once("..") {
            Some((a, b)) => NRange::new(num(a)?, num(b)?),
            None => {
                let a = num(s)?;
                NRange::new(a, a)
            }
        }
    }
}
