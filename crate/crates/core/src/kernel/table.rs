use std::fmt::Write as _;

use rayon::prelude::*;

use crate::arith::{PadicVal, Prime};
use crate::error::{Error, Result};
use crate::polyseq::{Fraction, SequenceSpec};

/// ν_p of one sequence at n = 0..=N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationTable {
    spec: SequenceSpec,
    p: Prime,
    values: Vec<PadicVal>,
}

impl ValuationTable {
    /// Wraps precomputed values; at least one entry is required.
    pub fn from_values(spec: SequenceSpec, p: Prime, values: Vec<PadicVal>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TableTooShort("a table holds at least index 0".into()));
        }
        Ok(ValuationTable { spec, p, values })
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// Largest stored index.
    pub fn n_max(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn values(&self) -> &[PadicVal] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<PadicVal> {
        self.values.get(usize::try_from(n).ok()?).copied()
    }

    pub fn header(&self) -> String {
        format!("# spec={} p={} N={}", self.spec, self.p, self.n_max())
    }

    /// Line-oriented text form: the header, then `n value` per line.
    pub fn to_text(&self) -> String {
        let mut out = self.header();
        out.push('\n');
        for (n, v) in self.values.iter().enumerate() {
            writeln!(out, "{n} {v}").expect("writing to a String");
        }
        out
    }

    /// Strict inverse of [`ValuationTable::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| malformed(text.lines().count().max(1), "missing final newline"))?;
        let mut lines = body.split('\n');
        let (spec, p, n_max) = parse_header(lines.next().unwrap_or_default())?;
        let expected = n_max
            .checked_add(1)
            .and_then(|len| usize::try_from(len).ok())
            .ok_or_else(|| malformed(1, "N too large"))?;
        let mut values = Vec::with_capacity(expected.min(1 << 20));
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 2;
            let (n, v) = line
                .split_once(' ')
                .ok_or_else(|| malformed(line_no, "expected `n value`"))?;
            let n = parse_canonical_u64(n).ok_or_else(|| malformed(line_no, "bad index"))?;
            if n != values.len() as u64 {
                return Err(malformed(line_no, &format!("expected index {}, found {n}", values.len())));
            }
            let parsed: PadicVal = v.parse().map_err(|_| malformed(line_no, "bad valuation"))?;
            if parsed.to_string() != v {
                return Err(malformed(line_no, "non-canonical valuation"));
            }
            values.push(parsed);
        }
        if values.len() != expected {
            return Err(malformed(
                values.len() + 2,
                &format!("expected {expected} entries, found {}", values.len()),
            ));
        }
        ValuationTable::from_values(spec, p, values)
    }
}

fn malformed(line: usize, msg: &str) -> Error {
    Error::Malformed { line, msg: msg.to_string() }
}

fn parse_canonical_u64(s: &str) -> Option<u64> {
    let v: u64 = s.parse().ok()?;
    (v.to_string() == s).then_some(v)
}

fn parse_header(line: &str) -> Result<(SequenceSpec, Prime, u64)> {
    let bad = |msg: &str| malformed(1, msg);
    let rest = line.strip_prefix("# ").ok_or_else(|| bad("header must start with `# `"))?;
    let fields: Vec<&str> = rest.split(' ').collect();
    let [spec, p, n] = fields.as_slice() else {
        return Err(bad("header must be `# spec=<spec> p=<p> N=<N>`"));
    };
    let spec = spec.strip_prefix("spec=").ok_or_else(|| bad("missing spec="))?;
    let p = p.strip_prefix("p=").ok_or_else(|| bad("missing p="))?;
    let n = n.strip_prefix("N=").ok_or_else(|| bad("missing N="))?;
    let parsed: SequenceSpec = spec.parse().map_err(|e: Error| bad(&e.to_string()))?;
    if parsed.to_string() != *spec {
        return Err(bad("non-canonical spec"));
    }
    let p = parse_canonical_u64(p).ok_or_else(|| bad("bad prime"))?;
    let p = Prime::new(p).map_err(|e| bad(&e.to_string()))?;
    let n = parse_canonical_u64(n).ok_or_else(|| bad("bad N"))?;
    Ok((parsed, p, n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BuildStrategy {
    /// Stream through a recurrence when the sequence has one.
    #[default]
    Auto,
    /// Evaluate every index independently, in parallel.
    Direct,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TableOptions {
    pub strategy: BuildStrategy,
    /// Cap on the summed bit length of all exact values computed.
    pub max_total_bits: Option<u64>,
}

/// Builds ν_p of `spec` at 0..=n_max. The result does not depend on the
/// strategy or on the size of the rayon pool it runs in.
pub fn build_table(spec: &SequenceSpec, p: Prime, n_max: u64, opts: &TableOptions) -> Result<ValuationTable> {
    let len = n_max
        .checked_add(1)
        .and_then(|l| usize::try_from(l).ok())
        .ok_or_else(|| Error::TableTooShort(format!("N = {n_max} is too large")))?;
    let cap = opts.max_total_bits.unwrap_or(u64::MAX);
    let values = if opts.strategy == BuildStrategy::Auto && spec.has_recurrence() {
        let mut used = 0u64;
        let mut values = Vec::with_capacity(len);
        for frac in spec.fraction_stream().take(len) {
            used = used.saturating_add(frac.bits());
            if used > cap {
                return Err(Error::BudgetExceeded { used, cap });
            }
            values.push(frac.valuation(p));
        }
        values
    } else {
        let out: Vec<(PadicVal, u64)> = (0..=n_max)
            .into_par_iter()
            .map(|n| {
                let frac = Fraction::from_rational(crate::polyseq::eval_sequence(spec, n));
                (frac.valuation(p), frac.bits())
            })
            .collect();
        let used = out.iter().fold(0u64, |acc, &(_, b)| acc.saturating_add(b));
        if used > cap {
            return Err(Error::BudgetExceeded { used, cap });
        }
        out.into_iter().map(|(v, _)| v).collect()
    };
    ValuationTable::from_values(spec.clone(), p, values)
}
