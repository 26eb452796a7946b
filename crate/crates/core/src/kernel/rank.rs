use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::ValuationTable;
use crate::error::{Error, Result};

/// A row of the kernel matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum KernelRow {
    /// The all-ones sequence. Always included so that affine relations
    /// V(p^e n + i) = V(...) + c are linear relations among rows.
    Constant,
    /// (V(p^e n + i))_{n ≥ 0}
    Subsequence { e: u32, i: u64 },
}

impl fmt::Display for KernelRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelRow::Constant => f.write_str("1"),
            KernelRow::Subsequence { e, i } => write!(f, "({e},{i})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelRankEstimate {
    pub prefix_len: u64,
    pub max_e: u32,
    pub rank: usize,
    /// Rows of a basis, chosen greedily in row order.
    pub basis_labels: Vec<KernelRow>,
    /// Subsequences left out because their prefix contains `inf`.
    pub dropped: Vec<KernelRow>,
    /// Rows that entered the elimination, the constant row included.
    pub examined: usize,
}

/// Labelled integer rows of the truncated kernel matrix.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub labels: Vec<KernelRow>,
    pub rows: Vec<Vec<BigInt>>,
    pub dropped: Vec<KernelRow>,
}

/// The constant row followed by the length-`prefix_len` prefix of every
/// kernel subsequence with e ≤ max_e, in (e, i) order.
pub fn kernel_matrix(table: &ValuationTable, max_e: u32, prefix_len: u64) -> Result<KernelMatrix> {
    if prefix_len == 0 {
        return Err(Error::TableTooShort("prefix_len must be positive".into()));
    }
    let p = table.p();
    let top = p
        .checked_pow(max_e)
        .ok_or_else(|| Error::TableTooShort(format!("{p}^{max_e} overflows")))?;
    let needed = top.checked_mul(prefix_len).map(|x| x - 1);
    if needed.is_none_or(|needed| needed > table.n_max()) {
        return Err(Error::TableTooShort(format!(
            "kernel prefixes up to e = {max_e} with length {prefix_len} need N ≥ {}, table has N = {}",
            needed.map_or_else(|| "overflow".to_string(), |n| n.to_string()),
            table.n_max()
        )));
    }
    let values = table.values();
    let mut m = KernelMatrix {
        labels: vec![KernelRow::Constant],
        rows: vec![vec![BigInt::from(1); prefix_len as usize]],
        dropped: Vec::new(),
    };
    for e in 0..=max_e {
        let scale = p.get().pow(e);
        for i in 0..scale {
            let label = KernelRow::Subsequence { e, i };
            let row: Option<Vec<BigInt>> = (0..prefix_len)
                .map(|n| values[(scale * n + i) as usize].finite().map(BigInt::from))
                .collect();
            match row {
                Some(row) => {
                    m.labels.push(label);
                    m.rows.push(row);
                }
                None => m.dropped.push(label),
            }
        }
    }
    Ok(m)
}

/// Rank of integer rows by integer-only elimination.
///
/// Rows are reduced one at a time against an echelon basis with
/// cross-multiplication, `r ← b_lead·r − r_lead·b`, and each new basis row
/// is divided by the gcd of its entries. No fractions appear, so the result
/// is exact. Returns the rank and the indices of the rows that enlarged
/// the span.
pub fn fraction_free_rank(rows: &[Vec<BigInt>]) -> (usize, Vec<usize>) {
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        loop {
            let Some(lead) = r.iter().position(|x| !x.is_zero()) else { break };
            match basis.iter().find(|(col, _)| *col == lead) {
                Some((_, b)) => {
                    let (bl, rl) = (b[lead].clone(), r[lead].clone());
                    for (x, y) in r.iter_mut().zip(b) {
                        *x = &*x * &bl - &rl * y;
                    }
                    make_primitive(&mut r);
                }
                None => {
                    make_primitive(&mut r);
                    basis.push((lead, r));
                    chosen.push(idx);
                    break;
                }
            }
        }
    }
    (chosen.len(), chosen)
}

fn make_primitive(r: &mut [BigInt]) {
    let g = r.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in r.iter_mut() {
            *x /= &g;
        }
    }
    if r.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in r.iter_mut() {
            *x = -&*x;
        }
    }
}

/// Rank over ℚ of the truncated p-kernel (plus the constant sequence).
pub fn estimate_kernel_rank(table: &ValuationTable, max_e: u32, prefix_len: u64) -> Result<KernelRankEstimate> {
    let m = kernel_matrix(table, max_e, prefix_len)?;
    let (rank, chosen) = fraction_free_rank(&m.rows);
    Ok(KernelRankEstimate {
        prefix_len,
        max_e,
        rank,
        basis_labels: chosen.into_iter().map(|i| m.labels[i]).collect(),
        dropped: m.dropped,
        examined: m.rows.len(),
    })
}
