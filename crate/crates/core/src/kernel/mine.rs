use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::ValuationTable;
use crate::arith::{PadicVal, Prime};
use crate::error::{Error, Result};

/// The claim V(p^e n + i) = V(p^e' n + j) + c for every n ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RelationCandidate {
    pub e: u32,
    pub i: u64,
    pub e_rhs: u32,
    pub j: u64,
    pub c: i64,
}

impl RelationCandidate {
    pub fn new(e: u32, i: u64, e_rhs: u32, j: u64, c: i64) -> Self {
        RelationCandidate { e, i, e_rhs, j, c }
    }

    /// Checks `i < p^e`, `e' ≤ e` and `j < p^e'`.
    pub fn validate(&self, p: Prime) -> Result<()> {
        let in_range = |e: u32, r: u64| p.checked_pow(e).is_some_and(|m| r < m);
        if self.e_rhs > self.e {
            return Err(Error::Hypothesis(format!("e' = {} exceeds e = {}", self.e_rhs, self.e)));
        }
        if !in_range(self.e, self.i) || !in_range(self.e_rhs, self.j) {
            return Err(Error::Hypothesis(format!("residue out of range in {self}")));
        }
        Ok(())
    }

    /// Renders with a custom sequence name, e.g. `A(9n+4) = A(3n+1) + 1`.
    pub fn display_with(&self, name: &str, p: Prime) -> String {
        let arg = |e: u32, r: u64| {
            let scale = p.get().pow(e);
            let lead = if scale == 1 { "n".to_string() } else { format!("{scale}n") };
            if r == 0 {
                lead
            } else {
                format!("{lead}+{r}")
            }
        };
        let mut out = format!("{name}({}) = {name}({})", arg(self.e, self.i), arg(self.e_rhs, self.j));
        match self.c {
            0 => {}
            c if c > 0 => out.push_str(&format!(" + {c}")),
            c => out.push_str(&format!(" - {}", -c)),
        }
        out
    }
}

impl fmt::Display for RelationCandidate {
    /// Without a prime at hand the scales are written as powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "V(p^{} n + {}) = V(p^{} n + {}) + {}",
            self.e, self.i, self.e_rhs, self.j, self.c
        )
    }
}

/// A candidate together with the evidence gathered for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinedRelation {
    pub candidate: RelationCandidate,
    /// Indices n at which both sides were finite and compared.
    pub support: u64,
    pub violations: u64,
    /// Indices skipped because a side was infinite.
    pub skipped: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct MineConfig {
    pub max_e: u32,
    pub min_support: u64,
    /// Largest |c| considered; `None` means 2p.
    pub offset_bound: Option<i64>,
}

impl MineConfig {
    pub const DEFAULT_MIN_SUPPORT: u64 = 50;

    pub fn new(max_e: u32) -> Self {
        MineConfig { max_e, min_support: Self::DEFAULT_MIN_SUPPORT, offset_bound: None }
    }

    pub fn offset_bound_for(&self, p: Prime) -> i64 {
        self.offset_bound.unwrap_or(2 * p.get() as i64)
    }
}

fn pow(p: Prime, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::TableTooShort(format!("{p}^{e} overflows")))
}

/// Pairs (lhs, rhs) of the relation at every n where both indices exist.
fn sides(table: &ValuationTable, scale_l: u64, i: u64, scale_r: u64, j: u64) -> impl Iterator<Item = (PadicVal, PadicVal)> + '_ {
    let n_max = table.n_max();
    let vals = table.values();
    (0u64..)
        .map(move |n| (scale_l.checked_mul(n).and_then(|x| x.checked_add(i)), scale_r.checked_mul(n).and_then(|x| x.checked_add(j))))
        .take_while(move |(l, r)| matches!((l, r), (Some(l), Some(r)) if *l <= n_max && *r <= n_max))
        .map(move |(l, r)| (vals[l.unwrap() as usize], vals[r.unwrap() as usize]))
}

/// Counts support, violations and skipped indices of `cand` over the table.
pub fn verify_relation(table: &ValuationTable, cand: RelationCandidate) -> MinedRelation {
    let p = table.p();
    let mut mined = MinedRelation { candidate: cand, support: 0, violations: 0, skipped: 0 };
    let (Some(sl), Some(sr)) = (p.checked_pow(cand.e), p.checked_pow(cand.e_rhs)) else {
        return mined;
    };
    for (l, r) in sides(table, sl, cand.i, sr, cand.j) {
        match (l, r) {
            (PadicVal::Finite(l), PadicVal::Finite(r)) => {
                mined.support += 1;
                if l != r + cand.c {
                    mined.violations += 1;
                }
            }
            _ => mined.skipped += 1,
        }
    }
    mined
}

/// The unique offset making (e,i) ← (e',j) hold, if any, with its evidence.
fn fit_offset(table: &ValuationTable, e: u32, i: u64, e_rhs: u32, j: u64, bound: i64) -> Option<MinedRelation> {
    let p = table.p();
    let (sl, sr) = (p.checked_pow(e)?, p.checked_pow(e_rhs)?);
    let mut c = None;
    let mut support = 0;
    let mut skipped = 0;
    for (l, r) in sides(table, sl, i, sr, j) {
        match (l, r) {
            (PadicVal::Finite(l), PadicVal::Finite(r)) => {
                let d = l - r;
                match c {
                    None if d.abs() > bound => return None,
                    None => c = Some(d),
                    Some(c) if c != d => return None,
                    Some(_) => {}
                }
                support += 1;
            }
            _ => skipped += 1,
        }
    }
    Some(MinedRelation {
        candidate: RelationCandidate::new(e, i, e_rhs, j, c?),
        support,
        violations: 0,
        skipped,
    })
}

/// Every single-term relation V(p^e n+i) = V(p^e' n+j) + c with
/// 1 ≤ e ≤ max_e, e' ≤ e and |c| within the offset bound that has no
/// violation and enough support. For each left side (e, i) only the
/// preferred right side is kept: smallest e', then smallest j. The offset
/// is unique once (e', j) is fixed. Output is sorted by (e, i).
pub fn mine_relations(table: &ValuationTable, cfg: &MineConfig) -> Result<Vec<MinedRelation>> {
    let p = table.p();
    let top = pow(p, cfg.max_e)?;
    let n_max = table.n_max();
    // The sparsest left side at the deepest level is i = p^max_e − 1.
    let available = if n_max + 1 >= top { (n_max + 1 - top) / top + 1 } else { 0 };
    if available < cfg.min_support {
        return Err(Error::TableTooShort(format!(
            "level {} has {available} indices per residue, {} required",
            cfg.max_e, cfg.min_support
        )));
    }
    let bound = cfg.offset_bound_for(p);
    let mut lhs = Vec::new();
    for e in 1..=cfg.max_e {
        for i in 0..pow(p, e)? {
            lhs.push((e, i));
        }
    }
    let found: Vec<Option<MinedRelation>> = lhs
        .par_iter()
        .map(|&(e, i)| {
            for e_rhs in 0..=e {
                for j in 0..p.get().pow(e_rhs) {
                    if (e_rhs, j) == (e, i) {
                        continue;
                    }
                    if let Some(m) = fit_offset(table, e, i, e_rhs, j, bound) {
                        if m.support >= cfg.min_support {
                            return Some(m);
                        }
                    }
                }
            }
            None
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Drops relations whose left side lies inside a shallower left side that
/// already has a relation: if V(p^e₁ n + i₁) is determined, so is
/// V(p^e n + i) for every i ≡ i₁ (mod p^e₁), e > e₁.
pub fn irredundant(relations: &[MinedRelation], p: Prime) -> Vec<MinedRelation> {
    relations
        .iter()
        .filter(|m| {
            let c = m.candidate;
            !relations.iter().any(|o| {
                let oc = o.candidate;
                oc.e < c.e && p.checked_pow(oc.e).is_some_and(|s| c.i % s == oc.i)
            })
        })
        .cloned()
        .collect()
}
