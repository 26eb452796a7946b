use std::path::Path;

use super::{parse_bfile, NRange, VerificationReport};
use crate::arith::{vp_rat, ExactRational, PadicVal, Prime};
use crate::error::Result;
use crate::harness::Mismatch;
use crate::polyseq::SequenceSpec;
use crate::predictors::Standing;

/// Compares a b-file against `spec` on every index the two share.
///
/// With `p` set, the b-file is read as ν_p of the sequence; indices where
/// the sequence vanishes are counted as skipped. A missing file yields a
/// `skipped` report rather than an error.
pub fn oeis_check(spec: &SequenceSpec, p: Option<Prime>, path: &Path) -> Result<VerificationReport> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            return Ok(VerificationReport::skipped(format!("oeis:{name}"), "b-file not found"));
        }
        Err(e) => return Err(e.into()),
    };
    oeis_check_text(&name, spec, p, &text)
}

pub fn oeis_check_text(name: &str, spec: &SequenceSpec, p: Option<Prime>, text: &str) -> Result<VerificationReport> {
    let check = format!("oeis:{name}");
    let records: Vec<_> = parse_bfile(text)?.into_iter().filter(|r| r.index >= 0).collect();
    let Some(last) = records.last() else {
        return Ok(VerificationReport::skipped(check, "no overlapping indices"));
    };
    let max_index = last.index as u64;
    let first = records[0].index as u64;
    let mut mismatches = Vec::new();
    let mut checked = 0;
    let mut skipped = 0;
    let mut recs = records.iter().peekable();
    for (n, value) in spec.stream().take(max_index as usize + 1).enumerate() {
        let n = n as u64;
        let Some(rec) = recs.next_if(|r| r.index as u64 == n) else { continue };
        let expected = ExactRational::from(rec.value.clone());
        match p {
            Some(p) => match vp_rat(p, &value) {
                PadicVal::Infinite => skipped += 1,
                actual => {
                    checked += 1;
                    if expected != ExactRational::from(actual.finite().unwrap_or_default()) {
                        mismatches.push(Mismatch::new(n, &rec.value, actual).note("b-file vs nu_p"));
                    }
                }
            },
            None => {
                checked += 1;
                if expected != value {
                    mismatches.push(Mismatch::new(n, &rec.value, &value).note("b-file vs exact"));
                }
            }
        }
    }
    Ok(VerificationReport::finish(
        check,
        Standing::Theorem,
        p,
        Some(spec.to_string()),
        NRange::new(first, max_index).ok(),
        checked,
        skipped,
        mismatches,
    ))
}
