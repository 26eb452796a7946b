use std::fs;
use std::path::{Path, PathBuf};

use lpv_core::arith::Prime;
use lpv_core::kernel::{build_table, TableOptions, ValuationTable};
use lpv_core::polyseq::SequenceSpec;
use lpv_core::Result;

fn file_name(spec: &SequenceSpec, p: Prime) -> String {
    let s: String = spec
        .to_string()
        .chars()
        .map(|c| match c {
            ':' => '@',
            '/' => '_',
            c => c,
        })
        .collect();
    format!("{s}.p{p}.tbl")
}

/// Builds a valuation table, reusing and refreshing a table file under
/// `dir` when one is given. A cached table longer than needed is truncated.
pub fn table(dir: Option<&Path>, spec: &SequenceSpec, p: Prime, n_max: u64) -> Result<ValuationTable> {
    let Some(dir) = dir else {
        return build_table(spec, p, n_max, &TableOptions::default());
    };
    let path: PathBuf = dir.join(file_name(spec, p));
    if let Ok(text) = fs::read_to_string(&path) {
        // An unreadable or foreign cache file is rebuilt rather than trusted.
        if let Ok(t) = ValuationTable::parse(&text) {
            if t.spec() == spec && t.p() == p && t.n_max() >= n_max {
                let values = t.values()[..=n_max as usize].to_vec();
                return ValuationTable::from_values(spec.clone(), p, values);
            }
        }
    }
    let t = build_table(spec, p, n_max, &TableOptions::default())?;
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, t.to_text())?;
    fs::rename(&tmp, &path)?;
    Ok(t)
}
