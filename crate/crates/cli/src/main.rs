mod cache;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use lpv_core::arith::{vp_rat, ExactRational, Prime};
use lpv_core::harness::{self, NRange, Status, TheoremId, VerificationReport, VerifyRequest};
use lpv_core::kernel::{estimate_kernel_rank, irredundant, mine_relations, MineConfig};
use lpv_core::polyseq::SequenceSpec;
use output::{Format, RecordWriter};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lpv", version, about = "Exact p-adic valuations of Legendre-family sequences")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Leave the generated_at field out of reports.
    #[arg(long, global = true)]
    no_timestamp: bool,
    /// Worker threads (default: one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Directory of valuation table files reused across runs.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SeqArgs {
    /// Sequence name (legendre, q, cigler, delannoy, dsum, csum, cubesum) or a canonical spec like `legendre:3`.
    #[arg(long)]
    seq: String,
    /// Evaluation point for legendre, q and cigler.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<ExactRational>,
}

impl SeqArgs {
    fn spec(&self) -> lpv_core::Result<SequenceSpec> {
        if self.seq.contains(':') {
            if self.r.is_some() {
                return Err(lpv_core::Error::Parse("give r either in --seq or with --r, not both".into()));
            }
            return self.seq.parse();
        }
        SequenceSpec::from_parts(&self.seq, self.r.clone())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact values of a sequence.
    Eval {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        n: NRange,
    },
    /// p-adic valuations of a sequence; `inf` where the value is zero.
    Valuate {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        p: Prime,
        #[arg(long)]
        n: NRange,
    },
    /// Closed-form valuation predictions.
    Predict {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        p: Option<Prime>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<ExactRational>,
        #[arg(long)]
        n: NRange,
    },
    /// Compare a predictor against exact computation over a range.
    Verify {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        p: Option<Prime>,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<ExactRational>,
        #[arg(long)]
        n: NRange,
    },
    /// Search a valuation table for relations V(p^e n+i) = V(p^e' n+j) + c.
    Mine {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        p: Prime,
        /// Table length (default p^max_e * min_support * 2 - 1).
        #[arg(long = "N")]
        big_n: Option<u64>,
        #[arg(long, default_value_t = 2)]
        max_e: u32,
        #[arg(long)]
        min_support: Option<u64>,
        /// Largest |c| tried (default 2p).
        #[arg(long)]
        offset_bound: Option<i64>,
        /// Drop relations implied by a shallower one.
        #[arg(long)]
        irredundant: bool,
    },
    /// Rank of the truncated p-kernel of a valuation sequence.
    Rank {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        p: Prime,
        #[arg(long, default_value_t = 3)]
        max_e: u32,
        #[arg(long, default_value_t = 100)]
        prefix: u64,
    },
    /// Compare a local OEIS b-file against a sequence or its valuations.
    OeisCheck {
        #[command(flatten)]
        seq: SeqArgs,
        /// Compare ν_p of the sequence instead of raw values.
        #[arg(long)]
        p: Option<Prime>,
        #[arg(long)]
        bfile: PathBuf,
    },
}

/// Errors that map to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

const REPORT_COLUMNS: &[&str] = &[
    "kind", "check", "p", "r", "range", "status", "checked", "skipped", "n", "predicted", "actual", "note",
    "exact_value", "generated_at",
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn writer(cli: &Cli, columns: &'static [&'static str]) -> Result<RecordWriter, UsageError> {
    Ok(RecordWriter::new(cli.format, cli.out.as_deref(), columns)?)
}

fn run(cli: &Cli) -> Result<u8, UsageError> {
    match &cli.command {
        Command::Eval { seq, n } => {
            let spec = seq.spec()?;
            let mut w = writer(cli, &["n", "value"])?;
            for (i, v) in spec.stream().enumerate().skip(n.start as usize).take(n.len() as usize) {
                w.write(vec![json!(i), json!(v.to_string())])?;
            }
            w.finish()?;
            Ok(0)
        }
        Command::Valuate { seq, p, n } => {
            let spec = seq.spec()?;
            let mut w = writer(cli, &["n", "valuation"])?;
            if cli.cache.is_some() {
                let t = cache::table(cli.cache.as_deref(), &spec, *p, n.end)?;
                for i in n.iter() {
                    w.write(vec![json!(i), json!(t.values()[i as usize].to_string())])?;
                }
            } else {
                for (i, v) in spec.stream().enumerate().skip(n.start as usize).take(n.len() as usize) {
                    w.write(vec![json!(i), json!(vp_rat(*p, &v).to_string())])?;
                }
            }
            w.finish()?;
            Ok(0)
        }
        Command::Predict { theorem, p, r, n } => {
            let mut w = writer(cli, &["n", "prediction"])?;
            for i in n.iter() {
                let v = harness::predict(*theorem, *p, r.as_ref(), i)?;
                w.write(vec![json!(i), json!(v.to_string())])?;
            }
            w.finish()?;
            Ok(0)
        }
        Command::Verify { theorem, p, r, n } => {
            let mut req = VerifyRequest::new(*theorem, *n);
            req.p = *p;
            req.r = r.clone();
            let report = harness::verify(&req)?;
            emit_report(cli, report)
        }
        Command::Mine { seq, p, big_n, max_e, min_support, offset_bound, irredundant: only_irredundant } => {
            mine(cli, seq, *p, *big_n, *max_e, *min_support, *offset_bound, *only_irredundant)
        }
        Command::Rank { seq, p, max_e, prefix } => {
            let spec = seq.spec()?;
            let top = p.checked_pow(*max_e).ok_or_else(|| UsageError(format!("{p}^{max_e} overflows")))?;
            let n_max = top
                .checked_mul(*prefix)
                .and_then(|x| x.checked_sub(1))
                .ok_or_else(|| UsageError("prefix must be positive and p^max_e * prefix must fit".into()))?;
            let t = cache::table(cli.cache.as_deref(), &spec, *p, n_max)?;
            let est = estimate_kernel_rank(&t, *max_e, *prefix)?;
            let labels = |v: &[lpv_core::kernel::KernelRow]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
            let mut w = writer(cli, &["seq", "p", "max_e", "prefix_len", "rank", "examined", "basis", "dropped"])?;
            w.write(vec![
                json!(spec.to_string()),
                json!(p.get()),
                json!(est.max_e),
                json!(est.prefix_len),
                json!(est.rank),
                json!(est.examined),
                json!(labels(&est.basis_labels)),
                json!(labels(&est.dropped)),
            ])?;
            w.finish()?;
            Ok(0)
        }
        Command::OeisCheck { seq, p, bfile } => {
            let spec = seq.spec()?;
            let report = harness::oeis_check(&spec, *p, bfile)?;
            emit_report(cli, report)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn mine(
    cli: &Cli,
    seq: &SeqArgs,
    p: Prime,
    big_n: Option<u64>,
    max_e: u32,
    min_support: Option<u64>,
    offset_bound: Option<i64>,
    only_irredundant: bool,
) -> Result<u8, UsageError> {
    let spec = seq.spec()?;
    if max_e == 0 {
        return Err(UsageError("max-e must be at least 1".into()));
    }
    let cfg = MineConfig {
        max_e,
        min_support: min_support.unwrap_or(MineConfig::DEFAULT_MIN_SUPPORT),
        offset_bound,
    };
    let mut defaulted = Vec::new();
    if min_support.is_none() {
        defaulted.push("min_support");
    }
    if offset_bound.is_none() {
        defaulted.push("offset_bound");
    }
    let n_max = match big_n {
        Some(n) => n,
        None => {
            defaulted.push("N");
            p.checked_pow(max_e)
                .and_then(|t| t.checked_mul(cfg.min_support.max(1) * 2))
                .map(|x| x - 1)
                .ok_or_else(|| UsageError("default N overflows; pass --N".into()))?
        }
    };
    let table = cache::table(cli.cache.as_deref(), &spec, p, n_max)?;
    let mut found = mine_relations(&table, &cfg)?;
    if only_irredundant {
        found = irredundant(&found, p);
    }
    let mut w = writer(
        cli,
        &[
            "relation", "e", "i", "e_rhs", "j", "c", "support", "skipped", "seq", "p", "N", "max_e", "min_support",
            "offset_bound", "defaulted",
        ],
    )?;
    for m in &found {
        let c = m.candidate;
        w.write(vec![
            json!(c.display_with("A", p)),
            json!(c.e),
            json!(c.i),
            json!(c.e_rhs),
            json!(c.j),
            json!(c.c),
            json!(m.support),
            json!(m.skipped),
            json!(spec.to_string()),
            json!(p.get()),
            json!(n_max),
            json!(cfg.max_e),
            json!(cfg.min_support),
            json!(cfg.offset_bound_for(p)),
            json!(defaulted.join(" ")),
        ])?;
    }
    w.finish()?;
    Ok(0)
}

fn emit_report(cli: &Cli, mut report: VerificationReport) -> Result<u8, UsageError> {
    if !cli.no_timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        report = report.with_timestamp(secs);
    }
    let code = report.status.exit_code() as u8;
    let mut w = writer(cli, REPORT_COLUMNS)?;
    if w.format() == Format::Jsonl {
        w.write_json(&serde_json::to_value(&report)?)?;
    } else {
        write_report_csv(&mut w, &report)?;
    }
    w.finish()?;
    if report.status == Status::Skipped {
        if let Some(note) = &report.note {
            eprintln!("skipped: {note}");
        }
    }
    Ok(code)
}

fn opt<T: ToString>(v: Option<T>) -> Value {
    v.map_or(Value::Null, |x| json!(x.to_string()))
}

/// A summary row followed by one row per mismatch.
fn write_report_csv(w: &mut RecordWriter, r: &VerificationReport) -> std::io::Result<()> {
    let params = &r.parameters;
    let head = |kind: &str| {
        vec![
            json!(kind),
            json!(r.check),
            opt(params.p.map(|p| p.get())),
            opt(params.r.as_ref()),
            json!(params.range),
            json!(r.status.to_string()),
        ]
    };
    let mut row = head("summary");
    row.extend([
        json!(r.checked),
        json!(r.skipped),
        Value::Null,
        Value::Null,
        Value::Null,
        opt(r.note.as_ref()),
        Value::Null,
        opt(r.generated_at),
    ]);
    w.write(row)?;
    for m in &r.mismatches {
        let mut row = head("mismatch");
        row.extend([
            Value::Null,
            Value::Null,
            json!(m.n),
            json!(m.predicted),
            json!(m.actual),
            opt(m.note.as_ref()),
            opt(m.exact_value.as_ref()),
            opt(r.generated_at),
        ]);
        w.write(row)?;
    }
    Ok(())
}
