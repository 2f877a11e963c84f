//! Command-line front end.
//!
//! Exit codes: 0 = exists / holds / all agree, 1 = not-exists / fails /
//! disagreement, 2 = malformed input or flags, 3 = internal invariant violation.

use crate::document::CertificateDocument;
use crate::engine::{decide, Mode};
use crate::error::Error;
use crate::instance::Instance;
use crate::majorization::{check_exact, check_weak};
use crate::oracle::{
    differential_check, enumerate, AgreementStatus, SearchBounds, DEFAULT_MAX_CANDIDATES,
};
use crate::partition::Partition;
use crate::random::{random_instance, InstanceShape};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(name = "genmaj", version)]
#[command(about = "Decide simultaneous generalized majorization of integer partitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Weak,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Weak => Mode::Weak,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide existence and print a certificate
    Check {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Instance file {"a":[..],"b":[..],"c":[..],"d":[..]}
        #[arg(long)]
        input: PathBuf,
        /// Include the unflattened witness and the homogenization record
        #[arg(long)]
        emit_witness: bool,
        /// Include the classification trace
        #[arg(long)]
        trace: bool,
    },
    /// Check a given g against both pairs
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Entries of g, e.g. "3,2" or "[3,2]"
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Brute-force search for a witness
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
        max_candidates: u64,
    },
    /// Compare engine and oracle on random instances
    Fuzz {
        #[arg(long)]
        instances: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long, allow_hyphen_values = true)]
        max_val: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        min_val: i64,
        #[arg(long)]
        seed: u64,
        /// Directory for disagreement dumps
        #[arg(long, default_value = ".")]
        dump_dir: PathBuf,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InternalInvariantViolated(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("invalid instance {}: {e}", path.display())))
}

fn parse_list(raw: &str) -> Result<Vec<i64>, Failure> {
    let inner = raw.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| usage(format!("invalid integer {t:?} in g")))
        })
        .collect()
}

/// Runs the tool on `argv` (including the program name), writing to the given streams.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Check {
            mode,
            input,
            emit_witness,
            trace,
        } => {
            let inst = read_instance(&input)?;
            let cert = decide(&inst, mode.into())?;
            let doc = CertificateDocument::from_certificate(&cert, trace, emit_witness);
            emit(out, &doc.to_json())?;
            Ok(if cert.exists() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Verify { input, g, mode } => {
            let inst = read_instance(&input)?;
            let g = Partition::new(parse_list(&g)?).map_err(|e| usage(format!("g: {e}")))?;
            let check = match mode {
                ModeArg::Weak => check_weak,
                ModeArg::Exact => check_exact,
            };
            let d_a = check(&g, inst.d(), inst.a())?;
            let c_b = check(&g, inst.c(), inst.b())?;
            let holds = d_a.holds && c_b.holds;
            let mode: Mode = mode.into();
            let doc = json!({ "mode": mode, "g": g, "d_a": d_a, "c_b": c_b, "holds": holds });
            emit(out, &doc.to_string())?;
            Ok(if holds { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Oracle {
            input,
            mode,
            lo,
            hi,
            max_candidates,
        } => {
            let inst = read_instance(&input)?;
            let default = SearchBounds::default_for(&inst);
            let bounds = SearchBounds::new(
                lo.unwrap_or(default.lo),
                hi.unwrap_or(default.hi),
                max_candidates,
            )?;
            let outcome = enumerate(&inst, mode.into(), bounds);
            emit(
                out,
                &serde_json::to_string(&outcome).expect("outcome serializes"),
            )?;
            Ok(if outcome.found.is_some() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Fuzz {
            instances,
            max_len,
            max_val,
            min_val,
            seed,
            dump_dir,
        } => fuzz(
            instances,
            InstanceShape {
                max_len,
                min_val,
                max_val,
            },
            seed,
            &dump_dir,
            out,
            err,
        ),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| usage(format!("cannot write output: {e}")))
}

fn fuzz(
    count: usize,
    shape: InstanceShape,
    seed: u64,
    dump_dir: &Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut agreed, mut inconclusive, mut disagreed, mut internal) =
        (0usize, 0usize, 0usize, 0usize);
    let mut nonpositive_q = 0usize;
    let mut dumps = Vec::new();
    for index in 0..count {
        let inst = random_instance(&mut rng, shape).ok_or_else(|| {
            usage(
                "the requested shape admits no instance (need max-len >= 1 and min-val < max-val)",
            )
        })?;
        if let Ok(cert) = decide(&inst, Mode::Weak) {
            nonpositive_q += cert.sd.trace.iter().filter(|t| t.q <= 0).count();
        }
        let report = differential_check(&inst, SearchBounds::default_for(&inst));
        let statuses = [report.weak.status, report.exact.status];
        if report.weak.engine_error.is_some() || report.exact.engine_error.is_some() {
            internal += 1;
        }
        if report.agrees() {
            agreed += 1;
        } else if report.is_hard_failure() {
            disagreed += 1;
            let path = dump_dir.join(format!("genmaj-fuzz-seed{seed}-instance{index}.json"));
            std::fs::write(&path, report.dump())
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            let _ = writeln!(
                err,
                "instance {index}: engine and oracle disagree; dump written to {}",
                path.display()
            );
            dumps.push(path.display().to_string());
        } else if statuses.contains(&AgreementStatus::Inconclusive) {
            inconclusive += 1;
            let _ = writeln!(err, "instance {index}: oracle hit its candidate cap");
        }
    }
    let summary = json!({
        "instances": count,
        "seed": seed,
        "agreed": agreed,
        "inconclusive": inconclusive,
        "disagreed": disagreed,
        "engine_errors": internal,
        "nonpositive_q": nonpositive_q,
        "dumps": dumps,
    });
    emit(out, &summary.to_string())?;
    Ok(if agreed == count {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}
