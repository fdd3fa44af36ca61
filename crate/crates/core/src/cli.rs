//! Command-line front end.
//!
//! Exit codes: `verify` returns 0 when every identity is PROVED, 1 when any is
//! REFUTED, and 2 on errors (unreadable file, parse failure, order cap).
//! `fuzz` returns 0 when every identity passes, 1 on any counterexample and
//! 2 on errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::lang::{parse_file_with, Identity, Location, ParseOptions};
use crate::prover::{fuzz, prove, FuzzConfig, FuzzOutcome, ProverConfig, Verdict, DEFAULT_MAX_ORDER};

#[derive(Debug, Parser)]
#[command(name = "horadam", version, about = "Prove identities among Horadam sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prove every identity in the given files.
    Verify(VerifyArgs),
    /// Check every identity numerically at random points.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Number of random trials per identity.
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Scalars and indices are drawn from -RANGE..=RANGE.
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(i64).range(1..))]
    pub range: i64,
}

impl OracleArgs {
    fn config(&self) -> FuzzConfig {
        FuzzConfig {
            trials: self.trials,
            seed: self.seed,
            range: self.range,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    /// Write one JSON certificate per identity into this directory.
    #[arg(long, value_name = "DIR")]
    pub cert_out: Option<PathBuf>,
    /// Preferred elimination order, e.g. "m,n,k". Names an identity does not
    /// declare are skipped; undeclared-here variables follow in declaration
    /// order.
    #[arg(long, value_name = "VARS")]
    pub elim_order: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Largest index coefficient accepted by the parser.
    #[arg(long, default_value_t = 8)]
    pub slope_cap: i64,
    /// Run the numeric oracle on every PROVED identity.
    #[arg(long)]
    pub fuzz_after: bool,
    /// Include wall-clock milliseconds in certificates.
    #[arg(long)]
    pub cert_timing: bool,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FuzzArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    #[arg(long, default_value_t = 8)]
    pub slope_cap: i64,
    #[command(flatten)]
    pub oracle: OracleArgs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub path: PathBuf,
    pub location: Location,
    /// `PROVED`, `REFUTED` or `ABORTED` for `verify`; `PASS` or
    /// `COUNTEREXAMPLE` for `fuzz`.
    pub outcome: String,
    pub certificate: Option<PathBuf>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    pub entries: Vec<ReportEntry>,
    pub proved: usize,
    pub refuted: usize,
    pub aborted: usize,
    pub passed: usize,
    pub counterexamples: usize,
    /// Diagnostics for files or identities that could not be processed.
    pub errors: Vec<String>,
}

impl RunReport {
    pub fn verify_exit_code(&self) -> i32 {
        if !self.errors.is_empty() || self.aborted > 0 {
            2
        } else if self.refuted > 0 {
            1
        } else {
            0
        }
    }

    pub fn fuzz_exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            2
        } else if self.counterexamples > 0 {
            1
        } else {
            0
        }
    }
}

fn load(path: &Path, slope_cap: i64, report: &mut RunReport, err: &mut dyn Write) -> Vec<Identity> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let msg = format!("{}: error: cannot read file: {e}", path.display());
            let _ = writeln!(err, "{msg}");
            report.errors.push(msg);
            return Vec::new();
        }
    };
    match parse_file_with(&text, &ParseOptions { slope_cap }) {
        Ok(ids) => ids,
        Err(e) => {
            let msg = format!("{}:{}: error: {}", path.display(), e.location, e.kind);
            let _ = writeln!(err, "{msg}");
            report.errors.push(msg);
            Vec::new()
        }
    }
}

/// Elimination order for `id`: the preferred names it declares, then its
/// remaining variables in declaration order.
fn order_for(id: &Identity, preferred: &[String]) -> Vec<String> {
    let mut order: Vec<String> = preferred
        .iter()
        .filter(|n| id.vars.contains(n))
        .cloned()
        .collect();
    order.dedup();
    for v in &id.vars {
        if !order.contains(v) {
            order.push(v.clone());
        }
    }
    order
}

fn cert_name(path: &Path, loc: Location) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("identity");
    format!("{stem}-L{}.json", loc.line)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> RunReport {
    let mut report = RunReport::default();
    let preferred: Vec<String> = args
        .elim_order
        .as_deref()
        .map(|s| {
            s.split(',')
                .map(|v| v.trim().to_string())
                .filter(|v| !v.is_empty())
                .collect()
        })
        .unwrap_or_default();
    if let Some(dir) = &args.cert_out {
        if let Err(e) = fs::create_dir_all(dir) {
            let msg = format!("{}: error: cannot create directory: {e}", dir.display());
            let _ = writeln!(err, "{msg}");
            report.errors.push(msg);
            return report;
        }
    }
    for path in &args.paths {
        for id in load(path, args.slope_cap, &mut report, err) {
            let config = ProverConfig {
                max_order: args.max_order,
                elimination_order: Some(order_for(&id, &preferred)),
                ..ProverConfig::default()
            };
            let where_ = format!("{}:{}", path.display(), id.location.line);
            let cert = match prove(&id, &config) {
                Ok(c) => c,
                Err(e) => {
                    let msg = format!("{}:{}: error: {e}", path.display(), id.location);
                    let _ = writeln!(err, "{msg}");
                    report.errors.push(msg);
                    continue;
                }
            };
            match &cert.verdict {
                Verdict::Proved => report.proved += 1,
                Verdict::Refuted { .. } => report.refuted += 1,
                Verdict::Aborted { reason } => {
                    report.aborted += 1;
                    let _ = writeln!(err, "{}:{}: error: {reason}", path.display(), id.location);
                }
            }
            let _ = writeln!(
                out,
                "{:<8} {where_}  orders {:?}  {} ms",
                cert.verdict.label(),
                cert.level_orders(),
                cert.elapsed.as_millis()
            );
            if let Some(w) = cert.witness() {
                let _ = writeln!(out, "         nonzero at {}: {}", w.at, w.polynomial);
            }
            let mut cert_path = None;
            if let Some(dir) = &args.cert_out {
                let file = dir.join(cert_name(path, id.location));
                match fs::write(&file, cert.to_json(args.cert_timing)) {
                    Ok(()) => cert_path = Some(file),
                    Err(e) => {
                        let msg = format!("{}: error: cannot write certificate: {e}", file.display());
                        let _ = writeln!(err, "{msg}");
                        report.errors.push(msg);
                    }
                }
            }
            if args.fuzz_after && cert.verdict.is_proved() {
                match fuzz(&id, &args.oracle.config()) {
                    Ok(FuzzOutcome::Pass { .. }) => {}
                    Ok(FuzzOutcome::Counterexample(c)) => {
                        let msg = format!(
                            "{}:{}: error: proved identity fails numerically: {c}",
                            path.display(),
                            id.location
                        );
                        let _ = writeln!(err, "{msg}");
                        report.errors.push(msg);
                    }
                    Err(e) => {
                        let msg = format!("{}:{}: error: {e}", path.display(), id.location);
                        let _ = writeln!(err, "{msg}");
                        report.errors.push(msg);
                    }
                }
            }
            report.entries.push(ReportEntry {
                path: path.clone(),
                location: id.location,
                outcome: cert.verdict.label().to_string(),
                certificate: cert_path,
                elapsed: cert.elapsed,
            });
        }
    }
    let _ = writeln!(
        out,
        "{} identities: {} proved, {} refuted, {} aborted",
        report.entries.len(),
        report.proved,
        report.refuted,
        report.aborted
    );
    report
}

pub fn cmd_fuzz(args: &FuzzArgs, out: &mut dyn Write, err: &mut dyn Write) -> RunReport {
    let mut report = RunReport::default();
    let config = args.oracle.config();
    for path in &args.paths {
        for id in load(path, args.slope_cap, &mut report, err) {
            let start = std::time::Instant::now();
            let where_ = format!("{}:{}", path.display(), id.location.line);
            let outcome = match fuzz(&id, &config) {
                Ok(FuzzOutcome::Pass { trials }) => {
                    report.passed += 1;
                    let _ = writeln!(out, "PASS           {where_}  {trials} trials");
                    "PASS"
                }
                Ok(FuzzOutcome::Counterexample(c)) => {
                    report.counterexamples += 1;
                    let _ = writeln!(out, "COUNTEREXAMPLE {where_}  {c}");
                    "COUNTEREXAMPLE"
                }
                Err(e) => {
                    let msg = format!("{}:{}: error: {e}", path.display(), id.location);
                    let _ = writeln!(err, "{msg}");
                    report.errors.push(msg);
                    continue;
                }
            };
            report.entries.push(ReportEntry {
                path: path.clone(),
                location: id.location,
                outcome: outcome.to_string(),
                certificate: None,
                elapsed: start.elapsed(),
            });
        }
    }
    let _ = writeln!(
        out,
        "{} identities: {} passed, {} counterexamples",
        report.entries.len(),
        report.passed,
        report.counterexamples
    );
    report
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match &cli.command {
        Command::Verify(a) => cmd_verify(a, out, err).verify_exit_code(),
        Command::Fuzz(a) => cmd_fuzz(a, out, err).fuzz_exit_code(),
    }
}
