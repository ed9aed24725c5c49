//! Command-line front end.
//!
//! ```text
//! nci --ring zn:4 --r 2                       # nilpotency exponent of 2 in ℤ₄
//! nci --ring zn:4 --f 1,2 --g 1,2 --i 1       # coefficient a₁ of the unit 1+2T
//! nci --ring zn:12 verify                     # oracle cross-check sweep
//! ```
//!
//! Exit codes: 0 success, 1 usage error, 2 precondition failure, 3 internal
//! invariant violation.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::engine::{Outcome, Trace};
use crate::error::Error;
use crate::generation::WitnessCode;
use crate::nilradical::{
    audited_nilpotency_exponent, default_max_iters, members, Extraction, FinitePsi, PsiFunctional, PsiVerdict,
    ScanOrder,
};
use crate::oracle::{self, DEFAULT_IDEAL_BOUND};
use crate::poly::{is_inverse_pair, nilpotent_coefficient_exponent, psi_from_inverse, Polynomial};
use crate::ring::{Elem, Enumeration, FiniteRing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nci", version, about = "Extract nilpotency exponents from prime-ideal evidence")]
pub struct Cli {
    /// Ring descriptor: `zn:<n>` or `prod:<desc>,<desc>`.
    #[arg(long)]
    pub ring: String,

    /// Element whose nilpotency exponent to extract (canonical index).
    #[arg(long)]
    pub r: Option<String>,

    /// Unit polynomial, comma-separated coefficients, constant first.
    #[arg(long)]
    pub f: Option<String>,

    /// Inverse of `--f`.
    #[arg(long)]
    pub g: Option<String>,

    /// Index of the coefficient of `--f` to treat.
    #[arg(long)]
    pub i: Option<usize>,

    /// Step cap for the search (default 10·|ring|²).
    #[arg(long)]
    pub max_iters: Option<usize>,

    /// Write the run's trace as JSON lines.
    #[arg(long)]
    pub trace: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Cross-check the result against brute-force oracles.
    #[arg(long)]
    pub verify: bool,

    /// Violation selection for the finite-ring ψ.
    #[arg(long, value_enum, default_value_t = Scan::Lowest)]
    pub scan: Scan,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the nilradical against prime ideals and audit every nilpotent element.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scan {
    Lowest,
    First,
}

impl From<Scan> for ScanOrder {
    fn from(s: Scan) -> Self {
        match s {
            Scan::Lowest => ScanOrder::LowestIndex,
            Scan::First => ScanOrder::FirstHit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    Element { r: Elem },
    Poly { f: Polynomial, g: Polynomial, i: usize },
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub ring: FiniteRing,
    pub mode: Mode,
    pub max_iters: usize,
    pub trace: Option<PathBuf>,
    pub format: Format,
    pub verify: bool,
    pub scan: ScanOrder,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Run(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Run(Error::RingParse { .. } | Error::ElementParse { .. } | Error::ElementOutOfRange { .. }) => {
                EXIT_USAGE
            }
            CliError::Run(e) if e.is_precondition() => EXIT_PRECONDITION,
            CliError::Run(_) | CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let ring: FiniteRing = cli.ring.parse()?;
        let poly_given = cli.f.is_some() || cli.g.is_some() || cli.i.is_some();
        let mode = match (cli.command, &cli.r, poly_given) {
            (Some(Command::Verify), None, false) => Mode::Verify,
            (None, Some(r), false) => Mode::Element { r: ring.parse_element(r)? },
            (None, None, true) => {
                let (Some(f), Some(g), Some(i)) = (&cli.f, &cli.g, cli.i) else {
                    return Err(CliError::Usage("polynomial mode needs --f, --g and --i".into()));
                };
                Mode::Poly { f: Polynomial::parse(&ring, f)?, g: Polynomial::parse(&ring, g)?, i }
            }
            (None, None, false) => {
                return Err(CliError::Usage("give --r, or --f/--g/--i, or the verify command".into()))
            }
            _ => return Err(CliError::Usage("--r, --f/--g/--i and verify are mutually exclusive".into())),
        };
        let max_iters = cli.max_iters.unwrap_or_else(|| default_max_iters(&ring));
        if max_iters == 0 {
            return Err(CliError::Usage("--max-iters must be positive".into()));
        }
        Ok(RunConfig {
            ring,
            mode,
            max_iters,
            trace: cli.trace,
            format: cli.format,
            verify: cli.verify,
            scan: cli.scan.into(),
        })
    }
}

/// One row of the human-readable run summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepSummary {
    pub i: usize,
    #[serde(rename = "m")]
    pub members: Vec<Elem>,
    #[serde(rename = "psi")]
    pub verdict: PsiVerdict,
    pub removed: Option<usize>,
    pub evidence: Option<WitnessCode>,
}

/// Re-derives ψ's verdict at every state of a trace.
pub fn summarize<P: PsiFunctional>(
    enumeration: &Enumeration,
    psi: &P,
    trace: &Trace<WitnessCode>,
) -> Result<Vec<StepSummary>, Error> {
    let states = trace.states();
    trace
        .steps
        .iter()
        .zip(&states)
        .map(|(step, state)| {
            let set = members(state, enumeration);
            let verdict = psi.verdict(enumeration, &set)?;
            let (removed, evidence) = match step.outcome {
                Outcome::Removed(n) => (Some(n), Some(step.p.clone())),
                Outcome::Terminated => (None, None),
            };
            Ok(StepSummary { i: step.i, members: set.iter().collect(), verdict, removed, evidence })
        })
        .collect()
}

fn verdict_reason(verdict: PsiVerdict, enumeration: &Enumeration) -> String {
    let ring = enumeration.ring();
    let x = |n: usize| ring.display(enumeration.get(n));
    match verdict {
        PsiVerdict::ZeroAbsent => "0 ∉ M".into(),
        PsiVerdict::OneIn => "1 ∈ M".into(),
        PsiVerdict::TargetIn => format!("{} ∈ M", x(2)),
        PsiVerdict::AddViolation(i, j, k) => format!("{} + {} = {} ∉ M", x(i), x(j), x(k)),
        PsiVerdict::AbsorbViolation(i, j, k) => format!("{}·{} = {} ∉ M", x(i), x(j), x(k)),
        PsiVerdict::PrimeViolation(i, j, k) => format!("{}·{} = {} ∈ M with {}, {} ∉ M", x(i), x(j), x(k), x(i), x(j)),
    }
}

fn render_step(summary: &StepSummary, enumeration: &Enumeration, trace: &Trace<WitnessCode>) -> String {
    let ring = enumeration.ring();
    let set: Vec<String> = summary.members.iter().map(|&x| ring.display(x)).collect();
    let mut line = format!(
        "s{}: M = {{{}}}, ψ(M) = {} ({})",
        summary.i,
        set.join(", "),
        summary.verdict,
        verdict_reason(summary.verdict, enumeration)
    );
    match (summary.removed, &summary.evidence) {
        (Some(n), Some(code)) => {
            let state = &trace.states()[summary.i];
            let terms: Vec<String> = state
                .segment_with(n)
                .iter()
                .zip(&code.coefficients)
                .map(|(&m, &b)| format!("{}·{}", ring.display(enumeration.get(m)), ring.display(b)))
                .collect();
            line.push_str(&format!(
                "; remove {} with evidence {} = {}^{}",
                ring.display(enumeration.get(n)),
                terms.join(" + "),
                ring.display(enumeration.get(2)),
                code.exponent
            ));
        }
        _ => line.push_str("; terminate"),
    }
    line
}

fn write_trace(config: &RunConfig, trace: &Trace<WitnessCode>) -> Result<(), CliError> {
    if let Some(path) = &config.trace {
        fs::write(path, trace.to_json_lines())?;
    }
    Ok(())
}

fn oracle_line(config: &RunConfig, r: Elem, exponent: u64) -> Result<Option<(u64, bool)>, CliError> {
    if !config.verify {
        return Ok(None);
    }
    let ring = &config.ring;
    let min = oracle::min_nilpotency_exponent(ring, r)
        .ok_or_else(|| Error::InternalInvariant(format!("oracle says {} is not nilpotent", ring.display(r))))?;
    Ok(Some((min, exponent >= min && ring.pow(r, exponent) == ring.zero())))
}

fn report_extraction(
    config: &RunConfig,
    r: Elem,
    extraction: &Extraction,
    summary: Option<&[StepSummary]>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    write_trace(config, &extraction.trace)?;
    let ring = &config.ring;
    let check = oracle_line(config, r, extraction.exponent)?;
    match config.format {
        Format::Json => {
            let mut doc = json!({
                "ring": ring.to_string(),
                "r": r,
                "e": extraction.exponent,
                "steps": extraction.trace.len(),
                "removals": extraction.trace.removals().collect::<Vec<_>>(),
            });
            if let Some(summary) = summary {
                doc["summary"] = serde_json::to_value(summary).expect("summaries serialize");
            }
            if let Some((min, ok)) = check {
                doc["min_exponent"] = json!(min);
                doc["verified"] = json!(ok);
            }
            writeln!(out, "{doc}")?;
        }
        Format::Text => {
            if let (Some(summary), Some(enumeration)) = (summary, &extraction.enumeration) {
                for s in summary {
                    writeln!(out, "{}", render_step(s, enumeration, &extraction.trace))?;
                }
            }
            writeln!(
                out,
                "ring {ring}, r = {}: e = {} ({} steps)",
                ring.display(r),
                extraction.exponent,
                extraction.trace.len()
            )?;
            if let Some((min, ok)) = check {
                writeln!(out, "oracle minimal exponent {min}: {}", if ok { "pass" } else { "FAIL" })?;
            }
        }
    }
    if let Some((_, false)) = check {
        return Err(Error::InternalInvariant("extracted exponent fails the oracle check".into()).into());
    }
    Ok(())
}

pub fn cmd_element(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let Mode::Element { r } = config.mode else {
        return Err(CliError::Usage("element mode requires --r".into()));
    };
    let psi = FinitePsi::new(config.scan);
    let (extraction, audit) = audited_nilpotency_exponent(&config.ring, r, psi, config.max_iters)?;
    if !audit.passed() {
        return Err(Error::InternalInvariant(format!("run audit failed: {audit:?}")).into());
    }
    let summary = match (&extraction.enumeration, config.format) {
        (Some(enumeration), Format::Text) if config.ring.len() <= 16 => {
            Some(summarize(enumeration, &psi, &extraction.trace)?)
        }
        _ => None,
    };
    report_extraction(config, r, &extraction, summary.as_deref(), out)
}

pub fn cmd_poly(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let Mode::Poly { f, g, i } = &config.mode else {
        return Err(CliError::Usage("polynomial mode requires --f, --g and --i".into()));
    };
    let ring = &config.ring;
    if !is_inverse_pair(ring, f, g) {
        return Err(Error::NotInverse.into());
    }
    let extraction = nilpotent_coefficient_exponent(ring, f, g, *i, config.max_iters)?;
    let summary = match &extraction.enumeration {
        Some(enumeration) => Some(summarize(enumeration, &psi_from_inverse(ring, f, g, *i)?, &extraction.trace)?),
        None => None,
    };
    report_extraction(config, f.coeff(*i), &extraction, summary.as_deref(), out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRow {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

/// Oracle sweep over one ring: nilradical versus prime ideals, then every
/// nilpotent element through the audited pipeline.
pub fn verify_rows(ring: &FiniteRing, scan: ScanOrder) -> Result<Vec<VerifyRow>, Error> {
    let mut rows = Vec::new();
    let primes = oracle::prime_intersection(ring, DEFAULT_IDEAL_BOUND)?;
    let nil = oracle::nilradical(ring);
    rows.push(VerifyRow {
        check: "nilradical = ∩ prime ideals".into(),
        pass: primes == nil,
        detail: format!("nilradical {}", nil.display(ring)),
    });
    for r in nil.iter() {
        if r == ring.one() {
            continue;
        }
        let min = oracle::min_nilpotency_exponent(ring, r).expect("nilradical members are nilpotent");
        let max_iters = default_max_iters(ring);
        let row = match audited_nilpotency_exponent(ring, r, FinitePsi::new(scan), max_iters) {
            Ok((x, audit)) => VerifyRow {
                check: format!("r = {}", ring.display(r)),
                pass: audit.passed() && x.exponent >= min && ring.pow(r, x.exponent) == ring.zero(),
                detail: format!(
                    "e = {}, min = {min}, steps = {}, certificates = {}",
                    x.exponent,
                    x.trace.len(),
                    audit.certificates
                ),
            },
            Err(e) => VerifyRow { check: format!("r = {}", ring.display(r)), pass: false, detail: e.to_string() },
        };
        rows.push(row);
    }
    Ok(rows)
}

pub fn cmd_verify(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let rows = verify_rows(&config.ring, config.scan)?;
    let all = rows.iter().all(|r| r.pass);
    match config.format {
        Format::Json => writeln!(out, "{}", json!({ "ring": config.ring.to_string(), "rows": rows, "pass": all }))?,
        Format::Text => {
            writeln!(out, "ring {}", config.ring)?;
            let width = rows.iter().map(|r| r.check.chars().count()).max().unwrap_or(0);
            for row in &rows {
                let pad = width - row.check.chars().count();
                writeln!(
                    out,
                    "  {}{}  {}  {}",
                    row.check,
                    " ".repeat(pad),
                    if row.pass { "pass" } else { "FAIL" },
                    row.detail
                )?;
            }
            writeln!(out, "{}", if all { "all pass" } else { "FAILURES" })?;
        }
    }
    if !all {
        return Err(Error::InternalInvariant("verification sweep failed".into()).into());
    }
    Ok(())
}

pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match config.mode {
        Mode::Element { .. } => cmd_element(config, out),
        Mode::Poly { .. } => cmd_poly(config, out),
        Mode::Verify => cmd_verify(config, out),
    }
}

/// Parses `args`, runs, and returns the process exit code. Diagnostics go
/// to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| execute(&config, out));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
