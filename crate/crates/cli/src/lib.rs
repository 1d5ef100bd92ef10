//! Subcommand implementations for the `qwalk` binary.

pub mod format;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use qwalk_core::lyapunov::{lyapunov_exponent, LyapunovReport};
use qwalk_core::parrondo::{aabb_residuals, solve_aabb, MatchResidual, ParrondoSolution};
use qwalk_core::parse::{parse_angle, parse_sequence_spec};
use qwalk_core::protocol::{run_session, ProtocolConfig, Transcript};
use qwalk_core::spectral::{sequence_min_period, PeriodReport, Verdict};
use qwalk_core::walk::evolve_sequence;
use qwalk_core::{CoinParams, CoinSequence, WalkerState, DEFAULT_N_MAX, IDENTITY_TOL};

/// Discrete-time quantum walks on cycle graphs.
#[derive(Debug, Parser)]
#[command(name = "qwalk", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Return-probability series at site 0 as CSV.
    Walk(WalkArgs),
    /// Minimal period of a coin or sequence.
    Period(PeriodArgs),
    /// Solve the AABB matching conditions for a reference rho.
    Solve(SolveArgs),
    /// Lyapunov exponent of a coin or sequence.
    Lyapunov(LyapunovArgs),
    /// Run the walk-based encryption protocol once.
    Crypto(CryptoArgs),
}

/// Walk selection: a single coin from `--rho/--alpha/--beta`, or a sequence.
#[derive(Debug, Args)]
pub struct WalkSpec {
    /// Cycle size.
    #[arg(long)]
    pub k: usize,
    /// Coin rho of a single-coin walk.
    #[arg(long, conflicts_with = "seq")]
    pub rho: Option<f64>,
    /// Coin alpha (number or multiple of pi, e.g. `pi/2`).
    #[arg(long, requires = "rho", allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Coin beta (number or multiple of pi).
    #[arg(long, requires = "rho", allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Sequence, e.g. `AABB` or `AB;A=0.3;B=paper-k3-B`.
    #[arg(long)]
    pub seq: Option<String>,
    /// Accept coin angles outside [0, pi].
    #[arg(long)]
    pub any_angle: bool,
}

impl WalkSpec {
    pub fn sequence(&self) -> Result<CoinSequence, CliError> {
        match (&self.seq, self.rho) {
            (Some(spec), _) => Ok(parse_sequence_spec(spec, self.k, self.any_angle)?),
            (None, Some(rho)) => {
                let alpha = self
                    .alpha
                    .as_deref()
                    .map(parse_angle)
                    .transpose()?
                    .unwrap_or(0.0);
                let beta = self
                    .beta
                    .as_deref()
                    .map(parse_angle)
                    .transpose()?
                    .unwrap_or(0.0);
                let params = if self.any_angle {
                    CoinParams::unrestricted(rho, alpha, beta)?
                } else {
                    CoinParams::new(rho, alpha, beta)?
                };
                Ok(CoinSequence::single('C', params))
            }
            (None, None) => Err(CliError::Usage("one of --rho or --seq is required".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    #[command(flatten)]
    pub spec: WalkSpec,
    /// Number of coin steps.
    #[arg(long)]
    pub steps: usize,
    /// Emit every stride-th step. Defaults to 2 for single-coin walks on even
    /// cycles, 4 for four-letter patterns, 1 otherwise.
    #[arg(long)]
    pub stride: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Append the probability of every site to each row.
    #[arg(long)]
    pub full_dist: bool,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[command(flatten)]
    pub spec: WalkSpec,
    #[arg(long, default_value_t = DEFAULT_N_MAX)]
    pub nmax: u64,
    #[arg(long, default_value_t = IDENTITY_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Reference rho of the periodic coin C.
    #[arg(long)]
    pub rho: f64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct LyapunovArgs {
    #[command(flatten)]
    pub spec: WalkSpec,
    /// End step.
    #[arg(long, default_value_t = 20)]
    pub t: usize,
    /// Start step.
    #[arg(long, default_value_t = 0)]
    pub t0: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CryptoArgs {
    /// Cycle size (3 or 4).
    #[arg(long)]
    pub k: usize,
    /// Message in 0..k.
    #[arg(long)]
    pub m: usize,
    /// Secret initial position in 0..k.
    #[arg(long)]
    pub l: usize,
    /// Initial coin state, 0 or 1.
    #[arg(long, default_value_t = 0)]
    pub s: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    /// Stdout closed early by the reader.
    BrokenPipe,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::BrokenPipe => 0,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => f.write_str(m),
            CliError::BrokenPipe => f.write_str("broken pipe"),
        }
    }
}

impl From<qwalk_core::Error> for CliError {
    fn from(e: qwalk_core::Error) -> Self {
        use qwalk_core::Error::*;
        match e {
            Parse(_)
            | InvalidParams(_)
            | InvalidSize(_)
            | IndexOutOfRange { .. }
            | InvalidPosition { .. }
            | InvalidMessage { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return CliError::BrokenPipe;
        }
        CliError::Usage(e.to_string())
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let s = serde_json::to_string_pretty(value).expect("plain data serializes");
    writeln!(out, "{s}")?;
    Ok(())
}

pub fn default_stride(seq: &CoinSequence, k: usize) -> usize {
    if seq.len() == 4 {
        4
    } else if seq.primitive_len() == 1 && k.is_multiple_of(2) {
        2
    } else {
        1
    }
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Walk(a) => cmd_walk(&a, stdout),
        Command::Period(a) => cmd_period(&a, stdout),
        Command::Solve(a) => cmd_solve(&a, stdout),
        Command::Lyapunov(a) => cmd_lyapunov(&a, stdout),
        Command::Crypto(a) => cmd_crypto(&a, stdout),
    }
}

/// Writes the `step,probability` series of site 0 from `|0⟩|1⟩`.
pub fn write_series(
    out: &mut dyn Write,
    seq: &CoinSequence,
    k: usize,
    steps: usize,
    stride: usize,
    full_dist: bool,
) -> Result<(), CliError> {
    if stride == 0 {
        return Err(CliError::Usage("--stride must be positive".into()));
    }
    let trajectory = evolve_sequence(&WalkerState::initial(k)?, seq, steps)?;
    write!(out, "step,probability")?;
    if full_dist {
        for i in 0..k {
            write!(out, ",site{i}")?;
        }
    }
    writeln!(out)?;
    for (t, state) in trajectory.iter().enumerate().step_by(stride) {
        let dist = state.distribution();
        write!(out, "{t},{}", format::sig(dist[0].clamp(0.0, 1.0), 12))?;
        if full_dist {
            for p in &dist {
                write!(out, ",{}", format::sig(p.clamp(0.0, 1.0), 12))?;
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn cmd_walk(a: &WalkArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let seq = a.spec.sequence()?;
    let stride = a.stride.unwrap_or_else(|| default_stride(&seq, a.spec.k));
    let mut buf = Vec::new();
    write_series(&mut buf, &seq, a.spec.k, a.steps, stride, a.full_dist)?;
    match &a.out {
        Some(path) => std::fs::write(path, &buf)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

#[derive(Serialize)]
struct PeriodOutput<'a> {
    k: usize,
    sequence: String,
    #[serde(flatten)]
    report: &'a PeriodReport,
}

pub fn cmd_period(a: &PeriodArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let seq = a.spec.sequence()?;
    let report = sequence_min_period(&seq, a.spec.k, a.nmax, a.tol)?;
    if a.json {
        return json_line(
            out,
            &PeriodOutput {
                k: a.spec.k,
                sequence: seq.pattern(),
                report: &report,
            },
        );
    }
    match report.verdict {
        Verdict::Periodic => writeln!(
            out,
            "k={} seq={}: periodic, period {} steps",
            a.spec.k,
            seq,
            report.period.expect("periodic has period")
        )?,
        Verdict::Chaotic => writeln!(
            out,
            "k={} seq={}: chaotic (no period <= {} at tol {:e})",
            a.spec.k, seq, report.n_max, report.tolerance
        )?,
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveOutput {
    rho: f64,
    branches: Vec<BranchOutput>,
}

#[derive(Serialize)]
struct BranchOutput {
    #[serde(flatten)]
    solution: ParrondoSolution,
    residuals: MatchResidual,
}

pub fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let solutions = solve_aabb(a.rho)?;
    let branches = solutions
        .iter()
        .map(|s| {
            Ok(BranchOutput {
                solution: *s,
                residuals: aabb_residuals(s.rho1, s.rho2, s.rho)?,
            })
        })
        .collect::<Result<Vec<_>, qwalk_core::Error>>()?;
    if a.json {
        return json_line(
            out,
            &SolveOutput {
                rho: a.rho,
                branches,
            },
        );
    }
    for b in &branches {
        writeln!(
            out,
            "{:<5} rho1={:.6} rho2={:.6} residuals=[{}]{}",
            format!("{:?}", b.solution.branch).to_lowercase(),
            b.solution.rho1,
            b.solution.rho2,
            b.residuals
                .values
                .iter()
                .map(|v| format!("{v:.3e}"))
                .collect::<Vec<_>>()
                .join(", "),
            if b.solution.degenerate {
                " (degenerate)"
            } else {
                ""
            }
        )?;
    }
    Ok(())
}

pub fn cmd_lyapunov(a: &LyapunovArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let seq = a.spec.sequence()?;
    let report: LyapunovReport =
        lyapunov_exponent(&seq, &WalkerState::initial(a.spec.k)?, a.t0, a.t)?;
    if a.json {
        return json_line(out, &report);
    }
    writeln!(
        out,
        "k={} seq={} t0={} t={}: lyapunov exponent {:.6} bits/step, overlap {:.6}, distance {:.6}",
        a.spec.k,
        report.label,
        report.t0,
        report.t,
        report.exponent,
        report.overlap_modulus,
        report.distance
    )?;
    Ok(())
}

pub fn cmd_crypto(a: &CryptoArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = ProtocolConfig::paper(a.k).map_err(|e| CliError::Usage(e.to_string()))?;
    let t: Transcript = run_session(&cfg, a.m, a.l, a.s)?;
    if a.json {
        return json_line(out, &t);
    }
    let fmt_dist = |d: &[f64]| {
        d.iter()
            .map(|p| format!("{p:.4}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    writeln!(
        out,
        "k={} message={} secret=|{}>|{}>",
        t.k, t.message, t.l, t.s
    )?;
    writeln!(
        out,
        "public key  BB|l>|s>       sites: {}",
        fmt_dist(&t.public_key_distribution)
    )?;
    writeln!(
        out,
        "ciphertext  (T_m x I)|pk>  sites: {}",
        fmt_dist(&t.ciphertext_distribution)
    )?;
    writeln!(
        out,
        "decrypted   {} sites: {}",
        t.decryption_pattern,
        fmt_dist(&t.decrypted_distribution)
    )?;
    writeln!(out, "measured site {}", t.measured_site)?;
    writeln!(out, "recovered message {}", t.recovered)?;
    Ok(())
}
