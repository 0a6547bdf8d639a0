//! The `ttp` command line.
//!
//! Exit codes: 0 on success, 1 on data or computation errors, 2 on usage errors.
//! Data goes to stdout or `--out`; counts and progress go to stderr.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::analytics::{self, Constraint, SweepConfig};
use crate::constraints::{violation_report, ViolationReport};
use crate::diversity::{pairwise_stats, DiffMode};
use crate::enumerator::{enumerate_valid, EnumConfig};
use crate::generator::{random_schedule, GenConfig};
use crate::schedule::{check_team_count, read_json_lines, write_json_line};

#[derive(Debug, Parser)]
#[command(
    name = "ttp",
    version,
    about = "Validity landscape of Traveling Tournament Problem schedules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate random rows-first schedules as JSON Lines
    Gen(GenArgs),
    /// Count constraint violations of each schedule in a JSON Lines file
    Check(CheckArgs),
    /// Run the Monte Carlo violation sweep and write the sweep CSV
    Sweep(SweepArgs),
    /// Fit quadratics to the average curves of a sweep CSV
    Fit(FitArgs),
    /// Enumerate all valid half-normalized schedules
    Enumerate(EnumerateArgs),
    /// Pairwise distance statistics of a schedule population
    Diff(DiffArgs),
    /// Print the closed-form expected violation count
    Expect(ExpectArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of teams (even, at least 4)
    #[arg(long, value_parser = parse_team_count)]
    pub teams: usize,
    /// Number of schedules
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    /// Master seed
    #[arg(long)]
    pub seed: u64,
    /// Output file (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// JSON Lines schedules, `-` for stdin
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Streak limit k
    #[arg(long, short = 'K', value_parser = clap::value_parser!(u64).range(1..))]
    pub max_streak: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Inclusive team range `lo..hi`, step 2
    #[arg(long, default_value = "4..50")]
    pub teams: TeamRange,
    /// Schedules per team count
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Inclusive streak-limit range `lo..hi`, step 1
    #[arg(long, default_value = "1..6")]
    pub k: StreakRange,
    /// Master seed
    #[arg(long)]
    pub seed: u64,
    /// Output file (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores); output does not depend on it
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Sweep CSV, `-` for stdin
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Only fit this constraint (drr, maxstreak, norepeat)
    #[arg(long, value_parser = parse_constraint)]
    pub constraint: Option<Constraint>,
    /// Only fit this streak limit (implies maxstreak)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Number of teams (even, at least 4)
    #[arg(long, value_parser = parse_team_count)]
    pub teams: usize,
    /// Streak limit
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_streak: u64,
    /// Stop after this many schedules
    #[arg(long)]
    pub limit: Option<usize>,
    /// Output file (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    /// JSON Lines schedules, `-` for stdin
    #[arg(long = "in")]
    pub input: PathBuf,
    /// full, opponent or venue
    #[arg(long, value_parser = parse_mode)]
    pub mode: DiffMode,
    /// Also write the distance histogram CSV here
    #[arg(long)]
    pub hist: Option<PathBuf>,
    /// Worker threads (default: all cores); output does not depend on it
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ExpectArgs {
    /// Number of teams (even, at least 4)
    #[arg(long, value_parser = parse_team_count)]
    pub teams: usize,
    /// drr, maxstreak or norepeat
    #[arg(long, value_parser = parse_constraint)]
    pub constraint: Constraint,
    /// Streak limit (maxstreak only)
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: Option<u64>,
}

fn parse_team_count(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a team count"))?;
    check_team_count(n).map_err(|e| e.to_string())?;
    Ok(n)
}

fn parse_constraint(s: &str) -> Result<Constraint, String> {
    s.parse().map_err(|e: analytics::AnalyticsError| e.to_string())
}

fn parse_mode(s: &str) -> Result<DiffMode, String> {
    s.parse().map_err(|e: crate::diversity::DiversityError| e.to_string())
}

fn parse_bounds(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi),
        None => (s, s),
    };
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("`{x}` is not a number"));
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("range {lo}..{hi} is inverted"));
    }
    Ok((lo, hi))
}

/// Inclusive even team range, `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TeamRange(pub usize, pub usize);

impl TeamRange {
    pub fn values(self) -> Vec<usize> {
        (self.0..=self.1).step_by(2).collect()
    }
}

impl FromStr for TeamRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = parse_bounds(s)?;
        for n in [lo, hi] {
            check_team_count(n).map_err(|e| e.to_string())?;
        }
        Ok(TeamRange(lo, hi))
    }
}

/// Inclusive streak-limit range, `lo..hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreakRange(pub usize, pub usize);

impl StreakRange {
    pub fn values(self) -> Vec<usize> {
        (self.0..=self.1).collect()
    }
}

impl FromStr for StreakRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = parse_bounds(s)?;
        if lo == 0 {
            return Err("streak limits start at 1".into());
        }
        Ok(StreakRange(lo, hi))
    }
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open_input(path: &Path) -> Result<Box<dyn BufRead>> {
    if path == Path::new("-") {
        return Ok(Box::new(BufReader::new(io::stdin().lock())));
    }
    Ok(Box::new(BufReader::new(
        File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
    )))
}

fn with_threads<T: Send>(threads: Option<u64>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t as usize).build()?;
            Ok(pool.install(f))
        }
    }
}

/// Formats to six significant digits.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = (5 - x.abs().log10().floor() as i32).max(0) as usize;
    format!("{x:.digits$}")
}

/// Parses arguments, runs the command, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Check(a) => cmd_check(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Fit(a) => cmd_fit(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Diff(a) => cmd_diff(a),
        Command::Expect(a) => cmd_expect(a),
    }
}

fn cmd_gen(a: GenArgs) -> Result<()> {
    let cfg = GenConfig::new(a.teams, a.seed)?;
    let mut out = open_output(a.out.as_deref())?;
    for i in 0..a.count {
        write_json_line(&mut out, &random_schedule(&cfg, i))?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_check(a: CheckArgs) -> Result<()> {
    let schedules = read_json_lines(open_input(&a.input)?).with_context(|| format!("reading {}", a.input.display()))?;
    let mut out = open_output(None)?;
    writeln!(out, "{}", ViolationReport::CSV_HEADER)?;
    for s in &schedules {
        writeln!(out, "{}", violation_report(s, a.max_streak as usize).csv_row())?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<()> {
    let cfg = SweepConfig {
        team_sizes: a.teams.values(),
        samples_per_size: a.samples,
        k_values: a.k.values(),
        master_seed: a.seed,
    };
    let records = with_threads(a.threads, || analytics::run_sweep(&cfg))??;
    let mut out = open_output(a.out.as_deref())?;
    out.write_all(analytics::sweep_csv(&records).as_bytes())?;
    out.flush()?;
    eprintln!(
        "sweep: {} schedules, {} records",
        cfg.team_sizes.len() as u64 * cfg.samples_per_size,
        records.len()
    );
    Ok(())
}

fn curve_name(c: Constraint, k: Option<usize>) -> String {
    match k {
        Some(k) => format!("{c} k={k}"),
        None => c.to_string(),
    }
}

fn cmd_fit(a: FitArgs) -> Result<()> {
    if let (Some(c), Some(_)) = (a.constraint, a.k) {
        if c != Constraint::MaxStreak {
            usage_error(
                ErrorKind::ArgumentConflict,
                format!("--k only applies to maxstreak, not {c}"),
            );
        }
    }
    let mut text = String::new();
    open_input(&a.input)?.read_to_string(&mut text)?;
    let records = analytics::parse_sweep_csv(&text)?;
    let wanted_constraint = a.constraint.or(a.k.map(|_| Constraint::MaxStreak));
    let keys: Vec<_> = analytics::curves(&records)
        .into_iter()
        .map(|(key, _)| key)
        .filter(|(c, k)| wanted_constraint.is_none_or(|w| w == *c) && a.k.is_none_or(|wk| *k == Some(wk as usize)))
        .collect();
    if keys.is_empty() {
        bail!("no curve in the input matches the selection");
    }
    let mut out = open_output(None)?;
    for (c, k) in keys {
        let fit = analytics::fit_curve(&records, (c, k)).with_context(|| format!("curve {}", curve_name(c, k)))?;
        writeln!(out, "{}", serde_json::to_string(&fit)?)?;
        eprintln!(
            "{}: A={} B={} C={} r2={}",
            curve_name(c, k),
            sig6(fit.coefficients.a),
            sig6(fit.coefficients.b),
            sig6(fit.coefficients.c),
            sig6(fit.coefficients.r_squared)
        );
    }
    out.flush()?;
    Ok(())
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<()> {
    let cfg = EnumConfig::new(a.teams, a.max_streak as usize, a.limit)?;
    let mut out = open_output(a.out.as_deref())?;
    let mut io_err = None;
    let count = enumerate_valid(&cfg, |s| {
        if io_err.is_none() {
            if let Err(e) = write_json_line(&mut out, &s) {
                io_err = Some(e);
            }
        }
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    out.flush()?;
    eprintln!("{count}");
    Ok(())
}

fn cmd_diff(a: DiffArgs) -> Result<()> {
    let pop = read_json_lines(open_input(&a.input)?).with_context(|| format!("reading {}", a.input.display()))?;
    let stats = with_threads(a.threads, || pairwise_stats(&pop, a.mode))??;
    if let Some(path) = &a.hist {
        std::fs::write(path, stats.histogram_csv()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let mut out = open_output(None)?;
    writeln!(out, "{}", stats.to_json())?;
    out.flush()?;
    eprintln!("{}: {} pairs, mean {}", stats.mode, stats.pair_count, sig6(stats.mean));
    Ok(())
}

fn cmd_expect(a: ExpectArgs) -> Result<()> {
    if a.constraint != Constraint::MaxStreak && a.k.is_some() {
        usage_error(
            ErrorKind::ArgumentConflict,
            format!("--k only applies to maxstreak, not {}", a.constraint),
        );
    }
    if a.constraint == Constraint::MaxStreak && a.k.is_none() {
        usage_error(ErrorKind::MissingRequiredArgument, "maxstreak needs --k");
    }
    let v = analytics::expected_violations(a.teams, a.constraint, a.k.map(|k| k as usize))?;
    println!("{v}");
    Ok(())
}
