//! Implementation of the `polarorder` command line.
//!
//! `main.rs` only parses arguments and maps [`CliError`] to an exit status,
//! so everything here can be driven from tests with an in-memory writer.

use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use polarorder::antichain_math::{bounds_csv, complexity_bounds, max_antichain_size};
use polarorder::chain_cover::{
    load_partition, load_partition_unverified, minimum_chain_partition, save_partition, DEFAULT_GRAPH_CAP,
};
use polarorder::constructor::{fp_construct_with, fr_construct_with, EvaluationReport};
use polarorder::exec::with_workers;
use polarorder::index_poset::{cover_relation, CLOSURE_CAP};
use polarorder::verify::{partition_suite, run_suites, DEFAULT_VERIFY_LEVELS};
use polarorder::{BmsChannel, ChainPartition, Error, Execution};

#[derive(Debug, Parser)]
#[command(name = "polarorder", version, about = "Polar code construction along the chains of the degradation order")]
pub struct Cli {
    /// Worker threads for graph construction and chain searches.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the table of lower and upper evaluation fractions as CSV.
    Bounds {
        /// A single n or an inclusive range `A-B`.
        #[arg(long = "n", value_name = "RANGE", default_value = "1-24", value_parser = parse_n_range)]
        levels: RangeInclusive<u32>,
    },
    /// Build a minimum chain partition and write it to a file.
    Chains {
        #[arg(long)]
        n: u32,
        /// Defaults to `chains-n<N>.txt`.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Largest n the partition builder accepts.
        #[arg(long = "n-max", default_value_t = DEFAULT_GRAPH_CAP)]
        cap: u32,
    },
    /// Select the information set for a channel.
    Construct(ConstructArgs),
    /// Print the cover relation, one `i j` pair per line.
    Hasse {
        #[arg(long)]
        n: u32,
    },
    /// Run the consistency suites.
    Verify {
        #[arg(long = "n-max", default_value_t = DEFAULT_VERIFY_LEVELS)]
        n_max: u32,
        /// Also check this partition file.
        #[arg(long)]
        partition: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["threshold", "rate"])))]
pub struct ConstructArgs {
    /// Channel, e.g. `bec:0.5`.
    #[arg(value_parser = parse_channel)]
    pub channel: BmsChannel,
    #[arg(long)]
    pub n: u32,
    /// Keep every channel with Bhattacharyya parameter below this value.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Keep the `⌊2^n R⌋` best channels.
    #[arg(long)]
    pub rate: Option<f64>,
    /// Partition file; otherwise `chains-n<N>.txt` beside the output is
    /// used, and built if missing.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Defaults to `selected-n<N>.txt`.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Largest n the partition builder accepts.
    #[arg(long = "n-max", default_value_t = DEFAULT_GRAPH_CAP)]
    pub cap: u32,
}

/// `10` or `6-24`.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("{t:?} is not a level count"));
    let (a, b) = match s.split_once('-') {
        Some((a, b)) => (num(a)?, num(b)?),
        None => {
            let a = num(s)?;
            (a, a)
        }
    };
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {s:?}"));
    }
    Ok(a..=b)
}

fn parse_channel(s: &str) -> Result<BmsChannel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input (exit status 2).
    Usage(String),
    /// A check did not hold (exit status 1).
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Verification(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult = Result<(), CliError>;

/// Prefix I/O failures with the file involved.
fn at_path<T>(path: &Path, r: Result<T, Error>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        Error::Io(io) => CliError::Usage(format!("{}: {io}", path.display())),
        other => other.into(),
    })
}

/// Run a parsed command line, writing the report to `out`.
pub fn execute(cli: Cli, out: &mut (dyn Write + Send)) -> CliResult {
    let jobs = cli.jobs;
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    with_workers(jobs, move || dispatch(cli.command, out))
}

fn dispatch(command: Command, out: &mut (dyn Write + Send)) -> CliResult {
    let exec = Execution::default();
    match command {
        Command::Bounds { levels } => cmd_bounds(levels, out),
        Command::Chains { n, output, cap } => {
            let path = output.unwrap_or_else(|| PathBuf::from(format!("chains-n{n}.txt")));
            cmd_chains(n, &path, cap, exec, out)
        }
        Command::Construct(args) => cmd_construct(args, exec, out),
        Command::Hasse { n } => cmd_hasse(n, out),
        Command::Verify { n_max, partition } => cmd_verify(n_max, partition.as_deref(), exec, out),
    }
}

pub fn cmd_bounds(levels: RangeInclusive<u32>, out: &mut dyn Write) -> CliResult {
    out.write_all(bounds_csv(levels)?.as_bytes())?;
    Ok(())
}

fn warn_if_large(n: u32, cap: u32) {
    if cap > DEFAULT_GRAPH_CAP && n > DEFAULT_GRAPH_CAP {
        eprintln!("polarorder: warning: the comparability graph at n = {n} needs several GiB of memory");
    }
}

pub fn cmd_chains(n: u32, path: &Path, cap: u32, exec: Execution, out: &mut dyn Write) -> CliResult {
    warn_if_large(n, cap);
    let p = minimum_chain_partition(n, cap, exec)?;
    at_path(path, save_partition(&p, path))?;
    let m = max_antichain_size(n)?;
    writeln!(out, "wrote {}", path.display())?;
    writeln!(out, "chains: {}", p.len())?;
    writeln!(out, "M(n): {m}")?;
    if p.len() as u128 != m {
        return Err(CliError::Verification(format!("{} chains but M({n}) = {m}", p.len())));
    }
    Ok(())
}

fn cache_path(output: &Path, n: u32) -> PathBuf {
    let dir = output.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    dir.join(format!("chains-n{n}.txt"))
}

/// The explicit file, else the cache beside `output` (built if missing).
fn obtain_partition(
    args: &ConstructArgs,
    output: &Path,
    exec: Execution,
    out: &mut dyn Write,
) -> Result<ChainPartition, CliError> {
    let n = args.n;
    let (p, path, source) = match &args.partition {
        Some(path) => (at_path(path, load_partition(path))?, path.clone(), "given"),
        None => {
            let path = cache_path(output, n);
            if path.exists() {
                (at_path(&path, load_partition(&path))?, path, "cached")
            } else {
                warn_if_large(n, args.cap);
                let p = minimum_chain_partition(n, args.cap, exec)?;
                at_path(&path, save_partition(&p, &path))?;
                (p, path, "built")
            }
        }
    };
    if p.levels() != n {
        return Err(CliError::Usage(format!(
            "{} holds a partition for n = {}, expected n = {n}",
            path.display(),
            p.levels()
        )));
    }
    writeln!(out, "partition: {} ({source}, {} chains)", path.display(), p.len())?;
    Ok(p)
}

pub fn cmd_construct(args: ConstructArgs, exec: Execution, out: &mut dyn Write) -> CliResult {
    let n = args.n;
    // Reject bad numbers before any partition work.
    complexity_bounds(n)?;
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("selected-n{n}.txt")));
    let partition = obtain_partition(&args, &output, exec, out)?;
    let (text, count, report): (String, usize, EvaluationReport) = match (args.threshold, args.rate) {
        (Some(gamma), None) => {
            let r = fp_construct_with(&args.channel, n, gamma, &partition, exec)?;
            (r.to_text(), r.selected.len(), r.report)
        }
        (None, Some(rate)) => {
            let r = fr_construct_with(&args.channel, n, rate, &partition, exec)?;
            (r.to_text(), r.selected.len(), r.report)
        }
        _ => return Err(CliError::Usage("give exactly one of --threshold and --rate".into())),
    };
    std::fs::write(&output, text).map_err(|e| CliError::Usage(format!("{}: {e}", output.display())))?;
    writeln!(out, "channel: {}", args.channel)?;
    writeln!(out, "selected: {count}")?;
    writeln!(out, "evaluations: {}", report.evaluations)?;
    writeln!(out, "budget: {}", report.budget_upper)?;
    writeln!(out, "savings: {:.4}", report.savings(n))?;
    writeln!(out, "wrote {}", output.display())?;
    Ok(())
}

pub fn cmd_hasse(n: u32, out: &mut dyn Write) -> CliResult {
    let mut buf = io::BufWriter::new(out);
    for (i, j) in cover_relation(n)? {
        writeln!(buf, "{i} {j}")?;
    }
    buf.flush()?;
    Ok(())
}

pub fn cmd_verify(n_max: u32, partition: Option<&Path>, exec: Execution, out: &mut dyn Write) -> CliResult {
    if n_max > CLOSURE_CAP {
        return Err(CliError::Usage(format!("--n-max must be at most {CLOSURE_CAP}, got {n_max}")));
    }
    let mut outcomes = run_suites(n_max, exec)?;
    if let Some(path) = partition {
        outcomes.push(partition_suite(&at_path(path, load_partition_unverified(path))?));
    }
    for o in &outcomes {
        writeln!(out, "{o}")?;
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("failed suites: {}", failed.join(", "))))
    }
}
