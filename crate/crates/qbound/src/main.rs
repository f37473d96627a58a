//! Thin command-line front end. All computation lives in the library; this
//! binary parses arguments, prints the human-readable summary on stdout, and
//! writes the machine-readable document to `--out` (or stdout when absent).
//!
//! Exit codes: 0 on success, 2 for invalid parameters, 1 for internal
//! errors such as failed writes.

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use qbound::report::{
    bound_report, count_record, grover_record, parse_eps, pcount_record, progress_record,
    render_bound_text, render_sweep_csv, sweep, to_json_doc, BoundMode,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qbound",
    version,
    about = "Adversary lower bounds and exact oracle-model simulations for approximate counting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the bounds for one counting instance
    Bound(BoundArgs),
    /// Exact statevector experiments in the parallel oracle model
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Evaluate the bounds over a parameter grid, CSV out
    Sweep(SweepArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Oracle qubits per position register (N = 2^n positions)
    #[arg(long)]
    n: u32,
    /// Size K of the low weight class
    #[arg(long)]
    k: u64,
    /// Relative accuracy as an exact rational a/b
    #[arg(long, default_value = "1/1", value_parser = eps_arg)]
    eps: Ratio<u64>,
    /// Oracle queries issued per round
    #[arg(long, default_value_t = 1)]
    p: u64,
    /// combinatorial, spectral, or all
    #[arg(long, default_value = "all", value_parser = mode_arg)]
    mode: BoundMode,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SimulateCommand {
    /// Amplify marked positions on a single register, exactly
    Grover {
        /// Oracle qubits (N = 2^n positions)
        #[arg(long)]
        n: u32,
        /// Marked positions, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        marked: Vec<usize>,
        /// Number of amplification rounds
        #[arg(long)]
        iters: u64,
        /// Write the JSON record here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the marked count by workspace phase estimation, exactly
    Count {
        #[arg(long)]
        n: u32,
        /// True marked count K
        #[arg(long)]
        k: u64,
        /// Acceptance accuracy as an exact rational a/b
        #[arg(long, default_value = "1/1", value_parser = eps_arg)]
        eps: Ratio<u64>,
        /// Phase-estimation precision bits
        #[arg(long = "tbits")]
        t_bits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run p independent counters on an evenly split domain
    Pcount {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value = "1/1", value_parser = eps_arg)]
        eps: Ratio<u64>,
        /// Number of disjoint blocks (must divide both N and K)
        #[arg(long)]
        p: u64,
        #[arg(long = "tbits")]
        t_bits: u32,
        /// Pseudo-random generator seed
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of sampled trials
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace the progress measure under a seeded random schedule
    Progress {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value = "1/1", value_parser = eps_arg)]
        eps: Ratio<u64>,
        /// Oracle queries issued per round
        #[arg(long, default_value_t = 1)]
        p: u64,
        /// Number of query rounds in the schedule
        #[arg(long = "T")]
        queries: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Oracle qubit counts: comma list, a..b ranges allowed (inclusive)
    #[arg(long)]
    n: String,
    /// K values: comma list, a..b ranges allowed (inclusive)
    #[arg(long)]
    k: String,
    /// Accuracies: comma list of exact rationals a/b
    #[arg(long, default_value = "1/1")]
    eps: String,
    /// Parallelism values: comma list, a..b ranges allowed (inclusive)
    #[arg(long, default_value = "1")]
    p: String,
    /// Write the CSV table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn eps_arg(s: &str) -> Result<Ratio<u64>, String> {
    parse_eps(s).map_err(|e| e.to_string())
}

fn mode_arg(s: &str) -> Result<BoundMode, String> {
    s.parse().map_err(|e: qbound::Error| e.to_string())
}

enum AppError {
    Invalid(qbound::Error),
    Io(std::io::Error),
}

impl From<qbound::Error> for AppError {
    fn from(e: qbound::Error) -> Self {
        AppError::Invalid(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

/// Parse one comma-separated list of unsigned integers where each item is
/// either a single value or an inclusive range `a..b`.
fn int_list(s: &str, what: &str) -> Result<Vec<u64>, AppError> {
    let bad = |item: &str| {
        AppError::Invalid(qbound::Error::invalid(format!(
            "{what} list item {item:?} is not an integer or an a..b range"
        )))
    };
    let mut values = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        if let Some((a, b)) = item.split_once("..") {
            let lo: u64 = a.trim().parse().map_err(|_| bad(item))?;
            let hi: u64 = b.trim().parse().map_err(|_| bad(item))?;
            if lo > hi {
                return Err(bad(item));
            }
            values.extend(lo..=hi);
        } else {
            values.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    Ok(values)
}

fn eps_list(s: &str) -> Result<Vec<Ratio<u64>>, AppError> {
    s.split(',')
        .map(|item| parse_eps(item.trim()).map_err(AppError::from))
        .collect()
}

/// Write to stdout, treating a closed pipe as a normal early exit rather
/// than an error (so `qbound ... | head` stays quiet).
fn write_stdout(s: &str) -> Result<(), AppError> {
    use std::io::Write as _;
    let mut out = std::io::stdout();
    match out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(AppError::Io(e)),
    }
}

/// Print the summary, then route the JSON document to `--out` or stdout.
fn emit<T: Serialize>(record: &T, summary: &str, out: Option<&Path>) -> Result<(), AppError> {
    write_stdout(&format!("{summary}\n"))?;
    let doc = to_json_doc(record);
    match out {
        Some(path) => {
            std::fs::write(path, doc)?;
            eprintln!("record written to {}", path.display());
        }
        None => write_stdout(&doc)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Bound(a) => {
            let report = bound_report(a.n, a.k, a.eps, a.p, a.mode)?;
            write_stdout(&render_bound_text(&report))?;
            let doc = to_json_doc(&report);
            match &a.out {
                Some(path) => {
                    std::fs::write(path, doc)?;
                    eprintln!("report written to {}", path.display());
                }
                None => write_stdout(&doc)?,
            }
            Ok(())
        }
        Command::Simulate(sim) => match sim {
            SimulateCommand::Grover {
                n,
                marked,
                iters,
                out,
            } => {
                let (rec, summary) = grover_record(n, &marked, iters)?;
                emit(&rec, &summary, out.as_deref())
            }
            SimulateCommand::Count {
                n,
                k,
                eps,
                t_bits,
                out,
            } => {
                let (rec, summary) = count_record(n, k, eps, t_bits)?;
                emit(&rec, &summary, out.as_deref())
            }
            SimulateCommand::Pcount {
                n,
                k,
                eps,
                p,
                t_bits,
                seed,
                trials,
                out,
            } => {
                let (rec, summary) = pcount_record(n, k, eps, p, t_bits, seed, trials)?;
                emit(&rec, &summary, out.as_deref())
            }
            SimulateCommand::Progress {
                n,
                k,
                eps,
                p,
                queries,
                seed,
                out,
            } => {
                let (rec, summary) = progress_record(n, k, eps, p, queries, seed)?;
                emit(&rec, &summary, out.as_deref())
            }
        },
        Command::Sweep(a) => {
            let ns: Vec<u32> = int_list(&a.n, "n")?
                .into_iter()
                .map(|v| {
                    u32::try_from(v).map_err(|_| {
                        AppError::Invalid(qbound::Error::invalid(format!("n = {v} is too large")))
                    })
                })
                .collect::<Result<_, _>>()?;
            let ks = int_list(&a.k, "K")?;
            let epss = eps_list(&a.eps)?;
            let ps = int_list(&a.p, "p")?;
            let outcome = sweep(&ns, &ks, &epss, &ps);
            for msg in &outcome.skipped {
                eprintln!("{msg}");
            }
            if outcome.rows.is_empty() {
                return Err(AppError::Invalid(qbound::Error::invalid(
                    "sweep produced no rows: every parameter point was invalid",
                )));
            }
            let csv = render_sweep_csv(&outcome.rows);
            match &a.out {
                Some(path) => {
                    std::fs::write(path, csv)?;
                    eprintln!(
                        "wrote {} rows to {} ({} skipped)",
                        outcome.rows.len(),
                        path.display(),
                        outcome.skipped.len()
                    );
                }
                None => write_stdout(&csv)?,
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("QBOUND_THREADS") {
        match raw.parse::<usize>() {
            Ok(t) if t >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global();
            }
            _ => {
                eprintln!("error: QBOUND_THREADS must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(AppError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
