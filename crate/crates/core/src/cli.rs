//! Command-line front end. Exit codes: 0 success, 1 a checked property
//! failed, 2 usage or I/O error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{ChompError, Result};
use crate::oracle;
use crate::report::{self, AnalysisKind, PlotKind};
use crate::solver::{self, PSet, SolveConfig};
use crate::store::{self, DSequence};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "CHOMP_THREADS";

#[derive(Parser, Debug)]
#[command(name = "chomp4", version, about = "P-positions of four-row Chomp and their structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate every P-position with first row at most N.
    Solve {
        #[arg(long = "max-n")]
        max_n: u32,
        #[arg(long, default_value_t = 4)]
        k: usize,
        /// Worker threads; defaults to $CHOMP_THREADS, then the core count.
        #[arg(long)]
        threads: Option<usize>,
        /// CSV output.
        #[arg(long)]
        out: PathBuf,
        /// Also write the binary cache here.
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
        /// Lift the state-count ceiling.
        #[arg(long)]
        allow_large: bool,
    },
    /// Check a tabulation against closed forms or the brute-force oracle.
    Verify {
        #[arg(long)]
        pset: PathBuf,
        #[arg(long, value_enum)]
        mode: VerifyMode,
        /// Largest first row to compare; defaults to the mode's ceiling.
        #[arg(long)]
        limit: Option<u32>,
    },
    /// Write a text and CSV report for one analysis.
    Analyze {
        #[arg(value_enum)]
        analysis: AnalysisArg,
        #[arg(long)]
        pset: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the fourth-row sequence as an `index value` b-file.
    Export {
        #[arg(long)]
        pset: PathBuf,
        #[arg(long)]
        bfile: PathBuf,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        offset: i64,
    },
    /// Write figure data as x,y series.
    Plotdata {
        #[arg(value_enum)]
        figure: PlotArg,
        #[arg(long)]
        pset: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    #[value(name = "2xn")]
    TwoRow,
    #[value(name = "3xn")]
    ThreeRow,
    #[value(name = "oracle4")]
    Oracle4,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AnalysisArg {
    Unique,
    Ratios,
    Period,
    Cone,
    Classifier,
    Cubics,
}

impl From<AnalysisArg> for AnalysisKind {
    fn from(a: AnalysisArg) -> Self {
        match a {
            AnalysisArg::Unique => AnalysisKind::Unique,
            AnalysisArg::Ratios => AnalysisKind::Ratios,
            AnalysisArg::Period => AnalysisKind::Period,
            AnalysisArg::Cone => AnalysisKind::Cone,
            AnalysisArg::Classifier => AnalysisKind::Classifier,
            AnalysisArg::Cubics => AnalysisKind::Cubics,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlotArg {
    Ratios,
    Autocorr,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_PROPERTY,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn default_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Fails early if `path` could not be created because its directory is
/// missing, before any work or output happens.
fn check_writable_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => Err(ChompError::io(
            path,
            std::io::Error::new(std::io::ErrorKind::NotFound, "parent directory does not exist"),
        )),
        _ => Ok(()),
    }
}

fn dispatch(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Solve {
            max_n,
            k,
            threads,
            out,
            cache,
            quiet,
            allow_large,
        } => {
            let mut cfg = SolveConfig::new(max_n, k)
                .threads(threads.unwrap_or_else(default_threads))
                .progress(!quiet);
            if allow_large {
                cfg = cfg.state_ceiling(u128::MAX);
            }
            cfg.validate()?;
            check_writable_parent(&out)?;
            if let Some(c) = &cache {
                check_writable_parent(c)?;
            }
            let pset = solver::solve(&cfg)?;
            store::write_csv(&pset, &out)?;
            if let Some(c) = &cache {
                store::write_cache(&pset, c)?;
            }
            if !quiet {
                eprintln!("{} P-positions with a <= {max_n} written to {}", pset.count(), out.display());
            }
            Ok(true)
        }
        Command::Verify { pset, mode, limit } => {
            let pset = store::read_any(&pset)?;
            let outcome = verify(&pset, mode, limit)?;
            println!("{}", outcome.summary);
            for m in outcome.mismatches.iter().take(20) {
                println!("  {m}");
            }
            Ok(outcome.mismatches.is_empty())
        }
        Command::Analyze {
            analysis,
            pset,
            out,
            seed,
        } => {
            if out.exists() && !out.is_dir() {
                return Err(ChompError::InvalidConfig(format!("{} is not a directory", out.display())));
            }
            let pset = store::read_any(&pset)?;
            let bundle = report::analyze(analysis.into(), &pset, seed)?;
            bundle.write(&out)?;
            print!("{}", bundle.text);
            Ok(bundle.passed)
        }
        Command::Export { pset, bfile, offset } => {
            check_writable_parent(&bfile)?;
            let pset = store::read_any(&pset)?;
            let dseq = DSequence::from_pset(&pset);
            let text = store::bfile_string(&dseq, offset)?;
            std::fs::write(&bfile, text).map_err(|e| ChompError::io(&bfile, e))?;
            Ok(true)
        }
        Command::Plotdata { figure, pset, out } => {
            check_writable_parent(&out)?;
            let pset = store::read_any(&pset)?;
            let kind = match figure {
                PlotArg::Ratios => PlotKind::Ratios,
                PlotArg::Autocorr => PlotKind::Autocorr,
            };
            let text = report::plotdata(kind, &pset)?;
            std::fs::write(&out, text).map_err(|e| ChompError::io(&out, e))?;
            Ok(true)
        }
    }
}

/// Result of a `verify` run.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOutcome {
    pub summary: String,
    pub mismatches: Vec<String>,
}

/// Compares a tabulation against independent ground truth. Never consults
/// the solver: only closed forms and the brute-force oracle.
pub fn verify(pset: &PSet, mode: VerifyMode, limit: Option<u32>) -> Result<VerifyOutcome> {
    let rows = pset.sorted_rows();
    let fmt = |r: &[u32]| {
        let parts: Vec<String> = r.iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    };
    match mode {
        VerifyMode::TwoRow => {
            // Two-row P-positions are exactly (a, a-1).
            let limit = limit.unwrap_or(pset.n_max()).min(pset.n_max());
            let got: BTreeSet<(u32, u32)> = rows
                .iter()
                .filter(|r| r[0] <= limit && r[2] == 0 && r[3] == 0)
                .map(|r| (r[0], r[1]))
                .collect();
            let want: BTreeSet<(u32, u32)> = (1..=limit).map(|a| (a, a - 1)).collect();
            let mismatches = diff(&got, &want, |&(a, b)| fmt(&[a, b, 0, 0]));
            Ok(VerifyOutcome {
                summary: format!(
                    "2xn: {} rows with c=d=0 and a <= {limit}, expected {}; mismatches {}",
                    got.len(),
                    want.len(),
                    mismatches.len()
                ),
                mismatches,
            })
        }
        VerifyMode::ThreeRow => {
            if pset.k() < 3 {
                return Err(ChompError::Precondition("3xn check needs at least three rows".into()));
            }
            let limit = limit.unwrap_or(50).min(pset.n_max());
            let got: BTreeSet<[u32; 3]> = rows
                .iter()
                .filter(|r| r[0] <= limit && r[3] == 0)
                .map(|r| [r[0], r[1], r[2]])
                .collect();
            let want: BTreeSet<[u32; 3]> = oracle::oracle_pset(limit, 3)?
                .iter()
                .map(|p| [p.row(0), p.row(1), p.row(2)])
                .collect();
            let mismatches = diff(&got, &want, |r| fmt(r));
            Ok(VerifyOutcome {
                summary: format!(
                    "3xn: d=0 slice with a <= {limit} has {} rows, oracle {}; mismatches {}",
                    got.len(),
                    want.len(),
                    mismatches.len()
                ),
                mismatches,
            })
        }
        VerifyMode::Oracle4 => {
            if pset.k() != 4 {
                return Err(ChompError::Precondition("oracle4 check needs a four-row P-set".into()));
            }
            let limit = limit.unwrap_or(oracle::default_ceiling(4)).min(pset.n_max());
            let got: BTreeSet<[u32; 4]> = rows.iter().copied().filter(|r| r[0] <= limit).collect();
            let want: BTreeSet<[u32; 4]> = oracle::oracle_pset(limit, 4)?
                .iter()
                .map(|p| [p.row(0), p.row(1), p.row(2), p.row(3)])
                .collect();
            let mismatches = diff(&got, &want, |r| fmt(r));
            Ok(VerifyOutcome {
                summary: format!(
                    "oracle4: {} P-positions with a <= {limit}, oracle {}; mismatches {}",
                    got.len(),
                    want.len(),
                    mismatches.len()
                ),
                mismatches,
            })
        }
    }
}

fn diff<T: Ord>(got: &BTreeSet<T>, want: &BTreeSet<T>, show: impl Fn(&T) -> String) -> Vec<String> {
    let extra = got.difference(want).map(|x| format!("unexpected {}", show(x)));
    let missing = want.difference(got).map(|x| format!("missing {}", show(x)));
    extra.chain(missing).collect()
}
