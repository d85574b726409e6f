//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 on success, 1 when a verification or sweep finds a
//! counterexample (or a runtime error occurs), 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use opcal_core::algebra::parse_vector;
use opcal_core::loss::{cs_hinge, op_loss, ww_hinge};
use opcal_core::lp::build_bayes_lp;
use opcal_core::partition::{enumerate_with_limit, DEFAULT_MAX_K};
use opcal_core::regions::{figure1_data, omega_cell, omega_grid, OmegaCell};
use opcal_core::risk::{bayes_ww_lp, LossTable};
use opcal_core::{OrderedPartition, ProbVector};
use rayon::prelude::*;

use crate::format::{enumerate_json, int_vector, omega_csv, regions_csv, risk_report, OmegaSummary, Style};
use crate::maxinfo::{summary_line, sweep, SweepOptions};
use crate::svg::{omega_svg, regions_svg};
use crate::verify::{run_suite, VerifyOptions, SUITES};

#[derive(Debug, Parser)]
#[command(name = "opcal", version, about = "Ordered partition loss and Weston-Watkins hinge calculator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LossKind {
    Ww,
    Op,
    Cs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Jobs {
    /// Worker threads [default: all cores]
    #[arg(long, env = "OPCAL_JOBS")]
    pub jobs: Option<usize>,
}

impl Jobs {
    fn get(&self) -> usize {
        self.jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List OP_k as JSON records with their embeddings
    Enumerate {
        #[arg(long)]
        k: usize,
        /// Raise the size cap (memory grows like the Fubini numbers)
        #[arg(long, default_value_t = DEFAULT_MAX_K)]
        max_k: usize,
    },
    /// Evaluate a loss vector
    EvalLoss {
        #[arg(long, value_enum)]
        loss: LossKind,
        /// Score vector `a,b,c` for ww/cs, partition `1|2,3` for op
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        decimal: Option<usize>,
    },
    /// Bayes risk, all minimizers and uniqueness at p
    Bayes {
        #[arg(long)]
        p: String,
        #[arg(long)]
        decimal: Option<usize>,
        /// Print the WW Bayes-risk LP to stderr
        #[arg(long)]
        dump_lp: bool,
    },
    /// Decision regions for k = 3
    Regions {
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        decimal: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a grid of the 3-class simplex
    Omega {
        #[arg(long)]
        grid: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        decimal: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Unique-minimizer witness for every partition of OP_k
    Maxinfo {
        #[arg(long)]
        k: usize,
        /// Allow k = 6, 7 with checkpointing
        #[arg(long)]
        deep: bool,
        /// Allow k = 8 (no published count)
        #[arg(long)]
        experimental: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        quiet: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Run seeded property suites
    Verify {
        /// Suite name or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Fewer random cases and a smaller sweep
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
}

enum Failure {
    Usage(String),
    Check,
    Runtime(anyhow::Error),
}

impl From<opcal_core::Error> for Failure {
    fn from(e: opcal_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

type Outcome = Result<(), Failure>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Runtime(e.into()))
}

fn emit(text: &str, output: Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    match output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut (dyn Write + Send)) -> Outcome {
    match command {
        Command::Enumerate { k, max_k } => {
            let parts = enumerate_with_limit(k, max_k)?;
            writeln!(out, "{}", enumerate_json(&parts).map_err(|e| Failure::Runtime(e.into()))?)?;
        }
        Command::EvalLoss { loss, input, decimal } => {
            let style = Style { decimal };
            let line = match loss {
                LossKind::Op => int_vector(&op_loss(&input.parse::<OrderedPartition>()?)),
                LossKind::Ww => style.vector(&ww_hinge(&parse_vector(&input)?)?),
                LossKind::Cs => style.vector(&cs_hinge(&parse_vector(&input)?)?),
            };
            writeln!(out, "{line}")?;
        }
        Command::Bayes { p, decimal, dump_lp } => {
            let p = ProbVector::parse(&p)?;
            let table = LossTable::new(p.k())?;
            let report = table.bayes(&p)?;
            if dump_lp {
                let sigma = opcal_core::algebra::sort_desc_permutation(p.entries());
                write!(err, "{}", build_bayes_lp(&p.permuted(&sigma)?, 1)?)?;
            }
            write!(out, "{}", risk_report(&report, Style { decimal }))?;
            if bayes_ww_lp(&p, 1)? != report.value {
                writeln!(err, "error: LP and enumeration disagree at p=({p})")?;
                return Err(Failure::Check);
            }
        }
        Command::Regions { format, decimal, output } => {
            let polys = figure1_data()?;
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    regions_csv(&mut buf, &polys, Style { decimal })?;
                    String::from_utf8(buf).expect("utf-8 csv")
                }
                Format::Svg => regions_svg(&polys),
            };
            emit(&text, output, out)?;
        }
        Command::Omega {
            grid,
            format,
            decimal,
            output,
            jobs,
        } => {
            let points = omega_grid(grid)?;
            let table = LossTable::new(3)?;
            let cells: Vec<OmegaCell> = pool(jobs.get())?.install(|| {
                points
                    .par_iter()
                    .map(|(x, y)| omega_cell(&table, x, y))
                    .collect::<opcal_core::Result<_>>()
            })?;
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    omega_csv(&mut buf, &cells, Style { decimal })?;
                    String::from_utf8(buf).expect("utf-8 csv")
                }
                Format::Svg => omega_svg(&cells, grid, &figure1_data()?),
            };
            emit(&text, output, out)?;
            writeln!(err, "{}", OmegaSummary::new(&cells))?;
        }
        Command::Maxinfo {
            k,
            deep,
            experimental,
            out: out_dir,
            checkpoint,
            quiet,
            jobs,
        } => {
            let opts = SweepOptions {
                k,
                deep,
                experimental,
                jobs: jobs.get(),
                out_dir,
                checkpoint,
                progress: !quiet,
            };
            opts.check().map_err(Failure::Usage)?;
            let summary = sweep(&opts, err).map_err(Failure::Runtime)?;
            writeln!(out, "{}", summary_line(&summary))?;
            if !summary.complete() {
                for s in &summary.missing {
                    writeln!(out, "no unique-minimizer witness: {s}")?;
                }
                return Err(Failure::Check);
            }
        }
        Command::Verify { suite, seed, quick, jobs } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(Failure::Usage(format!(
                    "unknown suite {suite:?}; expected all or one of {}",
                    SUITES.join(", ")
                )));
            };
            let opts = VerifyOptions { seed, quick };
            let pool = pool(jobs.get())?;
            let mut failed = 0;
            for name in &names {
                let start = std::time::Instant::now();
                let report = pool.install(|| run_suite(name, opts)).expect("known suite");
                writeln!(out, "{report}")?;
                writeln!(err, "{name}: {:.2}s", start.elapsed().as_secs_f64())?;
                failed += usize::from(!report.passed());
            }
            writeln!(out, "suites={} failed={failed} seed={seed}", names.len())?;
            if failed > 0 {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}
