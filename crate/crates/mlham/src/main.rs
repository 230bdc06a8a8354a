//! `mlham`: generate and check middle levels Hamilton cycles.
//!
//! Data goes to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 when a verification fails, 2 on bad usage.

mod plan_file;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mlham_core::factor::enumerate_classes;
use mlham_core::hamilton::successor;
use mlham_core::verify::{check_all_lemmas, check_stream};
use mlham_core::{BitWord, GluingPlan, HamiltonStream};

use plan_file::PlanFileError;

/// Largest n whose vertex count fits in 64 bits.
const MAX_N: u64 = 32;

#[derive(Parser)]
#[command(
    name = "mlham",
    version,
    about = "Hamilton cycles in the middle levels graph"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the Hamilton cycle, one vertex per line
    Gen {
        #[arg(long, value_parser = n_parser())]
        n: u64,
        /// Stop after this many vertices
        #[arg(long)]
        limit: Option<u64>,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use a cached gluing plan instead of building one
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Generate the cycle in-process and check that it is Hamiltonian
    Verify {
        #[arg(long, value_parser = n_parser())]
        n: u64,
        /// Use a cached gluing plan instead of building one
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// List the cycles of the factor: canonical nut, period, length
    Factor {
        #[arg(long, value_parser = n_parser())]
        n: u64,
    },
    /// Run the exhaustive lemma checks
    Lemmas {
        #[arg(long, value_parser = n_parser())]
        n: u64,
    },
    /// Print the vertex after `at` when arriving from `prev`
    Next {
        #[arg(long, value_parser = n_parser())]
        n: u64,
        #[arg(long)]
        prev: BitWord,
        #[arg(long)]
        at: BitWord,
    },
    /// Build the gluing plan and save it for later runs
    Plan {
        #[arg(long, value_parser = n_parser())]
        n: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn n_parser() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..=MAX_N)
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Usage(mlham_core::Error),
    #[error(transparent)]
    Core(#[from] mlham_core::Error),
    #[error(transparent)]
    PlanFile(#[from] PlanFileError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Io { context, source }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        // a closed pipe (`mlham gen | head`) is not an error
        Err(CliError::Io { source, .. }) if source.kind() == io::ErrorKind::BrokenPipe => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mlham: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Gen {
            n,
            limit,
            out,
            plan,
        } => {
            let plan = obtain_plan(n as usize, plan.as_deref())?;
            let count = match out {
                Some(path) => {
                    let file = File::create(&path).map_err(io_err(path.display().to_string()))?;
                    write_cycle(&plan, limit, file)?
                }
                None => write_cycle(&plan, limit, io::stdout().lock())?,
            };
            eprintln!("{count} vertices");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { n, plan } => {
            let n = n as usize;
            let plan = match obtain_plan(n, plan.as_deref()) {
                Ok(plan) => plan,
                Err(CliError::PlanFile(e)) => {
                    println!("HAMILTON n={n}: FAIL plan rejected");
                    eprintln!("mlham: {e}");
                    return Ok(ExitCode::FAILURE);
                }
                Err(e) => return Err(e),
            };
            let report = check_stream(n, HamiltonStream::new(&plan))?;
            println!("{report}");
            Ok(pass_fail(report.passed()))
        }
        Command::Factor { n } => {
            let mut out = BufWriter::new(io::stdout().lock());
            for class in enumerate_classes(n as usize)? {
                writeln!(out, "{} {} {}", class.class, class.period, class.length)
                    .map_err(io_err("stdout"))?;
            }
            out.flush().map_err(io_err("stdout"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Lemmas { n } => {
            let report = check_all_lemmas(n as usize).map_err(CliError::Usage)?;
            println!("{report}");
            Ok(pass_fail(report.passed()))
        }
        Command::Next { n, prev, at } => {
            let plan = GluingPlan::build(n as usize)?;
            let next = successor(&plan, &prev, &at).map_err(CliError::Usage)?;
            println!("{next}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Plan { n, out } => {
            let plan = GluingPlan::build(n as usize)?;
            plan_file::save(&plan, &out)?;
            eprintln!(
                "{} gluings written to {}",
                plan.chosen().len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn pass_fail(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn obtain_plan(n: usize, cached: Option<&Path>) -> Result<GluingPlan, CliError> {
    match cached {
        Some(path) => Ok(plan_file::load(path, n)?),
        None => Ok(GluingPlan::build(n)?),
    }
}

/// Writes the cycle as text lines and returns the number of vertices.
fn write_cycle(plan: &GluingPlan, limit: Option<u64>, sink: impl Write) -> Result<u64, CliError> {
    let mut out = BufWriter::with_capacity(1 << 16, sink);
    let mut line = Vec::with_capacity(2 * plan.n() + 2);
    let mut count = 0;
    let limit = limit.map_or(usize::MAX, |m| usize::try_from(m).unwrap_or(usize::MAX));
    for v in HamiltonStream::new(plan).take(limit) {
        line.clear();
        line.extend(v.iter().map(|b| if b { b'1' } else { b'0' }));
        line.push(b'\n');
        out.write_all(&line).map_err(io_err("output"))?;
        count += 1;
    }
    out.flush().map_err(io_err("output"))?;
    Ok(count)
}
