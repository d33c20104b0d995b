mod cache;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "beurling", version, about = "Experiments on weighted Fourier algebras of SU(n) and tori")]
struct Cli {
    /// Also write the structured JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Directory for the Littlewood-Richardson cache.
    #[arg(long, global = true, value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Do not read or write the Littlewood-Richardson cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Format of the report printed on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weyl dimension and length of an irreducible representation.
    Dim(commands::DimArgs),
    /// Littlewood-Richardson decomposition of a tensor product.
    Tensor(commands::TensorArgs),
    /// Restriction of a weight to the maximal torus.
    Restrict(commands::RestrictArgs),
    /// Worst dimension ratio against 1/(λ₁+1) + 1/(μ₁+1).
    Condition1(commands::Condition1Args),
    /// Exhaustive submultiplicativity scan of a weight family.
    Submult(commands::SubmultArgs),
    /// Constants K and M for exponential weights dominated by polynomial ones.
    AppendixB(commands::AppendixBArgs),
    /// Partial Epstein sums over Z^n.
    Epstein(commands::EpsteinArgs),
    /// Rudin-Shapiro polynomials and their sup norms.
    RudinShapiro(commands::RudinShapiroArgs),
    /// Operator-norm certificates for multiplier matrices on Z^n.
    TorusNorms(commands::TorusNormsArgs),
    /// Littlewood tail sums over the dual of SU(n).
    GroupTail(commands::GroupTailArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Dim(_) => "dim",
            Command::Tensor(_) => "tensor",
            Command::Restrict(_) => "restrict",
            Command::Condition1(_) => "condition1",
            Command::Submult(_) => "submult",
            Command::AppendixB(_) => "appendix-b",
            Command::Epstein(_) => "epstein",
            Command::RudinShapiro(_) => "rudin-shapiro",
            Command::TorusNorms(_) => "torus-norms",
            Command::GroupTail(_) => "group-tail",
        }
    }
}

fn params_of<A: Args + serde::Serialize>(a: &A) -> serde_json::Value {
    serde_json::to_value(a).expect("serializable arguments")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let cache = if cli.no_cache {
        None
    } else {
        cache::resolve_cache_dir(cli.cache_dir.as_deref()).map(cache::LrCache::new)
    };
    let ctx = commands::Context { cache: cache.as_ref() };

    let (params, outcome) = match &cli.command {
        Command::Dim(a) => (params_of(a), commands::dim(a)),
        Command::Tensor(a) => (params_of(a), commands::tensor(a, &ctx)),
        Command::Restrict(a) => (params_of(a), commands::restrict(a)),
        Command::Condition1(a) => (params_of(a), commands::condition1(a, &ctx)),
        Command::Submult(a) => (params_of(a), commands::submult(a, &ctx)),
        Command::AppendixB(a) => (params_of(a), commands::appendix_b(a, &ctx)),
        Command::Epstein(a) => (params_of(a), commands::epstein(a)),
        Command::RudinShapiro(a) => (params_of(a), commands::rudin_shapiro(a)),
        Command::TorusNorms(a) => (params_of(a), commands::torus_norms(a)),
        Command::GroupTail(a) => (params_of(a), commands::group_tail(a)),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(commands::Failure::Usage(e)) => e.exit(),
        Err(commands::Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    if let Some(c) = &cache {
        if let Err(e) = c.flush() {
            eprintln!("warning: could not write the tensor cache: {e}");
        }
    }

    let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64());
    let report = Report::new(cli.command.name(), params, outcome, elapsed);
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Csv => print!("{}", report.to_csv()),
        Format::Table => print!("{}", report.to_table()),
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: could not write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}

pub(crate) fn usage_error(msg: String) -> clap::Error {
    use clap::CommandFactory;
    Cli::command().error(clap::error::ErrorKind::ValueValidation, msg)
}
