use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quiverknot::commands::{self, CompareArgs, ShadowArgs};
use quiverknot::{AppError, Catalog, KnotArg, RunResult};

#[derive(Parser)]
#[command(name = "quiverknot", version, about = "Quandle coloring quivers and shadow cocycle polynomials of PD-coded knots")]
struct Cli {
    /// Extra catalog JSON merged over the built-in knots (default: $QUIVERKNOT_CATALOG).
    #[arg(long, global = true, value_name = "FILE")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Knot {
    /// Catalog name, e.g. 4_1.
    #[arg(long)]
    knot: Option<String>,
    /// Literal PD code, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".
    #[arg(long)]
    pd: Option<String>,
}

impl Knot {
    fn arg(self) -> KnotArg {
        match (self.knot, self.pd) {
            (Some(name), _) => KnotArg::Name(name),
            (None, Some(pd)) => KnotArg::Pd(pd),
            (None, None) => unreachable!("clap enforces one of --knot/--pd"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write the quiver as a DOT digraph to FILE.
    #[arg(long, value_name = "FILE")]
    dot: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Merge parallel edges in the DOT output (display only).
    #[arg(long)]
    collapse_parallel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count or list quandle colorings.
    Colorings {
        #[command(flatten)]
        knot: Knot,
        /// dihedral:n | alexander:n:t | table:PATH
        #[arg(long)]
        quandle: String,
        /// Report only the number of colorings (default).
        #[arg(long, conflicts_with = "list")]
        count: bool,
        /// Also list every coloring.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the quandle coloring quiver.
    Quiver {
        #[command(flatten)]
        knot: Knot,
        #[arg(long)]
        quandle: String,
        /// all | auto | a,b;a,b;... (maps x -> ax+b)
        #[arg(long, default_value = "all")]
        endos: String,
        #[command(flatten)]
        output: Output,
    },
    /// Build the shadow cocycle quiver and its polynomial.
    Shadow {
        #[command(flatten)]
        knot: Knot,
        #[arg(long)]
        quandle: String,
        /// mochizuki | table:PATH
        #[arg(long, default_value = "mochizuki")]
        cocycle: String,
        /// Color of the unbounded region.
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long, default_value = "all")]
        endos: String,
        #[command(flatten)]
        output: Output,
    },
    /// Decide whether two knots have isomorphic quivers.
    Compare {
        /// Catalog name or PD code.
        a: String,
        b: String,
        #[arg(long)]
        quandle: String,
        #[arg(long, default_value = "all")]
        endos: String,
        /// Compare weighted shadow cocycle quivers and invariant multisets.
        #[arg(long)]
        weighted: bool,
        #[arg(long, default_value = "mochizuki")]
        cocycle: String,
        #[arg(long, default_value_t = 0)]
        base: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn emit(result: &RunResult, format: Format, dot: Option<&PathBuf>) -> Result<(), AppError> {
    if let (Some(path), Some(text)) = (dot, &result.dot) {
        std::fs::write(path, text).map_err(|source| AppError::Io { path: path.clone(), source })?;
    }
    match format {
        Format::Json => println!("{}", result.to_json()),
        Format::Text => print!("{}", result.to_text()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), AppError> {
    let catalog = Catalog::load(cli.catalog.as_deref())?;
    match cli.command {
        Command::Colorings { knot, quandle, count: _, list, format } => {
            emit(&commands::colorings(&catalog, &knot.arg(), &quandle, list)?, format, None)
        }
        Command::Quiver { knot, quandle, endos, output } => {
            let r = commands::quiver(&catalog, &knot.arg(), &quandle, &endos, output.collapse_parallel)?;
            emit(&r, output.format, output.dot.as_ref())
        }
        Command::Shadow { knot, quandle, cocycle, base, endos, output } => {
            let args = ShadowArgs { quandle: &quandle, cocycle: &cocycle, base, endos: &endos };
            let r = commands::shadow(&catalog, &knot.arg(), &args, output.collapse_parallel)?;
            emit(&r, output.format, output.dot.as_ref())
        }
        Command::Compare { a, b, quandle, endos, weighted, cocycle, base, format } => {
            let args = CompareArgs { quandle: &quandle, endos: &endos, weighted, cocycle: &cocycle, base };
            let (a, b) = (KnotArg::guess(&a, &catalog), KnotArg::guess(&b, &catalog));
            emit(&commands::compare(&catalog, &a, &b, &args)?, format, None)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
