//! `gridsub`: exact counts of bimonotone and general subdivisions and
//! triangulations of planar lattice grids, with cross-validation across
//! enumeration, recursions, closed forms, sequence identities, and flip BFS.

mod cache;
mod commands;
mod error;
mod report;
mod svg;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use error::{CliError, EXIT_OK, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "gridsub", version, about, disable_help_subcommand = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args)]
pub struct GlobalArgs {
    /// Output format for the report document.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Flat JSON cache file for final counts.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Worker threads (1 = reference serial execution).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Conflict rule for pairs of candidate edges.
    #[arg(long, global = true, value_enum, default_value_t = EdgeInteractionArg::Strict)]
    pub edge_interaction: EdgeInteractionArg,

    /// Candidate edge filter. Primitive-only is the convention that
    /// reproduces the published grid counts; all-pairs additionally admits
    /// edges through unused lattice points (sensitivity analysis).
    #[arg(long, global = true, value_enum, default_value_t = CandidatesArg::PrimitiveOnly)]
    pub candidates: CandidatesArg,

    /// Search-node budget; overrides the GRIDSUB_BUDGET_NODES environment
    /// variable, which overrides the built-in default.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Bimonotone,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeInteractionArg {
    /// Edges may meet only at shared endpoints.
    Strict,
    /// Reject only intersections at off-grid points.
    PaperLiteral,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CandidatesArg {
    AllPairs,
    PrimitiveOnly,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TriangulationMethodArg {
    FlipBfs,
    Enumeration,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TwoRowMethodArg {
    Recursion,
    Enumeration,
    ClosedForm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceNameArg {
    Schroeder,
    SchroederOracle,
    Delannoy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyFamilyArg {
    /// Bimonotone family P_n.
    P,
    /// Total family Q_n.
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Schroeder,
    DelannoyConjecture,
    Tables,
    OracleEquivalence,
    Descent,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderTargetArg {
    CanonicalTriangulation,
    Subdivision,
}

#[derive(Subcommand)]
pub enum Command {
    /// Count subdivisions of the cols x rows grid by enumeration.
    CountGrid {
        #[arg(long)]
        cols: u32,
        #[arg(long)]
        rows: u32,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Count subdivisions of the two-row configuration (top/bottom points).
    CountTwoRow {
        #[arg(long)]
        top: u32,
        #[arg(long)]
        bottom: u32,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = TwoRowMethodArg::Recursion)]
        method: TwoRowMethodArg,
    },
    /// Count full-point triangulations of the cols x rows grid.
    CountTriangulations {
        #[arg(long)]
        cols: u32,
        #[arg(long)]
        rows: u32,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = TriangulationMethodArg::FlipBfs)]
        method: TriangulationMethodArg,
    },
    /// Evaluate one of the supported integer sequences.
    Sequences {
        #[arg(long, value_enum)]
        name: SequenceNameArg,
        #[arg(long)]
        n: u32,
    },
    /// Emit the exact coefficients of P_n or Q_n.
    Poly {
        #[arg(long, value_enum)]
        family: PolyFamilyArg,
        #[arg(long)]
        n: u32,
    },
    /// Run one of the verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Compute the 2 x n counts by every applicable method and require the
    /// non-conjectural ones to agree.
    CrossValidate {
        #[arg(long)]
        n_max: u32,
    },
    /// Write an SVG picture of a triangulation or subdivision.
    Render {
        #[arg(long, value_enum)]
        target: RenderTargetArg,
        #[arg(long)]
        cols: Option<u32>,
        #[arg(long)]
        rows: Option<u32>,
        #[arg(long)]
        top: Option<u32>,
        #[arg(long)]
        bottom: Option<u32>,
        #[arg(long, value_enum, default_value_t = ModeArg::All)]
        mode: ModeArg,
        /// Index into the lexicographic subdivision listing.
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };

    if cli.global.threads == 0 {
        eprintln!("error: --threads must be at least 1");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot build thread pool: {e}");
            return EXIT_USAGE;
        }
    };

    match pool.install(|| commands::run(&cli)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn budget_nodes(global: &GlobalArgs) -> Result<u64, CliError> {
    if let Some(b) = global.budget_nodes {
        return Ok(b);
    }
    match std::env::var("GRIDSUB_BUDGET_NODES") {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::Usage(format!("invalid GRIDSUB_BUDGET_NODES value: {raw:?}"))
        }),
        Err(_) => Ok(gridsub::enumeration::DEFAULT_NODE_BUDGET),
    }
}
