//! Command-line front end for the `bookem` toolkit.
//!
//! Exit codes: 0 success, 1 a verification or search came back negative,
//! 2 usage or input error, 3 a budget ran out before the answer was exact.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod render;

pub use render::{render_svg, RenderSpec};

/// Overrides the vertex cap of `generate`.
pub const MAX_VERTICES_ENV: &str = "BOOKEM_MAX_VERTICES";

#[derive(Debug, Parser)]
#[command(name = "bookem", version, about = "Book, local and union page numbers of graphs")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the primary output here instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph file for one of the built-in families.
    Generate(GenerateArgs),
    /// Check an embedding file against a graph file.
    Verify(VerifyArgs),
    /// Density lower bounds and constructive upper bounds.
    Bound(BoundArgs),
    /// Build an embedding with one of the constructions.
    Construct(ConstructArgs),
    /// Compute pn, pn_local or pn_union exactly, or an interval on timeout.
    Solve(SolveArgs),
    /// Search for a cyclic template embedding of K_n.
    Template(TemplateArgs),
    /// Draw an embedding as an SVG arc diagram.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Complete graph K_n (--n).
    Kn,
    /// Complete bipartite graph K_{a,b} (--a, --b).
    Knm,
    /// Stacked triangulation T_level (--level).
    Stacked,
    /// Seeded random k-tree (--k, --n, --seed).
    Ktree,
    /// Path on n vertices (--n).
    Path,
    /// Cycle on n vertices (--n).
    Cycle,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Book,
    Union,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub embedding: PathBuf,
    pub graph: PathBuf,
    /// Exit with status 1 unless the embedding is of this kind.
    #[arg(long, value_enum)]
    pub expect: Option<Expect>,
    /// Also require every vertex to see at most this many pages.
    #[arg(long)]
    pub max_locality: Option<usize>,
    /// List every violating pair instead of the first 32.
    #[arg(long)]
    pub all_violations: bool,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    pub graph: PathBuf,
    /// A known lower bound on the classical page number.
    #[arg(long)]
    pub pn_lower: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Forest partition split into star forests, one page each.
    StarUnion,
    /// One page per star of an edge orientation.
    StarLocal,
    /// ceil(n/2)-page book embedding of K_n (--n).
    KnZigzag,
    /// Color-pair trees of a k-tree, split into star forests.
    KtreeColors,
    /// Cyclic template search for K_n (--n, --locality, --templates, --shifts).
    Template,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Degeneracy,
    OutDegree,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    /// Input graph (star-union, star-local, ktree-colors).
    pub graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "degeneracy")]
    pub orientation: OrientationArg,
    /// k for ktree-colors; inferred from the edge count when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub template: TemplateParams,
}

#[derive(Debug, Args)]
pub struct TemplateParams {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub locality: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub templates: usize,
    #[arg(long)]
    pub shifts: Option<usize>,
    /// Seconds before the template search gives up.
    #[arg(long, default_value_t = 600.0)]
    pub timeout: f64,
    #[arg(long)]
    pub node_limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct TemplateArgs {
    #[command(flatten)]
    pub params: TemplateParams,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub graph: PathBuf,
    /// pn, pnl or pnu.
    #[arg(long)]
    pub param: String,
    /// Restrict the search to the spine given in this file ("spine: ..." line).
    #[arg(long)]
    pub spine: Option<PathBuf>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    /// Search node budget.
    #[arg(long)]
    pub node_limit: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write the best embedding found here.
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub embedding: PathBuf,
    pub graph: PathBuf,
    #[arg(long)]
    pub width: Option<u32>,
    #[arg(long)]
    pub height: Option<u32>,
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// status. Messages go to standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

/// How a command that ran to completion ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Negative,
    OutOfBudget,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
            Status::OutOfBudget => 3,
        }
    }
}
