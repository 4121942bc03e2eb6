use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "detachable", version, about = "Matroid connectivity, detachable pairs and the exceptional families")]
pub struct Cli {
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<NonZeroUsize>,
    /// Largest ground set accepted (at most 24).
    #[arg(long, global = true, value_name = "N")]
    pub cap: Option<usize>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a family member.
    Gen(GenArgs),
    /// Print small circuits and cocircuits, maximal fans and the connectivity profile.
    Analyze(AnalyzeArgs),
    /// Search for detachable pairs.
    Pairs(PairsArgs),
    /// Classify a 3-connected matroid or graph with at least 13 elements.
    Classify(ClassifyArgs),
    /// Write the dual matroid.
    Dual(TransformArgs),
    /// Delete and contract elements.
    Minor(MinorArgs),
    /// Run the verification harness.
    Verify(VerifyArgs),
    /// Transcode between the text formats.
    Convert(ConvertArgs),
}

/// Family parameters; `-p key=value` covers anything without its own flag.
#[derive(Debug, Default, Args)]
pub struct ParamArgs {
    #[arg(long, requires = "family")]
    pub n: Option<i64>,
    #[arg(long, requires = "family")]
    pub r: Option<i64>,
    #[arg(long, requires = "family")]
    pub m: Option<i64>,
    #[arg(long, requires = "family")]
    pub j: Option<i64>,
    #[arg(long, requires = "family")]
    pub k: Option<i64>,
    #[arg(long, requires = "family")]
    pub t: Option<i64>,
    /// Colon-separated part sizes, as in `--s 1:2:2`.
    #[arg(long, requires = "family")]
    pub s: Option<String>,
    /// Colon-separated leg lengths.
    #[arg(long, requires = "family")]
    pub legs: Option<String>,
    #[arg(long, requires = "family")]
    pub kind: Option<String>,
    #[arg(long, requires = "family")]
    pub tip_cotip: bool,
    #[arg(long, requires = "family")]
    pub tipped: bool,
    /// Generate the dual of the family member.
    #[arg(long, requires = "family")]
    pub dual: bool,
    #[arg(short = 'p', long = "param", value_name = "KEY=VALUE", requires = "family")]
    pub extra: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Input file in graph, gfp, bases or graph6 form; `-` reads stdin.
    #[arg(long = "in", value_name = "PATH", required_unless_present = "family", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Family tag, optionally with parameters: `k3m` or `k3m/m=5`.
    #[arg(long, value_name = "SPEC")]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
    /// Directory of searched fixtures for families without a construction.
    #[arg(long, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectFormat {
    /// Graph for graphs, the stored representation for matroids.
    Auto,
    Graph,
    Graph6,
    Gfp,
    Bases,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    First,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportKind {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_name = "SPEC")]
    pub family: String,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ObjectFormat::Auto)]
    pub format: ObjectFormat,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Largest circuit and cocircuit size listed (3 to 5).
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct PairsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Mode::First)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    pub format: TextFormat,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = ObjectFormat::Auto)]
    pub format: ObjectFormat,
}

#[derive(Debug, Args)]
pub struct MinorArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_delimiter = ',', value_name = "E,..")]
    pub delete: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_name = "E,..")]
    pub contract: Vec<usize>,
    #[arg(long, value_enum, default_value_t = ObjectFormat::Auto)]
    pub format: ObjectFormat,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum)]
    pub to: ObjectFormat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Families to sweep, comma-separated; all of them by default.
    #[arg(long, value_delimiter = ',', value_name = "TAG,..")]
    pub families: Vec<String>,
    #[arg(long, conflicts_with = "families")]
    pub no_sweeps: bool,
    #[arg(long, default_value_t = 13)]
    pub min_elements: usize,
    #[arg(long, default_value_t = 18)]
    pub max_elements: usize,
    #[arg(long)]
    pub no_duals: bool,
    /// Random simple 3-connected graphs to sample.
    #[arg(long, default_value_t = 300)]
    pub random: usize,
    #[arg(long, default_value_t = 13)]
    pub min_edges: usize,
    #[arg(long, default_value_t = 16)]
    pub max_edges: usize,
    #[arg(long)]
    pub no_planted: bool,
    /// graph6 catalogs to ingest.
    #[arg(long, value_name = "PATH")]
    pub catalog: Vec<PathBuf>,
    #[arg(long, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,
    /// Invariant suites to leave out.
    #[arg(long, value_delimiter = ',', value_name = "SUITE,..")]
    pub skip: Vec<String>,
    /// Record per-instance wall clock in the report.
    #[arg(long)]
    pub timing: bool,
    /// Per-instance report file.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportKind::Json)]
    pub report_format: ReportKind,
}
