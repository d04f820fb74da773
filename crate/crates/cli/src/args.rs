use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "treefrac", version, about = "Spanning trees, thin orbits, and continued-fraction fractals")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Configuration file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Skip reading and writing the result cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Also write the run record to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction and alternating form of a fraction.
    Cf(CfArgs),
    /// Build the marked graph of an alternating continued fraction.
    Graph(GraphArgs),
    /// Spanning-tree count of an edge-list file.
    Tau(TauArgs),
    /// Spanning-tree counts of all small connected simple graphs.
    Census(CensusArgs),
    /// Minimal vertex counts realizing each spanning-tree count.
    Alpha(AlphaArgs),
    /// Semigroup balls and their numerators.
    #[command(subcommand)]
    Orbit(OrbitCommand),
    /// Certified Hausdorff dimension bounds.
    #[command(subcommand)]
    Dim(DimCommand),
    /// Run the acceptance suite and print a pass/fail table.
    ReproducePaper(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct CfArgs {
    /// A fraction `t/u`.
    #[arg(conflicts_with = "eval", required_unless_present = "eval")]
    pub value: Option<String>,
    /// Evaluate a continued fraction such as `[0;2,1,2,1]`.
    #[arg(long)]
    pub eval: Option<String>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Digits `b1,...,bm` of `[b1,1,...,bm,1]`.
    #[arg(long)]
    pub bs: String,
    /// Delete the marked edge and remove pendant trees.
    #[arg(long)]
    pub trim: bool,
    /// Write the graph as DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the graph as an edge list.
    #[arg(long)]
    pub edge_list: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TauArgs {
    /// Edge-list file, or `-` for standard input.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    /// Include non-planar graphs.
    #[arg(long)]
    pub nonplanar: bool,
    /// Include one witness graph per value.
    #[arg(long)]
    pub witnesses: bool,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[arg(long, default_value_t = 3)]
    pub min: u64,
    #[arg(long)]
    pub max: u64,
    /// Write the table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum OrbitCommand {
    /// Size and growth of the norm ball.
    Ball(BallArgs),
    /// Distinct numerators in the ball.
    Numerators(BallArgs),
    /// Representation numbers.
    Repnum(RepnumArgs),
    /// Reduction of the semigroup modulo q.
    Admissible(AdmissibleArgs),
}

#[derive(Debug, Args)]
pub struct BallArgs {
    #[arg(long = "A")]
    pub a: u64,
    #[arg(long = "N")]
    pub radius: u64,
}

#[derive(Debug, Args)]
pub struct RepnumArgs {
    #[arg(long = "A")]
    pub a: u64,
    #[arg(long = "N")]
    pub radius: u64,
    /// Report only this integer.
    #[arg(long)]
    pub value: Option<String>,
}

#[derive(Debug, Args)]
pub struct AdmissibleArgs {
    #[arg(long = "A")]
    pub a: u64,
    #[arg(long, default_value_t = 2)]
    pub qmin: u32,
    #[arg(long)]
    pub qmax: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Grid,
    Interval,
}

#[derive(Debug, Subcommand)]
pub enum DimCommand {
    /// Certify that the bounded-digit dimension exceeds s.
    Lower(LowerArgs),
    /// Certify that the unbounded-digit dimension is below s.
    Upper(UpperArgs),
    /// Finite-depth pressure approximation.
    Pressure(PressureArgs),
    /// Gap intervals of the Cantor construction as circles.
    Circles(CirclesArgs),
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub s: f64,
    /// Number of Chebyshev nodes.
    #[arg(long, default_value_t = 5)]
    pub order: usize,
    /// Grid cells (default from configuration).
    #[arg(long)]
    pub cells: Option<usize>,
    #[arg(long, value_enum, default_value_t = MethodArg::Grid)]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct LowerArgs {
    #[arg(long = "A")]
    pub a: u64,
    #[command(flatten)]
    pub certify: CertifyArgs,
}

#[derive(Debug, Args)]
pub struct UpperArgs {
    #[command(flatten)]
    pub certify: CertifyArgs,
}

#[derive(Debug, Args)]
pub struct PressureArgs {
    #[arg(long = "A")]
    pub a: u64,
    #[arg(long)]
    pub s: f64,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct CirclesArgs {
    #[arg(long)]
    pub depth: usize,
    #[arg(long, default_value_t = 8)]
    pub max_digit: u64,
    /// Write `center,diameter,depth` rows.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Run only these criteria (comma-separated numbers).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
}
