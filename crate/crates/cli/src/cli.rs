use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "netcurv", version, about = "Menger and Haantjes curvatures of networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-edge (or per-vertex) curvature report.
    Curvature(CurvatureArgs),
    /// Correlate two measures over the edges of one network.
    Compare(CompareArgs),
    /// Write a model network, lattice or polyhedron as an edge list.
    Generate(GenerateArgs),
    /// Bin the values of a report.
    Histogram(HistogramArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    MengerRicci,
    HaantjesSimple,
    HaantjesStrong,
    HaantjesDirectional,
    Forman,
    Ollivier,
    Betweenness,
    Excess,
    AspectRatio,
}

impl Measure {
    pub fn name(self) -> &'static str {
        match self {
            Measure::MengerRicci => "menger-ricci",
            Measure::HaantjesSimple => "haantjes-simple",
            Measure::HaantjesStrong => "haantjes-strong",
            Measure::HaantjesDirectional => "haantjes-directional",
            Measure::Forman => "forman",
            Measure::Ollivier => "ollivier",
            Measure::Betweenness => "betweenness",
            Measure::Excess => "excess",
            Measure::AspectRatio => "aspect-ratio",
        }
    }

    pub fn is_haantjes(self) -> bool {
        matches!(
            self,
            Measure::HaantjesSimple | Measure::HaantjesStrong | Measure::HaantjesDirectional
        )
    }

    pub fn has_scalar(self) -> bool {
        matches!(self, Measure::MengerRicci | Measure::HaantjesSimple | Measure::HaantjesStrong)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Comb,
    Weights,
    Pathdeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Euc,
    Sph,
    Hyp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge list: `u v [w]` per line.
    pub input: PathBuf,
    #[arg(long)]
    pub directed: bool,
    /// Read a third column as edge weight.
    #[arg(long)]
    pub weighted: bool,
    /// Edge lengths; defaults to `weights` with --weighted, `comb` otherwise.
    #[arg(long, value_enum)]
    pub metric: Option<MetricArg>,
    /// Face sidecar file: `F v0 v1 ... [w=..] [m=..] [o=-1]` per line.
    #[arg(long)]
    pub faces: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    /// Background geometry of Menger curvature.
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryArg>,
    /// Longest cycle-closing path, in edges.
    #[arg(long, default_value_t = 5)]
    pub max_path_len: usize,
    /// Give paths lighter than their chord negative Haantjes curvature.
    #[arg(long)]
    pub weighted_sign_rule: bool,
    /// Divide strong sectional curvatures by face weights.
    #[arg(long)]
    pub face_weights: bool,
    /// Ollivier idleness: mass kept at the vertex itself.
    #[arg(long, default_value_t = 0.0)]
    pub idleness: f64,
    /// Divide betweenness by the number of vertex pairs.
    #[arg(long)]
    pub normalize_betweenness: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report file; stdout when omitted. A `<output>.manifest.json` sidecar is written next to it.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for per-edge evaluation.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CurvatureArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum)]
    pub measure: Measure,
    #[command(flatten)]
    pub options: MeasureArgs,
    /// Aggregate edge curvatures to vertices.
    #[arg(long)]
    pub scalar: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long = "a", value_enum)]
    pub a: Measure,
    #[arg(long = "b", value_enum)]
    pub b: Measure,
    #[command(flatten)]
    pub options: MeasureArgs,
    /// Repeat the comparison for each cutoff in `lo:hi`.
    #[arg(long, value_name = "LO:HI")]
    pub sweep_max_path_len: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub model: ModelArgs,
    /// Edge-list file; faces go to `<output>.faces`.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeArg {
    Triangular,
    Square,
    Hexagonal,
    Cubic,
}

#[derive(Debug, Subcommand)]
pub enum ModelArgs {
    /// Erdős-Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Watts-Strogatz small world.
    Ws {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Barabási-Albert preferential attachment.
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m0: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Regular tessellation patch with declared faces.
    Lattice {
        #[arg(long, value_enum)]
        kind: LatticeArg,
        /// Side lengths, e.g. `20x20` or `8x8x8`.
        #[arg(long)]
        dims: String,
        /// Close the patch into a torus.
        #[arg(long)]
        wrap: bool,
    },
    /// Polyhedral complex with declared faces.
    Polyhedron {
        #[arg(long)]
        name: String,
    },
}

#[derive(Debug, Args)]
pub struct HistogramArgs {
    /// A CSV or JSON report from `curvature`.
    pub report: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    /// Binning interval `lo:hi`; defaults to the value range.
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true)]
    pub range: Option<String>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
