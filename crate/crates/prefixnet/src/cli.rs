use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "prefixnet", version, about = "Prefix-free multicast planning, graph entropy, gossip and interval fusion")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kraft sum of a length set (explicit or closed form).
    Kraft(KraftArgs),
    /// D-ary Huffman code of a pmf.
    Huffman(PmfCodeArgs),
    /// Canonical prefix code realizing a length set.
    CodeFromLengths(LengthsArgs),
    /// Shannon entropy of a pmf.
    Entropy(EntropyArgs),
    /// Degree-based entropy of a graph or digraph.
    GraphEntropy(GraphEntropyArgs),
    /// KL divergence between the degree pmfs of two graphs.
    Kl(KlArgs),
    /// Minimum spanning tree of a weighted graph.
    Mst(MstArgs),
    /// Entropy extrema over all spanning trees (at most 9 vertices).
    SpanEntropy(SpanEntropyArgs),
    /// Prefix-free leader paths in a D-ary hierarchy.
    AssignLeaders(PmfCodeArgs),
    /// MST + embedded D-ary tree + Huffman placement.
    PlanMulticast(PlanArgs),
    /// Path reliability under independent link failures.
    Reliability(ReliabilityArgs),
    /// BFS levels from a base station.
    Levels(LevelsArgs),
    /// Levels and angular sectors around a base station.
    Sectors(SectorsArgs),
    /// Level-controlled gossip simulation.
    Gossip(GossipArgs),
    /// Fault-tolerant interval fusion.
    Fuse(FuseArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Emit a JSON document instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["lengths", "lengths_file", "consecutive", "progression"])))]
pub struct KraftArgs {
    /// Alphabet size.
    #[arg(long = "D")]
    pub d: u64,
    /// Comma-separated codeword lengths.
    #[arg(long, value_delimiter = ',')]
    pub lengths: Option<Vec<u32>>,
    /// File with one length per line.
    #[arg(long)]
    pub lengths_file: Option<String>,
    /// Consecutive lengths `n1,M`: n1, n1+1, …, n1+M−1.
    #[arg(long, value_delimiter = ',')]
    pub consecutive: Option<Vec<u32>>,
    /// Arithmetic progression `n1,step,M`.
    #[arg(long, value_delimiter = ',')]
    pub progression: Option<Vec<u32>>,
    /// Larger alphabets to re-check (comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub larger: Vec<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PmfCodeArgs {
    #[arg(long = "D")]
    pub d: u64,
    /// PMF file (`label probability` lines).
    #[arg(long)]
    pub pmf: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["lengths", "lengths_file"])))]
pub struct LengthsArgs {
    #[arg(long = "D")]
    pub d: u64,
    #[arg(long, value_delimiter = ',')]
    pub lengths: Option<Vec<u32>>,
    #[arg(long)]
    pub lengths_file: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long)]
    pub pmf: String,
    /// Logarithm base.
    #[arg(long, default_value_t = 2.0)]
    pub base: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GraphEntropyArgs {
    /// Graph file (`u v [w]` lines, `vertex u` for isolated vertices).
    #[arg(long)]
    pub graph: String,
    /// Read the file as arcs `u -> v`.
    #[arg(long)]
    pub directed: bool,
    /// Also report the Tsallis entropy with this index.
    #[arg(long)]
    pub tsallis: Option<f64>,
    /// Coloring file (`vertex color` lines) for conditional entropy.
    #[arg(long, conflicts_with = "directed")]
    pub coloring: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct KlArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub other: String,
    /// `u v` lines mapping vertices of the first graph to the second;
    /// identical labels when omitted.
    #[arg(long)]
    pub correspondence: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct MstArgs {
    /// Weighted graph file (`u v w` lines).
    #[arg(long)]
    pub graph: String,
    /// Also report entropy extrema over all minimum spanning trees.
    #[arg(long)]
    pub entropy_extrema: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SpanEntropyArgs {
    #[arg(long)]
    pub graph: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub root: String,
    #[arg(long)]
    pub pmf: String,
    #[arg(long = "D")]
    pub d: u64,
    /// Re-verify the plan against the graph.
    #[arg(long)]
    pub audit: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ReliabilityArgs {
    /// Link failure probability.
    #[arg(long)]
    pub q: f64,
    /// Number of links on the path.
    #[arg(long)]
    pub depth: u32,
    /// Print the full first-failure distribution.
    #[arg(long)]
    pub distribution: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct LevelsArgs {
    #[arg(long)]
    pub graph: String,
    /// Base station vertex.
    #[arg(long)]
    pub bs: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SectorsArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub bs: String,
    /// Positions file (`vertex x y` lines).
    #[arg(long)]
    pub positions: String,
    /// Number of sectors.
    #[arg(long = "K")]
    pub k: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("sweep").args(["sweep_level", "sweep_q"])))]
pub struct GossipArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub bs: String,
    /// Event source; defaults to the deepest vertex (first in file order).
    #[arg(long)]
    pub source: Option<String>,
    /// Broadcast probabilities P_1,P_2,… by level.
    #[arg(long, value_delimiter = ',', required = true)]
    pub levels_probs: Vec<f64>,
    /// Link failure probability.
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// Accept probabilities that do not strictly decrease.
    #[arg(long)]
    pub allow_nonmonotone: bool,
    /// Print one line per trial.
    #[arg(long)]
    pub log: bool,
    /// Sweep P_j for this level over --values.
    #[arg(long, requires = "values")]
    pub sweep_level: Option<usize>,
    /// Sweep q over --values.
    #[arg(long, requires = "values")]
    pub sweep_q: bool,
    /// Grid values for a sweep.
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FusionFunction {
    M,
    Omega,
    N,
    S,
    Compare,
}

#[derive(Debug, Args)]
pub struct FuseArgs {
    /// Interval file (`lo hi` lines).
    #[arg(long)]
    pub intervals: String,
    /// Fault bound.
    #[arg(long = "f")]
    pub f: usize,
    #[arg(long, value_enum, default_value_t = FusionFunction::Compare)]
    pub function: FusionFunction,
    /// With `omega`: also evaluate Ω at this point.
    #[arg(long)]
    pub at: Option<f64>,
    #[command(flatten)]
    pub common: Common,
}
