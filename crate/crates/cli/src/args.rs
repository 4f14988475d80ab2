use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tropath", version, about = "Private single-source shortest distances on grid graphs")]
pub struct Cli {
    /// TOML file overriding the ABB cost constants and network environments.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a grid or random edge-list graph file.
    Gen(GenArgs),
    /// Run one protocol and report its cost.
    Run(RunArgs),
    /// Run both protocols over a list of grid sides and tabulate the cost.
    Bench(BenchArgs),
    /// Run protocols against the Dijkstra oracle; fails on any mismatch.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Protocol {
    Apc,
    Bf,
}

impl Protocol {
    pub fn as_str(self) -> &'static str {
        match self {
            Protocol::Apc => "apc",
            Protocol::Bf => "bf",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Clear,
    Shared,
}

impl From<DomainArg> for tropath::Domain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Clear => tropath::Domain::Clear,
            DomainArg::Shared => tropath::Domain::Shared,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnvArg {
    #[value(name = "HBLL", alias = "hbll")]
    Hbll,
    #[value(name = "HBHL", alias = "hbhl")]
    Hbhl,
    #[value(name = "LBHL", alias = "lbhl")]
    Lbhl,
    #[value(name = "all")]
    All,
}

impl EnvArg {
    pub fn names(self) -> Vec<tropath::EnvName> {
        use tropath::EnvName;
        match self {
            EnvArg::Hbll => vec![EnvName::Hbll],
            EnvArg::Hbhl => vec![EnvName::Hbhl],
            EnvArg::Lbhl => vec![EnvName::Lbhl],
            EnvArg::All => EnvName::ALL.to_vec(),
        }
    }
}

/// Where the graph comes from.
#[derive(Debug, Clone, Args)]
pub struct GraphSource {
    /// Generate an R×C grid.
    #[arg(long, num_args = 2, value_names = ["R", "C"], conflicts_with = "graph")]
    pub grid: Option<Vec<usize>>,

    /// Read a graph file.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,

    /// Seed for generated weights.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Smallest generated weight.
    #[arg(long, default_value_t = 1)]
    pub low: u64,

    /// Largest generated weight.
    #[arg(long, default_value_t = 100)]
    pub high: u64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, num_args = 2, value_names = ["R", "C"], required_unless_present = "random")]
    pub grid: Option<Vec<usize>>,

    /// Random simple graph with N vertices and M edges.
    #[arg(long, num_args = 2, value_names = ["N", "M"], conflicts_with = "grid")]
    pub random: Option<Vec<usize>>,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, default_value_t = 1)]
    pub low: u64,

    #[arg(long, default_value_t = 100)]
    pub high: u64,

    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write the separator plan of a grid.
    #[arg(long, value_name = "FILE")]
    pub plan_out: Option<PathBuf>,

    /// Also write the permuted adjacency matrix of a grid.
    #[arg(long, value_name = "FILE")]
    pub matrix_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub source_graph: GraphSource,

    #[arg(long, value_enum, default_value = "apc")]
    pub protocol: Protocol,

    #[arg(long, value_enum, default_value = "clear")]
    pub domain: DomainArg,

    #[arg(long, default_value_t = 0)]
    pub source: usize,

    #[arg(long, value_enum, default_value = "all")]
    pub env: EnvArg,

    /// Check the result against Dijkstra; exit nonzero on mismatch.
    #[arg(long)]
    pub verify: bool,

    /// Stop Bellman-Ford after N sweeps and extrapolate its cost.
    #[arg(long, value_name = "N")]
    pub max_sweeps: Option<usize>,

    /// Append the machine-readable report to FILE.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Print the machine-readable report instead of the table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Grid sides.
    #[arg(long, value_delimiter = ',', default_values_t = [5usize, 9, 17])]
    pub sizes: Vec<usize>,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, value_enum, default_value = "clear")]
    pub domain: DomainArg,

    #[arg(long, value_enum, default_value = "all")]
    pub env: EnvArg,

    #[arg(long, value_name = "N")]
    pub max_sweeps: Option<usize>,

    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source_graph: GraphSource,

    /// Protocol to check; both when absent (APC only runs on grids).
    #[arg(long, value_enum)]
    pub protocol: Option<Protocol>,

    #[arg(long, value_enum, default_value = "clear")]
    pub domain: DomainArg,

    /// Sources to check; every vertex when absent.
    #[arg(long, value_delimiter = ',')]
    pub source: Option<Vec<usize>>,
}
