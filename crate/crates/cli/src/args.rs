use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "trustgame",
    version,
    about = "Trust games on weighted directed graphs"
)]
pub struct Cli {
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<InputFormat>,

    /// Worker threads for exhaustive checks. Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    #[value(name = "edge_list", alias = "edge-list")]
    EdgeList,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Shapley,
    Banzhaf,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph file (edge list or JSON).
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct GuardArg {
    /// Largest player count for exhaustive enumeration
    /// (default: $TRUSTGAME_MAX_N, else the operation's own default).
    #[arg(long)]
    pub max_n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Worth of a coalition, split into internal and external parts.
    Value {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated node labels; empty for the empty coalition.
        #[arg(long, allow_hyphen_values = true)]
        coalition: String,
    },
    /// Closed-form Shapley value.
    Shapley {
        #[command(flatten)]
        graph: GraphArg,
        /// Also run the brute-force oracle and report the largest difference.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Closed-form Banzhaf value.
    Banzhaf {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// The core allocation with an exhaustive membership check.
    Core {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Unanimity-game decomposition (terms and dividends).
    Decompose {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Slope of one player's value in one edge weight.
    Marginal {
        #[command(flatten)]
        graph: GraphArg,
        /// Edge as `from,to` labels.
        #[arg(long)]
        edge: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "shapley")]
        method: Method,
    },
    /// Values of the targets as one edge weight moves over [0, 1].
    Sweep {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        edge: String,
        /// Comma-separated target labels.
        #[arg(long)]
        targets: String,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[arg(long, value_enum, default_value = "shapley")]
        method: Method,
        /// Emit JSON with breakpoints and segment slopes instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Run every exhaustive verification suite.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        guard: GuardArg,
        /// Check superadditivity and monotonicity on this many random pairs
        /// instead of exhaustively.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Structural summary of the graph.
    Props {
        #[command(flatten)]
        graph: GraphArg,
    },
}
