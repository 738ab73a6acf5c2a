mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Ramsey numbers of sparse graphs versus cliques: witness construction,
/// embedding, exact search and bound evaluation.
///
/// Exit status is 0 on success, 1 when the computation ran but produced a
/// negative outcome (no witness, failed embedding, unresolved value, violated
/// tail bound), and 2 on bad input.
#[derive(Debug, Parser)]
#[command(name = "ramsey", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every applicable bound on r(K_s, G) for graphs with m edges.
    Bounds(BoundsArgs),
    /// Random colorings with red K_s packings recolored, checked for a blue G.
    Construct(ConstructArgs),
    /// Find a blue copy of G in a coloring with no red K_s.
    Embed(EmbedArgs),
    /// Edge-disjoint packing of red s-cliques in a coloring.
    Pack(PackArgs),
    /// Exact r(H, G) by exhaustive search.
    Exact(ExactArgs),
    /// Disjoint union of equal cliques with at least m edges.
    GenUnion(GenUnionArgs),
    /// Monte Carlo checks of the tail inequalities.
    #[command(subcommand)]
    Stats(StatsCommand),
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    m: usize,
    /// Vertex count of H for the m^{c sqrt t} estimate.
    #[arg(long)]
    t: Option<usize>,
    /// Chromatic number of H, used with --t (defaults to 2).
    #[arg(long, requires = "t")]
    chromatic: Option<usize>,
    /// Graph file for H in the rho* lower bound.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Part sizes of K_{p,q}.
    #[arg(long, num_args = 2, value_names = ["P", "Q"], requires = "k")]
    pq: Option<Vec<usize>>,
    /// Clique order k paired with --pq.
    #[arg(long, requires = "pq")]
    k: Option<usize>,
    /// Override an unspecified constant, as NAME=VALUE. Repeatable.
    #[arg(long = "constant", value_name = "NAME=VALUE")]
    constants: Vec<String>,
    /// Print a JSON array instead of one line per bound.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long)]
    s: usize,
    /// Graph file for G.
    #[arg(long = "G", value_name = "FILE")]
    g: PathBuf,
    /// Order of the colored complete graph (default from m).
    #[arg(long)]
    n: Option<usize>,
    /// Red edge probability (default from n).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Directory for per-trial colorings and summary.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Multiplier on the default order.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Node budget for each blue-copy search.
    #[arg(long, default_value_t = ramsey_core::detect::DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long = "G", value_name = "FILE")]
    g: PathBuf,
    #[arg(long)]
    s: usize,
    /// Constant in the red-degree descent threshold.
    #[arg(long, default_value_t = 1.0)]
    c1: f64,
    #[arg(long, default_value_t = ramsey_core::detect::DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct PackArgs {
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long)]
    s: usize,
    /// Maximum packing by branch and bound instead of the greedy maximal one.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[arg(long = "H", value_name = "FILE")]
    h: PathBuf,
    #[arg(long = "G", value_name = "FILE")]
    g: PathBuf,
    /// Largest order to search.
    #[arg(long, default_value_t = ramsey_core::exact::max_order_for(ramsey_core::exact::DEFAULT_EDGE_CAP))]
    cap: usize,
    /// Write a witness coloring one below the value to this file.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenUnionArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    s: usize,
    /// Write the graph file here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum StatsCommand {
    /// Lower tail of Bin(m, p) against exp(-a^2 / (2pm)).
    Chernoff {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Edge-disjoint red K_s packings against (e mu / k)^k.
    ErdosTetali {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(a) => commands::bounds(a),
        Command::Construct(a) => commands::construct(a),
        Command::Embed(a) => commands::embed(a),
        Command::Pack(a) => commands::pack(a),
        Command::Exact(a) => commands::exact(a),
        Command::GenUnion(a) => commands::gen_union(a),
        Command::Stats(c) => commands::stats(c),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // A closed pipe (`ramsey ... | head`) is not worth a diagnostic.
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}
