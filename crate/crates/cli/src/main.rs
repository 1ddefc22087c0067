mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

/// Strong edge-coloring of bipartite graphs whose A side has maximum degree 3.
#[derive(Debug, Parser)]
#[command(name = "strongcol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Color a graph and print the coloring document.
    Color(ColorArgs),
    /// Check a coloring document against a graph.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
    },
    /// Compute the strong chromatic index exactly.
    Exact {
        graph: PathBuf,
        /// Largest edge count accepted.
        #[arg(long, default_value_t = strongcol::oracles::DEFAULT_EDGE_LIMIT)]
        limit: usize,
    },
    /// Write a generated graph as an edge list.
    Generate(GenerateArgs),
    /// Color batches of generated graphs and tabulate the results per Δ.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct ColorArgs {
    /// Edge-list file, or `-` for standard input.
    input: PathBuf,
    /// Fix violated conditions only when a pass fails, restarting each time.
    #[arg(long)]
    lazy: bool,
    /// Append one comment line per edge assignment.
    #[arg(long)]
    trace: bool,
    /// Emit a JSON record instead of the text document.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Random,
    Complete,
    En,
    Subdivision,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 50)]
    na: usize,
    #[arg(long, default_value_t = 50)]
    nb: usize,
    #[arg(long, default_value_t = 3)]
    da: usize,
    #[arg(long, default_value_t = 4)]
    db: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Δ for the extremal family.
    #[arg(long, default_value_t = 2)]
    delta: usize,
    /// Graph to subdivide.
    #[arg(long, required_if_eq("family", "subdivision"))]
    input: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFamily {
    Random,
    Complete,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchFamily::Random)]
    family: BenchFamily,
    /// Instances per Δ.
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Inclusive range of Δ(B), written `lo..hi`.
    #[arg(long, default_value = "3..6", value_parser = commands::parse_range)]
    delta_range: (usize, usize),
    #[arg(long, default_value_t = 100)]
    na: usize,
    #[arg(long, default_value_t = 100)]
    nb: usize,
    /// Seed of the first instance; instance `i` uses `seed + i`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    lazy: bool,
    /// Run instances one after another.
    #[arg(long)]
    sequential: bool,
    /// One JSON record per instance instead of the table.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Failure::USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Color(args) => commands::color(&args),
        Command::Verify { graph, coloring } => commands::verify(&graph, &coloring),
        Command::Exact { graph, limit } => commands::exact(&graph, limit),
        Command::Generate(args) => commands::generate(&args),
        Command::Bench(args) => commands::bench(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
