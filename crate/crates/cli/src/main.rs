mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Normal-subgroup-based power graphs: build them, compute genus and
/// crosscap, and check the classification over the group catalog.
#[derive(Debug, Parser)]
#[command(name = "nsbpg", version)]
struct Cli {
    /// Catalog JSON file; defaults to $NSBPG_CATALOG, then the bundled catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect the group catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Build Γ_H(G) for a catalog group and subgroup.
    Build(BuildArgs),
    /// Genus and crosscap of a graph, with the source of each bound.
    Invariants(InvariantsArgs),
    /// Run a verification: the classification sweep, the preliminary
    /// group facts, or an embedding certificate.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Seeded search for an embedding on a given surface.
    Search(SearchArgs),
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// One row per group: name, order, abelian, exponent.
    List {
        #[arg(long)]
        max_order: Option<usize>,
        /// Leave out the trivial group.
        #[arg(long)]
        nontrivial: bool,
    },
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Catalog group name, e.g. D12.
    group: String,
    /// `center`, or comma-separated element indices generating H.
    subgroup: String,
    /// Write the graph in DOT format.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write the graph as JSON ({n, edges, labels}).
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Exactly one of --group/--subgroup, --graph-file and --form.
#[derive(Debug, Args)]
struct GraphSource {
    /// Catalog group; needs --subgroup.
    #[arg(long, requires = "subgroup")]
    group: Option<String>,
    /// `center`, or comma-separated element indices generating H.
    #[arg(long, requires = "group")]
    subgroup: Option<String>,
    /// Graph JSON file ({n, edges}).
    #[arg(long)]
    graph_file: Option<PathBuf>,
    /// Structural form, e.g. "K1 v (K6 u 3K3)".
    #[arg(long)]
    form: Option<String>,
}

#[derive(Debug, Args)]
struct SearchKnobs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Annealing moves per search.
    #[arg(long, default_value_t = nsbpg_core::topology::DEFAULT_SEARCH_BUDGET)]
    budget: u64,
}

#[derive(Debug, Args)]
struct InvariantsArgs {
    #[command(flatten)]
    source: GraphSource,
    #[command(flatten)]
    knobs: SearchKnobs,
    /// Skip the annealing searches (bounds may stay open).
    #[arg(long)]
    no_search: bool,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Compare computed invariants with the predicted classes for every
    /// catalog pair.
    Sweep {
        #[arg(long, default_value_t = 20)]
        max_order: usize,
        /// JSON-lines report, one record per pair and a summary line.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also delete each clause in turn and check the sweep notices.
        #[arg(long)]
        mutations: bool,
    },
    /// Check the group-theoretic facts and the two power-graph
    /// constructions instance by instance over the catalog.
    Preliminaries {
        #[arg(long)]
        json: bool,
    },
    /// Re-trace a certificate file and check its claim.
    Embedding { certificate: PathBuf },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, action = clap::ArgAction::Set)]
    orientable: bool,
    /// Genus (orientable) or number of crosscaps.
    #[arg(long)]
    target: usize,
    #[command(flatten)]
    knobs: SearchKnobs,
    /// Certificate output path; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
