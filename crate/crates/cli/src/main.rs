//! `tkgraph`: build, fuse and query temporal knowledge graphs, and train and
//! evaluate biographical timeline models.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "tkgraph", version, about = "Temporal knowledge graph construction, fusion and timeline generation")]
pub struct Cli {
    /// TOML file with training, baseline and fusion settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build the source graphs from a manifest and write them as N-Quads.
    Build {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Interlinking statistics file; defaults to `<out>.stats.tsv`.
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Also populate the fused graph.
        #[arg(long)]
        fuse: bool,
    },
    /// Populate the fused graph of a store.
    Fuse {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Manifest supplying trust ranks and type mappings.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Completeness and popularity statistics of a store.
    Stats {
        #[arg(long)]
        store: PathBuf,
        /// Also write a JSON summary here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Canned provenance queries.
    Query {
        #[command(subcommand)]
        query: QueryCommand,
    },
    /// Judge the candidates of annotated persons into a benchmark file.
    Benchmark {
        #[arg(long)]
        store: PathBuf,
        /// Biography annotations (`.bio`).
        #[arg(long, conflicts_with = "abstracts", required_unless_present = "abstracts")]
        bio: Option<PathBuf>,
        /// Abstract event links (`.abs`).
        #[arg(long)]
        abstracts: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train a relevance model on a benchmark.
    Train {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        benchmark: PathBuf,
        #[arg(long)]
        model: PathBuf,
        /// Train on a seeded half of the persons and report held-out scores.
        #[arg(long)]
        split: bool,
    },
    /// Generate the timeline of an entity.
    Timeline {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        entity: String,
        #[arg(long)]
        model: PathBuf,
        /// Also render the timeline as an HTML page.
        #[arg(long)]
        html: Option<PathBuf>,
    },
    /// Time-Machine style popularity baseline timeline.
    BaselineTm {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        entity: String,
        /// Number of entries to keep (default 10).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        min_frequency: Option<u64>,
    },
    /// Evaluation reports.
    Eval {
        #[command(subcommand)]
        eval: EvalCommand,
    },
}

#[derive(Args)]
pub struct DataArgs {
    /// N-Quads store with a fused graph.
    #[arg(long)]
    pub store: PathBuf,
    /// Interlinking statistics written by `build`.
    #[arg(long)]
    pub stats: PathBuf,
}

#[derive(Subcommand)]
pub enum QueryCommand {
    /// Locations of an event per named graph.
    Locations {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        event: String,
    },
    /// Events most often mentioned together with an entity.
    TopEvents {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        entity: String,
        /// Graph whose mention counts are ranked.
        #[arg(long, default_value = "wikipedia_en")]
        graph: String,
        #[arg(long)]
        limit: Option<usize>,
    },
}

#[derive(Subcommand)]
pub enum EvalCommand {
    /// Precision, recall and F1 of 0/1 prediction and gold files.
    Metrics {
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        gold: PathBuf,
    },
    /// Pearson correlation of every feature with the benchmark label.
    Pcc {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        benchmark: PathBuf,
        /// Use this model's feature space instead of deriving one.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Share of benchmark relations found in each source graph.
    Coverage {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        benchmark: PathBuf,
        /// Comma-separated graph names; defaults to every source graph.
        #[arg(long, value_delimiter = ',')]
        graphs: Vec<String>,
    },
    /// Rater preference from an `item<TAB>vote` file.
    Rpref {
        #[arg(long)]
        votes: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or unreadable, malformed or inconsistent inputs.
    #[error("{0:#}")]
    Input(anyhow::Error),
    #[error("internal error: {0:#}")]
    Internal(anyhow::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

pub trait Classify<T> {
    fn input(self) -> Result<T, CliError>;
    fn internal(self) -> Result<T, CliError>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn input(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Input(e.into()))
    }

    fn internal(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Internal(e.into()))
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tkgraph: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
