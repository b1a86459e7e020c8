//! The `eppa` command line.
//!
//! [`run`] parses arguments, dispatches to a subcommand and writes either a
//! text report or (with `--json`) one JSON document to `out`. Errors go to
//! `err`. Exit codes: 0 success, 1 a check came back negative, 2 bad usage
//! or bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use eppa_core::oracle::{StructureKind, VerifyKind};

mod commands;

pub use commands::{CliError, Reply};

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Parser)]
#[command(
    name = "eppa",
    version,
    about = "EPPA witnesses for antipodal spaces, switching classes and two-graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Print one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Largest number of matching edges for which the witness is built in full.
    #[arg(
        long,
        global = true,
        env = "EPPA_MATERIALIZE_LIMIT",
        default_value_t = eppa_core::DEFAULT_MATERIALIZE_LIMIT
    )]
    pub materialize_limit: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seidel switch a graph at the given vertices.
    Switch {
        graph: PathBuf,
        vertices: Vec<usize>,
    },
    /// Two-graph of odd triples of a graph.
    TwoGraphOf { graph: PathBuf },
    /// Find S making a map a switching isomorphism between two graphs.
    FindSwitch {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
    },
    /// Antipodal double cover of a graph, with its pode labelling.
    DoubleCover { graph: PathBuf },
    /// Graph on the points of pode 0 of an antipodal space.
    PodeGraph {
        space: PathBuf,
        /// One value per point, comma separated; defaults to the canonical labelling.
        #[arg(long, value_delimiter = ',')]
        pode: Option<Vec<u8>>,
    },
    /// Two-graph on the matching edges of an antipodal space.
    TwoGraphOfAntipodal { space: PathBuf },
    /// Graph with the given two-graph in which `base` is isolated.
    GraphOfTwoGraph {
        two_graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Lift an isomorphism of two-graphs on matching edges to the spaces.
    Lift {
        source: PathBuf,
        target: PathBuf,
        /// Map between matching-edge indices.
        map: PathBuf,
    },
    /// The witness of an antipodal space.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Switching witness certificate for a graph.
    Graph {
        graph: PathBuf,
        /// Write the manifest here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Witness certificate for a two-graph.
    TwoGraph {
        two_graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extend a partial map using a certificate manifest.
    Extend {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Switch set for graph certificates; overrides the map file.
        #[arg(long, num_args = 0..)]
        switch: Option<Vec<usize>>,
    },
    /// Amalgam for two swaps that no two-graph amalgam extends coherently.
    ApaDemo,
    /// Brute-force enumeration and verification.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Build the witness and print its manifest.
    Build {
        space: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Distance between two witness points given as `e:bits`.
    Distance {
        space: PathBuf,
        u: String,
        v: String,
    },
    /// Extend a partial isomorphism of the space to the witness.
    Extend {
        space: PathBuf,
        map: PathBuf,
        /// Also print the permutation of all witness points.
        #[arg(long)]
        permutation: bool,
    },
    /// Check the witness against the brute-force oracle.
    Verify {
        space: PathBuf,
        /// Every partial isomorphism (at most 8 points).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Random partial isomorphisms to check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Print every labeled structure of a kind and size.
    Enumerate {
        kind: StructureKind,
        size: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// EPPA check on every structure of a kind and size.
    VerifyEppa { kind: VerifyKind, size: usize },
    /// Coherence check on every antipodal space with `size` points.
    VerifyCoherence {
        size: usize,
        /// Coherent pairs sampled per space instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        /// Measure the two-graph pipeline on two-graphs of `size` vertices.
        /// The violation count is reported, not judged.
        #[arg(long)]
        two_graph: bool,
    },
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let command_line = std::iter::once("eppa".into())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy()))
        .collect::<Vec<_>>()
        .join(" ");
    match commands::dispatch(&cli, &command_line) {
        Ok(reply) => {
            let written = if cli.global.json {
                serde_json::to_string_pretty(&reply.json)
                    .map_err(std::io::Error::other)
                    .and_then(|s| writeln!(out, "{s}"))
            } else {
                write!(out, "{}", reply.text)
            };
            if let Err(e) = written {
                let _ = writeln!(err, "eppa: cannot write output: {e}");
                return 2;
            }
            if let Some(note) = &reply.note {
                let _ = writeln!(err, "{note}");
            }
            if reply.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "eppa: {e}");
            e.code()
        }
    }
}
