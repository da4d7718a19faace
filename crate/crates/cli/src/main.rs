//! `kg2` — command-line front door for the 2-graph workbench.
//!
//! One command, one deterministic report: identical inputs and flags produce
//! byte-identical output. Nonzero exits always carry a machine-readable
//! error object on stdout.

mod errors;
mod ops;

use clap::{Parser, Subcommand, ValueEnum};
use errors::CliError;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Parser)]
#[command(name = "kg2", version, about = "Workbench for single-vertex 2-graphs and their atomic representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite a word (e.g. `f1.e2`) to its normal form e(u) f(v)
    Normalize {
        /// Dot-separated letters with colour prefixes, e.g. `e1.f2.e1`
        #[arg(long)]
        word: String,
        /// Path to a theta JSON file
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide periodicity up to search bounds
    Period {
        #[arg(long)]
        theta: PathBuf,
        #[arg(long = "max-a", default_value_t = 4)]
        max_a: u32,
        #[arg(long = "max-b", default_value_t = 4)]
        max_b: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operations on atomic representation files
    Rep {
        #[command(subcommand)]
        command: RepCommand,
    },
    /// Matrix-model verification kernels
    Fock {
        #[command(subcommand)]
        command: FockCommand,
    },
}

#[derive(Subcommand)]
enum RepCommand {
    /// Validate the axioms of an atomic representation graph
    Validate {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dilate a defect-free seed to a truncated Cuntz-type representation
    Dilate {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the dilated representation into the type taxonomy
    Classify {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-vertex wandering reports plus the search verdict (JSON lines)
    Wander {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FockCommand {
    /// Cuntz and commutation relations on the truncated left-regular model
    Verify {
        #[arg(long)]
        theta: PathBuf,
        #[arg(long = "L", default_value_t = 3)]
        trunc: u32,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Directory receiving one coordinate-text file (row col re im) per
        /// generator matrix
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The four-step left/right regular walk and commutator check
    Example33 {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "L", default_value_t = 3)]
        trunc: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structure-projection properties of the compression to the core
    Structure {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Override the projection: comma-separated vertex names
        #[arg(long)]
        core: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                e.exit();
            }
            let err = CliError::parse(e.to_string());
            println!("{}", err.to_json());
            std::process::exit(err.code);
        }
    };
    let outcome = match cli.command {
        Command::Normalize { word, theta, format, out } => {
            ops::normalize(&word, &theta, format, out.as_deref())
        }
        Command::Period { theta, max_a, max_b, out } => {
            ops::period(&theta, max_a, max_b, out.as_deref())
        }
        Command::Rep { command } => match command {
            RepCommand::Validate { rep, out } => ops::rep_validate(&rep, out.as_deref()),
            RepCommand::Dilate { rep, depth, format, out } => {
                ops::rep_dilate(&rep, depth, format, out.as_deref())
            }
            RepCommand::Classify { rep, depth, bound, out } => {
                ops::rep_classify(&rep, depth, bound, out.as_deref())
            }
            RepCommand::Wander { rep, depth, bound, out } => {
                ops::rep_wander(&rep, depth, bound, out.as_deref())
            }
        },
        Command::Fock { command } => match command {
            FockCommand::Verify { theta, trunc, tol, dump, out } => {
                ops::fock_verify(&theta, trunc, tol, dump.as_deref(), out.as_deref())
            }
            FockCommand::Example33 { n, trunc, out } => ops::fock_example33(n, trunc, out.as_deref()),
            FockCommand::Structure { rep, depth, bound, tol, core, out } => {
                ops::fock_structure(&rep, depth, bound, tol, core.as_deref(), out.as_deref())
            }
        },
    };
    if let Err(e) = outcome {
        println!("{}", e.to_json());
        std::process::exit(e.code);
    }
}

/// The enumeration cap, overridable through `KG2_CAP`.
pub fn enumeration_cap() -> Result<u64, CliError> {
    match std::env::var("KG2_CAP") {
        Ok(raw) => raw
            .parse::<u64>()
            .map_err(|_| CliError::parse(format!("KG2_CAP must be an integer, got {raw:?}"))),
        Err(_) => Ok(kg2_core::DEFAULT_ENUMERATION_CAP),
    }
}
