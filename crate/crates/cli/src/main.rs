//! `transfer`: enumerate, count, classify and convert transfer systems and
//! the structures built from them.

mod commands;
mod render;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use transfer_core::json::LatticeJson;
use transfer_core::{chain, FiniteLattice, OrderKind, PairKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error(transparent)]
    Core(#[from] transfer_core::Error),
    #[error("{0} enumerated count(s) disagree with the closed form")]
    Mismatch(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(transfer_core::Error::Invariant(_)) | CliError::Mismatch(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "transfer", version, about = "Transfer systems and premodel structures on finite lattices")]
pub struct Cli {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Read JSON lines from this file instead of stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct LatticeArgs {
    /// Work on the chain `0 < 1 < ... < N`.
    #[arg(long, global = true, value_name = "N", conflicts_with = "lattice")]
    pub chain: Option<usize>,
    /// Work on the lattice described in a JSON file.
    #[arg(long, global = true, value_name = "FILE")]
    pub lattice: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Objects {
    Transfer,
    Pairs,
    Trees,
    Partitions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Premodel,
    Cc,
    Model,
    Compatible,
    All,
}

impl KindArg {
    pub fn kinds(self) -> Vec<PairKind> {
        match self {
            KindArg::Premodel => vec![PairKind::Premodel],
            KindArg::Cc => vec![PairKind::CompositionClosed],
            KindArg::Model => vec![PairKind::Model],
            KindArg::Compatible => vec![PairKind::Compatible],
            KindArg::All => PairKind::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Inclusion,
    Cc,
    Model,
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Inclusion => OrderKind::Inclusion,
            OrderArg::Cc => OrderKind::CompositionClosed,
            OrderArg::Model => OrderKind::Model,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Transfer,
    Partition,
    Pair,
    Tree,
    Triangulation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream transfer systems, pairs, trees or partitions as JSON lines.
    Enumerate {
        #[arg(long, value_enum, default_value = "transfer")]
        objects: Objects,
        /// Only pairs of this kind (with `--objects pairs`).
        #[arg(long, value_enum, default_value = "premodel")]
        kind: KindArg,
    },
    /// Compare enumerated counts with the closed forms for chains.
    Count {
        #[arg(long, value_enum, default_value = "all")]
        kind: KindArg,
    },
    /// Read pairs and print which kinds of structure they are.
    Classify,
    /// Map each input object to another representation.
    Convert {
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Hasse diagram of an order on all transfer systems, as DOT.
    Hasse {
        #[arg(long, value_enum, default_value = "inclusion")]
        order: OrderArg,
        /// Also write one JSON line per node mapping its index to its pairs.
        #[arg(long, value_name = "FILE")]
        legend: Option<PathBuf>,
    },
    /// Draw a tree, pair or triangulation as a stacked triangulation in SVG.
    Triangulate,
    /// Closed-form counts and exact density ratios for chains up to a bound.
    Report {
        #[arg(long, default_value_t = 8)]
        max_n: u64,
    },
}

impl LatticeArgs {
    pub fn resolve(&self) -> CliResult<Option<Arc<FiniteLattice>>> {
        if let Some(n) = self.chain {
            return Ok(Some(Arc::new(chain(n))));
        }
        let Some(path) = &self.lattice else { return Ok(None) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let spec: LatticeJson = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: not a lattice: {e}", path.display())))?;
        Ok(Some(Arc::new(spec.build()?)))
    }

    pub fn require(&self) -> CliResult<Arc<FiniteLattice>> {
        self.resolve()?
            .ok_or_else(|| CliError::Usage("this command needs --chain N or --lattice FILE".into()))
    }
}

impl Cli {
    pub fn reader(&self) -> CliResult<Box<dyn BufRead>> {
        Ok(match &self.input {
            Some(path) => Box::new(BufReader::new(File::open(path).map_err(|e| {
                CliError::Usage(format!("cannot open {}: {e}", path.display()))
            })?)),
            None => Box::new(BufReader::new(io::stdin().lock())),
        })
    }

    pub fn writer(&self) -> CliResult<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    /// The requested format, if `allowed` (whose first entry is the default).
    pub fn format(&self, command: &str, allowed: &[Format]) -> CliResult<Format> {
        match self.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => Err(CliError::Usage(format!("{command} does not support --format {f:?}"))),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
