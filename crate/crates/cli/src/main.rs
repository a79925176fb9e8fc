//! `legcap`: DGAs, capacities and width bounds for Legendrian plat fronts.

mod commands;
mod corpus;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use legcap_core::linearize::DEFAULT_MAX_DEG0;
use legcap_core::oracle::DEFAULT_MAX_CROSSINGS;
use legcap_core::Error;

#[derive(Debug, Parser)]
#[command(name = "legcap", version, about = "Fundamental capacities and width bounds of Legendrian knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Largest number of degree-0 chords for the augmentation search.
    #[arg(long = "max-deg0", default_value_t = DEFAULT_MAX_DEG0, global = true, value_parser = positive)]
    max_deg0: usize,
    /// Largest crossing count accepted by the disk oracle.
    #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS, global = true, value_parser = positive)]
    max_crossings: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct AugSelect {
    /// Show every augmentation.
    #[arg(long, conflicts_with = "augmentation")]
    pub all_augmentations: bool,
    /// Show augmentation N (0-based, in enumeration order).
    #[arg(long, value_name = "N")]
    pub augmentation: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chords, gradings, heights and the differential.
    Dga {
        file: PathBuf,
        /// Include disk records.
        #[arg(long)]
        disks: bool,
        /// Cross-check the disks against the face-gluing oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// All graded augmentations.
    Augmentations { file: PathBuf },
    /// Betti numbers of linearized contact homology.
    Lch {
        file: PathBuf,
        #[command(flatten)]
        select: AugSelect,
    },
    /// Fundamental capacity per augmentation and the spectrum.
    Capacity {
        file: PathBuf,
        #[command(flatten)]
        select: AugSelect,
        /// Arc id of the marked point, or `all` to check every arc.
        #[arg(long, value_name = "ID|all", default_value = "0")]
        marked_arc: String,
        /// Cross-check against exhaustive maximization over representatives.
        #[arg(long)]
        oracle: bool,
    },
    /// Relative width bounds for the cylinder over the knot.
    Width {
        file: PathBuf,
        /// Level b: rational, ln(q), or x+ln(q).
        #[arg(long, value_name = "B", allow_hyphen_values = true)]
        level: Option<String>,
        /// Add the bound for a cobordism declared to have a collared top.
        #[arg(long)]
        collared: bool,
    },
    /// Lower bound on the length of a fundamental cobordism.
    Length { minus: PathBuf, plus: PathBuf },
    /// Run every check on the shipped corpus.
    CorpusVerify {
        /// Corpus directory (default: $LEGCAP_CORPUS, then ./corpus).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Why a command stopped, and the exit code that says so.
#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(String),
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) | Failure::Usage(_) => 1,
            Failure::Mismatch(_) => 4,
            Failure::Core(e) => match e {
                Error::Schema(_)
                | Error::Topology(_)
                | Error::Grading(_)
                | Error::MissingHeight(_)
                | Error::NonPositiveHeight(_)
                | Error::MissingGeometry(_)
                | Error::NonPositiveScale
                | Error::UnknownArc(..) => 1,
                Error::DSquared(_)
                | Error::Degree(_)
                | Error::Filtration(_)
                | Error::InvalidAugmentation(_)
                | Error::Linearization(_)
                | Error::NotCocycle(_)
                | Error::NullClass(_)
                | Error::BoundOrder(_) => 2,
                Error::SizeLimit(_) | Error::NoAugmentation | Error::Unavailable(_) => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
            Failure::Mismatch(m) => format!("oracle mismatch: {m}"),
        }
    }
}

/// Options shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub format: Format,
    pub max_deg0: usize,
    pub max_crossings: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps { format: cli.format, max_deg0: cli.max_deg0, max_crossings: cli.max_crossings };
    let result = match cli.command {
        Command::Dga { file, disks, oracle } => commands::dga(&file, disks, oracle, caps),
        Command::Augmentations { file } => commands::augmentations(&file, caps),
        Command::Lch { file, select } => commands::lch(&file, &select, caps),
        Command::Capacity { file, select, marked_arc, oracle } => {
            commands::capacity(&file, &select, &marked_arc, oracle, caps)
        }
        Command::Width { file, level, collared } => commands::width(&file, level.as_deref(), collared, caps),
        Command::Length { minus, plus } => commands::length(&minus, &plus, caps),
        Command::CorpusVerify { dir } => corpus::verify(dir, caps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("legcap: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
