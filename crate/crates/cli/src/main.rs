//! regulith: exact analysis of two-level fractional factorial designs.
//!
//! Subcommands: `analyze` a design file, list embedded regular `subfractions`,
//! `decompose` a design into disjoint regular fractions, and `pb` for the
//! 12-run Plackett-Burman projections, their classification and the
//! strength-2 orthogonal-array catalog.
//!
//! Exit codes: 0 on success, 1 when a search comes back empty, 2 on input
//! errors.

mod design_io;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use regulith_core as core;
use regulith_core::{CountingPolynomial, Fraction};

use report::Format;

#[derive(Parser)]
#[command(
    name = "regulith",
    version,
    about = "Exact indicator-polynomial analysis of two-level fractional factorial designs"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the counting polynomial, strength and regularity of a design.
    Analyze {
        /// CSV design file: one run per line, levels -1/+1 (also -/+ or 0/1).
        file: PathBuf,
    },
    /// List every regular fraction of a given size embedded in the design.
    Subfractions {
        /// CSV design file.
        file: PathBuf,
        /// Size of the embedded fractions, a power of two.
        #[arg(long)]
        size: u64,
    },
    /// Partition the design into disjoint regular fractions.
    #[command(group(ArgGroup::new("mode").required(true).args(["size", "greedy"])))]
    Decompose {
        /// CSV design file.
        file: PathBuf,
        /// Enumerate all partitions into regular parts of this many runs.
        #[arg(long)]
        size: Option<u64>,
        /// Repeatedly strip a largest embedded regular fraction.
        #[arg(long)]
        greedy: bool,
    },
    /// The 12-run Plackett-Burman design: projections, classes, OA catalog.
    #[command(group(ArgGroup::new("mode").required(true).args(["cols", "classify", "oa_catalog"])))]
    Pb {
        /// Project onto five columns (labels A..K), e.g. --cols A,B,F,H,I.
        #[arg(long, value_delimiter = ',')]
        cols: Option<Vec<String>>,
        /// Group all 462 five-column projections by run multiset.
        #[arg(long)]
        classify: bool,
        /// Generate the 192 strength-2 orthogonal arrays with 12 runs.
        #[arg(long = "oa-catalog")]
        oa_catalog: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: design_io::DesignParseError,
    },

    #[error("size {0} is not a power of two between 1 and 2^m")]
    BadSize(u64),

    #[error("the design has replicated runs; {0} needs a plain 0/1 design")]
    Replicated(&'static str),

    #[error("--cols takes exactly five labels, got {0}")]
    BadColumnCount(usize),

    #[error("unknown column label {0:?} (expected A..K)")]
    BadColumnLabel(String),

    #[error("{0}")]
    Core(#[from] core::Error),

    #[error("REGULITH_THREADS={0:?} is not a positive integer")]
    BadThreads(String),
}

/// Did a search command produce anything? Empty searches exit with code 1.
enum Outcome {
    Success,
    Empty,
}

fn main() -> ExitCode {
    match run() {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Empty) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<Outcome, CliError> {
    configure_threads()?;
    let cli = Cli::parse();
    let format = Format::from(cli.format);
    match &cli.command {
        Command::Analyze { file } => cmd_analyze(file, format),
        Command::Subfractions { file, size } => cmd_subfractions(file, *size, format),
        Command::Decompose { file, size, greedy } => cmd_decompose(file, *size, *greedy, format),
        Command::Pb { cols, classify, oa_catalog } => {
            cmd_pb(cols.as_deref(), *classify, *oa_catalog, format)
        }
    }
}

/// Cap rayon's pool when REGULITH_THREADS is set.
fn configure_threads() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("REGULITH_THREADS") {
        let threads: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or(CliError::BadThreads(raw.clone()))?;
        // a later duplicate initialization is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

fn load_design(path: &Path) -> Result<Fraction, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    design_io::parse_design(&text).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// The exponent count k for an embedded fraction of `size` runs: size = 2^(m-k).
fn size_to_k(m: usize, size: u64) -> Result<usize, CliError> {
    if !size.is_power_of_two() || size > 1u64 << m {
        return Err(CliError::BadSize(size));
    }
    Ok(m - size.trailing_zeros() as usize)
}

fn indicator_of(fraction: &Fraction, what: &'static str) -> Result<CountingPolynomial, CliError> {
    if !fraction.is_unreplicated() {
        return Err(CliError::Replicated(what));
    }
    Ok(CountingPolynomial::from_fraction(fraction))
}

fn cmd_analyze(file: &Path, format: Format) -> Result<Outcome, CliError> {
    let fraction = load_design(file)?;
    let report = report::AnalyzeReport::new(&fraction);
    match format {
        Format::Text => print!("{}", report.text()),
        Format::Json => print!("{}", report::to_json(&report)),
    }
    Ok(Outcome::Success)
}

fn cmd_subfractions(file: &Path, size: u64, format: Format) -> Result<Outcome, CliError> {
    let fraction = load_design(file)?;
    let poly = indicator_of(&fraction, "subfractions")?;
    let k = size_to_k(fraction.m(), size)?;
    let specs = core::find_regular_subfractions(&poly, k)?;
    let report = report::SubfractionsReport::new(fraction.m(), size, &specs);
    match format {
        Format::Text => print!("{}", report.text()),
        Format::Json => print!("{}", report::to_json(&report)),
    }
    Ok(if specs.is_empty() { Outcome::Empty } else { Outcome::Success })
}

fn cmd_decompose(
    file: &Path,
    size: Option<u64>,
    greedy: bool,
    format: Format,
) -> Result<Outcome, CliError> {
    let fraction = load_design(file)?;
    let poly = indicator_of(&fraction, "decompose")?;
    let (report, empty) = if greedy {
        let deco = core::decompose_greedy(&poly)?;
        (report::DecomposeReport::greedy(fraction.m(), &deco), false)
    } else {
        let size = size.expect("clap enforces the mode group");
        size_to_k(fraction.m(), size)?;
        let decos = core::decompose_all(&poly, size)?;
        let empty = decos.is_empty();
        (report::DecomposeReport::all(fraction.m(), size, &decos), empty)
    };
    match format {
        Format::Text => print!("{}", report.text()),
        Format::Json => print!("{}", report::to_json(&report)),
    }
    Ok(if empty { Outcome::Empty } else { Outcome::Success })
}

fn parse_columns(labels: &[String]) -> Result<[usize; 5], CliError> {
    if labels.len() != 5 {
        return Err(CliError::BadColumnCount(labels.len()));
    }
    let mut cols = [0usize; 5];
    for (slot, label) in cols.iter_mut().zip(labels) {
        let trimmed = label.trim();
        let mut chars = trimmed.chars();
        let (Some(c), None) = (chars.next(), chars.next()) else {
            return Err(CliError::BadColumnLabel(label.clone()));
        };
        *slot = core::column_index(c).map_err(|_| CliError::BadColumnLabel(label.clone()))?;
    }
    Ok(cols)
}

fn cmd_pb(
    cols: Option<&[String]>,
    classify: bool,
    oa_catalog: bool,
    format: Format,
) -> Result<Outcome, CliError> {
    let design = core::build_pb12();
    if let Some(labels) = cols {
        let columns = parse_columns(labels)?;
        let fraction = core::project(&design, columns)?;
        match format {
            Format::Text => print!("{}", design_io::write_design_csv(&fraction)),
            Format::Json => {
                print!("{}", report::to_json(&report::ProjectionReport::new(&columns, &fraction)))
            }
        }
    } else if classify {
        let classes = core::classify_projections(&design);
        let report = report::ClassifyReport::new(&classes);
        match format {
            Format::Text => print!("{}", report.text()),
            Format::Json => print!("{}", report::to_json(&report)),
        }
    } else {
        debug_assert!(oa_catalog, "clap enforces the mode group");
        let catalog = core::generate_strength2_catalog();
        let report = report::CatalogReport::new(&catalog);
        match format {
            Format::Text => print!("{}", report.text()),
            Format::Json => print!("{}", report::to_json(&report)),
        }
    }
    Ok(Outcome::Success)
}
