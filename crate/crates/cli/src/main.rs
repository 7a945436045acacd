//! `flseq`: build and analyse character sequences over finite fields.

mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "flseq",
    version,
    about = "Sequences from fractional linear maps over finite fields"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Field order (a prime power).
    #[arg(long, global = true, conflicts_with_all = ["p", "field_file"])]
    pub q: Option<u64>,
    /// Field characteristic; use with --m.
    #[arg(long, global = true, requires = "m", conflicts_with = "field_file")]
    pub p: Option<u64>,
    /// Extension degree; use with --p.
    #[arg(long, global = true, requires = "p")]
    pub m: Option<u32>,
    /// JSON field description with modulus and optional generator.
    #[arg(long, global = true)]
    pub field_file: Option<PathBuf>,
    /// Order d of the multiplicative character; must divide q-1.
    #[arg(long, global = true)]
    pub char_order: Option<u32>,
    /// all | coset-distinct | sample:K[,seed=S]
    #[arg(long, global = true, default_value = "coset-distinct")]
    pub phis: String,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for sampled maps when the strategy names none.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find the fixed-point-free map psi of order q+1 and list its orbit.
    Psi,
    /// Build a family of sequences.
    Family,
    /// Correlation spectra, per-member maxima and the family maximum T(A).
    Correlate {
        /// Family JSON, sequence JSON, or CSV rows with a manifest.
        #[arg(long)]
        input: PathBuf,
        /// Also emit cross spectra for every ordered pair.
        #[arg(long)]
        pairs: bool,
    },
    /// Welch and Sidelnikov bounds for M sequences of length N.
    Bounds(BoundsArgs),
    /// Linear span of each sequence via Berlekamp-Massey.
    Linspan {
        #[arg(long)]
        input: PathBuf,
        /// Number of periods fed to Berlekamp-Massey.
        #[arg(long, default_value_t = 2)]
        periods: usize,
    },
    /// Full pipeline: psi, family, correlation, bounds and linear span.
    Report,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct BoundsArgs {
    #[command(subcommand)]
    kerdock: Option<BoundsCommand>,
    /// Sequence length N.
    #[arg(short = 'N', long = "length")]
    length: Option<u64>,
    /// Family size M.
    #[arg(short = 'M', long = "family-size")]
    family_size: Option<u64>,
    /// Measured T(A) to compare with the Welch bound.
    #[arg(long)]
    measured: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum BoundsCommand {
    /// Kerdock parameters against the antipodal code bound.
    Kerdock {
        /// Even m; the code has length 2^m.
        #[arg(long)]
        degree: u32,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Psi => commands::psi(g),
        Command::Family => commands::family(g),
        Command::Correlate { input, pairs } => commands::correlate(g, &input, pairs),
        Command::Bounds(b) => match b.kerdock {
            Some(BoundsCommand::Kerdock { degree }) => commands::kerdock(g, degree),
            None => {
                let n = b
                    .length
                    .ok_or_else(|| CliError::invalid("bounds needs -N/--length"))?;
                let m = b
                    .family_size
                    .ok_or_else(|| CliError::invalid("bounds needs -M/--family-size"))?;
                commands::bounds(g, n, m, b.measured)
            }
        },
        Command::Linspan { input, periods } => commands::linspan(g, &input, periods),
        Command::Report => commands::report(g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
