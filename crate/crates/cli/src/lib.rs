//! Command-line front end: argument parsing, dispatch and emission.

pub mod commands;
pub mod error;
pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{KernelMode, Level};
pub use error::CliError;
pub use output::{Cell, Format, OutputRecord};

#[derive(Debug, Parser)]
#[command(
    name = "sh22",
    version,
    about = "Evaluate and verify the sh(2|2) oscillator model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Position wavefunctions on a window of the spectrum.
    Wavefunction {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        /// Comma-separated indices or inclusive ranges, e.g. `0..3,7`.
        #[arg(long = "n", default_value = "0..3", value_parser = parse_index_list)]
        n: IndexList,
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: u64,
    },
    /// Central eigenvalues of the truncated position operator.
    Spectrum {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long = "N", default_value_t = 2048)]
        big_n: usize,
        #[arg(long, default_value_t = 21)]
        count: usize,
    },
    /// Fourier kernel between position and momentum eigenvectors.
    Kernel {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long = "k-max", default_value_t = 8)]
        k_max: u64,
        #[arg(long, value_enum, default_value_t = KernelMode::Both)]
        mode: KernelMode,
        /// Fixed series order; chosen from the completeness tail by default.
        #[arg(long = "n-max")]
        n_max: Option<u64>,
    },
    /// Run the invariant suites and report named residuals.
    Verify {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long = "N", default_value_t = 64)]
        big_n: usize,
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// Shift gamma on the matrix side of two-path checks.
        #[arg(long, hide = true, allow_negative_numbers = true)]
        perturb: Option<f64>,
    },
    /// Distance between the finite-dimensional wavefunctions and their limit.
    Limit {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(
            long = "j-list",
            visible_alias = "j",
            value_delimiter = ',',
            required = true
        )]
        j_list: Vec<u64>,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: u64,
        #[arg(long = "k-max", default_value_t = 8)]
        k_max: u64,
        /// Emit the point-by-point comparison instead of the error summary.
        #[arg(long)]
        grid: bool,
    },
    /// Uncertainty products, commutator eigenvalues and energies by formula
    /// and from matrices.
    Observables {
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
        #[arg(long = "n-max", default_value_t = 40)]
        n_max: u64,
        #[arg(long = "N", default_value_t = 128)]
        big_n: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Wavefunction { .. } => "wavefunction",
            Command::Spectrum { .. } => "spectrum",
            Command::Kernel { .. } => "kernel",
            Command::Verify { .. } => "verify",
            Command::Limit { .. } => "limit",
            Command::Observables { .. } => "observables",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexList(pub Vec<u64>);

pub fn parse_index_list(text: &str) -> Result<IndexList, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let parse = |s: &str| s.trim().parse::<u64>().map_err(|e| format!("{s:?}: {e}"));
        match part.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                if lo > hi {
                    return Err(format!("empty range {part}"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(parse(part)?),
        }
    }
    if out.is_empty() {
        return Err("no indices given".into());
    }
    Ok(IndexList(out))
}

/// What a command produced: a table, an error, or a table with a failure.
#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub record: Option<OutputRecord>,
    pub error: Option<CliError>,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        self.error.as_ref().map_or(0, CliError::exit_code)
    }
}

pub fn execute(command: &Command) -> Outcome {
    let name = command.name();
    let result = match command {
        Command::Wavefunction { gamma, n, k_max } => commands::wavefunction(*gamma, &n.0, *k_max),
        Command::Spectrum {
            gamma,
            big_n,
            count,
        } => commands::spectrum(*gamma, *big_n, *count),
        Command::Kernel {
            gamma,
            k_max,
            mode,
            n_max,
        } => commands::kernel(*gamma, *k_max, *mode, *n_max),
        Command::Limit {
            gamma,
            j_list,
            n_max,
            k_max,
            grid,
        } => {
            if *grid {
                commands::limit_grid(*gamma, j_list, *n_max, *k_max)
            } else {
                commands::limit(*gamma, j_list, *n_max, *k_max)
            }
        }
        Command::Observables {
            gamma,
            n_max,
            big_n,
        } => commands::observables(*gamma, *n_max, *big_n),
        Command::Verify {
            gamma,
            big_n,
            level,
            perturb,
        } => {
            return match commands::verify(*gamma, *big_n, *level, *perturb) {
                Ok((record, failed)) => Outcome {
                    command: name,
                    record: Some(record),
                    error: failed.map(CliError::Invariant),
                },
                Err(e) => Outcome {
                    command: name,
                    record: None,
                    error: Some(e),
                },
            };
        }
    };
    match result {
        Ok(record) => Outcome {
            command: name,
            record: Some(record),
            error: None,
        },
        Err(e) => Outcome {
            command: name,
            record: None,
            error: Some(e),
        },
    }
}

/// Writes the outcome: the table as CSV or JSON, and errors to `err`, or
/// inside the JSON document when the format is JSON.
pub fn emit<W: Write, E: Write>(
    outcome: &Outcome,
    format: Format,
    mut out: W,
    mut err: E,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let doc = match (&outcome.record, &outcome.error) {
                (Some(record), error) => {
                    let mut doc = record.to_json();
                    if let Some(e) = error {
                        doc["error"] = output::error_json(outcome.command, e)["error"].clone();
                    }
                    doc
                }
                (None, Some(e)) => output::error_json(outcome.command, e),
                (None, None) => unreachable!("an outcome has a record or an error"),
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            if let Some(record) = &outcome.record {
                record.write_csv(&mut out)?;
            }
        }
    }
    if let Some(e) = &outcome.error {
        writeln!(err, "error: {e}")?;
    }
    out.flush()?;
    Ok(())
}

/// Parses nothing; runs an already parsed command line and returns the exit code.
pub fn run(cli: &Cli) -> u8 {
    let outcome = execute(&cli.command);
    let written = match &cli.out {
        Some(path) => File::create(path)
            .map_err(CliError::from)
            .and_then(|f| emit(&outcome, cli.format, BufWriter::new(f), io::stderr())),
        None => emit(&outcome, cli.format, io::stdout().lock(), io::stderr()),
    };
    match written {
        Ok(()) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
