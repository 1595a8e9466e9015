use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use multiwell::report::{
    run_bands, run_levels, run_sweep, run_verify, run_wavefunction, CsvStyle, OutputFormat,
    RunConfig, VerifyOptions, WaveOptions,
};
use multiwell::{Error, ErrorCategory};

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_RESOLUTION: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(
    name = "multiwell",
    version,
    about = "Bound states and Floquet bands of joined multi-well potentials"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Round energies to four decimals.
    #[arg(long, global = true)]
    paper: bool,
    /// Write the report here instead of stdout (overrides the config).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Bound-state levels with the bands of both depths.
    Levels {
        /// Also scan excited bands and keep levels outside the ground bands.
        #[arg(long)]
        all_bands: bool,
    },
    /// Band edges of both depths.
    Bands {
        #[arg(long)]
        all_bands: bool,
    },
    /// Levels for several cell counts against shared bands.
    Sweep {
        /// Comma-separated even cell counts.
        #[arg(long, value_delimiter = ',', default_value = "2,4,6")]
        n_values: Vec<u32>,
        #[arg(long)]
        all_bands: bool,
    },
    /// Sampled wave function of one level.
    Wavefunction {
        #[arg(long, default_value_t = 0)]
        level: usize,
        #[arg(long, allow_hyphen_values = true)]
        x_min: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 801)]
        samples: usize,
    },
    /// Compare the levels against the finite-difference solver.
    Verify {
        #[arg(long, default_value_t = 8000)]
        points: usize,
        #[arg(long, default_value_t = 12.0)]
        padding: f64,
        #[arg(long, default_value_t = 2e-3)]
        tolerance: f64,
    },
}

enum Failure {
    Solver(Error),
    Io(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e)
    }
}

fn emit_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports are plain data");
    text.push('\n');
    text
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn edges_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("sweep");
    path.with_file_name(format!("{stem}.edges.csv"))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config_path = cli
        .common
        .config
        .ok_or_else(|| Error::Config("--config <path> is required".into()))?;
    let config = RunConfig::from_path(&config_path)?;
    let output = cli.common.output.or_else(|| config.output.clone());
    let output = output.as_deref();
    let style = CsvStyle {
        four_decimals: cli.common.paper,
    };
    let json = config.format == OutputFormat::Json;

    match cli.command {
        Command::Levels { all_bands } => {
            let report = run_levels(&config, all_bands)?;
            let text = if json {
                emit_json(&report)
            } else {
                report.to_csv(style)
            };
            write_out(output, &text)
        }
        Command::Bands { all_bands } => {
            let report = run_bands(&config, all_bands)?;
            let text = if json {
                emit_json(&report)
            } else {
                report.to_csv(style)
            };
            write_out(output, &text)
        }
        Command::Sweep {
            n_values,
            all_bands,
        } => {
            let report = run_sweep(&config, &n_values, all_bands)?;
            if json {
                return write_out(output, &emit_json(&report));
            }
            match output {
                Some(path) => {
                    write_out(Some(path), &report.levels_csv(style))?;
                    write_out(Some(&edges_path(path)), &report.edges_csv(style))
                }
                None => {
                    let text = format!("{}\n{}", report.levels_csv(style), report.edges_csv(style));
                    write_out(None, &text)
                }
            }
        }
        Command::Wavefunction {
            level,
            x_min,
            x_max,
            samples,
        } => {
            let options = WaveOptions {
                level,
                x_min,
                x_max,
                samples,
            };
            let report = run_wavefunction(&config, &options)?;
            let text = if json {
                emit_json(&report)
            } else {
                report.to_csv()
            };
            write_out(output, &text)
        }
        Command::Verify {
            points,
            padding,
            tolerance,
        } => {
            let options = VerifyOptions {
                n_points: points,
                padding,
                tolerance,
            };
            let report = run_verify(&config, &options)?;
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            let text = if json {
                emit_json(&report)
            } else {
                report.to_csv(style)
            };
            write_out(output, &text)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Solver(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.category() {
                ErrorCategory::Config => EXIT_CONFIG,
                ErrorCategory::Numerical => EXIT_NUMERICAL,
                ErrorCategory::Resolution => EXIT_RESOLUTION,
            })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Mismatch) => {
            eprintln!("error: finite-difference check failed");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
