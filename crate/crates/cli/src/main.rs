use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use toric_class::rank_engine::DEFAULT_POINT_CAP;
use toric_class::structure::DEFAULT_MAX_N;
use toric_class_cli::commands::{self, AnalyzeOptions, Settings};
use toric_class_cli::input::InputSpec;
use toric_class_cli::{exit, CliError};

#[derive(Parser)]
#[command(name = "toric-class", version, about = "Class groups of toric face rings of polymatroids and multicomplexes")]
struct Cli {
    /// Largest ground set for exhaustive subset enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Largest number of lattice points to materialize.
    #[arg(long, global = true, default_value_t = DEFAULT_POINT_CAP)]
    point_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Class group, canonical class and Gorenstein verdict.
    Analyze {
        file: PathBuf,
        /// Also run the cone path and cross-check it.
        #[arg(long)]
        cone: bool,
        /// Check normality up to this degree.
        #[arg(long, value_name = "D")]
        normality: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Sorted support forms of the cone, one per line.
    Facets { file: PathBuf },
    /// Run every applicable computation and compare them.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn render<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> anyhow::Result<String> {
    Ok(match format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(value).context("serializing report")? + "\n",
    })
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let settings = Settings { max_n: cli.max_n, point_cap: cli.point_cap };
    match cli.command {
        Command::Analyze { file, cone, normality, format } => {
            let spec = InputSpec::from_file(&file)?;
            let report = commands::analyze(&spec, AnalyzeOptions { cone, normality }, settings)?;
            print!("{}", render(format, &report, || report.to_text())?);
            let failed = report.cone.as_ref().and_then(|c| c.agrees_with_rank_path) == Some(false)
                || (report.family.is_some()
                    && report.normality.as_ref().is_some_and(|w| w.violation.is_some()));
            Ok(if failed { exit::CROSS_CHECK } else { exit::OK })
        }
        Command::Facets { file } => {
            let spec = InputSpec::from_file(&file)?;
            let out = commands::facets(&spec, settings)?;
            print!("{}", out.dump);
            match out.mismatch {
                Some(m) => {
                    eprintln!("{m}");
                    Ok(exit::CROSS_CHECK)
                }
                None => Ok(exit::OK),
            }
        }
        Command::Verify { file, format } => {
            let spec = InputSpec::from_file(&file)?;
            let report = commands::verify(&spec, settings)?;
            print!("{}", render(format, &report, || report.to_text())?);
            Ok(if report.agree { exit::OK } else { exit::CROSS_CHECK })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<CliError>().map_or(exit::CROSS_CHECK, CliError::exit_code);
            ExitCode::from(code)
        }
    }
}
