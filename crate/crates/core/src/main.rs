use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use quadric::pipeline::{run_file, RunOptions, Stage};

#[derive(Parser)]
#[command(name = "quadric", version, about = "Isolated-singularity test and MCM modules for noncommutative quadric hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a presentation file.
    Run {
        file: PathBuf,
        /// Truncation degree for Hilbert-function certificates.
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Seed for generic-element searches.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Stop after the named stage.
        #[arg(long, value_parser = parse_stage)]
        stage: Option<Stage>,
        /// Bypass the quantum-polynomial certificate.
        #[arg(long)]
        skip_qp_check: bool,
    },
}

fn parse_stage(s: &str) -> Result<Stage, String> {
    Stage::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Stage::ALL.iter().map(|s| s.name()).collect();
        format!("unknown stage `{s}`; expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            degree,
            seed,
            json,
            stage,
            skip_qp_check,
        } => {
            if skip_qp_check {
                eprintln!("WARNING: --skip-qp-check given; S is assumed to be a quantum polynomial algebra");
            }
            let opts = RunOptions {
                horizon: degree,
                seed,
                stop_after: stage,
                skip_qp_check,
            };
            let report = match run_file(&file, &opts) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if report.succeeded() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
