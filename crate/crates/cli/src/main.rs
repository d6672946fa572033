use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pwavg_cli::{input, render, CliError, Outcome};

#[derive(Parser)]
#[command(name = "pwavg", version, about = "Exact averaging of piecewise polynomials by step densities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Problem document (JSON); stdin when omitted or "-".
    #[arg(short = 'i', long = "input")]
    input: Option<PathBuf>,
    /// Report destination; stdout when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact f_alpha for the document's alpha.
    Average {
        #[command(flatten)]
        io: Io,
        /// Also write a sampled x,f,f_alpha table here.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Number of plot samples.
        #[arg(long, default_value_t = 201)]
        grid: usize,
    },
    /// Stability verdict for every local extremum.
    Stability {
        #[command(flatten)]
        io: Io,
    },
    /// Fingerprint comparison over a range of widths.
    Sweep {
        #[command(flatten)]
        io: Io,
        /// Comma-separated exact widths, increasing; overrides the document.
        #[arg(long)]
        alphas: Option<String>,
        /// Size of the default geometric grid.
        #[arg(long, default_value_t = pwavg::sweep::DEFAULT_GRID_STEPS)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare exact values against quadrature at random points.
    OracleCheck {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(p).map_err(|e| CliError::invalid("io", format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin().read_to_string(&mut text).map_err(|e| CliError::invalid("io", e.to_string()))?;
        }
    }
    Ok(text)
}

fn write_to(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::invalid("io", format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::invalid("io", e.to_string())),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (io, plot_path, outcome): (Io, Option<PathBuf>, Outcome) = match cli.command {
        Command::Average { io, plot, grid } => {
            let text = read_input(&io.input)?;
            let out = pwavg_cli::cmd_average(&text, plot.as_ref().map(|_| grid))?;
            (io, plot, out)
        }
        Command::Stability { io } => {
            let text = read_input(&io.input)?;
            let out = pwavg_cli::cmd_stability(&text)?;
            (io, None, out)
        }
        Command::Sweep { io, alphas, grid, jobs } => {
            let text = read_input(&io.input)?;
            let alphas = alphas.as_deref().map(input::parse_alpha_list).transpose()?;
            let out = pwavg_cli::cmd_sweep(&text, alphas, grid, jobs)?;
            (io, None, out)
        }
        Command::OracleCheck { io, samples, seed, tol } => {
            let text = read_input(&io.input)?;
            let out = pwavg_cli::cmd_oracle(&text, samples, seed, tol)?;
            (io, None, out)
        }
    };
    write_to(&io.output, &render(&outcome.document))?;
    if let (Some(path), Some(csv)) = (plot_path, &outcome.plot) {
        write_to(&Some(path), csv)?;
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprint!("{}", render(&err.to_json()));
            err.code
        }
    };
    ExitCode::from(code as u8)
}
