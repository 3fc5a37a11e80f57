#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "polyheat", version, about = "Small-time heat content of polygons with mixed boundary conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Unit {
    Rad,
    Deg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Integral,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a vertex coefficient a(α), b(β) or c(γ).
    Coeff {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long, value_enum, default_value = "rad")]
        unit: Unit,
        /// Defaults to the integral for a and c, closed form for b. The closed
        /// form of a is valid on (π, 3π/2).
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Absolute quadrature tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the expansion coefficients of a polygon.
    Expand {
        polygon: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate the expansion of a polygon at a list of times.
    Eval {
        polygon: PathBuf,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', num_args = 0.., allow_negative_numbers = true)]
        times: Vec<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Compare the expansion with a Monte Carlo estimate.
    Verify {
        polygon: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        time: f64,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long, default_value_t = 256)]
        steps: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allowance for truncation and time-step bias added to the z band.
        #[arg(long, default_value_t = 5e-4)]
        budget: f64,
        #[arg(long, default_value_t = 3.0)]
        z_threshold: f64,
        /// Disable the Brownian-bridge crossing correction.
        #[arg(long)]
        no_bridge: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evaluate the Dirichlet-open sector expansion.
    Sector {
        #[arg(long, allow_negative_numbers = true)]
        radius: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "rad")]
        unit: Unit,
        #[arg(long, allow_negative_numbers = true)]
        time: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the Bessel-transform identity suite.
    KernelCheck {
        /// Pass threshold on |lhs - rhs|.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Coeff {
            kind,
            angle,
            unit,
            method,
            tol,
            format,
        } => commands::coeff(kind, angle, unit, method, tol)?.render(format),
        Command::Expand { polygon, format } => commands::expand(&polygon)?.render(format),
        Command::Eval { polygon, times, format } => commands::eval(&polygon, &times)?.render(format),
        Command::Verify {
            polygon,
            time,
            paths,
            steps,
            seed,
            budget,
            z_threshold,
            no_bridge,
            format,
        } => {
            let opts = commands::VerifyOptions {
                t: time,
                paths,
                steps,
                seed,
                budget,
                z_threshold,
                bridge: !no_bridge,
            };
            let (out, pass) = commands::verify(&polygon, &opts)?;
            let text = out.render(format)?;
            if pass {
                Ok(text)
            } else {
                Err(CliError::Failed(text))
            }
        }
        Command::Sector {
            radius,
            alpha,
            unit,
            time,
            format,
        } => commands::sector(radius, alpha, unit, time)?.render(format),
        Command::KernelCheck { tol, format } => {
            let (out, pass) = commands::kernel_check(tol)?;
            let text = out.render(format)?;
            if pass {
                Ok(text)
            } else {
                Err(CliError::Failed(text))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(text)) => {
            print!("{text}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
