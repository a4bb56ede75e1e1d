use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cubelval::commands::{self, Check};
use cubelval::{CliError, Output, RunConfig};

#[derive(Parser)]
#[command(name = "cubelval", version, about = "Central L-values and 3-descent data for x^3 + y^3 = lambda")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Significant digits for the L-series (8 to 30)
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,
    /// Relative tolerance for recognising rationals
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Largest denominator tried when recognising rationals
    #[arg(long, global = true, default_value_t = 9)]
    max_den: u64,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Cache directory
    #[arg(long, global = true, env = "CUBELVAL_CACHE")]
    cache: Option<PathBuf>,
    /// Emit JSON where a command supports both
    #[arg(long, global = true)]
    json: bool,
    /// Include rows with large conductor
    #[arg(long, global = true)]
    long_running: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Everything about one curve, as JSON
    Analyze {
        lambda: u64,
        /// Rank to assume when the L-value vanishes
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Recompute the table of central values, as CSV
    Table,
    /// Run checks over a range of cube-free lambda, as CSV
    Scan {
        min: u64,
        max: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Check::Bounds])]
        checks: Vec<Check>,
    },
    /// Averaged L-values over the twists of lambda, as JSON
    Phi {
        lambda: u64,
        /// Character exponents, e.g. 1,2
        #[arg(long, value_delimiter = ',')]
        chi: Option<Vec<u8>>,
    },
    /// Descent prediction for one curve, as JSON
    Descent {
        lambda: u64,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Run the acceptance suite
    Verify,
}

impl Common {
    fn config(&self) -> RunConfig {
        let d = RunConfig::default();
        RunConfig {
            digits: self.digits,
            tol: self.tol,
            max_den: self.max_den,
            workers: self.workers.unwrap_or(d.workers),
            cache: self.cache.clone(),
            long_running: self.long_running,
            json: self.json,
        }
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let cfg = cli.common.config();
    match &cli.command {
        Command::Analyze { lambda, rank } => commands::analyze(*lambda, *rank, &cfg),
        Command::Table => commands::table(&cfg),
        Command::Scan { min, max, checks } => commands::scan(*min, *max, checks, &cfg),
        Command::Phi { lambda, chi } => commands::phi(*lambda, chi.clone(), &cfg),
        Command::Descent { lambda, rank } => commands::descent(*lambda, *rank, &cfg),
        Command::Verify => commands::verify(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cubelval::error::EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text.trim_end());
            if let Some(s) = out.summary {
                eprintln!("{s}");
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
