use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fairsub_cli::commands;

/// Fair streaming submodular maximization toolkit.
#[derive(Parser)]
#[command(name = "fairsub", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured experiment sweep and write results.csv.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Parallel cells (overrides the config value).
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the manifest only; skip all computation.
        #[arg(long)]
        dry_run: bool,
    },
    /// Exact optimum by exhaustive search, per budget in the sweep.
    BruteForce {
        #[arg(long)]
        config: PathBuf,
    },
    /// Generate a streaming-hardness instance as dataset + config files.
    GenHardness {
        /// Number of encoded bit positions.
        #[arg(long)]
        n: usize,
        /// Target excess ratio.
        #[arg(long)]
        q: f64,
        /// Approximation window for the excess ratio.
        #[arg(long)]
        epsilon: f64,
        /// Value of the distinguished bit (0 or 1).
        #[arg(long)]
        bit: u8,
        /// Distinguished position (defaults to n / 2).
        #[arg(long)]
        i_star: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a dataset: PSD of kernels, submodularity, monotonicity.
    Verify {
        #[arg(long)]
        dataset: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successful exits.
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    let result = match cli.command {
        Command::Run {
            config,
            jobs,
            dry_run,
        } => commands::run(&config, jobs, dry_run),
        Command::BruteForce { config } => commands::brute_force(&config),
        Command::GenHardness {
            n,
            q,
            epsilon,
            bit,
            i_star,
            out,
        } => commands::generate_hardness(n, q, epsilon, bit, i_star, &out),
        Command::Verify { dataset } => commands::verify(&dataset),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
