//! Command-line driver. Exit codes: 0 success, 1 fixture failure, 2 usage
//! error, 3 mathematical precondition violation (characteristic divides
//! the curve degree).

mod commands;
mod fixtures;
mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fermat_syzygy::DEFAULT_COST_CEILING;

use commands::{CliError, CmdOutput};

#[derive(Parser)]
#[command(
    name = "fermat-syzygy",
    version,
    about = "Syzygy bundles on Fermat curves: minimal syzygy degrees, semistability scans and prime-density reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal syzygy degree for (X^a1, Y^a2, Z^a3) on Z^d = X^d + Y^d
    Delta {
        /// Curve degree d
        #[arg(long)]
        d: u64,
        /// Field characteristic (a prime not dividing d)
        #[arg(long)]
        p: u64,
        /// The three exponents a1 a2 a3
        #[arg(long, num_args = 3, value_names = ["A1", "A2", "A3"])]
        powers: Vec<u64>,
        /// Cap the searched total degree; results above it are flagged
        #[arg(long)]
        bound: Option<u64>,
        /// Re-parse the printed witness and verify it again
        #[arg(long)]
        recheck: bool,
        /// Write the machine-readable report to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Frobenius scan: is Syz(X^2, Y^2, Z^2) strongly semistable on the
    /// degree-d curve over F_p?
    Check {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        p: u64,
        /// Largest Frobenius depth e to examine (q = p^e)
        #[arg(long, default_value_t = 8)]
        emax: u32,
        /// Ceiling on 2q for direct syzygy computation
        #[arg(long, default_value_t = DEFAULT_COST_CEILING)]
        cost_ceiling: u64,
        #[arg(long)]
        recheck: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Window, covered remainders and density bound for the unit group
    /// mod d
    Density {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Empirical prime counts by residue class mod d against the density
    /// bound
    Scan {
        #[arg(long)]
        d: u64,
        /// Count primes up to this limit
        #[arg(long, default_value_t = 1_000_000)]
        pmax: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sophie Germain primes h <= limit (h and 2h + 1 both prime)
    Sophie {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Degrees whose remainder window contains no coprime element
    Exceptional {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-run the recorded worked examples and compare every value
    VerifyPaper {
        /// Run a single fixture by name
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn dispatch(cmd: Cmd) -> Result<(CmdOutput, Option<PathBuf>), CliError> {
    match cmd {
        Cmd::Delta {
            d,
            p,
            powers,
            bound,
            recheck,
            json,
        } => {
            if powers.len() != 3 {
                return Err(CliError::Usage(
                    "--powers takes exactly three values".into(),
                ));
            }
            if powers.contains(&0) {
                return Err(CliError::Usage("powers must be positive".into()));
            }
            let out = commands::cmd_delta(d, p, [powers[0], powers[1], powers[2]], bound, recheck)?;
            Ok((out, json))
        }
        Cmd::Check {
            d,
            p,
            emax,
            cost_ceiling,
            recheck,
            json,
        } => Ok((
            commands::cmd_check(d, p, emax, cost_ceiling, recheck)?,
            json,
        )),
        Cmd::Density { d, json } => Ok((commands::cmd_density(d)?, json)),
        Cmd::Scan { d, pmax, json } => Ok((commands::cmd_scan(d, pmax)?, json)),
        Cmd::Sophie { limit, json } => Ok((commands::cmd_sophie(limit)?, json)),
        Cmd::Exceptional { limit, json } => Ok((commands::cmd_exceptional(limit)?, json)),
        Cmd::VerifyPaper { only, json } => Ok((commands::cmd_verify_paper(only.as_deref())?, json)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((out, json_path)) => {
            print!("{}", out.human);
            if let Some(path) = json_path {
                let payload = out.report.to_json_string();
                if let Err(e) = std::fs::write(&path, payload + "\n") {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
                println!("report written to {}", path.display());
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
