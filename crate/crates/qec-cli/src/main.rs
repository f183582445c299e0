//! `qec`: quadratic embedding constants of graphs from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 domain error (disconnected graph, not of QE class, no applicable
//! formula, ...).

mod commands;
mod expr;
mod output;
mod verify;

use clap::{Parser, Subcommand};
use commands::{cmd_dist, cmd_embed, cmd_qec, cmd_spectrum, MatrixKind, Mode};
use std::path::PathBuf;
use verify::{cmd_verify, VerifyOpts};

#[derive(Parser)]
#[command(
    name = "qec",
    version,
    about = "Quadratic embedding constants of finite simple graphs"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute qec(<expr>) by oracle, formula, or the first that applies.
    Qec {
        /// Graph expression, e.g. "join(C4,P3)" or "cart(Kb(3,2),K2)".
        expr: String,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        /// QE-class tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run the formula-versus-oracle verification suite.
    Verify {
        /// Seed for the randomized slice of the builtin catalog.
        #[arg(long, default_value_t = qec::catalog::DEFAULT_SEED)]
        seed: u64,
        /// Comparison tolerance.
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// File with one expression per line instead of the builtin catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Test hook: add 1e-3 to the formula value of one case.
        #[arg(long, hide = true)]
        perturb: Option<usize>,
    },
    /// Print the shortest-path distance matrix.
    Dist { expr: String },
    /// Print distinct eigenvalues with multiplicities and sigma0 flags.
    Spectrum {
        expr: String,
        #[arg(long, value_enum, default_value = "adjacency")]
        matrix: MatrixKind,
    },
    /// Print an explicit quadratic embedding of a QE-class graph.
    Embed {
        expr: String,
        /// Clamp tolerance for the centered Gram eigenvalues.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Qec { expr, mode, tol } => cmd_qec(&expr, mode, tol, cli.pretty).map(|()| 0),
        Command::Verify {
            seed,
            tol,
            catalog,
            perturb,
        } => cmd_verify(&VerifyOpts {
            seed,
            tol,
            catalog,
            perturb,
            pretty: cli.pretty,
        }),
        Command::Dist { expr } => cmd_dist(&expr, cli.pretty).map(|()| 0),
        Command::Spectrum { expr, matrix } => cmd_spectrum(&expr, matrix, cli.pretty).map(|()| 0),
        Command::Embed { expr, tol } => cmd_embed(&expr, tol, cli.pretty).map(|()| 0),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
