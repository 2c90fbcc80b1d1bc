//! `postlat`: inspect Boolean functions, compute closures, check
//! constraints, explore intervals and run the verification suites.
//!
//! Exit status: 0 success, 1 the checked property is false, 2 usage or
//! parse error, 3 resource cap hit.

mod commands;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use postlat::{Error, DEFAULT_MAX_MATRICES};

use commands::{ClosureKind, FnCommand, Report};
use spec::FnSpec;

#[derive(Parser)]
#[command(name = "postlat", version, about = "Composition-closed classes of Boolean functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect functions given as n:HEX, expr:<formula>, w<k>, v<j>, maj, minr, tmin or fn<n>.
    #[command(subcommand)]
    Fn(FnArgs),
    /// Close a set of functions at a bound and print the class file.
    Closure {
        #[arg(long, value_enum)]
        kind: ClosureKind,
        #[arg(long)]
        max_arity: usize,
        /// Class file whose members are added to the generators.
        #[arg(long)]
        input: Option<PathBuf>,
        functions: Vec<String>,
    },
    /// Check a function against the relational constraint (P, Q).
    Constraint {
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
        /// Also require (Q, Q).
        #[arg(long)]
        strong: bool,
        function: String,
    },
    /// Explore the interval of a clone: Omega, Omega_*1, L, L_0*, L_*1, Omega_0*, W or U.
    Interval {
        name: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_arity: usize,
        /// Write the Hasse diagram in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum FnArgs {
    /// Truth table literal and zero set.
    Table { functions: Vec<String> },
    /// Algebraic normal form.
    Anf { functions: Vec<String> },
    /// Named classes containing each function.
    Props { functions: Vec<String> },
    /// The clone generated by all the functions together.
    Classify { functions: Vec<String> },
}

fn specs(texts: &[String]) -> postlat::Result<Vec<FnSpec>> {
    texts.iter().map(|t| t.parse()).collect()
}

fn max_matrices() -> postlat::Result<u64> {
    match std::env::var("POSTLAT_MAX_MATRICES") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("POSTLAT_MAX_MATRICES must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_MATRICES),
    }
}

fn run(cli: Cli) -> postlat::Result<Report> {
    match cli.command {
        Command::Fn(args) => {
            let (which, texts) = match args {
                FnArgs::Table { functions } => (FnCommand::Table, functions),
                FnArgs::Anf { functions } => (FnCommand::Anf, functions),
                FnArgs::Props { functions } => (FnCommand::Props, functions),
                FnArgs::Classify { functions } => (FnCommand::Classify, functions),
            };
            commands::cmd_fn(which, &specs(&texts)?)
        }
        Command::Closure { kind, max_arity, input, functions } => {
            commands::cmd_closure(kind, max_arity, input.as_deref(), &specs(&functions)?)
        }
        Command::Constraint { p, q, strong, function } => {
            commands::cmd_constraint(&p, &q, strong, &function.parse()?, max_matrices()?)
        }
        Command::Interval { name, k, max_arity, dot } => commands::cmd_interval(&name, k, max_arity, dot.as_deref()),
        Command::Verify { suite } => commands::cmd_verify(&suite),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Internal(_) => 70,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(report.text.as_bytes());
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("postlat: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
