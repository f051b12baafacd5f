use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use opgns_cli::{
    cmd_analyze, cmd_dimcheck, cmd_infocomplete, cmd_random, AnalyzeOptions, CliError, Format,
    Outcome,
};

/// Verify faithful bipartite states and the operator-algebra identities they induce.
#[derive(Debug, Parser)]
#[command(name = "opgns", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a state and run the identity suite on it.
    Analyze {
        /// State file, or `-` for stdin.
        #[arg(default_value = "-")]
        state: PathBuf,
        /// Numerical tolerance for identity residuals.
        #[arg(long)]
        tol: Option<f64>,
        /// Seed for the sampled maps.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a random symmetric faithful state as a state file.
    Random {
        /// Local dimension.
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a minimal informationally complete observable from a pool file.
    Infocomplete {
        /// Pool file, or `-` for stdin.
        #[arg(default_value = "-")]
        pool: PathBuf,
    },
    /// Check the effect and state dimension counts for dimension `dim`.
    Dimcheck { dim: usize },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Analyze { state, tol, seed } => {
            let text = read_input(&state)?;
            cmd_analyze(
                &text,
                &AnalyzeOptions {
                    tol,
                    seed,
                    format: cli.format,
                },
            )
        }
        Command::Random { dim, seed } => cmd_random(dim, seed),
        Command::Infocomplete { pool } => cmd_infocomplete(&read_input(&pool)?, cli.format),
        Command::Dimcheck { dim } => cmd_dimcheck(dim, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("opgns: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
