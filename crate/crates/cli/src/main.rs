use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rpog_core::Error;

mod commands;

use commands::{CheckKind, Output, RunConfig};

/// Right-preordered groups: verdicts, examples and census.
#[derive(Parser, Debug)]
#[command(name = "rpog", version, about)]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Sample count for symbolic checks.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,

    /// Largest finite carrier accepted.
    #[arg(long = "max-order", global = true, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..))]
    max_order: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an object and check its structural axioms.
    Validate { file: PathBuf },
    /// Run one property check.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        file: PathBuf,
        /// Second operand for action-rep, smith and huq.
        file2: Option<PathBuf>,
        /// Fail with exit code 1 unless the verdict is this.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Replay a named example against its recorded expectation (`all` for every one).
    Example { id: String },
    /// Count cones, Schreier points, internal categories and groupoids.
    Census { n: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Expect {
    Yes,
    No,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_OTHER: u8 = 4;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::UnknownName(_) => EXIT_PARSE,
        Error::Guard { .. } => EXIT_GUARD,
        _ => EXIT_OTHER,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        seed: cli.seed,
        samples: cli.samples as usize,
        max_order: cli.max_order as usize,
    };
    let result = match &cli.command {
        Command::Validate { file } => commands::validate(file, &cfg),
        Command::Check { kind, file, file2, expect } => {
            commands::check(*kind, file, file2.as_deref(), expect.map(|e| e == Expect::Yes), &cfg)
        }
        Command::Example { id } => commands::example(id, &cfg),
        Command::Census { n } => commands::census(*n, &cfg),
    };
    match result {
        Ok(out) => {
            let text = match cli.format {
                Format::Text => out.to_text(),
                Format::Json => out.to_json(),
            };
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            if out.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(e) => {
            eprintln!("rpog: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

impl Output {
    fn ok(&self) -> bool {
        match self {
            Output::Report(r) => r.matches_expectation(),
            Output::Census(_) => true,
        }
    }
}
