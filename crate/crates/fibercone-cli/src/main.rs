//! `fibercone` command-line front end: reads JSON job descriptions, runs the
//! calculator, writes canonical JSON results.

mod run;
mod schema;

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;

/// Exact nef-cone and Seshadri-constant calculator for fiber products of two
/// projective bundles over a smooth curve.
///
/// Reads a single JSON job object, or a JSON list of jobs (batch mode), and
/// emits one result document per job. Exit codes: 0 success, 2 parse error,
/// 3 validation error, 4 hypothesis error, 5 internal inconsistency.
#[derive(Debug, Parser)]
#[command(name = "fibercone", version)]
struct Cli {
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,

    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    output: String,

    /// Pretty-print the output document.
    #[arg(long)]
    pretty: bool,

    /// Seed for commands with randomized self-tests (pairing trials).
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Cap on the bundle ranks accepted in space descriptions.
    #[arg(long, default_value_t = fibercone::DEFAULT_MAX_RANK)]
    max_rank: u32,
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin().read_to_string(&mut buffer)?;
        Ok(buffer)
    } else {
        std::fs::read_to_string(path)
    }
}

fn write_output(path: &str, payload: &str) -> std::io::Result<()> {
    if path == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(payload.as_bytes())?;
        stdout.write_all(b"\n")
    } else {
        std::fs::write(path, format!("{payload}\n"))
    }
}

fn io_failure(context: &str, err: &std::io::Error) -> ExitCode {
    eprintln!("{{\"error_kind\":\"io\",\"message\":\"{context}: {err}\"}}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match read_input(&cli.input) {
        Ok(text) => text,
        Err(err) => return io_failure("reading input", &err),
    };

    let options = run::Options {
        seed: cli.seed,
        max_rank: cli.max_rank,
    };
    let outcome = run::run_text(&text, &options);

    let rendered = if cli.pretty {
        serde_json::to_string_pretty(&outcome.document)
    } else {
        serde_json::to_string(&outcome.document)
    }
    .expect("result documents always serialize");

    if let Err(err) = write_output(&cli.output, &rendered) {
        return io_failure("writing output", &err);
    }
    for (path, document) in &outcome.side_outputs {
        let rendered = if cli.pretty {
            serde_json::to_string_pretty(document)
        } else {
            serde_json::to_string(document)
        }
        .expect("result documents always serialize");
        if let Err(err) = write_output(path, &rendered) {
            return io_failure("writing job output", &err);
        }
    }
    ExitCode::from(outcome.exit_code)
}
