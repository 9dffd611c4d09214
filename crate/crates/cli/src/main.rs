use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use espectra_cli::{configure_threads, run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = configure_threads() {
        eprintln!("{message}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let argv = std::env::args().skip(1).collect();
    let outcome = run(cli, argv);
    if !outcome.stdout.is_empty() {
        // A closed pipe downstream is not an error of ours.
        let _ = writeln!(std::io::stdout(), "{}", outcome.stdout);
    }
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    ExitCode::from(outcome.code as u8)
}
