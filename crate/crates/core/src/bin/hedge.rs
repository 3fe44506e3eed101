use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hedge::cli::{exit_code, run, Cli, OUTPUT_DIR_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bytes = match run(&cli.command) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let written = match cli.output {
        Some(path) => {
            let path = match std::env::var_os(OUTPUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path,
            };
            std::fs::write(path, &bytes)
        }
        None => std::io::stdout().write_all(&bytes),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(4)
        }
    }
}
