//! `btrack`: batch front end for the calculus engine.

mod args;
mod commands;
mod config;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::{exit_code, remedy, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = config::resolve(&cli.opts).and_then(|cfg| commands::run(&cli.command, &cli.opts, cfg));
    match result {
        Ok(out) => {
            if cli.opts.json {
                println!("{}", serde_json::to_string_pretty(&out.report).expect("reports serialize"));
            } else {
                print!("{}", out.human);
            }
            ExitCode::from(out.exit as u8)
        }
        Err(e) => {
            if cli.opts.json {
                let v = serde_json::json!({ "error": e.name(), "message": e.to_string(), "remedy": remedy(&e) });
                println!("{}", serde_json::to_string_pretty(&v).expect("json value serializes"));
            }
            eprintln!("{}: {e}", e.name());
            eprintln!("remedy: {}", remedy(&e));
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
