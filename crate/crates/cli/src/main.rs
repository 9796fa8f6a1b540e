mod args;
mod commands;
mod pool;

use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(a) => commands::run(a),
        Command::Batch(a) => commands::batch(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Theory(a) => commands::theory(a),
    };
    match result {
        Ok(()) => {}
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}
