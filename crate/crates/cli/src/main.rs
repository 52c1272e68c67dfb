mod args;
mod commands;
mod functions;
mod output;

use clap::Parser;

use args::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Scan(a) => commands::scan(a),
        Command::Verify(a) => commands::verify(a),
        Command::OracleCompare(a) => commands::oracle_compare(a),
    };
    let code = match outcome {
        Ok(exit) => exit as i32,
        Err(f) => {
            eprintln!("kbessel: {}", f.message);
            f.exit as i32
        }
    };
    std::process::exit(code);
}
