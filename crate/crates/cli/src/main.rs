use std::io;
use std::process::ExitCode;

use clap::Parser;
use polarorder_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout();
    match execute(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polarorder: {e}");
            e.exit_code()
        }
    }
}
