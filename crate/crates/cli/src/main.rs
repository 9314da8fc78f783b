use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = conical_cli::Cli::parse();
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match conical_cli::run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
