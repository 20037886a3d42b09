use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use rescurv_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => std::io::stdout().write_all(outcome.output.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
