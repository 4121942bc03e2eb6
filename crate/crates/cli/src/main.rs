mod args;
mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use detachable::mask::HARD_CAP;
use detachable::matroid::DEFAULT_CAP;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] detachable::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn context(self, what: &str) -> CliError {
        CliError::Usage(format!("{what}: {self}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn run(cli: &Cli) -> CliResult<commands::Output> {
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    if cap > HARD_CAP {
        return Err(CliError::Usage(format!("--cap is at most {HARD_CAP}")));
    }
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.get())
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Gen(a) => commands::gen(a, cap),
        Command::Analyze(a) => commands::analyze(a, cap),
        Command::Pairs(a) => commands::pairs(a, cap),
        Command::Classify(a) => commands::classify(a, cap),
        Command::Dual(a) => commands::dual(a, cap),
        Command::Minor(a) => commands::minor(a, cap),
        Command::Verify(a) => commands::verify(a, cap),
        Command::Convert(a) => commands::convert(a, cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().lock().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::from(out.findings))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
