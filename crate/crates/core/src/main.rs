use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use pzf::cli::{error_line, run, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let text = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            let text = text.strip_prefix("error: ").unwrap_or(&text);
            eprintln!("{}", error_line("config", 2, text));
            return ExitCode::from(2);
        }
    };
    match RunConfig::from_cli(cli).and_then(|cfg| run(&cfg)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            eprintln!("{}", error_line(e.kind(), code, &e.to_string()));
            ExitCode::from(code as u8)
        }
    }
}
