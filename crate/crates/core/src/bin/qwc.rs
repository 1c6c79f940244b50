use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use qwc::cli::{error_kind, execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let rendered = e.render().to_string();
            let mut lines = rendered.lines();
            let head = lines.next().unwrap_or_default();
            eprintln!("qwc-error: usage: {}", head.trim_start_matches("error: "));
            let rest: Vec<&str> = lines.collect();
            for line in &rest {
                eprintln!("{line}");
            }
            if !rest.iter().any(|l| l.starts_with("Usage:")) {
                eprintln!("{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qwc-error: {}: {}", error_kind(&e), e.to_string().replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
