use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use paveset_cli::commands::{run, Cli, Output};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let name = cli.command.name();
    let mut stdout = std::io::stdout().lock();
    match run(&cli.command) {
        Ok(Output::Document(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Output::Report(outcome)) => {
            let text = if cli.json { outcome.to_json(name) } else { outcome.to_text() };
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            if cli.json {
                let kind = if e.exit_code() == 3 { "usage" } else { "invalid" };
                let report = serde_json::json!({
                    "command": name,
                    "error": { "kind": kind, "message": e.to_string() },
                    "schema_version": paveset_cli::report::SCHEMA_VERSION,
                });
                let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
