mod args;
mod config;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::run::Output;

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    let err = json!({ "error": { "kind": kind, "message": message }, "version": muldep::VERSION });
    eprintln!("{}", serde_json::to_string_pretty(&err).expect("error objects serialize"));
    ExitCode::from(code)
}

fn exit_code(e: &muldep::Error) -> u8 {
    match e {
        muldep::Error::InvalidInput(_) => 2,
        muldep::Error::Hypothesis(_) => 3,
        muldep::Error::Resource(_) => 4,
    }
}

fn main() -> ExitCode {
    let argv = match config::expand(std::env::args().collect()) {
        Ok(a) => a,
        Err(config::ConfigError(msg)) => return fail("parse_error", &msg, 2),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => return fail("parse_error", e.render().to_string().trim(), 2),
    };
    match run::run(cli) {
        Ok(Output::Json(v)) => {
            let text = serde_json::to_string_pretty(&v).expect("reports serialize");
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            let _ = write!(std::io::stdout().lock(), "{t}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(e.kind(), &e.to_string(), exit_code(&e)),
    }
}
