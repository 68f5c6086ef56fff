//! `transfin`: query front end for ordinals, lexicographic sequences, trees
//! and the explicit order isomorphisms.
//!
//! Exit status is 0 on success, 1 for a domain error reported by the
//! library, 2 for malformed input.

mod commands;
mod input;

use std::panic;
use std::process::ExitCode;

use clap::Parser;

use commands::{Cli, Out};

#[derive(Debug)]
pub enum CliError {
    Lib(transfin::Error),
    /// Unreadable input file or stdin.
    Input(String),
}

impl From<transfin::Error> for CliError {
    fn from(e: transfin::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(e) if !e.is_parse() => 1,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
        }
    }
}

fn render(cli: &Cli, out: &Out) -> String {
    if cli.json {
        let mut obj = serde_json::Map::new();
        obj.insert("result".into(), out.json.clone());
        if let Some(t) = &out.trace_json {
            obj.insert("trace".into(), t.clone());
        }
        if !out.notes.is_empty() {
            obj.insert("notes".into(), out.notes.clone().into());
        }
        return serde_json::Value::Object(obj).to_string();
    }
    let mut s = out.text.clone();
    if let Some(t) = &out.trace_text {
        s.push('\n');
        s.push_str(t.trim_end());
    }
    for n in &out.notes {
        s.push_str("\nnote: ");
        s.push_str(n);
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Library invariants should never fail, but a panic must still end as
    // a diagnostic and not as an abort trace.
    panic::set_hook(Box::new(|_| {}));
    match panic::catch_unwind(|| commands::run(&cli)) {
        Ok(Ok(out)) => {
            println!("{}", render(&cli, &out));
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": e.to_string(), "code": e.code() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(1)
        }
    }
}
