//! Command-line surface: argument parsing, dispatch and the JSON envelope.
//!
//! [`run`] never touches stdout or the process exit status; the binary prints
//! [`Invocation::output`] and exits with [`Invocation::exit_code`].

mod args;
mod commands;

use clap::Parser;
use serde::Serialize;
use serde_json::Value;

pub use args::Cli;

pub const SCHEMA: &str = "charvar/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub schema: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
    pub diagnostics: Vec<String>,
}

impl CommandResult {
    fn ok(payload: Value, diagnostics: Vec<String>) -> Self {
        CommandResult { schema: SCHEMA, status: Status::Ok, payload: Some(payload), diagnostics }
    }

    fn error(diagnostics: Vec<String>) -> Self {
        CommandResult { schema: SCHEMA, status: Status::Error, payload: None, diagnostics }
    }
}

/// Why a command did not produce a payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Bad flags, values or input files; exit code 2.
    Usage(String),
    /// The computation rejected its input; exit code 1.
    Domain { name: &'static str, message: String },
}

impl Failure {
    fn domain(name: &'static str, message: impl ToString) -> Self {
        Failure::Domain { name, message: message.to_string() }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain { .. } => 1,
        }
    }

    fn diagnostic(&self) -> String {
        match self {
            Failure::Usage(msg) => format!("usage: {msg}"),
            Failure::Domain { name, message } => format!("{name}: {message}"),
        }
    }
}

/// Successful command output before rendering.
pub(crate) struct Report {
    pub payload: Value,
    pub text: String,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Invocation {
    pub result: CommandResult,
    pub exit_code: i32,
    /// What the binary prints: the JSON envelope with `--json`, otherwise
    /// human-readable text (or clap's help).
    pub output: String,
    /// Whether `output` belongs on stderr.
    pub to_stderr: bool,
}

pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let wants_json = argv.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Invocation {
                    result: CommandResult::ok(Value::Null, Vec::new()),
                    exit_code: 0,
                    output: e.render().to_string(),
                    to_stderr: false,
                };
            }
            let message = e.render().to_string();
            let message = message.trim_end().strip_prefix("error: ").unwrap_or(message.trim_end());
            let failure = Failure::Usage(message.to_string());
            return finish(Err(failure), wants_json);
        }
    };
    let json = cli.json;
    finish(commands::dispatch(cli), json)
}

fn finish(outcome: Result<Report, Failure>, json: bool) -> Invocation {
    match outcome {
        Ok(report) => {
            let result = CommandResult::ok(report.payload, report.diagnostics);
            let output = if json {
                envelope(&result)
            } else {
                let mut text = report.text;
                for d in &result.diagnostics {
                    text.push_str(&format!("note: {d}\n"));
                }
                text
            };
            Invocation { result, exit_code: 0, output, to_stderr: false }
        }
        Err(failure) => {
            let exit_code = failure.exit_code();
            let result = CommandResult::error(vec![failure.diagnostic()]);
            let output = if json {
                envelope(&result)
            } else {
                match &failure {
                    Failure::Usage(msg) => format!("error: {msg}\n"),
                    Failure::Domain { name, message } => format!("error[{name}]: {message}\n"),
                }
            };
            Invocation { result, exit_code, output, to_stderr: !json }
        }
    }
}

fn envelope(result: &CommandResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("envelope serializes");
    s.push('\n');
    s
}
