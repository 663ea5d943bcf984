use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;
use ybe_core::{Document, Error};

/// Failure of a command. `Usage` covers bad flags and unreadable or
/// malformed input; `Invalid` means the input was understood but fails a check.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Invalid(_) => ExitCode::from(1),
            CliError::Usage(_) => ExitCode::from(2),
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::MalformedDocument(_)
            | Error::MalformedTable(_)
            | Error::NotAPermutation(_)
            | Error::DegreeMismatch { .. }
            | Error::DegreeTooLarge(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

/// All documents from every `--in` source, in order. `-` reads stdin.
pub fn read_documents(sources: &[String]) -> CliResult<Vec<Document>> {
    let mut docs = Vec::new();
    for src in sources {
        let text = if src == "-" {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
            buf
        } else {
            fs::read_to_string(src).map_err(|e| CliError::Usage(format!("reading {src}: {e}")))?
        };
        let parsed = ybe_core::parse_documents(&text).map_err(|e| CliError::Usage(format!("{src}: {e}")))?;
        if parsed.is_empty() {
            return usage(format!("{src}: no documents"));
        }
        docs.extend(parsed);
    }
    Ok(docs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Writes records to the `--out` target, one JSON object per line or a
/// plain-text rendering with `--format table`.
pub struct Emitter {
    out: Box<dyn Write>,
    format: Format,
}

impl Emitter {
    pub fn new(target: Option<&str>, format: Format) -> CliResult<Emitter> {
        let out: Box<dyn Write> = match target {
            None | Some("-") => Box::new(io::stdout().lock()),
            Some(path) => Box::new(
                fs::File::create(path).map_err(|e| CliError::Usage(format!("creating {path}: {e}")))?,
            ),
        };
        Ok(Emitter { out, format })
    }

    pub fn emit<T: Serialize>(&mut self, record: &T) -> CliResult {
        let value = serde_json::to_value(record).expect("records serialize");
        let text = match self.format {
            Format::Json => serde_json::to_string(&value).expect("values serialize"),
            Format::Table => render_table(&value),
        };
        writeln!(self.out, "{text}").map_err(write_error)
    }

    pub fn finish(mut self) -> CliResult {
        self.out.flush().map_err(write_error)
    }
}

/// A closed downstream pipe ends the run quietly, like `head` expects.
fn write_error(e: io::Error) -> CliError {
    if e.kind() == io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    CliError::Usage(format!("writing output: {e}"))
}

fn render_grid(rows: &[Value]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.as_array().map(|r| r.iter().map(|v| v.to_string()).collect()).unwrap_or_default())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let index_width = rows.len().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for (x, row) in cells.iter().enumerate() {
        out.push_str(&format!("{x:>index_width$} |"));
        for c in row {
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
    }
    out.pop();
    out
}

fn render_table(value: &Value) -> String {
    let grid = |key: &str| value.get(key).and_then(Value::as_array).map(|rows| render_grid(rows));
    match value.get("kind").and_then(Value::as_str) {
        Some("cycle_set") => grid("table").unwrap_or_default(),
        Some("solution") => format!(
            "lambda\n{}\nrho\n{}",
            grid("lam").unwrap_or_default(),
            grid("rho").unwrap_or_default()
        ),
        _ => match value.as_object() {
            Some(obj) => obj
                .iter()
                .map(|(k, v)| match v {
                    Value::Object(_) | Value::Array(_) => format!("{k}: {v}"),
                    Value::String(s) => format!("{k}: {s}"),
                    other => format!("{k}: {other}"),
                })
                .collect::<Vec<_>>()
                .join("\n"),
            None => value.to_string(),
        },
    }
}

/// Parses `1,0,2`-style lists.
pub fn parse_list(text: &str, flag: &str) -> CliResult<Vec<u64>> {
    text.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::Usage(format!("{flag}: cannot parse {t:?}"))))
        .collect()
}
