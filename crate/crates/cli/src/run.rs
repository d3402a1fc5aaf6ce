//! Command dispatch shared by the binary and the tests.

use serde::Serialize;
use serde_json::json;

use crate::commands::{run_check, run_frame, run_transport};
use crate::error::Result;
use crate::spec::JobSpec;
use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Frame,
    Transport,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Command {
    pub fn default_format(self) -> Format {
        match self {
            Command::Check => Format::Json,
            Command::Frame | Command::Transport => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub body: String,
    /// Lines meant for stderr (the transport summary in CSV mode).
    pub notes: Vec<String>,
    /// 0, or 1 when a check entry failed.
    pub status: i32,
}

fn document(command: Command, body: serde_json::Value) -> String {
    let mut doc = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Some(d), serde_json::Value::Object(b)) = (doc.as_object_mut(), body) {
        d.extend(b);
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("report values serialize");
    s.push('\n');
    s
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn execute(command: Command, spec: &JobSpec, format: Format) -> Result<Output> {
    let mut notes = Vec::new();
    let mut status = 0;
    let body = match (command, format) {
        (Command::Frame, Format::Csv) => run_frame(spec)?.to_csv(),
        (Command::Frame, Format::Json) => document(command, run_frame(spec)?.to_json()),
        (Command::Transport, Format::Csv) => {
            let (table, summary) = run_transport(spec)?;
            notes = summary.lines();
            table.to_csv()
        }
        (Command::Transport, Format::Json) => {
            let (table, summary) = run_transport(spec)?;
            let mut body = table.to_json();
            body["summary"] = serde_json::to_value(summary).expect("summary serializes");
            document(command, body)
        }
        (Command::Check, _) => {
            let report = run_check(spec)?;
            if !report.passed() {
                status = 1;
            }
            match format {
                Format::Json => document(
                    command,
                    json!({ "passed": report.passed(), "entries": report.entries }),
                ),
                Format::Csv => {
                    let mut out = String::from("name,value,tolerance,pass\n");
                    for e in &report.entries {
                        let tol = e.tolerance.map(|t| format!("{t:?}")).unwrap_or_default();
                        out.push_str(&format!(
                            "{},{:?},{},{}\n",
                            csv_quote(&e.name),
                            e.value,
                            tol,
                            u8::from(e.pass)
                        ));
                    }
                    out
                }
            }
        }
    };
    Ok(Output {
        body,
        notes,
        status,
    })
}
