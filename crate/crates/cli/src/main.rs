//! `quadrance`: batch verifications and constructions with JSON, TSV or
//! text reports.
//!
//! Exit codes: 0 all checks passed or construction feasible, 1 a
//! verified-false result, 2 invalid input, 3 usage error.

mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Format};
use run::{execute, CliError, Outcome};

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
    match run(&cli) {
        Ok(passed) => ExitCode::from(if passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            if n == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            b = b.num_threads(n);
        }
        b.build().map_err(|e| CliError::Usage(e.to_string()))?
    };
    let start = Instant::now();
    let outcome = pool.install(|| execute(&cli.command, cli.format, cli.allow_large))?;
    let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    let passed = outcome.passed;
    let body = render(cli, outcome, elapsed);
    match &cli.output {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(passed)
}

fn envelope(cli: &Cli, outcome: Outcome, elapsed: Option<f64>) -> Map<String, Value> {
    let mut notes = outcome.notes;
    let mut doc = Map::new();
    if let Value::Object(result) = outcome.result {
        for (k, v) in result {
            doc.insert(k, v);
        }
    }
    if let Some(Value::Array(extra)) = doc.remove("notes") {
        notes.extend(
            extra
                .into_iter()
                .filter_map(|v| v.as_str().map(String::from)),
        );
    }
    notes.dedup();
    doc.insert("tool".into(), json!("quadrance"));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert(
        "config".into(),
        serde_json::to_value(cli).expect("config serializes"),
    );
    doc.insert(
        "field".into(),
        serde_json::to_value(&outcome.field).expect("field serializes"),
    );
    doc.insert("passed".into(), json!(outcome.passed));
    doc.insert("wall_time_ms".into(), json!(elapsed));
    doc.insert("notes".into(), json!(notes));
    doc
}

fn render(cli: &Cli, mut outcome: Outcome, elapsed: Option<f64>) -> String {
    match cli.format {
        Format::Tsv => outcome.tsv.take().unwrap_or_default(),
        Format::Json => {
            let doc = envelope(cli, outcome, elapsed);
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            s.push('\n');
            s
        }
        Format::Text => {
            let doc = envelope(cli, outcome, elapsed);
            let mut s = String::new();
            for (k, v) in &doc {
                match v {
                    Value::Array(items) if k == "notes" => {
                        s.push_str("notes:\n");
                        for n in items {
                            s.push_str(&format!("  - {}\n", n.as_str().unwrap_or_default()));
                        }
                    }
                    Value::String(text) => s.push_str(&format!("{k}: {text}\n")),
                    other => s.push_str(&format!("{k}: {other}\n")),
                }
            }
            s
        }
    }
}
