use std::process::ExitCode;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// A finished command: whether the property holds, the human-readable
/// report, and the fields of the structured record.
pub struct Outcome {
    pub holds: bool,
    pub text: String,
    pub fields: Map<String, Value>,
}

impl Outcome {
    pub fn new(holds: bool, text: impl Into<String>) -> Self {
        Self {
            holds,
            text: text.into(),
            fields: Map::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl serde::Serialize) -> Self {
        self.fields
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }
}

/// Usage, parse and capacity errors.
pub struct Failure {
    pub message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { message: e.to_string() }
    }
}

pub fn emit(command: &str, format: Format, result: Result<Outcome, Failure>) -> ExitCode {
    match result {
        Ok(o) => {
            match format {
                Format::Text => print!("{}", o.text),
                Format::Json => {
                    let mut record = Map::new();
                    record.insert("command".into(), json!(command));
                    record.insert("status".into(), json!(if o.holds { "holds" } else { "fails" }));
                    record.extend(o.fields);
                    println!("{}", Value::Object(record));
                }
            }
            ExitCode::from(if o.holds { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if format == Format::Json {
                println!("{}", json!({"command": command, "status": "error", "error": f.message}));
            }
            ExitCode::from(2)
        }
    }
}
