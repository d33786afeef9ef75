//! Schema-versioned JSON run records emitted by the CLI.

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever the record layout changes; mirrored in
/// `schema/run_record.schema.json` at the repository root.
pub const SCHEMA_VERSION: &str = "1";

/// Envelope for every CLI invocation: each emitted number is traceable to
/// the full parameter echo it was produced from.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub schema_version: String,
    pub subcommand: String,
    pub library_version: String,
    pub parameters: Value,
    pub timings_ms: f64,
    pub results: Value,
}

impl RunRecord {
    pub fn new(subcommand: &str, parameters: Value, results: Value, timings_ms: f64) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            subcommand: subcommand.to_string(),
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            parameters,
            timings_ms,
            results,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialization cannot fail")
    }
}

/// Structural validation against the shipped schema (required fields and
/// types). Used by tests and available to downstream consumers.
pub fn validate_record(value: &Value) -> Result<(), String> {
    let obj = value.as_object().ok_or("record must be a JSON object")?;
    for key in [
        "schema_version",
        "subcommand",
        "library_version",
        "parameters",
        "timings_ms",
        "results",
    ] {
        if !obj.contains_key(key) {
            return Err(format!("missing required field '{key}'"));
        }
    }
    if !obj["schema_version"].is_string() {
        return Err("schema_version must be a string".into());
    }
    if !obj["subcommand"].is_string() {
        return Err("subcommand must be a string".into());
    }
    if !obj["library_version"].is_string() {
        return Err("library_version must be a string".into());
    }
    if !obj["timings_ms"].is_number() {
        return Err("timings_ms must be a number".into());
    }
    if !obj["parameters"].is_object() {
        return Err("parameters must be an object".into());
    }
    Ok(())
}
