//! JSON reports and the run manifest.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

/// Bumped whenever a report field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

/// Rounds every float to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
            if let Some(r) = serde_json::Number::from_f64(rounded) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// `{"schema_version": …, "command": …}` followed by the payload's fields.
/// Non-object payloads go under `"result"`.
pub fn envelope<T: Serialize>(command: &str, payload: &T) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), SCHEMA_VERSION.into());
    out.insert("command".into(), command.into());
    match serde_json::to_value(payload).expect("reports serialize") {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("result".into(), other);
        }
    }
    let mut v = Value::Object(out);
    round_floats(&mut v);
    v
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display(), e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path.display(), e))
}

fn unix_seconds() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// What was run and where its outputs went.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    /// None of the commands draw random numbers; kept for schema stability.
    pub seed: Option<u64>,
    pub tool_version: &'static str,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn start<P: Serialize>(command: &str, parameters: &P) -> RunManifest {
        RunManifest {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters: serde_json::to_value(parameters).expect("arguments serialize"),
            seed: None,
            tool_version: env!("CARGO_PKG_VERSION"),
            started_unix: unix_seconds(),
            finished_unix: 0,
            outputs: Vec::new(),
        }
    }

    pub fn finish(&mut self) {
        self.finished_unix = unix_seconds();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn floats_are_rounded_to_twelve_digits() {
        let mut v = serde_json::json!({"x": 1.0 / 3.0, "n": 7, "v": [2.0f64.sqrt()]});
        round_floats(&mut v);
        assert_eq!(v["x"].as_f64().unwrap(), 0.333333333333);
        assert_eq!(v["n"], 7);
        assert_eq!(v["v"][0].as_f64().unwrap(), 1.41421356237);
    }

    #[test]
    fn envelope_puts_version_first() {
        #[derive(Serialize)]
        struct P {
            energy: f64,
        }
        let v = envelope("planar", &P { energy: 12.0 });
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.starts_with("{\"schema_version\":1,\"command\":\"planar\""), "{text}");
    }
}
