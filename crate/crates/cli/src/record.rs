//! The JSON envelope every command prints.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Bumped whenever the shape of `outputs` changes for any command.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub artifact_version: String,
    /// Canonical invocation, replayable in a POSIX shell.
    pub command: String,
    /// The same invocation as an argument vector (without the program name).
    pub argv: Vec<String>,
    pub inputs: Map<String, Value>,
    pub outputs: Value,
    /// `"hit"` or `"miss"` for cached commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
    pub timestamp: String,
}

/// Canonical arguments for one invocation: the subcommand path, then
/// `--flag value` pairs in a fixed order. Every result-affecting parameter,
/// including values resolved from configuration, is spelled out.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Invocation {
    pub path: Vec<String>,
    pub positional: Vec<(String, String)>,
    pub flags: Vec<(String, Value)>,
}

impl Invocation {
    pub fn new(path: &[&str]) -> Self {
        Invocation { path: path.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn positional(mut self, name: &str, value: impl Into<String>) -> Self {
        self.positional.push((name.to_string(), value.into()));
        self
    }

    pub fn flag(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.flags.push((name.to_string(), value.into()));
        self
    }

    pub fn argv(&self) -> Vec<String> {
        let mut out = self.path.clone();
        for (name, value) in &self.flags {
            match value {
                Value::Bool(true) => out.push(format!("--{name}")),
                Value::Bool(false) | Value::Null => {}
                Value::String(s) => out.extend([format!("--{name}"), s.clone()]),
                other => out.extend([format!("--{name}"), other.to_string()]),
            }
        }
        out.extend(self.positional.iter().map(|(_, v)| v.clone()));
        out
    }

    pub fn inputs(&self) -> Map<String, Value> {
        let pos = self.positional.iter().map(|(n, v)| (n.clone(), Value::String(v.clone())));
        pos.chain(self.flags.iter().filter(|(_, v)| !v.is_null()).cloned()).collect()
    }

    pub fn command(&self) -> String {
        let mut parts = vec!["treefrac".to_string()];
        parts.extend(self.argv().iter().map(|a| shell_quote(a)));
        parts.join(" ")
    }

    pub fn record(&self, outputs: Value, cache: Option<&str>) -> RunRecord {
        RunRecord {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            command: self.command(),
            argv: self.argv(),
            inputs: self.inputs(),
            outputs,
            cache: cache.map(str::to_string),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

fn shell_quote(s: &str) -> String {
    let plain = !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "-_./,=:+".contains(c));
    if plain {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', r"'\''"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let inv = Invocation::new(&["dim", "lower"]).flag("A", 110).flag("s", 0.775).flag("interval", false);
        assert_eq!(inv.argv(), ["dim", "lower", "--A", "110", "--s", "0.775"]);
        let cf = Invocation::new(&["cf"]).flag("eval", "[0;2,1,2,1]");
        assert_eq!(cf.command(), "treefrac cf --eval '[0;2,1,2,1]'");
        let pos = Invocation::new(&["cf"]).positional("value", "4/11");
        assert_eq!(pos.argv(), ["cf", "4/11"]);
        assert_eq!(pos.inputs()["value"], "4/11");
    }
}
