use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub location: String,
    pub ok: bool,
    pub details: String,
}

impl CheckEntry {
    pub fn new(
        name: &str,
        location: impl Into<String>,
        ok: bool,
        details: impl Into<String>,
    ) -> Self {
        CheckEntry {
            name: name.into(),
            location: location.into(),
            ok,
            details: details.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub millis: u128,
}

/// Outcome of one command.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Input name to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<CheckEntry>,
    pub results: Value,
    /// Only filled with `--timing`, so default reports are reproducible.
    pub timing: Option<Timing>,
}

impl RunReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        canonical(&serde_json::to_value(self).expect("reports serialize"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (name, h) in &self.inputs {
            let _ = writeln!(out, "input: {name} sha256={h}");
        }
        for c in &self.checks {
            let mark = if c.ok { "ok" } else { "FAIL" };
            let _ = write!(out, "[{mark}] {} @ {}", c.name, c.location);
            if !c.details.is_empty() {
                let _ = write!(out, ": {}", c.details);
            }
            out.push('\n');
        }
        if let Value::Object(m) = &self.results {
            let sorted: BTreeMap<_, _> = m.iter().collect();
            for (k, v) in sorted {
                let _ = writeln!(out, "{k}: {}", canonical_compact(v));
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "time: {} ms", t.millis);
        }
        let _ = writeln!(out, "status: {}", if self.ok() { "ok" } else { "failed" });
        out
    }
}

fn sort(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let sorted: BTreeMap<&String, Value> = m.iter().map(|(k, v)| (k, sort(v))).collect();
            Value::Object(sorted.into_iter().map(|(k, v)| (k.clone(), v)).collect())
        }
        Value::Array(a) => Value::Array(a.iter().map(sort).collect()),
        x => x.clone(),
    }
}

pub fn canonical(v: &Value) -> String {
    serde_json::to_string_pretty(&sort(v)).expect("json values print")
}

fn canonical_compact(v: &Value) -> String {
    serde_json::to_string(&sort(v)).expect("json values print")
}

/// Machine-readable failure object.
pub fn error_json(command: &str, e: &Error) -> String {
    let v = serde_json::json!({
        "command": command,
        "error": { "kind": e.kind(), "message": e.to_string() },
    });
    canonical(&v)
}
