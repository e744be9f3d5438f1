//! Machine-readable results. The text view is rendered from the JSON value.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unstable,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn pass_with(name: impl Into<String>, note: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Pass,
            witness: Some(note.into()),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn unstable(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: Status::Unstable,
            witness: Some(witness.into()),
        }
    }

    /// Passes when `failure` is `None`.
    pub fn from_witness(name: impl Into<String>, failure: Option<String>) -> Self {
        match failure {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }

    /// Maps an error to `unstable` for bound problems and `fail` otherwise.
    pub fn from_error(name: impl Into<String>, e: &Error) -> Self {
        match e {
            Error::Unstable(_) | Error::DegreeBoundExceeded { .. } => Self::unstable(name, e.to_string()),
            _ => Self::fail(name, e.to_string()),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn results(mut self, v: impl Serialize) -> Self {
        self.results = serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {}", e)));
        self
    }

    pub fn check(mut self, c: CheckResult) -> Self {
        self.checks.push(c);
        self
    }

    /// No check failed. Unstable checks do not count as failures.
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: e.column(),
            expected: "a report".into(),
            found: e.to_string(),
        })
    }

    /// Human-readable view, rendered from the JSON form.
    pub fn render(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        let _ = writeln!(out, "{}", v["command"].as_str().unwrap_or("?"));
        if let Some(m) = v["inputs"].as_object() {
            for (k, x) in m {
                let _ = writeln!(out, "  {} = {}", k, x.as_str().unwrap_or_default());
            }
        }
        if !v["results"].is_null() {
            render_value(&v["results"], 1, &mut out);
        }
        if let Some(cs) = v["checks"].as_array() {
            for c in cs {
                let status = c["status"].as_str().unwrap_or("?").to_uppercase();
                let _ = write!(out, "[{}] {}", status, c["name"].as_str().unwrap_or("?"));
                if let Some(w) = c["witness"].as_str() {
                    let _ = write!(out, ": {}", w);
                }
                out.push('\n');
            }
        }
        out
    }
}

fn render_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || (x.is_array() && !is_flat(x)) {
                    let _ = writeln!(out, "{}{}:", pad, k);
                    render_value(x, depth + 1, out);
                } else {
                    let _ = writeln!(out, "{}{}: {}", pad, k, scalar_text(x));
                }
            }
        }
        Value::Array(xs) if !is_flat(v) => {
            for x in xs {
                if x.is_object() || x.is_array() {
                    let _ = writeln!(out, "{}-", pad);
                    render_value(x, depth + 1, out);
                } else {
                    let _ = writeln!(out, "{}- {}", pad, scalar_text(x));
                }
            }
        }
        x => {
            let _ = writeln!(out, "{}{}", pad, scalar_text(x));
        }
    }
}

fn is_flat(v: &Value) -> bool {
    v.as_array()
        .is_some_and(|xs| xs.len() <= 8 && xs.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let r = Report::new("demo")
            .input("n", 2)
            .results(serde_json::json!({"dims": [1, 1, 2], "note": "x"}))
            .check(CheckResult::pass("a"))
            .check(CheckResult::fail("b", "det = 0 at (1,0)"))
            .check(CheckResult::unstable("c", "bound"));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!r.ok());
        let text = r.render();
        assert!(text.contains("[FAIL] b: det = 0 at (1,0)"));
        assert!(text.contains("dims: [1, 1, 2]"));
    }

    #[test]
    fn unstable_is_not_failure() {
        let r = Report::new("x").check(CheckResult::unstable("c", "bound"));
        assert!(r.ok());
        let e = Error::Unstable("dims differ".into());
        assert_eq!(CheckResult::from_error("w", &e).status, Status::Unstable);
    }
}
