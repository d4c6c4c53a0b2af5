use serde_json::{json, Map, Value};

use crate::io::Loaded;
use crate::rational::{self, Rational};

/// One checked claim. A failed assertion always carries a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

/// Everything one command produced, in the order it was produced.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    /// `(path, sha256)` of every file read.
    pub inputs: Vec<(String, String)>,
    pub results: Map<String, Value>,
    pub assertions: Vec<Assertion>,
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn input(&mut self, loaded: &Loaded) {
        self.inputs.push((loaded.path.display().to_string(), loaded.sha256.clone()));
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    /// Records `Ok(evidence)` as a pass and `Err(witness)` as a failure.
    pub fn check(&mut self, name: impl Into<String>, outcome: std::result::Result<Value, Value>) {
        let (pass, witness) = match outcome {
            Ok(v) => (true, v),
            Err(v) => (false, v),
        };
        self.assertions.push(Assertion { name: name.into(), pass, witness });
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> usize {
        self.assertions.iter().filter(|a| !a.pass).count()
    }

    pub fn to_json(&self) -> Value {
        let inputs: Vec<Value> = self.inputs.iter().map(|(p, h)| json!({"path": p, "sha256": h})).collect();
        let assertions: Vec<Value> = self
            .assertions
            .iter()
            .map(|a| json!({"name": a.name, "pass": a.pass, "witness": a.witness}))
            .collect();
        let mut out = json!({
            "command": self.command,
            "inputs": inputs,
            "results": Value::Object(self.results.clone()),
            "assertions": assertions,
            "passed": self.passed(),
        });
        if let Some(ms) = self.elapsed_ms {
            out["timing"] = json!({"elapsed_ms": ms});
        }
        out
    }

    pub fn render_json(&self) -> String {
        crate::io::to_pretty(&self.to_json())
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (p, h) in &self.inputs {
            out += &format!("input: {p} (sha256 {h})\n");
        }
        let mut lines = Vec::new();
        flatten("", &Value::Object(self.results.clone()), &mut lines);
        for l in lines {
            out += &format!("  {l}\n");
        }
        for a in &self.assertions {
            let tag = if a.pass { "PASS" } else { "FAIL" };
            out += &format!("[{tag}] {}", a.name);
            if !a.pass {
                out += &format!("  witness: {}", a.witness);
            }
            out.push('\n');
        }
        if let Some(ms) = self.elapsed_ms {
            out += &format!("elapsed: {ms} ms\n");
        }
        out += &format!(
            "{} of {} assertions passed\n",
            self.assertions.len() - self.failures(),
            self.assertions.len()
        );
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => out.push(format!("{prefix} = {v}")),
    }
}

/// Rational formatting for reports. With `approx` every number also gets a
/// decimal reading that is explicitly marked as not authoritative.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fmt {
    pub approx: bool,
}

impl Fmt {
    pub fn q(&self, r: &Rational) -> Value {
        if self.approx {
            json!({"exact": rational::format(r), "approx_non_authoritative": rational::approx(r)})
        } else {
            Value::String(rational::format(r))
        }
    }

    pub fn qs(&self, v: &[Rational]) -> Value {
        if self.approx {
            Value::Array(v.iter().map(|r| self.q(r)).collect())
        } else {
            json!(rational::format_vec(v))
        }
    }

    pub fn opt(&self, r: &Option<Rational>) -> Value {
        r.as_ref().map_or(Value::Null, |r| self.q(r))
    }
}

/// Rationals as strings regardless of `--approx`; used in witnesses.
pub fn exact(v: &[Rational]) -> Value {
    json!(rational::format_vec(v))
}
