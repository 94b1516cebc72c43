//! Report assembly and rendering.

use gauss_lucas::harness::Verdict;
use gauss_lucas::Complex64;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A point that failed a check or refutes a hypothesis.
#[derive(Clone, Debug)]
pub struct Witness {
    pub point: Vec<Complex64>,
    pub residual: Option<f64>,
    pub signed_distance: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub degenerate: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub tol: f64,
    pub verdict: Verdict,
    pub details: Value,
    pub witnesses: Vec<Witness>,
    pub counts: Counts,
}

impl Report {
    pub fn new(command: &str, seed: u64, tol: f64) -> Self {
        Report {
            command: command.to_string(),
            seed,
            tol,
            verdict: Verdict::Pass,
            details: Value::Object(Map::new()),
            witnesses: Vec::new(),
            counts: Counts::default(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "seed": self.seed,
            "tol": self.tol,
            "verdict": self.verdict.as_str(),
            "details": self.details,
            "witnesses": self.witnesses.iter().map(|w| json!({
                "point": points(&w.point),
                "residual": w.residual,
                "signed_distance": w.signed_distance,
            })).collect::<Vec<_>>(),
            "counts": {
                "pass": self.counts.pass,
                "fail": self.counts.fail,
                "degenerate": self.counts.degenerate,
            },
        })
    }

    pub fn render(&self, format: Format) -> String {
        let value = self.to_json();
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("values are serializable");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut lines = Vec::new();
                flatten("", &value, &mut lines);
                let mut s = lines.join("\n");
                s.push('\n');
                s
            }
        }
    }
}

pub fn complex(c: Complex64) -> Value {
    json!([c.re, c.im])
}

pub fn points(z: &[Complex64]) -> Value {
    Value::Array(z.iter().map(|&c| complex(c)).collect())
}

/// One `key: value` line per scalar, keys joined with dots.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<String>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            if map.is_empty() && !prefix.is_empty() {
                out.push(format!("{prefix}: {{}}"));
            }
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(_) if is_compact(value) => out.push(format!("{prefix}: {value}")),
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}

/// Arrays without objects inside stay on one line.
fn is_compact(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(is_compact),
        _ => true,
    }
}
