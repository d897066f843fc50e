//! Command reports and their JSON and text renderings.

use serde_json::{json, Map, Value};

use birec_core::birecurrence::WordSet;
use birec_core::linalg::QMatrix;
use birec_core::series::LinearRepresentation;
use birec_core::{format_rational, Alphabet, Dfa, Nfa, Rational, Word};

/// Outcome of one command. Contains no timing, so identical invocations
/// render identically.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub result: Value,
    /// Named invariant checks run alongside the command.
    pub checks: Vec<Check>,
    /// Human-readable body.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        Report { command: command.into(), inputs, result: Value::Null, checks: Vec::new(), text: String::new() }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), ok });
    }

    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// Field of the result object, `Null` when absent.
    pub fn get(&self, key: &str) -> &Value {
        self.result.get(key).unwrap_or(&Value::Null)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self.checks.iter().map(|c| json!({"name": c.name, "ok": c.ok})).collect();
        json!({"command": self.command, "inputs": self.inputs, "result": self.result, "checks": checks})
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("reports are plain JSON values") + "\n"
    }

    pub fn render_text(&self) -> String {
        let mut s = self.text.clone();
        if !s.is_empty() && !s.ends_with('\n') {
            s.push('\n');
        }
        for c in &self.checks {
            s.push_str(&format!("check {}: {}\n", c.name, if c.ok { "ok" } else { "FAILED" }));
        }
        s
    }
}

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn word(alphabet: &Alphabet, w: &Word) -> Value {
    Value::String(alphabet.render(w))
}

pub fn words(alphabet: &Alphabet, ws: &[Word]) -> Value {
    Value::Array(ws.iter().map(|w| word(alphabet, w)).collect())
}

/// A finite set as its word list, an infinite one as `"infinite"`.
pub fn word_set(alphabet: &Alphabet, ws: &WordSet) -> Value {
    match ws {
        WordSet::Finite(v) => words(alphabet, v),
        WordSet::Infinite(_) => Value::String("infinite".into()),
    }
}

pub fn state_set(labels: &[String], set: &[usize]) -> Value {
    Value::Array(set.iter().map(|&p| Value::String(labels[p].clone())).collect())
}

pub fn dfa(d: &Dfa) -> Value {
    let labels = d.labels();
    let mut trans = Vec::new();
    for p in 0..d.num_states() {
        for a in 0..d.alphabet().size() {
            if let Some(q) = d.next(p, a) {
                trans.push(json!([labels[p], d.alphabet().token(a), labels[q]]));
            }
        }
    }
    json!({
        "alphabet": d.alphabet().tokens(),
        "states": labels,
        "initial": d.initial().map(|i| labels[i].clone()),
        "final": state_set(labels, &d.terminals()),
        "transitions": trans,
    })
}

pub fn nfa(d: &Nfa) -> Value {
    let labels = d.labels();
    let trans: Vec<Value> =
        d.transitions().into_iter().map(|(p, a, q)| json!([labels[p], d.alphabet().token(a), labels[q]])).collect();
    json!({
        "alphabet": d.alphabet().tokens(),
        "states": labels,
        "initial": state_set(labels, &d.initials()),
        "final": state_set(labels, &d.terminals()),
        "transitions": trans,
    })
}

pub fn matrix(m: &QMatrix) -> Value {
    Value::Array((0..m.num_rows()).map(|i| rationals(m.row(i))).collect())
}

/// Mirrors the representation file: `dim`, `lambda`, `gamma`, one matrix per letter.
pub fn representation(r: &LinearRepresentation) -> Value {
    let mut mats = Map::new();
    for a in 0..r.alphabet().size() {
        mats.insert(r.alphabet().token(a).to_string(), matrix(r.mu(a)));
    }
    json!({
        "alphabet": r.alphabet().tokens(),
        "dim": r.dim(),
        "lambda": rationals(r.lambda()),
        "gamma": rationals(r.gamma()),
        "matrices": mats,
    })
}

/// `{a, ba}` style rendering of a word list.
pub fn braces(alphabet: &Alphabet, ws: &[Word]) -> String {
    format!("{{{}}}", ws.iter().map(|w| alphabet.render(w)).collect::<Vec<_>>().join(", "))
}

pub fn braces_set(alphabet: &Alphabet, ws: &WordSet) -> String {
    match ws {
        WordSet::Finite(v) => braces(alphabet, v),
        WordSet::Infinite(_) => "infinite".into(),
    }
}
