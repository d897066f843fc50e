//! Subcommands. Each `cmd_*` takes already-read inputs and returns a
//! [`Report`]; [`run`] adds argument parsing, file reading and exit codes.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use birec_core::birecurrence::{self, Classification};
use birec_core::codes::{self, ConjectureOutcome};
use birec_core::monoid::{self, eggboxes, EggBox, GreenStructure, Monoid, SetAction, Transformation};
use birec_core::poly::Bernoulli;
use birec_core::series::{self, ComponentCount, Decomposition, LinearRepresentation, Reducibility};
use birec_core::unambiguous;
use birec_core::{format_rational, Alphabet, Dfa, Nfa, Word};

use crate::format::{self, AutomatonFile, ParseError};
use crate::report::{self, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

/// Number of steps of the Cesàro average reported by `density`.
pub const CESARO_STEPS: usize = 400;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{name}: {source}")]
    Parse { name: String, source: ParseError },
    #[error("{name}: {source}")]
    Io { name: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] birec_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => EXIT_PARSE,
            CliError::Core(birec_core::Error::Resource { .. }) => EXIT_RESOURCE,
            CliError::Core(birec_core::Error::Internal(_)) => EXIT_INTERNAL,
            CliError::Core(_) => EXIT_DOMAIN,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A named input text: a file path and its contents, or a corpus entry.
#[derive(Clone, Copy, Debug)]
pub struct Source<'a> {
    pub name: &'a str,
    pub text: &'a str,
}

impl<'a> Source<'a> {
    pub fn new(name: &'a str, text: &'a str) -> Self {
        Source { name, text }
    }

    fn fail(&self, e: ParseError) -> CliError {
        CliError::Parse { name: self.name.into(), source: e }
    }

    fn automaton(&self) -> CliResult<AutomatonFile> {
        format::parse_automaton(self.text).map_err(|e| self.fail(e))
    }

    fn dfa(&self) -> CliResult<Dfa> {
        self.automaton()?.to_dfa().map_err(|e| self.fail(e))
    }

    fn code(&self) -> CliResult<format::CodeFile> {
        format::parse_code(self.text).map_err(|e| self.fail(e))
    }

    fn bernoulli(&self, alphabet: &Alphabet) -> CliResult<Bernoulli> {
        format::parse_bernoulli(self.text, alphabet).map_err(|e| self.fail(e))
    }

    fn is_representation(&self) -> bool {
        self.text.lines().any(|l| l.split_whitespace().next() == Some("dim"))
    }
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Length bound for coefficient-wise verification.
    pub bound: usize,
    /// Cap on enumerated monoid elements.
    pub cap: usize,
    /// Seed of randomized corpus checks.
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { bound: codes::DEFAULT_BOUND, cap: monoid::DEFAULT_CAP, seed: birec_core::random::DEFAULT_SEED }
    }
}

fn word_arg(alphabet: &Alphabet, w: &str) -> CliResult<Word> {
    alphabet.parse_word(w).map_err(|e| CliError::Parse { name: "<word>".into(), source: ParseError { line: 0, message: e.to_string() } })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Full birecurrence report of a deterministic automaton.
pub fn cmd_check(src: Source, opts: &Options) -> CliResult<Report> {
    let dfa = src.dfa()?;
    let a = dfa.alphabet().clone();
    let m = dfa.minimize();
    let bc = birecurrence::check_birecurrence(&m, opts.cap)?;
    let dense = birecurrence::is_dense(&m);
    let degree = if bc.recurrent { Some(birecurrence::degree(&m, opts.cap)?) } else { None };
    let idx = if bc.birecurrent && dense { Some(birecurrence::index(&m, opts.cap)?) } else { None };
    let dec = if bc.birecurrent { Some(birecurrence::decomposition(&m, opts.cap)?) } else { None };
    let mut r = Report::new("check", vec![src.name.into()]);
    r.result = json!({
        "recurrent": bc.recurrent,
        "birecurrent": bc.birecurrent,
        "degree": degree,
        "k": idx.as_ref().map(|i| i.k),
        "index": idx.as_ref().map(|i| report::rational(&i.index)),
        "dense": dense,
        "density": idx.as_ref().map(|i| report::rational(&i.density)),
        "finite_type": dec.as_ref().map(|d| d.is_finite_type()),
        "left_root": dec.as_ref().map(|d| report::word_set(&a, &d.left_root)),
        "P": dec.as_ref().map(|d| report::word_set(&a, &d.prefixes)),
        "right_root": dec.as_ref().map(|d| report::word_set(&a, &d.right_root)),
        "Q": dec.as_ref().map(|d| report::word_set(&a, &d.suffixes)),
    });
    let mut t = format!("states of the minimal automaton: {}\n", m.num_states());
    t += &format!("recurrent: {}\nbirecurrent: {}\ndense: {}\n", yes(bc.recurrent), yes(bc.birecurrent), yes(dense));
    if let Some(d) = degree {
        t += &format!("degree: {d}\n");
    }
    if let Some(w) = &bc.saturating_word {
        t += &format!("saturating word of minimal rank: {}\n", a.render(w));
    }
    if let Some(i) = &idx {
        t += &format!("index: {} (k = {})\ndensity: {}\n", format_rational(&i.index), i.k, format_rational(&i.density));
    }
    if let Some(d) = &dec {
        t += &format!("finite type: {}\n", yes(d.is_finite_type()));
        t += &format!("left root X: {}\nP: {}\n", report::braces_set(&a, &d.left_root), report::braces_set(&a, &d.prefixes));
        t += &format!("right root Y: {}\nQ: {}\n", report::braces_set(&a, &d.right_root), report::braces_set(&a, &d.suffixes));
        r.check(format!("X*P = QY* = S up to length {}", opts.bound), birecurrence::verify_decomposition(d, opts.bound));
    }
    r.text = t;
    Ok(r)
}

fn monoid_report<E: Transformation + SetAction>(
    r: &mut Report,
    m: &Monoid<E>,
    g: &GreenStructure,
    alphabet: &Alphabet,
    labels: &[String],
    element: impl Fn(&E) -> Value,
) -> Vec<EggBox> {
    let boxes = eggboxes(m, g, alphabet, labels);
    let elements: Vec<Value> = (0..m.len())
        .map(|x| {
            json!({
                "id": x,
                "witness": report::word(alphabet, m.witness(x)),
                "rank": g.rank[x],
                "idempotent": g.idempotent[x],
                "r_class": g.r_class[x],
                "l_class": g.l_class[x],
                "h_class": g.h_class[x],
                "d_class": g.d_class[x],
                "value": element(m.value(x)),
            })
        })
        .collect();
    let boxes_json: Vec<Value> = boxes
        .iter()
        .map(|b| {
            let cells: Vec<Vec<Value>> = b
                .cells
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| match c {
                            Some(c) => json!({"witness": c.witness, "idempotent": c.has_idempotent, "size": c.size}),
                            None => Value::Null,
                        })
                        .collect()
                })
                .collect();
            json!({"rows": b.row_labels, "columns": b.column_labels, "cells": cells})
        })
        .collect();
    let group = g.group.as_ref().map(|gr| gr.members.len());
    r.result = json!({
        "size": m.len(),
        "min_rank": g.min_rank,
        "has_zero": g.zero.is_some(),
        "ideal_size": g.ideal.len(),
        "group_order": group,
        "elements": elements,
        "eggboxes": boxes_json,
    });
    let mut t = format!("monoid size: {}\n", m.len());
    if let Some(d) = g.min_rank {
        t += &format!("minimal nonzero rank: {d}\n");
    }
    t += &format!("zero: {}\n", yes(g.zero.is_some()));
    if let Some(k) = group {
        t += &format!("group of the minimal ideal: order {k}\n");
    }
    for b in &boxes {
        t.push('\n');
        t += &b.render();
    }
    r.text = t;
    boxes
}

/// Transition monoid of a deterministic automaton, or 0/1 matrix monoid of
/// a nondeterministic one, with the eggboxes of its minimal ideal.
pub fn cmd_monoid(src: Source, opts: &Options) -> CliResult<Report> {
    let file = src.automaton()?;
    let mut r = Report::new("monoid", vec![src.name.into()]);
    if file.is_deterministic() {
        let d = file.to_dfa().map_err(|e| src.fail(e))?;
        let m = monoid::transition_monoid(&d, opts.cap)?;
        let g = m.green();
        let labels = d.labels().to_vec();
        monoid_report(&mut r, &m, &g, d.alphabet(), &labels, |p| {
            Value::Array((0..labels.len()).map(|q| p.apply(q).map_or(Value::Null, |s| Value::String(labels[s].clone()))).collect())
        });
    } else {
        let d = file.to_nfa().map_err(|e| src.fail(e))?;
        let m = unambiguous::matrix_monoid(&d, opts.cap)?;
        let g = m.green();
        let n = d.num_states();
        monoid_report(&mut r, &m, &g, d.alphabet(), d.labels(), |x| {
            Value::Array((0..n).map(|p| Value::Array((0..n).map(|q| json!(u8::from(x.get(p, q)))).collect())).collect())
        });
    }
    Ok(r)
}

/// Determinized reversal, trimmed, with the subset of each state.
pub fn cmd_reverse(src: Source, _opts: &Options) -> CliResult<Report> {
    let file = src.automaton()?;
    let subsets = if file.is_deterministic() {
        file.to_dfa().map_err(|e| src.fail(e))?.deterministic_reversal()
    } else {
        file.to_nfa().map_err(|e| src.fail(e))?.reverse().determinize()
    };
    let mut r = Report::new("reverse", vec![src.name.into()]);
    let mut out = report::dfa(&subsets.dfa);
    out["members"] = Value::Array(subsets.members.iter().map(|s| report::state_set(&file.states, s)).collect());
    r.result = out;
    r.text = format::write_dfa(&subsets.dfa);
    Ok(r)
}

/// Minimal automaton; nondeterministic inputs are determinized first.
pub fn cmd_minimize(src: Source, _opts: &Options) -> CliResult<Report> {
    let file = src.automaton()?;
    let m = if file.is_deterministic() {
        file.to_dfa().map_err(|e| src.fail(e))?.minimize()
    } else {
        file.to_nfa().map_err(|e| src.fail(e))?.determinize().dfa.minimize()
    };
    let mut r = Report::new("minimize", vec![src.name.into()]);
    r.result = report::dfa(&m);
    r.text = format::write_dfa(&m);
    Ok(r)
}

/// Minimal linear representation. Deterministic automata get the
/// syntactic representation in the basis of characteristic vectors of
/// state sets; unambiguous automata and representation files are
/// minimized directly.
pub fn cmd_minrep(src: Source, opts: &Options) -> CliResult<Report> {
    let mut r = Report::new("minrep", vec![src.name.into()]);
    let (rep, extra) = if src.is_representation() {
        let input = format::parse_representation(src.text).map_err(|e| src.fail(e))?;
        let min = series::minimize_representation(&input);
        r.check(format!("agrees with the input up to length {}", opts.bound), min.rep.agrees_with(&input, opts.bound));
        (min.rep, Value::Null)
    } else {
        let file = src.automaton()?;
        if file.is_deterministic() {
            let d = file.to_dfa().map_err(|e| src.fail(e))?;
            let data = series::syntactic_data(&d, opts.cap)?;
            let labels = data.minimal.labels();
            let basis: Vec<Value> = data
                .basis_sets
                .iter()
                .zip(&data.basis_witnesses)
                .map(|(s, w)| json!({"states": report::state_set(labels, s), "witness": report::word(d.alphabet(), w)}))
                .collect();
            let plain = series::minimize_representation(&LinearRepresentation::from_dfa(&data.minimal));
            r.check("dimension equals the two-sided minimization", plain.rep.dim() == data.dim());
            r.check(format!("agrees with the automaton up to length {}", opts.bound), data.rep.agrees_with(&plain.rep, opts.bound));
            (data.rep, Value::Array(basis))
        } else {
            let n = file.to_nfa().map_err(|e| src.fail(e))?;
            let input = LinearRepresentation::from_unambiguous(&n)?;
            let min = series::minimize_representation(&input);
            r.check(format!("agrees with the automaton up to length {}", opts.bound), min.rep.agrees_with(&input, opts.bound));
            (min.rep, Value::Null)
        }
    };
    let mut out = report::representation(&rep);
    let mut text = String::new();
    if let Value::Array(basis) = &extra {
        for (j, b) in basis.iter().enumerate() {
            let states: Vec<&str> = b["states"].as_array().into_iter().flatten().filter_map(Value::as_str).collect();
            text += &format!("# basis {}: states {} via {}\n", j + 1, states.join(","), b["witness"].as_str().unwrap_or(""));
        }
        out["basis"] = extra.clone();
    }
    text += &format::write_representation(&rep);
    r.result = out;
    r.text = text;
    Ok(r)
}

/// Complete reducibility through the eventual kernel and range.
pub fn cmd_reducible(src: Source, opts: &Options) -> CliResult<Report> {
    let d = src.dfa()?;
    let mut r = Report::new("reducible", vec![src.name.into()]);
    let verdict = series::is_completely_reducible(&d, opts.cap)?;
    r.result = match &verdict {
        Reducibility::Reducible { ek_dim, er_dim } => {
            let components = match series::count_irreducible_components(&d, opts.cap)? {
                ComponentCount::Count(n) => json!(n),
                ComponentCount::Indeterminate { reason } => json!({"indeterminate": reason}),
            };
            r.text = format!("completely reducible: yes\nEK dimension: {ek_dim}\nER dimension: {er_dim}\nirreducible components: {components}\n");
            json!({"verdict": "reducible", "ek_dim": ek_dim, "er_dim": er_dim, "components": components})
        }
        Reducibility::NotReducible { certificate } => {
            let rendered: Vec<String> = certificate.iter().map(format_rational).collect();
            r.text = format!("completely reducible: no\nnonzero vector of EK: [{}]\n", rendered.join(" "));
            json!({"verdict": "not_reducible", "certificate": report::rationals(certificate)})
        }
        Reducibility::Inapplicable { ek_dim, er_dim, intersection_dim } => {
            r.text = format!(
                "completely reducible: not decided (the set is not recurrent)\nEK dimension: {ek_dim}\nER dimension: {er_dim}\nEK ∩ ER dimension: {intersection_dim}\n"
            );
            json!({"verdict": "inapplicable", "ek_dim": ek_dim, "er_dim": er_dim, "intersection_dim": intersection_dim})
        }
    };
    Ok(r)
}

/// Linear combination of birecurrent sets equal to the input set.
pub fn cmd_decompose(src: Source, opts: &Options) -> CliResult<Report> {
    let d = src.dfa()?;
    let mut r = Report::new("decompose", vec![src.name.into()]);
    match series::decompose_into_birecurrent(&d, opts.cap, opts.bound)? {
        Decomposition::Found { terms, method } => {
            let pairs: Vec<_> = terms.iter().map(|t| (t.coefficient.clone(), &t.automaton)).collect();
            r.check(format!("combination equals the set up to length {}", opts.bound), series::verify_combination(&d, &pairs, opts.bound));
            let labels = d.minimize().labels().to_vec();
            let json_terms: Vec<Value> = terms
                .iter()
                .map(|t| {
                    json!({
                        "coefficient": report::rational(&t.coefficient),
                        "terminals": t.terminals.as_ref().map(|s| report::state_set(&labels, s)),
                        "automaton": report::dfa(&t.automaton),
                    })
                })
                .collect();
            let method = format!("{method:?}");
            r.result = json!({"outcome": "found", "method": method, "terms": json_terms});
            let mut t = format!("found {} term(s) by {method}\n", terms.len());
            for (k, term) in terms.iter().enumerate() {
                t += &format!("\n# term {}: coefficient {}", k + 1, format_rational(&term.coefficient));
                if let Some(s) = &term.terminals {
                    let names: Vec<&str> = s.iter().map(|&p| labels[p].as_str()).collect();
                    t += &format!(", terminal states {}", names.join(","));
                }
                t.push('\n');
                t += &format::write_dfa(&term.automaton);
            }
            r.text = t;
        }
        Decomposition::NotFound { reason } => {
            r.text = format!("no decomposition found: {reason}\n");
            r.result = json!({"outcome": "not_found", "reason": reason});
        }
        Decomposition::NotCompletelyReducible { certificate } => {
            r.text = "not completely reducible, so no decomposition exists\n".into();
            r.result = json!({"outcome": "not_completely_reducible", "certificate": report::rationals(&certificate)});
        }
        Decomposition::Inapplicable { reason } => {
            r.text = format!("not applicable: {reason}\n");
            r.result = json!({"outcome": "inapplicable", "reason": reason});
        }
    }
    Ok(r)
}

fn code_quotient(command: &str, src: Source, w: &str, left: bool) -> CliResult<Report> {
    let c = src.code()?;
    let w = word_arg(&c.alphabet, w)?;
    let out = if left { codes::delta_w(&c.alphabet, &c.words, &w)? } else { codes::gamma_w(&c.alphabet, &c.words, &w)? };
    let mut r = Report::new(command, vec![src.name.into(), c.alphabet.render(&w)]);
    r.check("result is a prefix code", codes::is_prefix_code(&out)?);
    r.result = json!({"words": report::words(&c.alphabet, &out), "count": out.len()});
    r.text = format::write_code(&c.alphabet, &out);
    Ok(r)
}

/// The code `δ_w(Z)`.
pub fn cmd_delta(src: Source, w: &str, _opts: &Options) -> CliResult<Report> {
    code_quotient("delta", src, w, true)
}

/// The code `γ_w(Z)`.
pub fn cmd_gamma(src: Source, w: &str, _opts: &Options) -> CliResult<Report> {
    code_quotient("gamma", src, w, false)
}

/// Iterated construction from a bifix code and a pure square.
pub fn cmd_vincent(src: Source, w: &str, opts: &Options) -> CliResult<Report> {
    let c = src.code()?;
    let w = word_arg(&c.alphabet, w)?;
    let v = codes::vincent_iteration(&c.alphabet, &c.words, &w, opts.cap, opts.bound)?;
    let amb = unambiguous::is_unambiguous(&v.nfa);
    let birec = birecurrence::check_birecurrence(&v.automaton, opts.cap)?;
    let degree = birecurrence::degree(&v.automaton, opts.cap)?;
    let mut r = Report::new("vincent", vec![src.name.into(), c.alphabet.render(&w)]);
    r.check("automaton is unambiguous", amb.verdict);
    let trim = v.nfa.trim();
    if amb.verdict && trim.is_strongly_connected() {
        let rec = unambiguous::unambiguous_recurrence(&trim, opts.cap)?;
        r.check("matrix and subset routes agree on birecurrence", rec.birecurrent() == birec.birecurrent);
    }
    r.check(format!("X*P = QY* = S up to length {}", opts.bound), birecurrence::verify_decomposition(&v.decomposition, opts.bound));
    let a = &c.alphabet;
    r.result = json!({
        "x": report::words(a, &v.x),
        "u": report::words(a, &v.u),
        "l": report::words(a, &v.l),
        "nfa_states": v.nfa.num_states(),
        "minimal_states": v.automaton.num_states(),
        "unambiguous": amb.verdict,
        "min_rank": degree,
        "birecurrent": birec.birecurrent,
        "finite_type": v.decomposition.is_finite_type(),
        "nfa": report::nfa(&v.nfa),
    });
    r.text = format!(
        "X = δ_w(Z): {} words\nU: {} words\nL: {} words\nunambiguous automaton: {} states\nminimal automaton: {} states, minimal rank {}\nbirecurrent: {}\nfinite type: {}\n\n{}",
        v.x.len(),
        v.u.len(),
        v.l.len(),
        v.nfa.num_states(),
        v.automaton.num_states(),
        degree,
        yes(birec.birecurrent),
        yes(v.decomposition.is_finite_type()),
        format::write_nfa(&v.nfa)
    );
    Ok(r)
}

/// Bounded search for `X*P = QY*` factorizations through finite sets.
pub fn cmd_conjecture(src: Source, max_len: usize, opts: &Options) -> CliResult<Report> {
    let d = src.dfa()?;
    let a = d.alphabet().clone();
    let dec = birecurrence::decomposition(&d, opts.cap)?;
    let mut r = Report::new("conjecture", vec![src.name.into()]);
    match codes::conjecture_search(&a, &dec, max_len)? {
        ConjectureOutcome::Found { m, n } => {
            r.text = format!("factorization found\nM: {}\nN: {}\n", report::braces(&a, &m), report::braces(&a, &n));
            r.result = json!({"outcome": "found", "M": report::words(&a, &m), "N": report::words(&a, &n)});
        }
        ConjectureOutcome::NoSolution { reason } => {
            r.text = format!("no factorization of the searched form: {reason}\n");
            r.result = json!({"outcome": "no_solution", "reason": reason});
        }
        ConjectureOutcome::OutsideBound => {
            r.text = format!("no factorization within length {max_len}; this is not a counterexample\n");
            r.result = json!({"outcome": "outside_bound", "max_len": max_len});
        }
    }
    Ok(r)
}

/// Density of a dense birecurrent set, with the Cesàro average and, on
/// sets of finite type, the average length of the left root.
pub fn cmd_density(src: Source, pi: Option<Source>, steps: usize, opts: &Options) -> CliResult<Report> {
    let d = src.dfa()?;
    let a = d.alphabet().clone();
    let measure = match pi {
        Some(p) => p.bernoulli(&a)?,
        None => Bernoulli::uniform(a.size()),
    };
    let mut inputs = vec![src.name.to_string()];
    inputs.extend(pi.map(|p| p.name.to_string()));
    let mut r = Report::new("density", inputs);
    let idx = birecurrence::index(&d, opts.cap)?;
    let density = birecurrence::density(&d, &measure, opts.cap)?;
    let cesaro = birecurrence::cesaro_average(&d.minimize(), &measure, steps);
    let cesaro_f = rational_to_f64(&cesaro);
    let gap = (cesaro_f - rational_to_f64(&density)).abs();
    let dec = birecurrence::decomposition(&d, opts.cap)?;
    let mut lengths = Value::Null;
    let mut t = format!(
        "degree: {}\nindex: {}\ndensity: {}\nCesàro average over {steps} steps: {cesaro_f:.6}\n",
        idx.degree,
        format_rational(&idx.index),
        format_rational(&density)
    );
    if let (Some(x), Some(p)) = (dec.left_root.finite(), dec.prefixes.finite()) {
        let lambda = codes::average_length(&a, x, &measure)?;
        let rhs = &idx.index * measure.measure_words(p);
        r.check("average length of the left root equals index times measure of P", lambda == rhs);
        t += &format!("average length of the left root: {}\n", format_rational(&lambda));
        lengths = json!({"average_length": report::rational(&lambda), "index_times_measure_of_P": report::rational(&rhs)});
    }
    r.result = json!({
        "degree": idx.degree,
        "index": report::rational(&idx.index),
        "density": report::rational(&density),
        "cesaro": {"steps": steps, "value": format!("{cesaro_f:.6}"), "gap": format!("{gap:.6}")},
        "left_root": lengths,
    });
    r.text = t;
    Ok(r)
}

fn rational_to_f64(q: &birec_core::Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Unambiguity and, when applicable, recurrence through the matrix monoid.
pub fn cmd_unambiguous(src: Source, opts: &Options) -> CliResult<Report> {
    let n: Nfa = src.automaton()?.to_nfa().map_err(|e| src.fail(e))?;
    let labels = n.labels().to_vec();
    let a = n.alphabet().clone();
    let u = unambiguous::is_unambiguous(&n);
    let mut r = Report::new("unambiguous", vec![src.name.into()]);
    let witness = u.witness.as_ref().map(|w| {
        json!({"word": report::word(&a, &w.word), "first": report::state_set(&labels, &w.first), "second": report::state_set(&labels, &w.second)})
    });
    let mut t = format!("unambiguous: {}\n", yes(u.verdict));
    if let Some(w) = &u.witness {
        t += &format!("two paths labelled {}\n", a.render(&w.word));
    }
    let trim = n.trim();
    let recurrence = if u.verdict && trim.num_states() > 0 && trim.is_strongly_connected() {
        let rec = unambiguous::unambiguous_recurrence(&trim, opts.cap)?;
        let w = |x: &Option<Word>| x.as_ref().map(|x| report::word(&a, x));
        t += &format!(
            "minimal rank: {}\nx with I·x = I: {}\ny with y·T = T: {}\nbirecurrent: {}\n",
            rec.min_rank,
            rec.witness_x.as_ref().map_or("none".into(), |x| a.render(x)),
            rec.witness_y.as_ref().map_or("none".into(), |x| a.render(x)),
            yes(rec.birecurrent())
        );
        let det = birecurrence::check_birecurrence(&trim.determinize().dfa, opts.cap)?;
        r.check("matrix and subset routes agree on birecurrence", det.birecurrent == rec.birecurrent());
        json!({
            "min_rank": rec.min_rank,
            "delta_strongly_connected": rec.delta_strongly_connected,
            "reversal_strongly_connected": rec.reversal_strongly_connected,
            "witness_x": w(&rec.witness_x),
            "witness_y": w(&rec.witness_y),
            "birecurrent": rec.birecurrent(),
        })
    } else {
        Value::Null
    };
    r.result = json!({"unambiguous": u.verdict, "witness": witness, "recurrence": recurrence});
    r.text = t;
    Ok(r)
}

/// Place of a finite maximal prefix code among birecurrent sets.
pub fn cmd_classify(src: Source, opts: &Options) -> CliResult<Report> {
    let c = src.code()?;
    let a = &c.alphabet;
    let class = birecurrence::classify_code(a, &c.words, opts.cap)?;
    let mut r = Report::new("classify", vec![src.name.into()]);
    let name = birecurrence::classification_name(&class);
    r.result = match &class {
        Classification::Decomposable { inner } => {
            r.text = format!("{name}: X ⊂ Z* with Z = {}\n", report::braces(a, inner));
            json!({"class": name, "inner": report::words(a, inner)})
        }
        Classification::Synchronized => {
            r.text = format!("{name}\n");
            json!({"class": name})
        }
        Classification::LeftRootOfDenseBirecurrent { degree, terminal, automaton } => {
            let labels = automaton.labels();
            let names: Vec<&str> = terminal.iter().map(|&p| labels[p].as_str()).collect();
            r.text = format!("{name}: degree {degree}, terminal states {}\n", names.join(","));
            json!({"class": name, "degree": degree, "terminal": report::state_set(labels, terminal), "automaton": report::dfa(automaton)})
        }
    };
    Ok(r)
}

/// Level sets of a scalar-output automaton.
pub fn cmd_levels(src: Source, opts: &Options) -> CliResult<Report> {
    let s = src.automaton()?.to_scalar().map_err(|e| src.fail(e))?;
    let m = s.minimize();
    let recurrent = m.is_recurrent_series();
    let mut r = Report::new("levels", vec![src.name.into()]);
    let mut t = format!("states of the minimal automaton: {}\nrecurrent series: {}\n", m.num_states(), yes(recurrent));
    let mut levels = Vec::new();
    for (value, dfa) in m.level_sets()? {
        let b = birecurrence::check_birecurrence(&dfa, opts.cap)?;
        t += &format!("value {}: {} states, birecurrent {}\n", format_rational(&value), dfa.num_states(), yes(b.birecurrent));
        levels.push(json!({"value": report::rational(&value), "states": dfa.num_states(), "birecurrent": b.birecurrent}));
    }
    r.result = json!({"states": m.num_states(), "recurrent": recurrent, "levels": levels, "automaton": format::write_scalar(&m)});
    r.text = t;
    Ok(r)
}

#[derive(Parser, Debug)]
#[command(name = "birec", version, about = "Recurrence, birecurrence and complete reducibility of regular sets")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Length bound for coefficient-wise verification.
    #[arg(long, global = true, default_value_t = codes::DEFAULT_BOUND)]
    bound: usize,
    /// Cap on enumerated monoid elements.
    #[arg(long, global = true, default_value_t = monoid::DEFAULT_CAP)]
    cap: usize,
    /// Seed of randomized checks.
    #[arg(long, global = true, default_value_t = birec_core::random::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recurrence, birecurrence, degree, index, density and roots.
    Check { file: PathBuf },
    /// Transition monoid and eggboxes of its minimal ideal.
    Monoid { file: PathBuf },
    /// Determinized reversal.
    Reverse { file: PathBuf },
    /// Minimal automaton.
    Minimize { file: PathBuf },
    /// Minimal linear representation.
    Minrep { file: PathBuf },
    /// Complete reducibility.
    Reducible { file: PathBuf },
    /// Decomposition into birecurrent sets.
    Decompose { file: PathBuf },
    /// The code δ_w(Z).
    Delta { code: PathBuf, word: String },
    /// The code γ_w(Z).
    Gamma { code: PathBuf, word: String },
    /// Iterated construction from a pure square.
    Vincent { code: PathBuf, word: String },
    /// Bounded factorization search.
    Conjecture {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Density and Cesàro average.
    Density {
        file: PathBuf,
        pi: Option<PathBuf>,
        #[arg(long, default_value_t = CESARO_STEPS)]
        steps: usize,
    },
    /// Unambiguity and recurrence of a nondeterministic automaton.
    Unambiguous { file: PathBuf },
    /// Classification of a finite maximal prefix code.
    Classify { code: PathBuf },
    /// Level sets of a scalar-output automaton.
    Levels { file: PathBuf },
    /// Run every golden example and print a pass/fail table.
    Corpus,
}

fn read(path: &PathBuf) -> CliResult<(String, String)> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { name: name.clone(), source: e })?;
    Ok((name, text))
}

fn dispatch(command: &Command, opts: &Options) -> CliResult<Report> {
    fn one(path: &PathBuf, f: impl FnOnce(Source) -> CliResult<Report>) -> CliResult<Report> {
        let (name, text) = read(path)?;
        f(Source::new(&name, &text))
    }
    match command {
        Command::Check { file } => one(file, |s| cmd_check(s, opts)),
        Command::Monoid { file } => one(file, |s| cmd_monoid(s, opts)),
        Command::Reverse { file } => one(file, |s| cmd_reverse(s, opts)),
        Command::Minimize { file } => one(file, |s| cmd_minimize(s, opts)),
        Command::Minrep { file } => one(file, |s| cmd_minrep(s, opts)),
        Command::Reducible { file } => one(file, |s| cmd_reducible(s, opts)),
        Command::Decompose { file } => one(file, |s| cmd_decompose(s, opts)),
        Command::Delta { code, word } => one(code, |s| cmd_delta(s, word, opts)),
        Command::Gamma { code, word } => one(code, |s| cmd_gamma(s, word, opts)),
        Command::Vincent { code, word } => one(code, |s| cmd_vincent(s, word, opts)),
        Command::Conjecture { file, max_len } => one(file, |s| cmd_conjecture(s, *max_len, opts)),
        Command::Density { file, pi, steps } => {
            let pi = pi.as_ref().map(read).transpose()?;
            one(file, |s| cmd_density(s, pi.as_ref().map(|(n, t)| Source::new(n, t)), *steps, opts))
        }
        Command::Unambiguous { file } => one(file, |s| cmd_unambiguous(s, opts)),
        Command::Classify { code } => one(code, |s| cmd_classify(s, opts)),
        Command::Levels { file } => one(file, |s| cmd_levels(s, opts)),
        Command::Corpus => Ok(crate::corpus::report(opts)),
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = write!(if e.use_stderr() { err as &mut dyn Write } else { out as &mut dyn Write }, "{e}");
            return code;
        }
    };
    let opts = Options { bound: cli.bound, cap: cli.cap, seed: cli.seed };
    match dispatch(&cli.command, &opts) {
        Ok(report) => {
            let body = if cli.json { report.render_json() } else { report.render_text() };
            let _ = out.write_all(body.as_bytes());
            if report.all_checks_pass() {
                EXIT_OK
            } else {
                EXIT_INTERNAL
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
