//! Line-oriented text formats for automata, codes, polynomials, Bernoulli
//! measures and linear representations. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use birec_core::linalg::QMatrix;
use birec_core::poly::{Bernoulli, Poly};
use birec_core::scalar::ScalarOutputDfa;
use birec_core::series::LinearRepresentation;
use birec_core::{format_rational, parse_rational, Alphabet, Dfa, Nfa, Rational, Word};

/// A malformed input file; `line` is 1-based, 0 when the file as a whole is at fault.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Non-empty lines with comments removed, with their line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((k + 1, toks))
    })
}

fn rational(line: usize, s: &str) -> Result<Rational, ParseError> {
    parse_rational(s).ok_or_else(|| err(line, format!("bad rational {s:?}")))
}

/// Contents of an automaton file, before choosing a kind of automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomatonFile {
    pub alphabet: Alphabet,
    pub states: Vec<String>,
    pub initials: Vec<usize>,
    pub finals: Vec<usize>,
    pub outputs: Option<Vec<Rational>>,
    /// `(source, letter, target, line)`.
    pub edges: Vec<(usize, usize, usize, usize)>,
    initial_lines: Vec<usize>,
}

pub fn parse_automaton(text: &str) -> Result<AutomatonFile, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<(Vec<String>, BTreeMap<String, usize>)> = None;
    let mut initials = Vec::new();
    let mut initial_lines = Vec::new();
    let mut finals = Vec::new();
    let mut outputs: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut edges = Vec::new();
    for (n, toks) in lines(text) {
        let state = |name: &str| -> Result<usize, ParseError> {
            let (_, index) = states.as_ref().ok_or_else(|| err(n, "`states` must come before its use"))?;
            index.get(name).copied().ok_or_else(|| err(n, format!("unknown state {name:?}")))
        };
        match toks[0] {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(err(n, "repeated `alphabet` line"));
                }
                alphabet = Some(Alphabet::new(&toks[1..]).map_err(|e| err(n, e.to_string()))?);
            }
            "states" => {
                if states.is_some() {
                    return Err(err(n, "repeated `states` line"));
                }
                let mut index = BTreeMap::new();
                for (k, s) in toks[1..].iter().enumerate() {
                    if index.insert(s.to_string(), k).is_some() {
                        return Err(err(n, format!("duplicate state {s:?}")));
                    }
                }
                states = Some((toks[1..].iter().map(|s| s.to_string()).collect(), index));
            }
            "initial" => {
                if toks.len() < 2 {
                    return Err(err(n, "`initial` needs a state"));
                }
                for s in &toks[1..] {
                    let p = state(s)?;
                    if initials.contains(&p) {
                        return Err(err(n, format!("state {s:?} is already initial")));
                    }
                    initials.push(p);
                    initial_lines.push(n);
                }
            }
            "final" => {
                for s in &toks[1..] {
                    let p = state(s)?;
                    if !finals.contains(&p) {
                        finals.push(p);
                    }
                }
            }
            "output" => {
                if toks.len() != 3 {
                    return Err(err(n, "expected `output <state> <rational>`"));
                }
                let p = state(toks[1])?;
                if outputs.insert(p, rational(n, toks[2])?).is_some() {
                    return Err(err(n, format!("repeated output for state {:?}", toks[1])));
                }
            }
            "trans" => {
                if toks.len() != 4 {
                    return Err(err(n, "expected `trans <state> <letter> <state>`"));
                }
                let a = alphabet
                    .as_ref()
                    .ok_or_else(|| err(n, "`alphabet` must come before transitions"))?
                    .index(toks[2])
                    .ok_or_else(|| err(n, format!("unknown letter {:?}", toks[2])))?;
                let (p, q) = (state(toks[1])?, state(toks[3])?);
                if edges.iter().any(|&(p2, a2, q2, _)| (p2, a2, q2) == (p, a, q)) {
                    return Err(err(n, "duplicate transition"));
                }
                edges.push((p, a, q, n));
            }
            other => return Err(err(n, format!("unknown keyword {other:?}"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| err(0, "missing `alphabet` line"))?;
    let (states, _) = states.ok_or_else(|| err(0, "missing `states` line"))?;
    let outputs = if outputs.is_empty() {
        None
    } else {
        Some((0..states.len()).map(|p| outputs.get(&p).cloned().unwrap_or_default()).collect())
    };
    if outputs.is_some() && !finals.is_empty() {
        return Err(err(0, "`final` and `output` cannot be mixed"));
    }
    finals.sort_unstable();
    Ok(AutomatonFile { alphabet, states, initials, finals, outputs, edges, initial_lines })
}

impl AutomatonFile {
    fn delta(&self) -> Result<Vec<Vec<Option<usize>>>, ParseError> {
        let mut delta = vec![vec![None; self.alphabet.size()]; self.states.len()];
        for &(p, a, q, line) in &self.edges {
            if delta[p][a].is_some() {
                return Err(err(
                    line,
                    format!("second transition from state {} on letter {}", self.states[p], self.alphabet.token(a)),
                ));
            }
            delta[p][a] = Some(q);
        }
        Ok(delta)
    }

    fn single_initial(&self) -> Result<usize, ParseError> {
        match self.initials.as_slice() {
            [i] => Ok(*i),
            [] => Err(err(0, "a deterministic automaton needs one `initial` state")),
            _ => Err(err(self.initial_lines[1], "a deterministic automaton has exactly one initial state")),
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.initials.len() == 1 && self.delta().is_ok()
    }

    pub fn to_dfa(&self) -> Result<Dfa, ParseError> {
        if self.outputs.is_some() {
            return Err(err(0, "scalar-output file where a plain automaton is expected"));
        }
        let i = self.single_initial()?;
        Dfa::new(self.alphabet.clone(), Some(self.states.clone()), Some(i), &self.finals, self.delta()?)
            .map_err(|e| err(0, e.to_string()))
    }

    pub fn to_nfa(&self) -> Result<Nfa, ParseError> {
        if self.outputs.is_some() {
            return Err(err(0, "scalar-output file where a plain automaton is expected"));
        }
        let edges: Vec<(usize, usize, usize)> = self.edges.iter().map(|&(p, a, q, _)| (p, a, q)).collect();
        Nfa::new(self.alphabet.clone(), Some(self.states.clone()), self.states.len(), &self.initials, &self.finals, &edges)
            .map_err(|e| err(0, e.to_string()))
    }

    pub fn to_scalar(&self) -> Result<ScalarOutputDfa, ParseError> {
        let outputs = self.outputs.clone().ok_or_else(|| err(0, "no `output` lines"))?;
        let i = self.single_initial()?;
        ScalarOutputDfa::new(self.alphabet.clone(), Some(self.states.clone()), Some(i), outputs, self.delta()?)
            .map_err(|e| err(0, e.to_string()))
    }
}

fn header(out: &mut String, alphabet: &Alphabet, labels: &[String]) {
    let _ = writeln!(out, "alphabet {}", alphabet.tokens().join(" "));
    let _ = writeln!(out, "states {}", labels.join(" "));
}

/// State labels usable as single tokens.
fn tokens(labels: &[String]) -> Vec<String> {
    let mut seen = std::collections::BTreeSet::new();
    let clean: Vec<String> = labels.iter().map(|l| if l.is_empty() { "_".into() } else { l.replace(char::is_whitespace, "_") }).collect();
    if clean.iter().all(|l| seen.insert(l.clone()) && !l.contains('#')) {
        clean
    } else {
        (1..=labels.len()).map(|k| k.to_string()).collect()
    }
}

pub fn write_dfa(d: &Dfa) -> String {
    let labels = tokens(d.labels());
    let mut out = String::new();
    header(&mut out, d.alphabet(), &labels);
    if let Some(i) = d.initial() {
        let _ = writeln!(out, "initial {}", labels[i]);
    }
    let t: Vec<&str> = d.terminals().iter().map(|&p| labels[p].as_str()).collect();
    let _ = writeln!(out, "final {}", t.join(" "));
    for p in 0..d.num_states() {
        for a in 0..d.alphabet().size() {
            if let Some(q) = d.next(p, a) {
                let _ = writeln!(out, "trans {} {} {}", labels[p], d.alphabet().token(a), labels[q]);
            }
        }
    }
    out
}

pub fn write_nfa(d: &Nfa) -> String {
    let labels = tokens(d.labels());
    let mut out = String::new();
    header(&mut out, d.alphabet(), &labels);
    for p in d.initials() {
        let _ = writeln!(out, "initial {}", labels[p]);
    }
    let t: Vec<&str> = d.terminals().iter().map(|&p| labels[p].as_str()).collect();
    let _ = writeln!(out, "final {}", t.join(" "));
    for (p, a, q) in d.transitions() {
        let _ = writeln!(out, "trans {} {} {}", labels[p], d.alphabet().token(a), labels[q]);
    }
    out
}

pub fn write_scalar(d: &ScalarOutputDfa) -> String {
    let labels = tokens(d.labels());
    let mut out = String::new();
    header(&mut out, d.alphabet(), &labels);
    if let Some(i) = d.initial() {
        let _ = writeln!(out, "initial {}", labels[i]);
    }
    for (p, label) in labels.iter().enumerate() {
        let _ = writeln!(out, "output {} {}", label, format_rational(d.output(p)));
    }
    for p in 0..d.num_states() {
        for a in 0..d.alphabet().size() {
            if let Some(q) = d.next(p, a) {
                let _ = writeln!(out, "trans {} {} {}", labels[p], d.alphabet().token(a), labels[q]);
            }
        }
    }
    out
}

/// A finite set of words with the alphabet it is written over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub alphabet: Alphabet,
    pub words: Vec<Word>,
}

/// One word per line, `eps` for the empty word. An optional leading
/// `alphabet` line fixes the letters; otherwise they are the characters
/// used, in code-point order.
pub fn parse_code(text: &str) -> Result<CodeFile, ParseError> {
    let entries: Vec<(usize, Vec<&str>)> = lines(text).collect();
    let (alphabet, body) = match entries.first() {
        Some((n, toks)) if toks[0] == "alphabet" => (Alphabet::new(&toks[1..]).map_err(|e| err(*n, e.to_string()))?, &entries[1..]),
        _ => {
            let chars: std::collections::BTreeSet<char> =
                entries.iter().filter(|(_, t)| t[0] != "eps").flat_map(|(_, t)| t[0].chars()).collect();
            if chars.is_empty() {
                return Err(err(0, "cannot infer an alphabet from an empty code"));
            }
            let toks: Vec<String> = chars.into_iter().map(String::from).collect();
            (Alphabet::new(&toks).map_err(|e| err(0, e.to_string()))?, &entries[..])
        }
    };
    let mut words = Vec::new();
    for (n, toks) in body {
        if toks.len() != 1 {
            return Err(err(*n, "expected one word per line"));
        }
        let w = alphabet.parse_word(toks[0]).map_err(|e| err(*n, e.to_string()))?;
        if words.contains(&w) {
            return Err(err(*n, format!("duplicate word {:?}", toks[0])));
        }
        words.push(w);
    }
    words.sort();
    Ok(CodeFile { alphabet, words })
}

pub fn write_code(alphabet: &Alphabet, words: &[Word]) -> String {
    let mut out = format!("alphabet {}\n", alphabet.tokens().join(" "));
    for w in words {
        out.push_str(&alphabet.render(w));
        out.push('\n');
    }
    out
}

/// `<rational> <word>` per line, with an optional leading `alphabet` line.
pub fn parse_poly(text: &str, alphabet: &Alphabet) -> Result<Poly, ParseError> {
    let mut p = Poly::zero();
    for (n, toks) in lines(text) {
        if toks[0] == "alphabet" {
            continue;
        }
        if toks.len() != 2 {
            return Err(err(n, "expected `<rational> <word>`"));
        }
        let c = rational(n, toks[0])?;
        let w = alphabet.parse_word(toks[1]).map_err(|e| err(n, e.to_string()))?;
        p.add_term(w, c);
    }
    Ok(p)
}

pub fn write_poly(alphabet: &Alphabet, p: &Poly) -> String {
    let mut out = format!("alphabet {}\n", alphabet.tokens().join(" "));
    for (w, c) in p.terms() {
        let _ = writeln!(out, "{} {}", format_rational(c), alphabet.render(w));
    }
    out
}

/// `prob <letter> <p/q>` per line; every letter must appear.
pub fn parse_bernoulli(text: &str, alphabet: &Alphabet) -> Result<Bernoulli, ParseError> {
    let mut probs: Vec<Option<Rational>> = vec![None; alphabet.size()];
    for (n, toks) in lines(text) {
        if toks.len() != 3 || toks[0] != "prob" {
            return Err(err(n, "expected `prob <letter> <p/q>`"));
        }
        let a = alphabet.index(toks[1]).ok_or_else(|| err(n, format!("unknown letter {:?}", toks[1])))?;
        if probs[a].replace(rational(n, toks[2])?).is_some() {
            return Err(err(n, format!("repeated letter {:?}", toks[1])));
        }
    }
    let probs = probs
        .into_iter()
        .enumerate()
        .map(|(a, p)| p.ok_or_else(|| err(0, format!("no probability for letter {:?}", alphabet.token(a)))))
        .collect::<Result<Vec<_>, _>>()?;
    Bernoulli::new(probs).map_err(|e| err(0, e.to_string()))
}

pub fn write_bernoulli(alphabet: &Alphabet, pi: &Bernoulli) -> String {
    let mut out = String::new();
    for (a, p) in pi.probabilities().iter().enumerate() {
        let _ = writeln!(out, "prob {} {}", alphabet.token(a), format_rational(p));
    }
    out
}

/// `dim n`, `lambda ...`, `gamma ...`, then `matrix <letter>` and `n`
/// rows for each letter. An optional `alphabet` line fixes the letter
/// order; otherwise it is the order of the `matrix` blocks.
pub fn parse_representation(text: &str) -> Result<LinearRepresentation, ParseError> {
    let entries: Vec<(usize, Vec<&str>)> = lines(text).collect();
    let mut dim = None;
    let mut alphabet_line = None;
    let mut lambda = None;
    let mut gamma = None;
    let mut blocks: Vec<(String, usize, Vec<Vec<Rational>>)> = Vec::new();
    let mut k = 0;
    while k < entries.len() {
        let (n, toks) = &entries[k];
        let vector = |toks: &[&str], dim: Option<usize>| -> Result<Vec<Rational>, ParseError> {
            let d = dim.ok_or_else(|| err(*n, "`dim` must come first"))?;
            if toks.len() != d {
                return Err(err(*n, format!("expected {d} entries, found {}", toks.len())));
            }
            toks.iter().map(|t| rational(*n, t)).collect()
        };
        match toks[0] {
            "dim" if toks.len() == 2 => {
                dim = Some(toks[1].parse::<usize>().map_err(|_| err(*n, "bad dimension"))?);
            }
            "alphabet" => alphabet_line = Some((*n, Alphabet::new(&toks[1..]).map_err(|e| err(*n, e.to_string()))?)),
            "lambda" => lambda = Some(vector(&toks[1..], dim)?),
            "gamma" => gamma = Some(vector(&toks[1..], dim)?),
            "matrix" if toks.len() == 2 => {
                let d = dim.ok_or_else(|| err(*n, "`dim` must come first"))?;
                let mut rows = Vec::new();
                for r in 0..d {
                    let (m, row) = entries.get(k + 1 + r).ok_or_else(|| err(*n, "matrix has too few rows"))?;
                    if row.len() != d {
                        return Err(err(*m, format!("expected {d} entries, found {}", row.len())));
                    }
                    rows.push(row.iter().map(|t| rational(*m, t)).collect::<Result<Vec<_>, _>>()?);
                }
                blocks.push((toks[1].to_string(), *n, rows));
                k += d;
            }
            other => return Err(err(*n, format!("unexpected line starting with {other:?}"))),
        }
        k += 1;
    }
    let dim = dim.ok_or_else(|| err(0, "missing `dim` line"))?;
    let lambda = lambda.ok_or_else(|| err(0, "missing `lambda` line"))?;
    let gamma = gamma.ok_or_else(|| err(0, "missing `gamma` line"))?;
    let alphabet = match alphabet_line {
        Some((_, a)) => a,
        None => {
            let toks: Vec<&str> = blocks.iter().map(|(a, _, _)| a.as_str()).collect();
            Alphabet::new(&toks).map_err(|e| err(0, e.to_string()))?
        }
    };
    let mut mu: Vec<Option<QMatrix>> = vec![None; alphabet.size()];
    for (a, n, rows) in blocks {
        let idx = alphabet.index(&a).ok_or_else(|| err(n, format!("unknown letter {a:?}")))?;
        if mu[idx].replace(QMatrix::from_rows(&rows)).is_some() {
            return Err(err(n, format!("repeated matrix for letter {a:?}")));
        }
    }
    let mu = mu
        .into_iter()
        .enumerate()
        .map(|(a, m)| m.ok_or_else(|| err(0, format!("no matrix for letter {:?}", alphabet.token(a)))))
        .collect::<Result<Vec<_>, _>>()?;
    let _ = dim;
    LinearRepresentation::new(alphabet, lambda, mu, gamma).map_err(|e| err(0, e.to_string()))
}

fn join(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

pub fn write_representation(r: &LinearRepresentation) -> String {
    let mut out = format!("alphabet {}\ndim {}\n", r.alphabet().tokens().join(" "), r.dim());
    let _ = writeln!(out, "lambda {}", join(r.lambda()));
    let _ = writeln!(out, "gamma {}", join(r.gamma()));
    for a in 0..r.alphabet().size() {
        let _ = writeln!(out, "matrix {}", r.alphabet().token(a));
        for i in 0..r.dim() {
            let _ = writeln!(out, "{}", join(r.mu(a).row(i)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_transition_reports_its_line() {
        let text = "alphabet a b\nstates 1 2\ninitial 1\nfinal 1\ntrans 1 a 2\n# comment\ntrans 1 a 1\n";
        let f = parse_automaton(text).unwrap();
        let e = f.to_dfa().unwrap_err();
        assert_eq!(e.line, 7);
        assert!(f.to_nfa().is_ok());
    }

    #[test]
    fn unknown_letter_is_a_line_error() {
        let e = parse_automaton("alphabet a\nstates 1\ninitial 1\ntrans 1 b 1\n").unwrap_err();
        assert_eq!(e.line, 4);
    }

    #[test]
    fn code_alphabet_is_inferred() {
        let c = parse_code("ba\naa\nab\nbb\n").unwrap();
        assert_eq!(c.alphabet, Alphabet::binary());
        assert_eq!(c.words.len(), 4);
        assert_eq!(parse_code(&write_code(&c.alphabet, &c.words)).unwrap(), c);
    }
}
