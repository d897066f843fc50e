//! Deterministic and nondeterministic finite automata.
//!
//! Deterministic automata are partial: a missing transition means the run
//! dies, and no sink state is ever added. Every construction that creates
//! states numbers them in breadth-first order from the initial state(s),
//! visiting letters in alphabet order, so state `k` is the `k`-th state in
//! order of its length-lex least access word.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph;
use crate::word::{Alphabet, Letter, Word};

pub type State = usize;

/// Partial deterministic automaton `(Q, i, T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    labels: Vec<String>,
    initial: Option<State>,
    terminal: Vec<bool>,
    delta: Vec<Vec<Option<State>>>,
}

/// Nondeterministic automaton `(Q, I, T)` without empty transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    labels: Vec<String>,
    initial: Vec<bool>,
    terminal: Vec<bool>,
    edges: Vec<Vec<Vec<State>>>,
}

/// Output of the subset construction: each state of `dfa` is the set
/// `members[k]` of states of the source automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsets {
    pub dfa: Dfa,
    pub members: Vec<Vec<State>>,
}

fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

impl Dfa {
    /// Build from a transition table `delta[state][letter]`.
    pub fn new(
        alphabet: Alphabet,
        labels: Option<Vec<String>>,
        initial: Option<State>,
        terminals: &[State],
        delta: Vec<Vec<Option<State>>>,
    ) -> Result<Self> {
        let n = delta.len();
        let labels = labels.unwrap_or_else(|| default_labels(n));
        if labels.len() != n {
            return Err(invalid("label count differs from state count"));
        }
        match initial {
            Some(i) if i >= n => return Err(invalid("initial state out of range")),
            None if n > 0 => return Err(invalid("a non-empty automaton needs an initial state")),
            _ => {}
        }
        let mut terminal = vec![false; n];
        for &t in terminals {
            if t >= n {
                return Err(invalid("terminal state out of range"));
            }
            terminal[t] = true;
        }
        for row in &delta {
            if row.len() != alphabet.size() {
                return Err(invalid("transition row length differs from alphabet size"));
            }
            if row.iter().flatten().any(|&q| q >= n) {
                return Err(invalid("transition target out of range"));
            }
        }
        Ok(Dfa { alphabet, labels, initial, terminal, delta })
    }

    /// Build from `(source, letter, target)` triples, rejecting duplicates.
    pub fn from_transitions(
        alphabet: Alphabet,
        n: usize,
        initial: State,
        terminals: &[State],
        transitions: &[(State, Letter, State)],
    ) -> Result<Self> {
        let mut delta = vec![vec![None; alphabet.size()]; n];
        for &(p, a, q) in transitions {
            if p >= n || q >= n || a >= alphabet.size() {
                return Err(invalid("transition out of range"));
            }
            if delta[p][a].is_some() {
                return Err(invalid(alloc::format!("duplicate transition from state {} on letter {}", p + 1, alphabet.token(a))));
            }
            delta[p][a] = Some(q);
        }
        Dfa::new(alphabet, None, Some(initial), terminals, delta)
    }

    /// The automaton of the empty language (no states).
    pub fn empty(alphabet: Alphabet) -> Self {
        Dfa { alphabet, labels: Vec::new(), initial: None, terminal: Vec::new(), delta: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: State) -> &str {
        &self.labels[p]
    }

    pub fn initial(&self) -> Option<State> {
        self.initial
    }

    pub fn is_terminal(&self, p: State) -> bool {
        self.terminal[p]
    }

    pub fn terminals(&self) -> Vec<State> {
        (0..self.num_states()).filter(|&p| self.terminal[p]).collect()
    }

    pub fn next(&self, p: State, a: Letter) -> Option<State> {
        self.delta[p][a]
    }

    pub fn table(&self) -> &[Vec<Option<State>>] {
        &self.delta
    }

    pub fn run(&self, p: State, w: &[Letter]) -> Option<State> {
        let mut s = p;
        for &a in w {
            s = self.delta[s][a]?;
        }
        Some(s)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.initial.and_then(|i| self.run(i, w)).is_some_and(|q| self.terminal[q])
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Same transitions with terminal set replaced.
    pub fn with_terminals(&self, terminals: &[State]) -> Dfa {
        let mut d = self.clone();
        d.terminal = vec![false; self.num_states()];
        for &t in terminals {
            d.terminal[t] = true;
        }
        d
    }

    /// Same transitions with initial state replaced.
    pub fn with_initial(&self, initial: State) -> Dfa {
        let mut d = self.clone();
        d.initial = Some(initial);
        d
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Dfa {
        assert_eq!(labels.len(), self.num_states());
        self.labels = labels;
        self
    }

    pub fn to_nfa(&self) -> Nfa {
        let n = self.num_states();
        let mut initial = vec![false; n];
        if let Some(i) = self.initial {
            initial[i] = true;
        }
        let edges = self
            .delta
            .iter()
            .map(|row| row.iter().map(|t| t.iter().copied().collect()).collect())
            .collect();
        Nfa { alphabet: self.alphabet.clone(), labels: self.labels.clone(), initial, terminal: self.terminal.clone(), edges }
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.delta.iter().map(|row| row.iter().flatten().copied().collect()).collect()
    }

    /// Restrict to states both accessible and coaccessible, keeping order.
    pub fn trim(&self) -> Dfa {
        self.trim_with_map().0
    }

    /// [`Dfa::trim`] together with the original index of every kept state.
    pub fn trim_with_map(&self) -> (Dfa, Vec<State>) {
        let Some(i) = self.initial else {
            return (Dfa::empty(self.alphabet.clone()), Vec::new());
        };
        let adj = self.adjacency();
        let acc = graph::reachable(&adj, [i]);
        let coacc = graph::reachable(&graph::transpose(&adj), self.terminals());
        if !(acc[i] && coacc[i]) {
            return (Dfa::empty(self.alphabet.clone()), Vec::new());
        }
        let kept: Vec<State> = (0..self.num_states()).filter(|&p| acc[p] && coacc[p]).collect();
        let mut new_index = vec![None; self.num_states()];
        for (k, &p) in kept.iter().enumerate() {
            new_index[p] = Some(k);
        }
        let delta = kept
            .iter()
            .map(|&p| self.delta[p].iter().map(|t| t.and_then(|q| new_index[q])).collect())
            .collect();
        let d = Dfa {
            alphabet: self.alphabet.clone(),
            labels: kept.iter().map(|&p| self.labels[p].clone()).collect(),
            initial: new_index[i],
            terminal: kept.iter().map(|&p| self.terminal[p]).collect(),
            delta,
        };
        (d, kept)
    }

    /// Renumber accessible states in breadth-first order, dropping the rest.
    pub fn canonical(&self) -> Dfa {
        let Some(i) = self.initial else {
            return Dfa::empty(self.alphabet.clone());
        };
        let mut order = vec![i];
        let mut index = vec![None; self.num_states()];
        index[i] = Some(0);
        let mut k = 0;
        while k < order.len() {
            let p = order[k];
            k += 1;
            for q in self.delta[p].iter().flatten() {
                if index[*q].is_none() {
                    index[*q] = Some(order.len());
                    order.push(*q);
                }
            }
        }
        let delta = order
            .iter()
            .map(|&p| self.delta[p].iter().map(|t| t.map(|q| index[q].expect("accessible"))).collect())
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            labels: order.iter().map(|&p| self.labels[p].clone()).collect(),
            initial: Some(0),
            terminal: order.iter().map(|&p| self.terminal[p]).collect(),
            delta,
        }
    }

    /// Isomorphism of the accessible parts (labels ignored).
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        let a = self.canonical();
        let b = other.canonical();
        a.alphabet.size() == b.alphabet.size() && a.delta == b.delta && a.terminal == b.terminal
    }

    /// Minimal automaton of the recognized set, trimmed, in breadth-first
    /// order. Each state keeps the label of its first-reached representative.
    pub fn minimize(&self) -> Dfa {
        let t = self.trim();
        let n = t.num_states();
        if n == 0 {
            return t;
        }
        let k = t.alphabet.size();
        let mut class: Vec<usize> = t.terminal.iter().map(|&b| usize::from(b)).collect();
        let mut count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![0; n];
            for p in 0..n {
                let sig: Vec<usize> = (0..k).map(|a| t.delta[p][a].map_or(usize::MAX, |q| class[q])).collect();
                let len = ids.len();
                next[p] = *ids.entry((class[p], sig)).or_insert(len);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut rep = vec![usize::MAX; count];
        for p in 0..n {
            if rep[class[p]] == usize::MAX {
                rep[class[p]] = p;
            }
        }
        let delta = (0..count)
            .map(|c| t.delta[rep[c]].iter().map(|q| q.map(|q| class[q])).collect())
            .collect();
        let quotient = Dfa {
            alphabet: t.alphabet.clone(),
            labels: (0..count).map(|c| t.labels[rep[c]].clone()).collect(),
            initial: t.initial.map(|i| class[i]),
            terminal: (0..count).map(|c| t.terminal[rep[c]]).collect(),
            delta,
        };
        quotient.canonical()
    }

    /// Minimal automaton of the reversed set, as a subset automaton whose
    /// members are states of `self`.
    pub fn deterministic_reversal(&self) -> Subsets {
        let (t, kept) = self.trim_with_map();
        let mut s = t.to_nfa().reverse().determinize();
        for m in &mut s.members {
            for p in m.iter_mut() {
                *p = kept[*p];
            }
        }
        s
    }

    /// Non-empty, trim, and strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        self.to_nfa().is_strongly_connected()
    }

    /// Accepted words of length at most `max_len`, length-lex order.
    pub fn enumerate_accepted(&self, max_len: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let Some(i) = self.initial else { return out };
        let mut level = vec![(Word::empty(), i)];
        for len in 0..=max_len {
            for (w, p) in &level {
                if self.terminal[*p] {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, p) in &level {
                for a in 0..self.alphabet.size() {
                    if let Some(q) = self.delta[*p][a] {
                        next.push((w.appended(a), q));
                    }
                }
            }
            level = next;
        }
        out
    }

    /// Length-lex least word from `i` to every state (None if unreachable).
    pub fn access_words(&self) -> Vec<Option<Word>> {
        let mut out = vec![None; self.num_states()];
        let Some(i) = self.initial else { return out };
        out[i] = Some(Word::empty());
        let mut order = vec![i];
        let mut k = 0;
        while k < order.len() {
            let p = order[k];
            k += 1;
            for a in 0..self.alphabet.size() {
                if let Some(q) = self.delta[p][a] {
                    if out[q].is_none() {
                        out[q] = out[p].as_ref().map(|w| w.appended(a));
                        order.push(q);
                    }
                }
            }
        }
        out
    }
}

impl Nfa {
    /// Build from `(source, letter, target)` triples.
    pub fn new(
        alphabet: Alphabet,
        labels: Option<Vec<String>>,
        n: usize,
        initials: &[State],
        terminals: &[State],
        transitions: &[(State, Letter, State)],
    ) -> Result<Self> {
        let labels = labels.unwrap_or_else(|| default_labels(n));
        if labels.len() != n {
            return Err(invalid("label count differs from state count"));
        }
        let mut initial = vec![false; n];
        let mut terminal = vec![false; n];
        for &p in initials {
            *initial.get_mut(p).ok_or_else(|| invalid("initial state out of range"))? = true;
        }
        for &p in terminals {
            *terminal.get_mut(p).ok_or_else(|| invalid("terminal state out of range"))? = true;
        }
        let mut edges = vec![vec![Vec::new(); alphabet.size()]; n];
        for &(p, a, q) in transitions {
            if p >= n || q >= n || a >= alphabet.size() {
                return Err(invalid("transition out of range"));
            }
            edges[p][a].push(q);
        }
        for row in &mut edges {
            for succ in row.iter_mut() {
                succ.sort_unstable();
                succ.dedup();
            }
        }
        Ok(Nfa { alphabet, labels, initial, terminal, edges })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: State) -> &str {
        &self.labels[p]
    }

    pub fn initials(&self) -> Vec<State> {
        (0..self.num_states()).filter(|&p| self.initial[p]).collect()
    }

    pub fn terminals(&self) -> Vec<State> {
        (0..self.num_states()).filter(|&p| self.terminal[p]).collect()
    }

    pub fn is_initial(&self, p: State) -> bool {
        self.initial[p]
    }

    pub fn is_terminal(&self, p: State) -> bool {
        self.terminal[p]
    }

    pub fn successors(&self, p: State, a: Letter) -> &[State] {
        &self.edges[p][a]
    }

    /// All `(source, letter, target)` triples in order.
    pub fn transitions(&self) -> Vec<(State, Letter, State)> {
        let mut out = Vec::new();
        for (p, row) in self.edges.iter().enumerate() {
            for (a, succ) in row.iter().enumerate() {
                for &q in succ {
                    out.push((p, a, q));
                }
            }
        }
        out
    }

    pub fn is_deterministic(&self) -> bool {
        self.initials().len() <= 1 && self.edges.iter().all(|row| row.iter().all(|s| s.len() <= 1))
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        self.edges
            .iter()
            .map(|row| {
                let mut v: Vec<usize> = row.iter().flatten().copied().collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    }

    /// Image of a set of states under a letter, sorted.
    pub fn step_set(&self, set: &[State], a: Letter) -> Vec<State> {
        let mut out: Vec<State> = set.iter().flat_map(|&p| self.edges[p][a].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let mut cur = self.initials();
        for &a in w {
            cur = self.step_set(&cur, a);
        }
        cur.iter().any(|&q| self.terminal[q])
    }

    /// Number of successful paths labelled `w`.
    pub fn count_paths(&self, w: &[Letter]) -> u64 {
        let mut v = vec![0u64; self.num_states()];
        for p in self.initials() {
            v[p] = 1;
        }
        for &a in w {
            let mut nv = vec![0u64; self.num_states()];
            for (p, &c) in v.iter().enumerate() {
                if c > 0 {
                    for &q in &self.edges[p][a] {
                        nv[q] = nv[q].saturating_add(c);
                    }
                }
            }
            v = nv;
        }
        self.terminals().iter().map(|&t| v[t]).fold(0u64, u64::saturating_add)
    }

    /// Restrict to states accessible from `I` and coaccessible to `T`.
    pub fn trim(&self) -> Nfa {
        self.trim_with_map().0
    }

    pub fn trim_with_map(&self) -> (Nfa, Vec<State>) {
        let adj = self.adjacency();
        let acc = graph::reachable(&adj, self.initials());
        let coacc = graph::reachable(&graph::transpose(&adj), self.terminals());
        let kept: Vec<State> = (0..self.num_states()).filter(|&p| acc[p] && coacc[p]).collect();
        (self.restrict(&kept), kept)
    }

    fn restrict(&self, kept: &[State]) -> Nfa {
        let mut new_index = vec![None; self.num_states()];
        for (k, &p) in kept.iter().enumerate() {
            new_index[p] = Some(k);
        }
        let edges = kept
            .iter()
            .map(|&p| {
                self.edges[p]
                    .iter()
                    .map(|succ| succ.iter().filter_map(|&q| new_index[q]).collect())
                    .collect()
            })
            .collect();
        Nfa {
            alphabet: self.alphabet.clone(),
            labels: kept.iter().map(|&p| self.labels[p].clone()).collect(),
            initial: kept.iter().map(|&p| self.initial[p]).collect(),
            terminal: kept.iter().map(|&p| self.terminal[p]).collect(),
            edges,
        }
    }

    /// Reverse every edge and swap initial with terminal states.
    pub fn reverse(&self) -> Nfa {
        let n = self.num_states();
        let mut edges = vec![vec![Vec::new(); self.alphabet.size()]; n];
        for (p, a, q) in self.transitions() {
            edges[q][a].push(p);
        }
        for row in &mut edges {
            for succ in row.iter_mut() {
                succ.sort_unstable();
            }
        }
        Nfa {
            alphabet: self.alphabet.clone(),
            labels: self.labels.clone(),
            initial: self.terminal.clone(),
            terminal: self.initial.clone(),
            edges,
        }
    }

    /// Accessible subset construction without the empty subset.
    pub fn determinize(&self) -> Subsets {
        let start = self.initials();
        if start.is_empty() {
            return Subsets { dfa: Dfa::empty(self.alphabet.clone()), members: Vec::new() };
        }
        let k = self.alphabet.size();
        let mut index: BTreeMap<Vec<State>, State> = BTreeMap::new();
        let mut members = vec![start.clone()];
        index.insert(start, 0);
        let mut delta: Vec<Vec<Option<State>>> = Vec::new();
        let mut pos = 0;
        while pos < members.len() {
            let mut row = vec![None; k];
            for (a, slot) in row.iter_mut().enumerate() {
                let next = self.step_set(&members[pos], a);
                if next.is_empty() {
                    continue;
                }
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = members.len();
                        index.insert(next.clone(), id);
                        members.push(next);
                        id
                    }
                };
                *slot = Some(id);
            }
            delta.push(row);
            pos += 1;
        }
        let labels = members
            .iter()
            .map(|m| m.iter().map(|&p| self.labels[p].as_str()).collect::<Vec<_>>().join(","))
            .collect();
        let terminal = members.iter().map(|m| m.iter().any(|&p| self.terminal[p])).collect();
        Subsets {
            dfa: Dfa { alphabet: self.alphabet.clone(), labels, initial: Some(0), terminal, delta },
            members,
        }
    }

    /// Non-empty, trim, and strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        let (t, _) = self.trim_with_map();
        t.num_states() == self.num_states() && graph::strongly_connected(&self.adjacency())
    }

    /// Accepted words of length at most `max_len`, length-lex order.
    pub fn enumerate_accepted(&self, max_len: usize) -> Vec<Word> {
        self.determinize().dfa.enumerate_accepted(max_len)
    }

    /// Isomorphism preserving letters, initial and terminal flags.
    pub fn is_isomorphic(&self, other: &Nfa) -> bool {
        let n = self.num_states();
        if n != other.num_states() || self.alphabet.size() != other.alphabet.size() {
            return false;
        }
        let sig = |m: &Nfa, p: State| {
            let preds = m.reverse();
            (
                m.initial[p],
                m.terminal[p],
                m.edges[p].iter().map(Vec::len).collect::<Vec<_>>(),
                preds.edges[p].iter().map(Vec::len).collect::<Vec<_>>(),
            )
        };
        let sa: Vec<_> = (0..n).map(|p| sig(self, p)).collect();
        let sb: Vec<_> = (0..n).map(|p| sig(other, p)).collect();
        let mut ma = sa.clone();
        let mut mb = sb.clone();
        ma.sort();
        mb.sort();
        if ma != mb {
            return false;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.iso_extend(other, &sa, &sb, &mut map, &mut used)
    }

    fn iso_consistent(&self, other: &Nfa, map: &[usize], p: State) -> bool {
        for a in 0..self.alphabet.size() {
            for &q in &self.edges[p][a] {
                if map[q] != usize::MAX && other.edges[map[p]][a].binary_search(&map[q]).is_err() {
                    return false;
                }
            }
            for (r, row) in self.edges.iter().enumerate() {
                if map[r] != usize::MAX && row[a].binary_search(&p).is_ok() && other.edges[map[r]][a].binary_search(&map[p]).is_err() {
                    return false;
                }
            }
        }
        true
    }

    fn iso_extend<S: PartialEq>(&self, other: &Nfa, sa: &[S], sb: &[S], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = self.num_states();
        let Some(p) = (0..n).find(|&p| map[p] == usize::MAX) else {
            return true;
        };
        for q in 0..n {
            if used[q] || sa[p] != sb[q] {
                continue;
            }
            map[p] = q;
            used[q] = true;
            if self.iso_consistent(other, map, p) && self.iso_extend(other, sa, sb, map, used) {
                return true;
            }
            map[p] = usize::MAX;
            used[q] = false;
        }
        false
    }
}

/// Literal automaton of `X*` for a prefix code `X`: states are the proper
/// prefixes of `X` in length-lex order, with `ε` initial and terminal.
pub fn literal_automaton(alphabet: &Alphabet, code: &[Word]) -> Result<Dfa> {
    check_prefix_code(alphabet, code)?;
    let set: BTreeSet<&Word> = code.iter().collect();
    let prefixes: BTreeSet<Word> = code.iter().flat_map(|x| x.proper_prefixes()).collect();
    let prefixes: Vec<Word> = prefixes.into_iter().collect();
    let index: BTreeMap<&Word, State> = prefixes.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let mut delta = vec![vec![None; alphabet.size()]; prefixes.len()];
    for (k, p) in prefixes.iter().enumerate() {
        for (a, slot) in delta[k].iter_mut().enumerate() {
            let pa = p.appended(a);
            *slot = if let Some(&q) = index.get(&pa) {
                Some(q)
            } else if set.contains(&pa) {
                Some(0)
            } else {
                None
            };
        }
    }
    let labels = prefixes.iter().map(|p| alphabet.render(p)).collect();
    let initial = if prefixes.is_empty() { None } else { Some(0) };
    Dfa::new(alphabet.clone(), Some(labels), initial, if prefixes.is_empty() { &[] } else { &[0] }, delta)
}

/// Error unless `code` is a prefix code without the empty word.
pub fn check_prefix_code(alphabet: &Alphabet, code: &[Word]) -> Result<()> {
    if code.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyWordInCode);
    }
    let mut sorted: Vec<&Word> = code.iter().collect();
    sorted.sort_by(|u, v| u.letters().cmp(v.letters()));
    sorted.dedup();
    for pair in sorted.windows(2) {
        if pair[1].has_prefix(pair[0]) {
            return Err(Error::NotPrefixCode { first: alphabet.render(pair[0]), second: alphabet.render(pair[1]) });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rev_left() -> Dfa {
        Dfa::from_transitions(Alphabet::binary(), 2, 0, &[0], &[(0, 0, 0), (0, 1, 1), (1, 0, 0)]).unwrap()
    }

    #[test]
    fn reversal_of_two_state_example() {
        let s = rev_left().deterministic_reversal();
        assert_eq!(s.members, vec![vec![0], vec![0, 1]]);
        assert_eq!(s.dfa.next(0, 0), Some(1));
        assert_eq!(s.dfa.next(0, 1), None);
        assert_eq!(s.dfa.next(1, 0), Some(1));
        assert_eq!(s.dfa.next(1, 1), Some(0));
        assert_eq!(s.dfa.terminals(), vec![0, 1]);
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        let d = Dfa::from_transitions(Alphabet::binary(), 3, 0, &[1, 2], &[(0, 0, 1), (0, 1, 2), (1, 0, 1), (2, 0, 2)]).unwrap();
        let m = d.minimize();
        assert_eq!(m.num_states(), 2);
        assert!(m.accepts(&[1, 0, 0]));
        assert!(!m.accepts(&[]));
    }

    #[test]
    fn empty_language_minimizes_to_zero_states() {
        let d = Dfa::from_transitions(Alphabet::binary(), 2, 0, &[], &[(0, 0, 1)]).unwrap();
        assert_eq!(d.minimize().num_states(), 0);
        assert!(!d.minimize().is_strongly_connected());
    }

    #[test]
    fn literal_automaton_rejects_non_prefix_code() {
        let a = Alphabet::binary();
        let code = a.parse_words("a ab").unwrap();
        assert!(matches!(literal_automaton(&a, &code), Err(Error::NotPrefixCode { .. })));
        let code = a.parse_words("a ba").unwrap();
        let lit = literal_automaton(&a, &code).unwrap();
        assert!(lit.is_isomorphic(&rev_left()));
    }

    #[test]
    fn nfa_isomorphism_detects_relabelling() {
        let a = Alphabet::binary();
        let n1 = Nfa::new(a.clone(), None, 3, &[0], &[2], &[(0, 0, 1), (1, 1, 2), (0, 0, 2)]).unwrap();
        let n2 = Nfa::new(a.clone(), None, 3, &[2], &[0], &[(2, 0, 1), (1, 1, 0), (2, 0, 0)]).unwrap();
        let n3 = Nfa::new(a, None, 3, &[2], &[0], &[(2, 0, 1), (1, 0, 0), (2, 0, 0)]).unwrap();
        assert!(n1.is_isomorphic(&n2));
        assert!(!n1.is_isomorphic(&n3));
    }
}
