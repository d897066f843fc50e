//! Unambiguity of nondeterministic automata and recurrence through the
//! monoid of 0/1 matrices.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{Nfa, State};
use crate::error::{domain, internal, Error, Result};
use crate::graph;
use crate::monoid::{BoolMatrix, Monoid, Transformation};
use crate::word::Word;

/// Two distinct successful paths with the same label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Word,
    pub first: Vec<State>,
    pub second: Vec<State>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnambiguityWitness {
    pub verdict: bool,
    pub witness: Option<Ambiguity>,
}

/// Largest automaton on which the pair test is cross-checked against
/// closure of the 0/1 matrix monoid.
const CROSS_CHECK_STATES: usize = 10;
const CROSS_CHECK_CAP: usize = 200_000;

/// Pair-automaton test. States of the result paths use the input numbering.
pub fn is_unambiguous(nfa: &Nfa) -> UnambiguityWitness {
    let (t, kept) = nfa.trim_with_map();
    let witness = pair_search(&t).map(|amb| Ambiguity {
        word: amb.word,
        first: amb.first.iter().map(|&p| kept[p]).collect(),
        second: amb.second.iter().map(|&p| kept[p]).collect(),
    });
    let verdict = witness.is_none();
    if t.num_states() <= CROSS_CHECK_STATES {
        match matrix_monoid(&t, CROSS_CHECK_CAP) {
            Ok(m) => {
                // Distinct initial or terminal states give paths counted by λμ(w)γ, not by entries.
                let (i, f) = (t.initials(), t.terminals());
                let single = m.elements().iter().all(|x| i.iter().map(|&p| f.iter().filter(|&&q| x.get(p, q)).count()).sum::<usize>() <= 1);
                assert_eq!(verdict, single, "0/1 closure contradicts the pair test");
            }
            Err(Error::Domain(_)) => assert!(!verdict, "0/1 closure contradicts the pair test"),
            Err(_) => {}
        }
    }
    UnambiguityWitness { verdict, witness }
}

fn pair_search(t: &Nfa) -> Option<Ambiguity> {
    let n = t.num_states();
    let k = t.alphabet().size();
    let id = |p: State, q: State| p * n + q;
    // Backward reachability to terminal pairs.
    let mut pred = vec![Vec::new(); n * n];
    for p in 0..n {
        for q in 0..n {
            for a in 0..k {
                for &p2 in t.successors(p, a) {
                    for &q2 in t.successors(q, a) {
                        pred[id(p2, q2)].push(id(p, q));
                    }
                }
            }
        }
    }
    let finals: Vec<usize> = t.terminals().iter().flat_map(|&p| t.terminals().into_iter().map(move |q| id(p, q))).collect();
    let coacc = graph::reachable(&pred, finals);
    // Breadth-first search from initial pairs, remembering parents.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let mut queue = VecDeque::new();
    for &p in &t.initials() {
        for &q in &t.initials() {
            seen[id(p, q)] = true;
            queue.push_back(id(p, q));
        }
    }
    let mut hit = None;
    while let Some(x) = queue.pop_front() {
        let (p, q) = (x / n, x % n);
        if p != q && coacc[x] {
            hit = Some(x);
            break;
        }
        for a in 0..k {
            for &p2 in t.successors(p, a) {
                for &q2 in t.successors(q, a) {
                    let y = id(p2, q2);
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = Some((x, a));
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    let hit = hit?;
    let mut pairs = vec![hit];
    let mut letters = Vec::new();
    let mut cur = hit;
    while let Some((prev, a)) = parent[cur] {
        pairs.push(prev);
        letters.push(a);
        cur = prev;
    }
    pairs.reverse();
    letters.reverse();
    // Forward search from the off-diagonal pair to a terminal pair.
    let mut fparent: Vec<Option<(usize, usize)>> = vec![None; n * n];
    let mut fseen = vec![false; n * n];
    fseen[hit] = true;
    let mut queue = VecDeque::from([hit]);
    let is_final = |x: usize| t.is_terminal(x / n) && t.is_terminal(x % n);
    let mut end = None;
    while let Some(x) = queue.pop_front() {
        if is_final(x) {
            end = Some(x);
            break;
        }
        let (p, q) = (x / n, x % n);
        for a in 0..k {
            for &p2 in t.successors(p, a) {
                for &q2 in t.successors(q, a) {
                    let y = id(p2, q2);
                    if !fseen[y] && coacc[y] {
                        fseen[y] = true;
                        fparent[y] = Some((x, a));
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    let mut tail = Vec::new();
    let mut tail_letters = Vec::new();
    let mut cur = end.expect("coaccessible pair reaches a terminal pair");
    while let Some((prev, a)) = fparent[cur] {
        tail.push(cur);
        tail_letters.push(a);
        cur = prev;
    }
    tail.reverse();
    tail_letters.reverse();
    pairs.extend(tail);
    letters.extend(tail_letters);
    Some(Ambiguity {
        word: Word::from_letters(letters),
        first: pairs.iter().map(|&x| x / n).collect(),
        second: pairs.iter().map(|&x| x % n).collect(),
    })
}

/// Adjacency matrix of one letter.
pub fn letter_matrix(nfa: &Nfa, a: usize) -> BoolMatrix {
    let mut m = BoolMatrix::zeros(nfa.num_states());
    for p in 0..nfa.num_states() {
        for &q in nfa.successors(p, a) {
            m.set(p, q);
        }
    }
    m
}

/// Monoid of 0/1 matrices; a domain error reports a product with an entry
/// above 1, which on a trim automaton means ambiguity.
pub fn matrix_monoid(nfa: &Nfa, cap: usize) -> Result<Monoid<BoolMatrix>> {
    let gens = (0..nfa.alphabet().size()).map(|a| letter_matrix(nfa, a)).collect();
    Monoid::generate(BoolMatrix::identity(nfa.num_states()), gens, cap)
}

/// Recurrence data of a trim, unambiguous, strongly connected automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnambiguousRecurrence {
    pub min_rank: usize,
    pub delta_strongly_connected: bool,
    pub reversal_strongly_connected: bool,
    /// Least minimal-rank word `x` with `I·x = I`.
    pub witness_x: Option<Word>,
    /// Least minimal-rank word `y` with `y·T = T`.
    pub witness_y: Option<Word>,
}

impl UnambiguousRecurrence {
    pub fn birecurrent(&self) -> bool {
        self.witness_x.is_some() && self.witness_y.is_some()
    }
}

pub fn unambiguous_recurrence(nfa: &Nfa, cap: usize) -> Result<UnambiguousRecurrence> {
    if nfa.trim().num_states() != nfa.num_states() || nfa.num_states() == 0 {
        return Err(domain("automaton is not trim"));
    }
    if !is_unambiguous(nfa).verdict {
        return Err(domain("automaton is ambiguous"));
    }
    if !nfa.is_strongly_connected() {
        return Err(domain("automaton is not strongly connected"));
    }
    let m = matrix_monoid(nfa, cap)?;
    let min_rank = m.minimal_nonzero_rank().ok_or_else(|| internal("no element of nonzero rank"))?;
    let initials = nfa.initials();
    let terminals = nfa.terminals();
    let minimal = m.minimal_rank_elements();
    let witness_x = minimal.iter().find(|&&x| m.value(x).image_of(&initials) == initials).map(|&x| m.witness(x).clone());
    let witness_y = minimal.iter().find(|&&y| m.value(y).preimage_of(&terminals) == terminals).map(|&y| m.witness(y).clone());
    let delta_strongly_connected = nfa.determinize().dfa.is_strongly_connected();
    let reversal_strongly_connected = nfa.reverse().determinize().dfa.is_strongly_connected();
    if witness_x.is_some() != delta_strongly_connected || witness_y.is_some() != reversal_strongly_connected {
        return Err(internal("matrix criterion and subset automata disagree"));
    }
    Ok(UnambiguousRecurrence { min_rank, delta_strongly_connected, reversal_strongly_connected, witness_x, witness_y })
}

/// Rational rank of the matrix of a word.
pub fn word_rank(nfa: &Nfa, w: &[usize]) -> Result<usize> {
    let mut m = BoolMatrix::identity(nfa.num_states());
    for &a in w {
        m = m.then(&letter_matrix(nfa, a)).map_err(domain)?;
    }
    Ok(m.rank())
}
