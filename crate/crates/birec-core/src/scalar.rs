//! Deterministic automata with a rational output on each state.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::automaton::{Dfa, State};
use crate::error::{internal, invalid, Result};
use crate::graph;
use crate::word::{Alphabet, Letter};
use crate::Rational;

/// Recognizes the series `w ↦ τ(i·w)`, zero where `i·w` is undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarOutputDfa {
    alphabet: Alphabet,
    labels: Vec<String>,
    initial: Option<State>,
    output: Vec<Rational>,
    delta: Vec<Vec<Option<State>>>,
}

impl ScalarOutputDfa {
    pub fn new(
        alphabet: Alphabet,
        labels: Option<Vec<String>>,
        initial: Option<State>,
        output: Vec<Rational>,
        delta: Vec<Vec<Option<State>>>,
    ) -> Result<Self> {
        if output.len() != delta.len() {
            return Err(invalid("output count differs from state count"));
        }
        // Reuse the structural checks of plain automata.
        let shape = Dfa::new(alphabet.clone(), labels, initial, &[], delta.clone())?;
        Ok(ScalarOutputDfa { alphabet, labels: shape.labels().to_vec(), initial, output, delta })
    }

    /// Output 1 on terminal states and 0 elsewhere.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let output = (0..dfa.num_states()).map(|p| if dfa.is_terminal(p) { crate::int(1) } else { Rational::zero() }).collect();
        ScalarOutputDfa {
            alphabet: dfa.alphabet().clone(),
            labels: dfa.labels().to_vec(),
            initial: dfa.initial(),
            output,
            delta: dfa.table().to_vec(),
        }
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

    pub fn initial(&self) -> Option<State> {
        self.initial
    }

    pub fn output(&self, p: State) -> &Rational {
        &self.output[p]
    }

    pub fn next(&self, p: State, a: Letter) -> Option<State> {
        self.delta[p][a]
    }

    pub fn table(&self) -> &[Vec<Option<State>>] {
        &self.delta
    }

    pub fn coefficient(&self, w: &[Letter]) -> Rational {
        let mut p = match self.initial {
            Some(i) => i,
            None => return Rational::zero(),
        };
        for &a in w {
            match self.delta[p][a] {
                Some(q) => p = q,
                None => return Rational::zero(),
            }
        }
        self.output[p].clone()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        self.delta.iter().map(|row| row.iter().flatten().copied().collect()).collect()
    }

    /// Minimal automaton: accessible states whose residual series is
    /// nonzero, merged when their residual series are equal.
    pub fn minimize(&self) -> ScalarOutputDfa {
        let n = self.num_states();
        let Some(i) = self.initial else {
            return self.clone();
        };
        let adj = self.adjacency();
        let acc = graph::reachable(&adj, [i]);
        let live = graph::reachable(&graph::transpose(&adj), (0..n).filter(|&p| !self.output[p].is_zero()));
        let keep: Vec<bool> = (0..n).map(|p| acc[p] && live[p]).collect();
        if !keep[i] {
            return ScalarOutputDfa { alphabet: self.alphabet.clone(), labels: Vec::new(), initial: None, output: Vec::new(), delta: Vec::new() };
        }
        let kept: Vec<State> = (0..n).filter(|&p| keep[p]).collect();
        let k = self.alphabet.size();
        let values: BTreeSet<&Rational> = kept.iter().map(|&p| &self.output[p]).collect();
        let value_id: BTreeMap<&Rational, usize> = values.into_iter().enumerate().map(|(j, v)| (v, j)).collect();
        let mut class = vec![usize::MAX; n];
        for &p in &kept {
            class[p] = value_id[&self.output[p]];
        }
        let mut count = value_id.len();
        loop {
            let mut ids: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
            let mut next = vec![usize::MAX; n];
            for &p in &kept {
                let sig = (0..k).map(|a| self.delta[p][a].filter(|&q| keep[q]).map_or(usize::MAX, |q| class[q])).collect();
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
        // Breadth-first renumbering from the initial class.
        let mut rep = vec![usize::MAX; count];
        for &p in &kept {
            if rep[class[p]] == usize::MAX {
                rep[class[p]] = p;
            }
        }
        let mut order = vec![class[i]];
        let mut index = vec![usize::MAX; count];
        index[class[i]] = 0;
        let mut pos = 0;
        while pos < order.len() {
            let p = rep[order[pos]];
            pos += 1;
            for a in 0..k {
                if let Some(q) = self.delta[p][a].filter(|&q| keep[q]) {
                    if index[class[q]] == usize::MAX {
                        index[class[q]] = order.len();
                        order.push(class[q]);
                    }
                }
            }
        }
        let delta = order
            .iter()
            .map(|&c| (0..k).map(|a| self.delta[rep[c]][a].filter(|&q| keep[q]).map(|q| index[class[q]])).collect())
            .collect();
        ScalarOutputDfa {
            alphabet: self.alphabet.clone(),
            labels: order.iter().map(|&c| self.labels[rep[c]].clone()).collect(),
            initial: Some(0),
            output: order.iter().map(|&c| self.output[rep[c]].clone()).collect(),
            delta,
        }
    }

    /// Distinct nonzero outputs, increasing.
    pub fn output_values(&self) -> Vec<Rational> {
        let set: BTreeSet<&Rational> = self.output.iter().filter(|v| !v.is_zero()).collect();
        set.into_iter().cloned().collect()
    }

    /// For each nonzero output `α`, the minimal automaton of the set of
    /// words with coefficient `α`. A recurrent series has recurrent level sets.
    pub fn level_sets(&self) -> Result<Vec<(Rational, Dfa)>> {
        let recurrent = self.is_recurrent_series();
        let mut out = Vec::new();
        for alpha in self.output_values() {
            let t: Vec<State> = (0..self.num_states()).filter(|&p| self.output[p] == alpha).collect();
            let dfa = Dfa::new(self.alphabet.clone(), Some(self.labels.clone()), self.initial, &t, self.delta.clone())?.minimize();
            if recurrent && !dfa.is_strongly_connected() {
                return Err(internal("level set of a recurrent series is not recurrent"));
            }
            out.push((alpha, dfa));
        }
        Ok(out)
    }

    /// The minimal automaton is strongly connected.
    pub fn is_recurrent_series(&self) -> bool {
        let m = self.minimize();
        m.num_states() > 0 && graph::strongly_connected(&m.adjacency())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_output_collapses_to_one_state() {
        let a = Alphabet::binary();
        let c = Rational::new(3.into(), 2.into());
        let s = ScalarOutputDfa::new(a, None, Some(0), vec![c.clone(), c.clone()], vec![vec![Some(1), Some(0)], vec![Some(0), Some(1)]]).unwrap();
        let m = s.minimize();
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.output(0), &c);
        assert!(m.is_recurrent_series());
    }
}
