//! Seeded random automata for property tests, drawn by rejection sampling.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Dfa, Nfa};
use crate::unambiguous::is_unambiguous;
use crate::word::Alphabet;

/// Default seed of every generator.
pub const DEFAULT_SEED: u64 = 0x5EED;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Partial DFA with `n` states: each transition is defined with
/// probability `density`, each state terminal with probability 1/2.
pub fn random_dfa(rng: &mut impl Rng, alphabet: &Alphabet, n: usize, density: f64) -> Dfa {
    let mut edges = Vec::new();
    for p in 0..n {
        for a in 0..alphabet.size() {
            if rng.gen_bool(density) {
                edges.push((p, a, rng.gen_range(0..n)));
            }
        }
    }
    let mut terminals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if terminals.is_empty() {
        terminals.push(rng.gen_range(0..n));
    }
    Dfa::from_transitions(alphabet.clone(), n, 0, &terminals, &edges).expect("generated transitions are valid")
}

/// Strongly connected partial DFA with between 1 and `max_states` states.
pub fn random_strongly_connected_dfa(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> Dfa {
    loop {
        let n = rng.gen_range(1..=max_states);
        let dfa = random_dfa(rng, alphabet, n, 0.8);
        if dfa.is_strongly_connected() && dfa.num_states() == n {
            return dfa;
        }
    }
}

/// Complete DFA with exactly `n` states, strongly connected.
pub fn random_complete_strongly_connected_dfa(rng: &mut impl Rng, alphabet: &Alphabet, n: usize) -> Dfa {
    loop {
        let dfa = random_dfa(rng, alphabet, n, 1.0);
        if dfa.is_strongly_connected() {
            return dfa;
        }
    }
}

/// Trim, strongly connected, unambiguous NFA with at most `max_states` states.
pub fn random_unambiguous_nfa(rng: &mut impl Rng, alphabet: &Alphabet, max_states: usize) -> Nfa {
    loop {
        let n = rng.gen_range(1..=max_states);
        let mut edges = Vec::new();
        for p in 0..n {
            for a in 0..alphabet.size() {
                for q in 0..n {
                    if rng.gen_bool(0.3) {
                        edges.push((p, a, q));
                    }
                }
            }
        }
        let pick = |rng: &mut dyn rand::RngCore| -> Vec<usize> {
            let mut v: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            if v.is_empty() {
                v.push(rng.gen_range(0..n));
            }
            v
        };
        let initials = pick(rng);
        let terminals = pick(rng);
        let nfa = Nfa::new(alphabet.clone(), None, n, &initials, &terminals, &edges).expect("generated transitions are valid");
        if nfa.is_strongly_connected() && is_unambiguous(&nfa).verdict {
            return nfa;
        }
    }
}
