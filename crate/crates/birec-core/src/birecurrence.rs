//! Recurrence, birecurrence, roots, degree, index and density.
//!
//! Every verdict is computed on the minimal automaton of the set. The
//! birecurrence test runs two independent routes (strong connectivity of
//! the deterministic reversal, and saturation of the terminal set by a
//! word of minimal rank); a disagreement is reported as an internal error.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::automaton::{check_prefix_code, literal_automaton, Dfa, State};
use crate::error::{domain, internal, Result};
use crate::graph;
use crate::monoid::{saturates, strongly_synchronizable_classes, transition_monoid, Monoid, PartialMap};
use crate::poly::{Bernoulli, Poly};
use crate::word::{Alphabet, Word};
use crate::Rational;

/// The minimal automaton of the set is strongly connected.
pub fn is_recurrent(dfa: &Dfa) -> bool {
    dfa.minimize().is_strongly_connected()
}

/// Outcome of both birecurrence routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirecurrenceCheck {
    pub recurrent: bool,
    pub birecurrent: bool,
    /// Strong connectivity of the minimal automaton of the reversal.
    pub reversal_strongly_connected: bool,
    /// Least word of minimal rank saturating the terminal set, if any.
    pub saturating_word: Option<Word>,
}

/// Run both routes on the minimal automaton and require agreement.
pub fn check_birecurrence(dfa: &Dfa, cap: usize) -> Result<BirecurrenceCheck> {
    let m = dfa.minimize();
    let recurrent = m.is_strongly_connected();
    let reversal_strongly_connected = m.deterministic_reversal().dfa.is_strongly_connected();
    if !recurrent {
        return Ok(BirecurrenceCheck { recurrent, birecurrent: false, reversal_strongly_connected, saturating_word: None });
    }
    let monoid = transition_monoid(&m, cap)?;
    let terminals = m.terminals();
    let saturating_word = monoid
        .minimal_rank_elements()
        .into_iter()
        .find(|&x| saturates(monoid.value(x), &terminals))
        .map(|x| monoid.witness(x).clone());
    if reversal_strongly_connected != saturating_word.is_some() {
        return Err(internal(alloc::format!(
            "birecurrence routes disagree: reversal strongly connected = {reversal_strongly_connected}, saturating word found = {}",
            saturating_word.is_some()
        )));
    }
    Ok(BirecurrenceCheck { recurrent, birecurrent: reversal_strongly_connected, reversal_strongly_connected, saturating_word })
}

pub fn is_birecurrent(dfa: &Dfa, cap: usize) -> Result<bool> {
    Ok(check_birecurrence(dfa, cap)?.birecurrent)
}

/// Minimal nonzero rank of the minimal automaton of a recurrent set.
pub fn degree(dfa: &Dfa, cap: usize) -> Result<usize> {
    let m = dfa.minimize();
    if !m.is_strongly_connected() {
        return Err(domain("degree is defined for recurrent sets only"));
    }
    transition_monoid(&m, cap)?.minimal_nonzero_rank().ok_or_else(|| internal("recurrent set without nonzero rank"))
}

/// Dense here means: the minimal automaton is complete. For a recurrent
/// set this is equivalent to the absence of a rank-zero element.
pub fn is_dense(dfa: &Dfa) -> bool {
    let m = dfa.minimize();
    m.num_states() > 0 && m.is_complete()
}

/// Degree, index and density of a dense birecurrent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub degree: usize,
    /// Number of kernel classes of the saturating word inside `T`.
    pub k: usize,
    pub index: Rational,
    pub density: Rational,
    pub saturating_word: Word,
}

/// Index `d/k`, cross-checked on every H-class `H` of the minimal ideal
/// against `Card(H) / Card(H ∩ φ(S))`.
pub fn index(dfa: &Dfa, cap: usize) -> Result<IndexReport> {
    let m = dfa.minimize();
    let check = check_birecurrence(&m, cap)?;
    if !check.birecurrent {
        return Err(domain("index is defined for birecurrent sets only"));
    }
    if !m.is_complete() {
        return Err(domain("index is defined for dense sets only"));
    }
    let monoid = transition_monoid(&m, cap)?;
    if monoid.zero().is_some() {
        return Err(internal("complete automaton with a rank-zero element"));
    }
    let green = monoid.green();
    let d = green.min_rank.ok_or_else(|| internal("no nonzero rank"))?;
    let terminals = m.terminals();
    let mut k_values = BTreeSet::new();
    let mut first = None;
    for &x in &green.ideal {
        let map = monoid.value(x);
        if saturates(map, &terminals) {
            let k = map.kernel().iter().filter(|c| terminals.contains(&c[0])).count();
            k_values.insert(k);
            first.get_or_insert(x);
        }
    }
    if k_values.len() != 1 {
        return Err(internal(alloc::format!("saturating words disagree on k: {k_values:?}")));
    }
    let k = *k_values.iter().next().expect("one value");
    let index = Rational::new((d as i64).into(), (k as i64).into());
    let i = m.initial().expect("non-empty");
    let in_set = |x: usize| monoid.value(x).apply(i).is_some_and(|q| m.is_terminal(q));
    let mut seen = BTreeSet::new();
    for &x in &green.ideal {
        if !seen.insert(green.h_class[x]) {
            continue;
        }
        let h = green.h_members(x);
        let hits = h.iter().filter(|&&y| in_set(y)).count();
        if hits == 0 {
            return Err(internal("H-class of the minimal ideal misses the set"));
        }
        let ratio = Rational::new((h.len() as i64).into(), (hits as i64).into());
        if ratio != index {
            return Err(internal(alloc::format!("index routes disagree: d/k = {index}, H-class ratio = {ratio}")));
        }
    }
    let saturating_word = monoid.witness(first.expect("saturating element")).clone();
    Ok(IndexReport { degree: d, k, density: index.recip(), index, saturating_word })
}

/// Density `1/i(S)` of a dense birecurrent set. The measure does not
/// change the value; it is accepted for interface symmetry.
pub fn density(dfa: &Dfa, _pi: &Bernoulli, cap: usize) -> Result<Rational> {
    Ok(index(dfa, cap)?.density)
}

/// `(1/n) Σ_{k<n} π(S ∩ Aᵏ)`, by exact dynamic programming over states.
pub fn cesaro_average(dfa: &Dfa, pi: &Bernoulli, n: usize) -> Rational {
    let Some(i) = dfa.initial() else { return Rational::zero() };
    let mut v = vec![Rational::zero(); dfa.num_states()];
    v[i] = Rational::one();
    let mut total = Rational::zero();
    for _ in 0..n {
        for (p, x) in v.iter().enumerate() {
            if dfa.is_terminal(p) {
                total += x;
            }
        }
        let mut next = vec![Rational::zero(); dfa.num_states()];
        for (p, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (a, prob) in pi.probabilities().iter().enumerate() {
                if let Some(q) = dfa.next(p, a) {
                    next[q] += x * prob;
                }
            }
        }
        v = next;
    }
    total / Rational::from_integer((n as i64).into())
}

/// A set of words, finite and listed, or infinite and given by a
/// deterministic automaton recognizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordSet {
    Finite(Vec<Word>),
    Infinite(Dfa),
}

impl WordSet {
    pub fn is_finite(&self) -> bool {
        matches!(self, WordSet::Finite(_))
    }

    /// Members of length at most `n`, length-lex order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        match self {
            WordSet::Finite(ws) => ws.iter().filter(|w| w.len() <= n).cloned().collect(),
            WordSet::Infinite(d) => d.enumerate_accepted(n),
        }
    }

    pub fn finite(&self) -> Option<&[Word]> {
        match self {
            WordSet::Finite(ws) => Some(ws),
            WordSet::Infinite(_) => None,
        }
    }

    fn reversed(&self) -> WordSet {
        match self {
            WordSet::Finite(ws) => {
                let mut v: Vec<Word> = ws.iter().map(Word::reversed).collect();
                v.sort();
                WordSet::Finite(v)
            }
            WordSet::Infinite(d) => WordSet::Infinite(d.deterministic_reversal().dfa.minimize()),
        }
    }
}

/// `S = X*P = QY*` for a birecurrent set `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrentDecomposition {
    pub minimal: Dfa,
    pub left_root: WordSet,
    pub prefixes: WordSet,
    pub right_root: WordSet,
    pub suffixes: WordSet,
}

impl RecurrentDecomposition {
    pub fn is_finite_type(&self) -> bool {
        self.left_root.is_finite() && self.right_root.is_finite()
    }
}

/// Left root `X` (first returns to the initial state) and the set `P` of
/// proper prefixes `p` of `X` ending in a terminal state, for a recurrent set.
pub fn left_root(dfa: &Dfa) -> Result<(WordSet, WordSet)> {
    let m = dfa.minimize();
    if !m.is_strongly_connected() {
        return Err(domain("left root is defined for recurrent sets only"));
    }
    Ok(left_root_of_minimal(&m))
}

fn left_root_of_minimal(m: &Dfa) -> (WordSet, WordSet) {
    let i = m.initial().expect("non-empty");
    let n = m.num_states();
    let k = m.alphabet().size();
    let adj: Vec<Vec<usize>> = (0..n).map(|p| (0..k).filter_map(|a| m.next(p, a)).filter(|&q| q != i).collect()).collect();
    let mut keep = vec![true; n];
    keep[i] = false;
    if graph::has_cycle(&adj, &keep) {
        let mut root = vec![vec![None; k]; n + 1];
        let mut pre = vec![vec![None; k]; n];
        for p in 0..n {
            for a in 0..k {
                if let Some(q) = m.next(p, a) {
                    root[p][a] = Some(if q == i { n } else { q });
                    pre[p][a] = (q != i).then_some(q);
                }
            }
        }
        let mut labels: Vec<String> = m.labels().to_vec();
        labels.push(alloc::format!("{}'", m.label(i)));
        let x = Dfa::new(m.alphabet().clone(), Some(labels), Some(i), &[n], root).expect("valid").minimize();
        let p = Dfa::new(m.alphabet().clone(), Some(m.labels().to_vec()), Some(i), &m.terminals(), pre).expect("valid").minimize();
        return (WordSet::Infinite(x), WordSet::Infinite(p));
    }
    let mut x = Vec::new();
    let mut p = Vec::new();
    if m.is_terminal(i) {
        p.push(Word::empty());
    }
    let mut stack = vec![(i, Word::empty())];
    while let Some((s, w)) = stack.pop() {
        for a in 0..k {
            if let Some(q) = m.next(s, a) {
                let wa = w.appended(a);
                if q == i {
                    x.push(wa);
                } else {
                    if m.is_terminal(q) {
                        p.push(wa.clone());
                    }
                    stack.push((q, wa));
                }
            }
        }
    }
    x.sort();
    p.sort();
    (WordSet::Finite(x), WordSet::Finite(p))
}

/// Right root `Y` and the set `Q` with `S = QY*`, through the reversal.
pub fn right_root(dfa: &Dfa) -> Result<(WordSet, WordSet)> {
    let rev = dfa.minimize().deterministic_reversal().dfa.minimize();
    if !rev.is_strongly_connected() {
        return Err(domain("right root is defined when the reversal is recurrent"));
    }
    let (y, q) = left_root_of_minimal(&rev);
    Ok((y.reversed(), q.reversed()))
}

/// Both roots of a birecurrent set.
pub fn decomposition(dfa: &Dfa, cap: usize) -> Result<RecurrentDecomposition> {
    if !is_birecurrent(dfa, cap)? {
        return Err(domain("set is not birecurrent"));
    }
    let (left_root, prefixes) = left_root(dfa)?;
    let (right_root, suffixes) = right_root(dfa)?;
    Ok(RecurrentDecomposition { minimal: dfa.minimize(), left_root, prefixes, right_root, suffixes })
}

pub fn is_finite_type(dfa: &Dfa, cap: usize) -> Result<bool> {
    Ok(decomposition(dfa, cap)?.is_finite_type())
}

/// Check `S = X*P` and `S = QY*` coefficient-wise on words of length at
/// most `bound` (each product must also be unambiguous).
pub fn verify_decomposition(dec: &RecurrentDecomposition, bound: usize) -> bool {
    let target = Poly::from_words(&dec.minimal.enumerate_accepted(bound));
    let x = Poly::from_words(&dec.left_root.words_up_to(bound));
    let p = Poly::from_words(&dec.prefixes.words_up_to(bound));
    let y = Poly::from_words(&dec.right_root.words_up_to(bound));
    let q = Poly::from_words(&dec.suffixes.words_up_to(bound));
    let left = x.star_truncated(bound).expect("no empty word").mul_truncated(&p, bound);
    let right = q.mul_truncated(&y.star_truncated(bound).expect("no empty word"), bound);
    left == target && right == target
}

/// The terminal sets saturated by one word of minimal rank: every
/// nonempty union of its kernel classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationFamily {
    pub witness: Word,
    pub kernel: Vec<Vec<State>>,
    pub sets: Vec<Vec<State>>,
}

/// One family per distinct kernel of minimal rank, in witness order; the
/// first family belongs to the least word of minimal rank.
pub fn saturated_terminal_sets(dfa: &Dfa, cap: usize) -> Result<Vec<SaturationFamily>> {
    if !dfa.is_strongly_connected() {
        return Err(domain("saturated terminal sets need a strongly connected automaton"));
    }
    let monoid = transition_monoid(dfa, cap)?;
    let mut out: Vec<SaturationFamily> = Vec::new();
    for x in monoid.minimal_rank_elements() {
        let kernel = monoid.value(x).kernel();
        if out.iter().any(|f| f.kernel == kernel) {
            continue;
        }
        let c = kernel.len();
        let mut sets = Vec::with_capacity((1usize << c) - 1);
        for mask in 1usize..(1 << c) {
            let mut s: Vec<State> = (0..c).filter(|j| mask >> j & 1 == 1).flat_map(|j| kernel[j].iter().copied()).collect();
            s.sort_unstable();
            sets.push(s);
        }
        out.push(SaturationFamily { witness: monoid.witness(x).clone(), kernel, sets });
    }
    Ok(out)
}

/// How a finite maximal prefix code relates to birecurrent sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `X ⊂ Z*` for a prefix code `Z` other than `X` and the alphabet.
    Decomposable { inner: Vec<Word> },
    /// Indecomposable of degree 1.
    Synchronized,
    /// Indecomposable of degree `degree ≥ 2`: `X` is the left root of the
    /// dense birecurrent set recognized by the minimal automaton of `X*`
    /// with terminal set `terminal` (a kernel class of a minimal-rank word).
    LeftRootOfDenseBirecurrent { degree: usize, terminal: Vec<State>, automaton: Dfa },
}

/// Classify a finite maximal prefix code.
pub fn classify_code(alphabet: &Alphabet, code: &[Word], cap: usize) -> Result<Classification> {
    check_prefix_code(alphabet, code)?;
    let lit = literal_automaton(alphabet, code)?;
    if !lit.is_complete() {
        return Err(domain("code is not a maximal prefix code"));
    }
    let m = lit.minimize();
    let monoid = transition_monoid(&m, cap)?;
    let d = monoid.minimal_nonzero_rank().ok_or_else(|| internal("no nonzero rank"))?;
    let classes = strongly_synchronizable_classes(&m, cap)?;
    let inner = decomposition_witness(alphabet, &lit);
    if classes.len() < m.num_states() && inner.is_none() {
        return Err(internal("strong synchronizability is nontrivial but no decomposition was found"));
    }
    if let Some(inner) = inner {
        return Ok(Classification::Decomposable { inner });
    }
    if d == 1 {
        return Ok(Classification::Synchronized);
    }
    let x = monoid.minimal_rank_elements()[0];
    let i = m.initial().expect("non-empty");
    let class = monoid.value(x).kernel().into_iter().find(|c| c.contains(&i)).expect("total map");
    let automaton = m.with_terminals(&class);
    let (root, _) = left_root(&automaton)?;
    let expected: Vec<Word> = {
        let mut v = code.to_vec();
        v.sort();
        v
    };
    if root.finite() != Some(expected.as_slice()) || automaton.minimize().num_states() != m.num_states() {
        return Err(internal("left root of the constructed set differs from the code"));
    }
    if !is_birecurrent(&automaton, cap)? || !is_dense(&automaton) {
        return Err(internal("constructed set is not dense birecurrent"));
    }
    Ok(Classification::LeftRootOfDenseBirecurrent { degree: d, terminal: class, automaton })
}

/// States `C` of the literal automaton with `ε ∈ C` such that all states
/// of `C` have the same future into `C`; the least one containing `seed`.
fn closed_cut_set(lit: &Dfa, seed: State) -> Vec<bool> {
    let n = lit.num_states();
    let k = lit.alphabet().size();
    let mut c = vec![false; n];
    c[0] = true;
    c[seed] = true;
    loop {
        let mut changed = false;
        for p in 0..n {
            if !c[p] || p == 0 {
                continue;
            }
            let mut seen = BTreeSet::new();
            let mut stack = vec![(0usize, p)];
            seen.insert((0usize, p));
            while let Some((x, y)) = stack.pop() {
                if c[x] != c[y] {
                    c[x] = true;
                    c[y] = true;
                    changed = true;
                }
                for a in 0..k {
                    if let (Some(x2), Some(y2)) = (lit.next(x, a), lit.next(y, a)) {
                        if seen.insert((x2, y2)) {
                            stack.push((x2, y2));
                        }
                    }
                }
            }
        }
        if !changed {
            return c;
        }
    }
}

/// A prefix code `Z ∉ {X, A}` with `X ⊂ Z*`, read off a closed cut set of
/// the literal automaton of `X*`.
fn decomposition_witness(alphabet: &Alphabet, lit: &Dfa) -> Option<Vec<Word>> {
    let n = lit.num_states();
    for seed in 1..n {
        let c = closed_cut_set(lit, seed);
        if c.iter().all(|&b| b) {
            continue;
        }
        let mut z = Vec::new();
        let mut stack = vec![(0usize, Word::empty())];
        while let Some((s, w)) = stack.pop() {
            for a in 0..alphabet.size() {
                if let Some(q) = lit.next(s, a) {
                    let wa = w.appended(a);
                    if c[q] {
                        z.push(wa);
                    } else {
                        stack.push((q, wa));
                    }
                }
            }
        }
        z.sort();
        return Some(z);
    }
    None
}

/// Degree-one check used by reports: the minimal automaton has a word of rank 1.
pub fn is_synchronized(m: &Monoid<PartialMap>) -> bool {
    m.minimal_nonzero_rank() == Some(1)
}

/// Human-readable name of a classification.
pub fn classification_name(c: &Classification) -> &'static str {
    match c {
        Classification::Decomposable { .. } => "decomposable",
        Classification::Synchronized => "synchronized",
        Classification::LeftRootOfDenseBirecurrent { .. } => "left-root-of-dense-birecurrent",
    }
}
