//! Linear representations of rational series over ℚ, the syntactic
//! representation of a recognizable set, eventual kernel and range,
//! complete reducibility and decomposition into birecurrent sets.
//!
//! Row convention throughout: the coefficient of `w` is `λ·μ(w)·γ` with
//! `λ` a row and `γ` a column, and the syntactic space is the row space.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use crate::automaton::{Dfa, Nfa, State};
use crate::birecurrence::{check_birecurrence, saturated_terminal_sets};
use crate::error::{domain, internal, invalid, Result};
use crate::graph;
use crate::linalg::{dot, is_zero_vector, unit_vector, zero_vector, QMatrix, QVector, SpanBasis};
use crate::monoid::{transition_monoid, GreenStructure, Monoid};
use crate::poly::Poly;
use crate::random;
use crate::scalar::ScalarOutputDfa;
use crate::unambiguous::is_unambiguous;
use crate::word::{Alphabet, Letter, Word};
use crate::Rational;

/// `(λ, μ, γ)` of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    alphabet: Alphabet,
    lambda: QVector,
    mu: Vec<QMatrix>,
    gamma: QVector,
}

impl LinearRepresentation {
    pub fn new(alphabet: Alphabet, lambda: QVector, mu: Vec<QMatrix>, gamma: QVector) -> Result<Self> {
        let n = lambda.len();
        if gamma.len() != n {
            return Err(invalid("λ and γ have different dimensions"));
        }
        if mu.len() != alphabet.size() {
            return Err(invalid("one matrix per letter is required"));
        }
        if mu.iter().any(|m| m.num_rows() != n || m.num_cols() != n) {
            return Err(invalid("matrix dimension differs from the dimension of λ"));
        }
        Ok(LinearRepresentation { alphabet, lambda, mu, gamma })
    }

    /// `λ = 𝟙(i)`, `μ(a)` the transition matrix of `a`, `γ = 𝟙(T)`.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let n = dfa.num_states();
        let lambda = match dfa.initial() {
            Some(i) => unit_vector(n, i),
            None => zero_vector(n),
        };
        let mu = (0..dfa.alphabet().size())
            .map(|a| {
                let mut m = QMatrix::zeros(n, n);
                for p in 0..n {
                    if let Some(q) = dfa.next(p, a) {
                        m.set(p, q, Rational::one());
                    }
                }
                m
            })
            .collect();
        let gamma = (0..n).map(|p| if dfa.is_terminal(p) { Rational::one() } else { Rational::zero() }).collect();
        LinearRepresentation { alphabet: dfa.alphabet().clone(), lambda, mu, gamma }
    }

    /// `λ = 𝟙(I)`, adjacency matrices, `γ = 𝟙(T)`; the automaton must be unambiguous.
    pub fn from_unambiguous(nfa: &Nfa) -> Result<Self> {
        let check = is_unambiguous(nfa);
        if let Some(amb) = check.witness {
            let shown: Vec<String> = amb.word.iter().map(|&a| String::from(nfa.alphabet().token(a))).collect();
            return Err(domain(alloc::format!("automaton is ambiguous: the word {:?} has two successful paths", shown.concat())));
        }
        let n = nfa.num_states();
        let ind = |set: Vec<State>| {
            let mut v = zero_vector(n);
            for p in set {
                v[p] = Rational::one();
            }
            v
        };
        let mu = (0..nfa.alphabet().size())
            .map(|a| {
                let mut m = QMatrix::zeros(n, n);
                for p in 0..n {
                    for &q in nfa.successors(p, a) {
                        m.set(p, q, Rational::one());
                    }
                }
                m
            })
            .collect();
        Ok(LinearRepresentation { alphabet: nfa.alphabet().clone(), lambda: ind(nfa.initials()), mu, gamma: ind(nfa.terminals()) })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn mu(&self, a: Letter) -> &QMatrix {
        &self.mu[a]
    }

    pub fn matrices(&self) -> &[QMatrix] {
        &self.mu
    }

    pub fn mu_word(&self, w: &[Letter]) -> QMatrix {
        w.iter().fold(QMatrix::identity(self.dim()), |acc, &a| &acc * &self.mu[a])
    }

    /// `λ·μ(w)`.
    pub fn row_after(&self, w: &[Letter]) -> QVector {
        w.iter().fold(self.lambda.clone(), |v, &a| self.mu[a].left_apply(&v))
    }

    /// `μ(w)·γ`.
    pub fn column_after(&self, w: &[Letter]) -> QVector {
        w.iter().rev().fold(self.gamma.clone(), |v, &a| self.mu[a].right_apply(&v))
    }

    pub fn coefficient(&self, w: &[Letter]) -> Rational {
        dot(&self.row_after(w), &self.gamma)
    }

    /// Coefficients of all words of length at most `n` agree.
    pub fn agrees_with(&self, other: &LinearRepresentation, n: usize) -> bool {
        let mut layer = vec![(self.lambda.clone(), other.lambda.clone())];
        for len in 0..=n {
            if layer.iter().any(|(u, v)| dot(u, &self.gamma) != dot(v, &other.gamma)) {
                return false;
            }
            if len == n {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|(u, v)| (0..self.alphabet.size()).map(move |a| (self.mu[a].left_apply(u), other.mu[a].left_apply(v))))
                .collect();
        }
        true
    }

    /// The representation in the basis formed by the rows of `basis`,
    /// which must span an invariant subspace containing `λ`.
    pub fn restrict_to_row_basis(&self, basis: &[QVector]) -> Result<LinearRepresentation> {
        let mut span = SpanBasis::new(self.dim());
        for v in basis {
            if span.push(v.clone()).is_none() {
                return Err(invalid("basis vectors are dependent"));
            }
        }
        let coords = |v: &[Rational]| span.coordinates(v).ok_or_else(|| invalid("subspace is not invariant"));
        let lambda = coords(&self.lambda)?;
        let mut mu = Vec::new();
        for m in &self.mu {
            let rows = basis.iter().map(|b| coords(&m.left_apply(b))).collect::<Result<Vec<_>>>()?;
            mu.push(QMatrix::from_rows(&rows));
        }
        let gamma = basis.iter().map(|b| dot(b, &self.gamma)).collect();
        Ok(LinearRepresentation { alphabet: self.alphabet.clone(), lambda, mu, gamma })
    }

    /// The representation in the basis formed by the columns `basis`,
    /// which must span a subspace containing `γ` and stable under every `μ(a)`.
    pub fn restrict_to_column_basis(&self, basis: &[QVector]) -> Result<LinearRepresentation> {
        let mut span = SpanBasis::new(self.dim());
        for v in basis {
            if span.push(v.clone()).is_none() {
                return Err(invalid("basis vectors are dependent"));
            }
        }
        let coords = |v: &[Rational]| span.coordinates(v).ok_or_else(|| invalid("subspace is not invariant"));
        let gamma = coords(&self.gamma)?;
        let k = basis.len();
        let mut mu = Vec::new();
        for m in &self.mu {
            let cols = basis.iter().map(|b| coords(&m.right_apply(b))).collect::<Result<Vec<_>>>()?;
            mu.push(QMatrix::from_columns(k, &cols));
        }
        let lambda = basis.iter().map(|b| dot(&self.lambda, b)).collect();
        Ok(LinearRepresentation { alphabet: self.alphabet.clone(), lambda, mu, gamma })
    }
}

/// Independent vectors reached from `start` by the letter actions, with
/// their words, explored layer by layer in length-lex order.
fn span_layers(
    start: QVector,
    alphabet_size: usize,
    extend: impl Fn(&Word, Letter) -> Word,
    act: impl Fn(&QVector, Letter) -> QVector,
) -> (Vec<QVector>, Vec<Word>) {
    let mut span = SpanBasis::new(start.len());
    let mut words = Vec::new();
    if span.push(start.clone()).is_none() {
        return (Vec::new(), words);
    }
    words.push(Word::empty());
    let mut layer = vec![(Word::empty(), start)];
    while !layer.is_empty() {
        let mut candidates: Vec<(Word, QVector)> =
            layer.iter().flat_map(|(w, v)| (0..alphabet_size).map(|a| (extend(w, a), act(v, a))).collect::<Vec<_>>()).collect();
        candidates.sort_by(|x, y| x.0.cmp(&y.0));
        layer = Vec::new();
        for (w, v) in candidates {
            if span.push(v.clone()).is_some() {
                words.push(w.clone());
                layer.push((w, v));
            }
        }
    }
    (span.vectors().to_vec(), words)
}

/// Result of the two-sided minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalRepresentation {
    pub rep: LinearRepresentation,
    /// Words `u` whose rows `λμ(u)` span the first restriction.
    pub forward_words: Vec<Word>,
    /// Words `v` whose columns `μ(v)γ` span the second restriction.
    pub backward_words: Vec<Word>,
}

/// Restrict to the span of the rows `λμ(w)`, then to the span of the
/// columns `μ(w)γ` of the result.
pub fn minimize_representation(rep: &LinearRepresentation) -> MinimalRepresentation {
    let k = rep.alphabet.size();
    let (rows, forward_words) = span_layers(rep.lambda.clone(), k, |w, a| w.appended(a), |v, a| rep.mu[a].left_apply(v));
    if rows.is_empty() {
        let empty = LinearRepresentation { alphabet: rep.alphabet.clone(), lambda: Vec::new(), mu: vec![QMatrix::zeros(0, 0); k], gamma: Vec::new() };
        return MinimalRepresentation { rep: empty, forward_words, backward_words: Vec::new() };
    }
    let step1 = rep.restrict_to_row_basis(&rows).expect("forward span is invariant");
    let (cols, backward_words) = span_layers(step1.gamma.clone(), k, |w, a| w.prepended(a), |v, a| step1.mu[a].right_apply(v));
    let step2 = if cols.is_empty() {
        LinearRepresentation { alphabet: rep.alphabet.clone(), lambda: Vec::new(), mu: vec![QMatrix::zeros(0, 0); k], gamma: Vec::new() }
    } else {
        step1.restrict_to_column_basis(&cols).expect("backward span is invariant")
    };
    MinimalRepresentation { rep: step2, forward_words, backward_words }
}

/// The syntactic representation of a recognizable set and its monoid.
#[derive(Clone, Debug)]
pub struct SyntacticData {
    /// Minimal automaton of the set.
    pub minimal: Dfa,
    /// Minimal representation; basis vector `j` is `𝟙(basis_sets[j])`.
    pub rep: LinearRepresentation,
    /// Basis vector `j` is `μ(basis_witnesses[j])·𝟙(T)`.
    pub basis_witnesses: Vec<Word>,
    pub basis_sets: Vec<Vec<State>>,
    pub monoid: Monoid<QMatrix>,
    pub green: GreenStructure,
    pub ek: Vec<QVector>,
    pub er: Vec<QVector>,
}

impl SyntacticData {
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn ek_dim(&self) -> usize {
        self.ek.len()
    }

    pub fn er_dim(&self) -> usize {
        self.er.len()
    }
}

fn indicator(n: usize, set: &[State]) -> QVector {
    let mut v = zero_vector(n);
    for &p in set {
        v[p] = Rational::one();
    }
    v
}

/// Syntactic representation through the subset states of the deterministic
/// reversal of the minimal automaton, in the order they are reached.
pub fn syntactic_data(dfa: &Dfa, cap: usize) -> Result<SyntacticData> {
    let minimal = dfa.minimize();
    let n = minimal.num_states();
    let full = LinearRepresentation::from_dfa(&minimal);
    let reversal = minimal.deterministic_reversal();
    let access = reversal.dfa.access_words();
    let mut span = SpanBasis::new(n);
    let mut basis_witnesses = Vec::new();
    let mut basis_sets = Vec::new();
    for (k, set) in reversal.members.iter().enumerate() {
        if span.push(indicator(n, set)).is_some() {
            basis_witnesses.push(access[k].clone().expect("subset states are accessible").reversed());
            basis_sets.push(set.clone());
        }
    }
    let k = minimal.alphabet().size();
    let rep = if span.is_empty() {
        LinearRepresentation { alphabet: minimal.alphabet().clone(), lambda: Vec::new(), mu: vec![QMatrix::zeros(0, 0); k], gamma: Vec::new() }
    } else {
        full.restrict_to_column_basis(span.vectors())?
    };
    let d = rep.dim();
    let monoid = Monoid::generate(QMatrix::identity(d), rep.mu.clone(), cap)?;
    let phi = transition_monoid(&minimal, cap)?;
    if d > 0 && (phi.witnesses() != monoid.witnesses() || phi.right_table() != monoid.right_table()) {
        return Err(internal("transition monoid and syntactic matrix monoid are not isomorphic"));
    }
    let green = monoid.green();
    let (ek, er) = eventual_spaces(&monoid, &green, d);
    Ok(SyntacticData { minimal, rep, basis_witnesses, basis_sets, monoid, green, ek, er })
}

/// Eventual kernel (common left kernel) and eventual range (row span) of
/// the elements of minimal nonzero rank.
pub fn eventual_spaces(monoid: &Monoid<QMatrix>, green: &GreenStructure, d: usize) -> (Vec<QVector>, Vec<QVector>) {
    if green.ideal.is_empty() {
        let ek = (0..d).map(|j| unit_vector(d, j)).collect();
        return (ek, Vec::new());
    }
    let mut image = SpanBasis::new(d);
    let mut stacked: Vec<QVector> = Vec::new();
    for &x in &green.ideal {
        let m = monoid.value(x);
        for r in m.rows_vec() {
            image.push(r);
        }
        stacked.extend(m.transpose().rows_vec());
    }
    // x·m = 0 for all m ⇔ x is orthogonal to every column of every m.
    let ek = QMatrix::from_rows(&stacked).right_kernel();
    (ek, image.vectors().to_vec())
}

/// `v·μ(a)` stays in the span of `basis` for every basis vector and letter.
pub fn is_invariant(rep: &LinearRepresentation, basis: &[QVector]) -> bool {
    let mut span = SpanBasis::new(rep.dim());
    for v in basis {
        span.push(v.clone());
    }
    basis.iter().all(|v| rep.mu.iter().all(|m| span.contains(&m.left_apply(v))))
}

/// Outcome of the complete-reducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reducibility {
    Reducible { ek_dim: usize, er_dim: usize },
    /// A nonzero vector of the eventual kernel.
    NotReducible { certificate: QVector },
    /// The set is not recurrent; `intersection_dim` is the dimension of
    /// `EK ∩ ER`, which is 0 whenever the set is completely reducible.
    Inapplicable { ek_dim: usize, er_dim: usize, intersection_dim: usize },
}

fn intersection_dim(d: usize, a: &[QVector], b: &[QVector]) -> usize {
    let mut sum = SpanBasis::new(d);
    for v in a.iter().chain(b) {
        sum.push(v.clone());
    }
    a.len() + b.len() - sum.len()
}

/// Complete reducibility of a recurrent set: the eventual kernel is zero.
pub fn is_completely_reducible(dfa: &Dfa, cap: usize) -> Result<Reducibility> {
    let data = syntactic_data(dfa, cap)?;
    reducibility_of(&data, cap)
}

fn reducibility_of(data: &SyntacticData, cap: usize) -> Result<Reducibility> {
    if !data.minimal.is_strongly_connected() {
        return Ok(Reducibility::Inapplicable {
            ek_dim: data.ek_dim(),
            er_dim: data.er_dim(),
            intersection_dim: intersection_dim(data.dim(), &data.ek, &data.er),
        });
    }
    if data.er_dim() != data.dim() {
        return Err(internal("eventual range of a recurrent set is not the whole space"));
    }
    let verdict = match data.ek.first() {
        None => Reducibility::Reducible { ek_dim: 0, er_dim: data.er_dim() },
        Some(v) => Reducibility::NotReducible { certificate: v.clone() },
    };
    if check_birecurrence(&data.minimal, cap)?.birecurrent && !matches!(verdict, Reducibility::Reducible { .. }) {
        return Err(internal("birecurrent set with a nonzero eventual kernel"));
    }
    Ok(verdict)
}

/// One term `c·𝟙(S_i)` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: Rational,
    /// Minimal automaton of `S_i`.
    pub automaton: Dfa,
    /// Terminal states of the automaton the term was read from, when it
    /// shares the states of the input's minimal automaton.
    pub terminals: Option<Vec<State>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Found { terms: Vec<Term>, method: DecompositionMethod },
    /// The strategies tried did not produce a combination; this is not a
    /// claim that none exists.
    NotFound { reason: String },
    NotCompletelyReducible { certificate: QVector },
    Inapplicable { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionMethod {
    Birecurrent,
    SaturatedSets,
    ConstructiveTrace,
}

/// `Σ cᵢ·𝟙(Sᵢ) = 𝟙(S)` on all words of length at most `bound`, checked on
/// the accessible part of the product automaton.
pub fn verify_combination(target: &Dfa, terms: &[(Rational, &Dfa)], bound: usize) -> bool {
    let k = target.alphabet().size();
    let start: Vec<Option<State>> = core::iter::once(target.initial()).chain(terms.iter().map(|(_, d)| d.initial())).collect();
    let value = |t: &[Option<State>]| {
        let lhs = terms.iter().zip(&t[1..]).fold(Rational::zero(), |acc, ((c, d), s)| match s {
            Some(p) if d.is_terminal(*p) => acc + c,
            _ => acc,
        });
        let rhs = match t[0] {
            Some(p) if target.is_terminal(p) => Rational::one(),
            _ => Rational::zero(),
        };
        lhs == rhs
    };
    let mut seen: BTreeSet<Vec<Option<State>>> = BTreeSet::new();
    seen.insert(start.clone());
    let mut layer = vec![start];
    for depth in 0..=bound {
        if !layer.iter().all(|t| value(t)) {
            return false;
        }
        if depth == bound {
            break;
        }
        let mut next = Vec::new();
        for t in &layer {
            for a in 0..k {
                let u: Vec<Option<State>> = core::iter::once(t[0].and_then(|p| target.next(p, a)))
                    .chain(terms.iter().zip(&t[1..]).map(|((_, d), s)| s.and_then(|p| d.next(p, a))))
                    .collect();
                if u.iter().all(Option::is_none) {
                    continue;
                }
                if seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    true
}

fn check_terms(target: &Dfa, terms: &[Term], bound: usize, cap: usize) -> Result<()> {
    let pairs: Vec<(Rational, &Dfa)> = terms.iter().map(|t| (t.coefficient.clone(), &t.automaton)).collect();
    if !verify_combination(target, &pairs, bound) {
        return Err(internal("linear combination differs from the set"));
    }
    for t in terms {
        if !check_birecurrence(&t.automaton, cap)?.birecurrent {
            return Err(internal("a term of the decomposition is not birecurrent"));
        }
    }
    Ok(())
}

/// Express `𝟙(S)` as a ℚ-linear combination of characteristic series of
/// birecurrent sets.
pub fn decompose_into_birecurrent(dfa: &Dfa, cap: usize, bound: usize) -> Result<Decomposition> {
    let data = syntactic_data(dfa, cap)?;
    let m = &data.minimal;
    if m.num_states() == 0 {
        return Ok(Decomposition::Found { terms: Vec::new(), method: DecompositionMethod::Birecurrent });
    }
    if !m.is_strongly_connected() {
        return match cr2_decomposition(&data.rep, cap, bound)? {
            Some(terms) => {
                check_terms(m, &terms, bound, cap)?;
                Ok(Decomposition::Found { terms, method: DecompositionMethod::ConstructiveTrace })
            }
            None => Ok(Decomposition::Inapplicable {
                reason: "the set is not recurrent and its syntactic representation is not absolutely irreducible".into(),
            }),
        };
    }
    if let Reducibility::NotReducible { certificate } = reducibility_of(&data, cap)? {
        return Ok(Decomposition::NotCompletelyReducible { certificate });
    }
    if check_birecurrence(m, cap)?.birecurrent {
        let terms = vec![Term { coefficient: Rational::one(), automaton: m.clone(), terminals: Some(m.terminals()) }];
        check_terms(m, &terms, bound, cap)?;
        return Ok(Decomposition::Found { terms, method: DecompositionMethod::Birecurrent });
    }
    if let Some(terms) = saturated_combination(m, cap)? {
        check_terms(m, &terms, bound, cap)?;
        return Ok(Decomposition::Found { terms, method: DecompositionMethod::SaturatedSets });
    }
    match cr2_decomposition(&data.rep, cap, bound)? {
        Some(terms) => {
            check_terms(m, &terms, bound, cap)?;
            Ok(Decomposition::Found { terms, method: DecompositionMethod::ConstructiveTrace })
        }
        None => Ok(Decomposition::NotFound {
            reason: "𝟙(T) is outside the span of saturated terminal sets and the representation is not absolutely irreducible"
                .into(),
        }),
    }
}

/// Solve `𝟙(T) = Σ cᵢ𝟙(Tᵢ)` over the sets saturated by minimal-rank words.
fn saturated_combination(m: &Dfa, cap: usize) -> Result<Option<Vec<Term>>> {
    let n = m.num_states();
    let mut span = SpanBasis::new(n);
    let mut sets: Vec<Vec<State>> = Vec::new();
    for family in saturated_terminal_sets(m, cap)? {
        for s in family.sets {
            if span.push(indicator(n, &s)).is_some() {
                sets.push(s);
            }
        }
    }
    let Some(coeffs) = span.coordinates(&indicator(n, &m.terminals())) else {
        return Ok(None);
    };
    Ok(Some(
        coeffs
            .into_iter()
            .zip(sets)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, s)| Term { coefficient: c, automaton: m.with_terminals(&s).minimize(), terminals: Some(s) })
            .collect(),
    ))
}

/// Data of the constructive route for an irreducible representation:
/// `S = Σ (X,x)(Y,y)·x⁻¹Ty⁻¹` where `T` is recognized by `(λμ(u), μ, μ(v)γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cr2Trace {
    pub u: Word,
    pub v: Word,
    /// Scalar-output automaton of `T` on the orbit of `λμ(u)`.
    pub series: ScalarOutputDfa,
    /// `λμ(u)μ(X) = λ`.
    pub x: Poly,
    /// `μ(Y)μ(v)γ = γ`.
    pub y: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cr2Outcome {
    Trace(Cr2Trace),
    Indeterminate { reason: String },
}

/// Dimension of the algebra spanned by the matrices equals `n²`.
pub fn is_absolutely_irreducible(n: usize, generators: &[QMatrix], cap: usize) -> Result<bool> {
    if n == 0 {
        return Ok(false);
    }
    let flat = |m: &QMatrix| m.entries().to_vec();
    let mut span = SpanBasis::new(n * n);
    let id = QMatrix::identity(n);
    span.push(flat(&id));
    let mut queue = VecDeque::from([id]);
    let mut visited = 1usize;
    while let Some(m) = queue.pop_front() {
        for g in generators {
            let p = &m * g;
            if span.push(flat(&p)).is_some() {
                visited += 1;
                if visited > cap {
                    return Err(crate::Error::Resource { what: "algebra span".into(), cap });
                }
                queue.push_back(p);
            }
        }
        if span.len() == n * n {
            return Ok(true);
        }
    }
    Ok(span.len() == n * n)
}

/// Orbit of a vector under the letter actions, breadth-first, with words
/// and edges; returns the first vector of the first bottom component.
fn orbit_bottom(start: &QVector, k: usize, act: impl Fn(&QVector, Letter) -> QVector, cap: usize) -> Result<(Vec<QVector>, Vec<Word>, usize)> {
    let mut index: BTreeMap<QVector, usize> = BTreeMap::new();
    let mut points = vec![start.clone()];
    let mut words = vec![Word::empty()];
    let mut adj: Vec<Vec<usize>> = Vec::new();
    index.insert(start.clone(), 0);
    let mut pos = 0;
    while pos < points.len() {
        let mut row = Vec::new();
        for a in 0..k {
            let w = act(&points[pos], a);
            if is_zero_vector(&w) {
                continue;
            }
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if points.len() >= cap {
                        return Err(crate::Error::Resource { what: "orbit enumeration".into(), cap });
                    }
                    let id = points.len();
                    index.insert(w.clone(), id);
                    points.push(w);
                    words.push(words[pos].appended(a));
                    id
                }
            };
            row.push(id);
        }
        adj.push(row);
        pos += 1;
    }
    let (comp, count) = graph::scc(&adj);
    let mut bottom = vec![true; count];
    for (p, row) in adj.iter().enumerate() {
        if row.iter().any(|&q| comp[q] != comp[p]) {
            bottom[comp[p]] = false;
        }
    }
    let first = (0..points.len()).find(|&p| bottom[comp[p]]).expect("a finite orbit has a bottom component");
    Ok((points, words, first))
}

/// Some polynomial `P` with `start·μ(P) = target`, by spanning
/// `start·μ(x)` over words in length-lex order.
fn solve_in_orbit_span(start: &QVector, target: &QVector, k: usize, act: impl Fn(&QVector, Letter) -> QVector, extend: impl Fn(&Word, Letter) -> Word) -> Option<Poly> {
    let (vectors, words) = span_layers(start.clone(), k, extend, act);
    let mut span = SpanBasis::new(start.len());
    for v in &vectors {
        span.push(v.clone());
    }
    let coeffs = span.coordinates(target)?;
    let mut p = Poly::zero();
    for (c, w) in coeffs.into_iter().zip(words) {
        p.add_term(w, c);
    }
    Some(p)
}

/// Constructive decomposition of an absolutely irreducible minimal
/// representation into a combination of residuals of one birecurrent series.
pub fn cr2_constructive(rep: &LinearRepresentation, cap: usize, bound: usize) -> Result<Cr2Outcome> {
    let n = rep.dim();
    if !is_absolutely_irreducible(n, &rep.mu, cap)? {
        return Ok(Cr2Outcome::Indeterminate { reason: "the representation is not absolutely irreducible".into() });
    }
    let k = rep.alphabet.size();
    let (rows, row_words, first_row) = orbit_bottom(&rep.lambda, k, |v, a| rep.mu[a].left_apply(v), cap)?;
    let (_, col_words, first_col) = orbit_bottom(&rep.gamma, k, |v, a| rep.mu[a].right_apply(v), cap)?;
    let u = row_words[first_row].clone();
    let v = col_words[first_col].reversed();
    let lu = rows[first_row].clone();
    let vg = rep.column_after(&v);
    let x = solve_in_orbit_span(&lu, &rep.lambda, k, |r, a| rep.mu[a].left_apply(r), |w, a| w.appended(a))
        .ok_or_else(|| internal("λ is outside the span of the orbit of λμ(u)"))?;
    let y = solve_in_orbit_span(&vg, &rep.gamma, k, |c, a| rep.mu[a].right_apply(c), |w, a| w.prepended(a))
        .ok_or_else(|| internal("γ is outside the span of the orbit of μ(v)γ"))?;
    let series = orbit_automaton(rep, &lu, &vg, cap)?;
    let trace = Cr2Trace { u, v, series, x, y };
    if !trace_agrees(rep, &trace, bound.min(6)) {
        return Err(internal("constructive trace does not reproduce the series"));
    }
    Ok(Cr2Outcome::Trace(trace))
}

/// Scalar-output automaton on the orbit of `start`, output `r ↦ r·column`.
fn orbit_automaton(rep: &LinearRepresentation, start: &QVector, column: &QVector, cap: usize) -> Result<ScalarOutputDfa> {
    let k = rep.alphabet.size();
    let mut index: BTreeMap<QVector, usize> = BTreeMap::new();
    let mut points = vec![start.clone()];
    index.insert(start.clone(), 0);
    let mut delta: Vec<Vec<Option<State>>> = Vec::new();
    let mut pos = 0;
    while pos < points.len() {
        let mut row = vec![None; k];
        for (a, slot) in row.iter_mut().enumerate() {
            let w = rep.mu[a].left_apply(&points[pos]);
            if is_zero_vector(&w) {
                continue;
            }
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if points.len() >= cap {
                        return Err(crate::Error::Resource { what: "orbit enumeration".into(), cap });
                    }
                    index.insert(w.clone(), points.len());
                    points.push(w);
                    points.len() - 1
                }
            };
            *slot = Some(id);
        }
        delta.push(row);
        pos += 1;
    }
    let output = points.iter().map(|p| dot(p, column)).collect();
    ScalarOutputDfa::new(rep.alphabet.clone(), None, Some(0), output, delta)
}

fn trace_agrees(rep: &LinearRepresentation, trace: &Cr2Trace, bound: usize) -> bool {
    crate::word::words_up_to(rep.alphabet.size(), bound).iter().all(|w| {
        let mut total = Rational::zero();
        for (x, cx) in trace.x.terms() {
            for (y, cy) in trace.y.terms() {
                let word = x.concat(w).concat(y);
                total += cx * cy * trace.series.coefficient(&word);
            }
        }
        total == rep.coefficient(w)
    })
}

/// Level sets of every residual `x⁻¹Ty⁻¹` of the trace, with merged coefficients.
fn cr2_decomposition(rep: &LinearRepresentation, cap: usize, bound: usize) -> Result<Option<Vec<Term>>> {
    let Cr2Outcome::Trace(trace) = cr2_constructive(rep, cap, bound)? else {
        return Ok(None);
    };
    let t = &trace.series;
    let mut merged: Vec<(Rational, Dfa)> = Vec::new();
    for (x, cx) in trace.x.terms() {
        for (y, cy) in trace.y.terms() {
            // x⁻¹Ty⁻¹ on the same automaton: start at i·x, output τ(q·y).
            let Some(start) = t.initial().and_then(|i| run_scalar(t, i, x)) else { continue };
            let output: Vec<Rational> =
                (0..t.num_states()).map(|q| run_scalar(t, q, y).map_or_else(Rational::zero, |r| t.output(r).clone())).collect();
            let residual = ScalarOutputDfa::new(t.alphabet().clone(), None, Some(start), output, t.table().to_vec())?;
            for (alpha, dfa) in residual.minimize().level_sets()? {
                let c = cx * cy * &alpha;
                match merged.iter_mut().find(|(_, d)| d.is_isomorphic(&dfa)) {
                    Some((acc, _)) => *acc += c,
                    None => merged.push((c, dfa)),
                }
            }
        }
    }
    Ok(Some(
        merged
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(coefficient, automaton)| Term { coefficient, automaton, terminals: None })
            .collect(),
    ))
}

fn run_scalar(t: &ScalarOutputDfa, mut p: State, w: &[Letter]) -> Option<State> {
    for &a in w {
        p = t.next(p, a)?;
    }
    Some(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentCount {
    Count(usize),
    Indeterminate { reason: String },
}

/// Number of irreducible constituents of the syntactic representation of a
/// recurrent completely reducible set, read off the group of an idempotent
/// of the minimal ideal acting on `Ve`. Every counted constituent is
/// certified absolutely irreducible.
pub fn count_irreducible_components(dfa: &Dfa, cap: usize) -> Result<ComponentCount> {
    let data = syntactic_data(dfa, cap)?;
    if !data.minimal.is_strongly_connected() {
        return Err(domain("component count needs a recurrent set"));
    }
    if data.ek_dim() != 0 {
        return Err(domain("component count needs a completely reducible set"));
    }
    let group = data.green.group.as_ref().ok_or_else(|| internal("minimal ideal without idempotent"))?;
    let d = data.dim();
    let e = data.monoid.value(group.identity);
    let mut ve = SpanBasis::new(d);
    for r in e.rows_vec() {
        ve.push(r);
    }
    let basis = ve.vectors().to_vec();
    let action: Vec<QMatrix> = group
        .members
        .iter()
        .map(|&g| {
            let m = data.monoid.value(g);
            let rows: Vec<QVector> = basis.iter().map(|b| ve.coordinates(&m.left_apply(b)).expect("Ve is stable")).collect();
            QMatrix::from_rows(&rows)
        })
        .collect();
    let mut rng = random::rng(random::DEFAULT_SEED);
    let r = basis.len();
    let whole: Vec<QVector> = (0..r).map(|j| unit_vector(r, j)).collect();
    let mut count = 0usize;
    let mut pending = vec![whole];
    while let Some(w) = pending.pop() {
        let restricted = restrict_action(&action, &w);
        if is_absolutely_irreducible(w.len(), &restricted, cap)? {
            count += 1;
            continue;
        }
        match split_invariant(&restricted, &mut rng) {
            Some((sub, complement)) => {
                pending.push(compose(&sub, &w));
                pending.push(compose(&complement, &w));
            }
            None => {
                return Ok(ComponentCount::Indeterminate {
                    reason: alloc::format!("no invariant splitting found for a constituent of dimension {}", w.len()),
                })
            }
        }
    }
    Ok(ComponentCount::Count(count))
}

/// Matrices of the action on the span of the rows of `basis`.
fn restrict_action(action: &[QMatrix], basis: &[QVector]) -> Vec<QMatrix> {
    let mut span = SpanBasis::new(basis.first().map_or(0, Vec::len));
    for b in basis {
        span.push(b.clone());
    }
    action
        .iter()
        .map(|m| QMatrix::from_rows(&basis.iter().map(|b| span.coordinates(&m.left_apply(b)).expect("invariant")).collect::<Vec<_>>()))
        .collect()
}

/// Express coordinate rows relative to `basis` back in ambient coordinates.
fn compose(rows: &[QVector], basis: &[QVector]) -> Vec<QVector> {
    rows.iter()
        .map(|c| {
            let mut v = zero_vector(basis[0].len());
            for (x, b) in c.iter().zip(basis) {
                crate::linalg::axpy(&mut v, x, b);
            }
            v
        })
        .collect()
}

/// Spin the action on basis vectors and seeded random vectors until a
/// proper invariant subspace appears, then average a projection over the
/// group to get an invariant complement.
fn split_invariant(group: &[QMatrix], rng: &mut impl Rng) -> Option<(Vec<QVector>, Vec<QVector>)> {
    let m = group.first()?.num_rows();
    let mut candidates: Vec<QVector> = (0..m).map(|j| unit_vector(m, j)).collect();
    for _ in 0..64 {
        candidates.push((0..m).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect());
    }
    for c in candidates {
        if is_zero_vector(&c) {
            continue;
        }
        let sub = spin(&c, group);
        if sub.len() < m {
            let complement = invariant_complement(group, &sub)?;
            return Some((sub, complement));
        }
    }
    None
}

fn spin(v: &QVector, group: &[QMatrix]) -> Vec<QVector> {
    let mut span = SpanBasis::new(v.len());
    span.push(v.clone());
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in group {
            let y = g.left_apply(&x);
            if span.push(y.clone()).is_some() {
                queue.push_back(y);
            }
        }
    }
    span.vectors().to_vec()
}

/// Left kernel of the group average of a projection onto `sub`.
fn invariant_complement(group: &[QMatrix], sub: &[QVector]) -> Option<Vec<QVector>> {
    let m = group[0].num_rows();
    let mut span = SpanBasis::new(m);
    for s in sub {
        span.push(s.clone());
    }
    let mut extended: Vec<QVector> = sub.to_vec();
    for j in 0..m {
        let e = unit_vector(m, j);
        if span.push(e.clone()).is_some() {
            extended.push(e);
        }
    }
    // Projection onto `sub` along the added unit vectors, in row convention.
    let change = QMatrix::from_rows(&extended);
    let inv = change.inverse()?;
    let mut keep = QMatrix::zeros(m, m);
    for j in 0..sub.len() {
        keep.set(j, j, Rational::one());
    }
    let p = &(&inv * &keep) * &change;
    let mut avg = QMatrix::zeros(m, m);
    for g in group {
        let gi = g.inverse()?;
        avg = avg.add(&(&(&gi * &p) * g));
    }
    let kernel = avg.left_kernel();
    (kernel.len() + sub.len() == m).then_some(kernel)
}

/// Every H-class of the minimal ideal meets the image of the set.
pub fn h_class_coverage(dfa: &Dfa, cap: usize) -> Result<bool> {
    let m = dfa.minimize();
    let monoid = transition_monoid(&m, cap)?;
    let green = monoid.green();
    let Some(i) = m.initial() else {
        return Ok(false);
    };
    let mut classes: BTreeMap<usize, bool> = BTreeMap::new();
    for &x in &green.ideal {
        let hit = monoid.value(x).apply(i).is_some_and(|q| m.is_terminal(q));
        *classes.entry(green.h_class[x]).or_insert(false) |= hit;
    }
    Ok(classes.values().all(|&b| b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_plus() -> Dfa {
        let a = Alphabet::new(&["a"]).unwrap();
        Dfa::from_transitions(a, 2, 0, &[1], &[(0, 0, 1), (1, 0, 1)]).unwrap()
    }

    #[test]
    fn a_plus_is_minimal_and_a_star_collapses() {
        let rep = LinearRepresentation::from_dfa(&a_plus());
        assert_eq!(minimize_representation(&rep).rep.dim(), 2);
        let star = LinearRepresentation::new(rep.alphabet().clone(), rep.lambda().to_vec(), rep.matrices().to_vec(), vec![crate::int(1), crate::int(1)]).unwrap();
        let min = minimize_representation(&star);
        assert_eq!(min.rep.dim(), 1);
        assert!(min.rep.agrees_with(&star, 8));
    }

    #[test]
    fn syntactic_basis_of_a_plus() {
        let data = syntactic_data(&a_plus(), 1000).unwrap();
        assert_eq!(data.dim(), 2);
        assert_eq!(data.basis_witnesses, vec![Word::empty(), Word::letter(0)]);
    }
}
