//! Prefix, suffix and bifix codes, and constructions of birecurrent sets
//! of finite type from maximal bifix codes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::automaton::{check_prefix_code, literal_automaton, Dfa, Nfa, State};
use crate::birecurrence::{self, RecurrentDecomposition, WordSet};
use crate::error::{domain, internal, Error, Result};
use crate::poly::{Bernoulli, Poly};
use crate::word::{Alphabet, Word};
use crate::Rational;

/// Default length bound for truncated identity checks.
pub const DEFAULT_BOUND: usize = 12;

fn reject_empty(code: &[Word]) -> Result<()> {
    if code.iter().any(|w| w.is_empty()) {
        return Err(Error::EmptyWordInCode);
    }
    Ok(())
}

/// A pair `(u, v)` of distinct code words with `u` a proper prefix of `v`.
pub fn prefix_violation(code: &[Word]) -> Result<Option<(Word, Word)>> {
    reject_empty(code)?;
    let mut sorted: Vec<&Word> = code.iter().collect();
    sorted.sort_by(|u, v| u.letters().cmp(v.letters()));
    sorted.dedup();
    Ok(sorted.windows(2).find(|p| p[1].has_prefix(p[0])).map(|p| (p[0].clone(), p[1].clone())))
}

/// A pair `(u, v)` with `u` a proper suffix of `v`.
pub fn suffix_violation(code: &[Word]) -> Result<Option<(Word, Word)>> {
    let rev: Vec<Word> = code.iter().map(Word::reversed).collect();
    Ok(prefix_violation(&rev)?.map(|(u, v)| (u.reversed(), v.reversed())))
}

pub fn is_prefix_code(code: &[Word]) -> Result<bool> {
    Ok(prefix_violation(code)?.is_none())
}

pub fn is_suffix_code(code: &[Word]) -> Result<bool> {
    Ok(suffix_violation(code)?.is_none())
}

pub fn is_bifix_code(code: &[Word]) -> Result<bool> {
    Ok(is_prefix_code(code)? && is_suffix_code(code)?)
}

/// Maximality of a finite prefix code, decided twice: `π(X) = 1` and
/// completeness of the literal automaton.
pub fn is_maximal_prefix(alphabet: &Alphabet, code: &[Word], pi: &Bernoulli) -> Result<bool> {
    check_prefix_code(alphabet, code)?;
    let by_measure = pi.measure_words(code).is_one();
    let by_automaton = literal_automaton(alphabet, code)?.is_complete();
    if by_measure != by_automaton {
        return Err(internal("maximality routes disagree"));
    }
    Ok(by_measure)
}

/// `x = w²` in `Z` with `Z ∩ wA* ∩ A*w = {x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureSquare {
    pub w: Word,
    pub x: Word,
    /// `Zw⁻¹`
    pub left: Vec<Word>,
    /// `w⁻¹Z`
    pub right: Vec<Word>,
}

fn right_quotient(code: &[Word], w: &Word) -> Vec<Word> {
    let mut v: Vec<Word> = code.iter().filter_map(|z| z.strip_suffix(w)).collect();
    v.sort();
    v
}

fn left_quotient(code: &[Word], w: &Word) -> Vec<Word> {
    let mut v: Vec<Word> = code.iter().filter_map(|z| z.strip_prefix(w)).collect();
    v.sort();
    v
}

/// Pure square data for `w`, if `w²` is a pure square of `code`.
pub fn pure_square(code: &[Word], w: &Word) -> Option<PureSquare> {
    if w.is_empty() {
        return None;
    }
    let x = w.power(2);
    if !code.contains(&x) {
        return None;
    }
    let both: Vec<&Word> = code.iter().filter(|z| z.has_prefix(w) && z.has_suffix(w)).collect();
    (both.len() == 1).then(|| PureSquare { w: w.clone(), x, left: right_quotient(code, w), right: left_quotient(code, w) })
}

/// Every pure square of `code`, ordered by `w`.
pub fn pure_squares(code: &[Word]) -> Result<Vec<PureSquare>> {
    reject_empty(code)?;
    let mut out: Vec<PureSquare> = code
        .iter()
        .filter(|x| x.len() % 2 == 0 && x.slice(0, x.len() / 2) == x.slice(x.len() / 2, x.len()))
        .filter_map(|x| pure_square(code, &x.slice(0, x.len() / 2)))
        .collect();
    out.sort_by(|a, b| a.w.cmp(&b.w));
    Ok(out)
}

fn square_core(code: &[Word], ps: &PureSquare) -> Poly {
    let one = Poly::one();
    let g = &Poly::from_words(&ps.left) - &one;
    let d = &Poly::from_words(&ps.right) - &one;
    &(&Poly::from_words(code) - &one) + &(&(&g * &Poly::word(ps.w.clone())) * &d)
}

fn require_square(code: &[Word], w: &Word) -> Result<PureSquare> {
    pure_square(code, w).ok_or_else(|| domain("the square of the given word is not a pure square of the code"))
}

fn as_set(p: &Poly, what: &str) -> Result<Vec<Word>> {
    if !p.is_characteristic() {
        return Err(internal(alloc::format!("{what} has a coefficient outside {{0, 1}}")));
    }
    Ok(p.support())
}

/// `δ_w(Z)`: the polynomial `(1+w)(Z−1+(G−1)w(D−1))+1`.
pub fn delta_poly(code: &[Word], w: &Word) -> Result<Poly> {
    reject_empty(code)?;
    let ps = require_square(code, w)?;
    Ok(&(&(&Poly::one() + &Poly::word(w.clone())) * &square_core(code, &ps)) + &Poly::one())
}

/// `γ_w(Z)`: the polynomial `(Z−1+(G−1)w(D−1))(1+w)+1`.
pub fn gamma_poly(code: &[Word], w: &Word) -> Result<Poly> {
    reject_empty(code)?;
    let ps = require_square(code, w)?;
    Ok(&(&square_core(code, &ps) * &(&Poly::one() + &Poly::word(w.clone()))) + &Poly::one())
}

/// `δ_w(Z)` as a set; a maximal prefix code when `Z` is one.
pub fn delta_w(alphabet: &Alphabet, code: &[Word], w: &Word) -> Result<Vec<Word>> {
    let x = as_set(&delta_poly(code, w)?, "δ_w(Z)")?;
    if is_prefix_code(code)? && literal_automaton(alphabet, code)?.is_complete() {
        check_prefix_code(alphabet, &x)?;
        if !literal_automaton(alphabet, &x)?.is_complete() {
            return Err(internal("δ_w(Z) is not a maximal prefix code"));
        }
    }
    Ok(x)
}

/// `γ_w(Z)` as a set; for a bifix `Z` it is the reversal of `δ_w̃(Z̃)`.
pub fn gamma_w(alphabet: &Alphabet, code: &[Word], w: &Word) -> Result<Vec<Word>> {
    let y = as_set(&gamma_poly(code, w)?, "γ_w(Z)")?;
    if is_bifix_code(code)? {
        let rev: Vec<Word> = code.iter().map(Word::reversed).collect();
        let mut mirrored: Vec<Word> = delta_w(alphabet, &rev, &w.reversed())?.iter().map(Word::reversed).collect();
        mirrored.sort();
        if mirrored != y {
            return Err(internal("γ_w(Z) differs from the reversal of δ_w̃(Z̃)"));
        }
    }
    Ok(y)
}

/// Result of the construction `S = δ_w(Z)*{ε, w}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpSet {
    pub automaton: Dfa,
    pub left_code: Vec<Word>,
    pub right_code: Vec<Word>,
    pub decomposition: RecurrentDecomposition,
}

/// `S = X*{ε,w}` with `X = δ_w(Z)`: checks `X*(1+w) = (1+w)Y*` with
/// `Y = γ_w(Z)` up to `bound`, and that `S` is dense birecurrent of finite type.
pub fn dp_set(alphabet: &Alphabet, code: &[Word], w: &Word, cap: usize, bound: usize) -> Result<DpSet> {
    if !is_bifix_code(code)? {
        return Err(domain("the construction needs a bifix code"));
    }
    if !literal_automaton(alphabet, code)?.is_complete() {
        return Err(domain("the construction needs a maximal code"));
    }
    let x = delta_w(alphabet, code, w)?;
    let y = gamma_w(alphabet, code, w)?;
    let lit = literal_automaton(alphabet, &x)?;
    let w_state = lit.run(0, w).ok_or_else(|| internal("w is not a prefix of δ_w(Z)"))?;
    let automaton = lit.with_terminals(&[0, w_state]).minimize();
    let one_w = &Poly::one() + &Poly::word(w.clone());
    let xs = Poly::from_words(&x).star_truncated(bound).expect("no empty word");
    let ys = Poly::from_words(&y).star_truncated(bound).expect("no empty word");
    let lhs = xs.mul_truncated(&one_w, bound);
    if lhs != one_w.mul_truncated(&ys, bound) {
        return Err(internal("X*(1+w) differs from (1+w)Y*"));
    }
    if lhs != Poly::from_words(&automaton.enumerate_accepted(bound)) {
        return Err(internal("automaton differs from X*{ε,w}"));
    }
    let decomposition = birecurrence::decomposition(&automaton, cap)?;
    if !decomposition.is_finite_type() || !birecurrence::is_dense(&automaton) {
        return Err(internal("constructed set is not dense of finite type"));
    }
    Ok(DpSet { automaton, left_code: x, right_code: y, decomposition })
}

/// Result of the iterated construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VincentSet {
    /// `X = δ_w(Z)`.
    pub x: Vec<Word>,
    /// `U = γ_{w²}(X)`.
    pub u: Vec<Word>,
    /// `L = δ_{w²}(X)`.
    pub l: Vec<Word>,
    /// Unambiguous automaton of `{ε,w²}U*{ε,w}` built from the prefixes of `U`.
    pub nfa: Nfa,
    /// Minimal automaton of the same set.
    pub automaton: Dfa,
    pub decomposition: RecurrentDecomposition,
}

/// Unambiguous automaton of `{ε,p}U*{ε,s}`: states are the proper prefixes
/// of `U` (the empty one is state 0), plus a chain reading `p` into state 0
/// and a chain reading `s` out of it.
fn product_automaton(alphabet: &Alphabet, u: &[Word], p: &Word, s: &Word) -> Result<Nfa> {
    let prefixes: Vec<Word> = u.iter().flat_map(|x| x.proper_prefixes()).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&Word, State> = prefixes.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let set: BTreeSet<&Word> = u.iter().collect();
    let mut labels: Vec<String> = prefixes.iter().map(|w| alphabet.render(w)).collect();
    let mut edges = Vec::new();
    for (k, q) in prefixes.iter().enumerate() {
        for a in 0..alphabet.size() {
            let qa = q.appended(a);
            if let Some(&t) = index.get(&qa) {
                edges.push((k, a, t));
            }
            if set.contains(&qa) {
                edges.push((k, a, 0));
            }
        }
    }
    let mut initials = vec![0];
    let mut terminals = vec![0];
    if !p.is_empty() {
        let start = labels.len();
        for j in 0..p.len() {
            labels.push(alloc::format!("<{}", alphabet.render(&p.slice(0, j))));
        }
        initials.push(start);
        for j in 0..p.len() {
            let to = if j + 1 == p.len() { 0 } else { start + j + 1 };
            edges.push((start + j, p[j], to));
        }
    }
    if !s.is_empty() {
        let start = labels.len();
        for j in 0..s.len() {
            labels.push(alloc::format!(">{}", alphabet.render(&s.slice(0, j + 1))));
        }
        for j in 0..s.len() {
            let from = if j == 0 { 0 } else { start + j - 1 };
            edges.push((from, s[j], start + j));
        }
        terminals.push(start + s.len() - 1);
    }
    let n = labels.len();
    Nfa::new(alphabet.clone(), Some(labels), n, &initials, &terminals, &edges)
}

/// `V = {ε,w²}U*{ε,w}` with `U = γ_{w²}(δ_w(Z))`. Verifies the quotient
/// identities for `G′, D′, G″, D″`, the identity
/// `(1+w²)U*(1+w) = L*(1+w²)(1+w)` up to `bound`, and that `V` is
/// birecurrent of finite type.
pub fn vincent_iteration(alphabet: &Alphabet, code: &[Word], w: &Word, cap: usize, bound: usize) -> Result<VincentSet> {
    if !is_bifix_code(code)? || !literal_automaton(alphabet, code)?.is_complete() {
        return Err(domain("the iteration needs a finite maximal bifix code"));
    }
    let ps = require_square(code, w)?;
    let x = delta_w(alphabet, code, w)?;
    let y = gamma_w(alphabet, code, w)?;
    let w2 = w.power(2);
    let one = Poly::one();
    let one_w = &one + &Poly::word(w.clone());
    let g = &Poly::from_words(&ps.left) - &one;
    let d = &Poly::from_words(&ps.right) - &one;
    let px = pure_square(&x, &w2).ok_or_else(|| internal("w⁴ is not a pure square of δ_w(Z)"))?;
    let py = pure_square(&y, &w2).ok_or_else(|| internal("w⁴ is not a pure square of γ_w(Z)"))?;
    let identities = [
        (&Poly::from_words(&px.left) - &one, &one_w * &g),
        (&Poly::from_words(&px.right) - &one, &one_w * &d),
        (&Poly::from_words(&py.left) - &one, &g * &one_w),
        (&Poly::from_words(&py.right) - &one, &d * &one_w),
    ];
    if identities.iter().any(|(a, b)| a != b) {
        return Err(internal("quotient identities of the iteration fail"));
    }
    let u = as_set(&gamma_poly(&x, &w2)?, "γ_{w²}(X)")?;
    let l = delta_w(alphabet, &x, &w2)?;
    let nfa = product_automaton(alphabet, &u, &w2, w)?;
    let automaton = nfa.determinize().dfa.minimize();
    let one_w2 = &one + &Poly::word(w2.clone());
    let us = Poly::from_words(&u).star_truncated(bound).ok_or_else(|| internal("U contains the empty word"))?;
    let ls = Poly::from_words(&l).star_truncated(bound).expect("no empty word");
    let lhs = one_w2.mul_truncated(&us, bound).mul_truncated(&one_w, bound);
    let rhs = ls.mul_truncated(&one_w2, bound).mul_truncated(&one_w, bound);
    if lhs != rhs || !lhs.is_characteristic() {
        return Err(internal("(1+w²)U*(1+w) differs from L*(1+w²)(1+w)"));
    }
    if lhs != Poly::from_words(&automaton.enumerate_accepted(bound)) {
        return Err(internal("automaton differs from {ε,w²}U*{ε,w}"));
    }
    let decomposition = birecurrence::decomposition(&automaton, cap)?;
    if !decomposition.is_finite_type() {
        return Err(internal("iterated set is not of finite type"));
    }
    Ok(VincentSet { x, u, l, nfa, automaton, decomposition })
}

/// Witness pair for the factorization conjecture: `J = PM`, `K = NQ`
/// and `M(1−A) = (1−A)N`, where `J`, `K` are the proper prefixes of the
/// left root and the proper suffixes of the right root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjectureOutcome {
    Found { m: Vec<Word>, n: Vec<Word> },
    /// The unique quotients exist but are not sets or fail the identity.
    NoSolution { reason: String },
    /// The quotients are sets longer than the search bound.
    OutsideBound,
}

/// Bounded search for the factorization conjecture on a set of finite type.
pub fn conjecture_search(alphabet: &Alphabet, dec: &RecurrentDecomposition, max_len: usize) -> Result<ConjectureOutcome> {
    let (Some(x), Some(p), Some(y), Some(q)) =
        (dec.left_root.finite(), dec.prefixes.finite(), dec.right_root.finite(), dec.suffixes.finite())
    else {
        return Err(domain("the conjecture harness needs a set of finite type"));
    };
    let j: BTreeSet<Word> = x.iter().flat_map(|w| w.proper_prefixes()).collect();
    let k: BTreeSet<Word> = y.iter().flat_map(|w| w.proper_suffixes()).collect();
    let pj = Poly::from_words(&j);
    let pk = Poly::from_words(&k);
    let Some(m) = Poly::from_words(p).left_divide(&pj) else {
        return Ok(ConjectureOutcome::NoSolution { reason: "P does not left-divide J".into() });
    };
    let Some(n) = Poly::from_words(q).right_divide(&pk) else {
        return Ok(ConjectureOutcome::NoSolution { reason: "Q does not right-divide K".into() });
    };
    if !m.is_characteristic() || !n.is_characteristic() {
        return Ok(ConjectureOutcome::NoSolution { reason: "a quotient has a coefficient outside {0, 1}".into() });
    }
    let letters: Vec<Word> = (0..alphabet.size()).map(Word::letter).collect();
    let one_minus_a = &Poly::one() - &Poly::from_words(&letters);
    if &m * &one_minus_a != &one_minus_a * &n {
        return Ok(ConjectureOutcome::NoSolution { reason: "M(1−A) differs from (1−A)N".into() });
    }
    if m.degree().unwrap_or(0) > max_len || n.degree().unwrap_or(0) > max_len {
        return Ok(ConjectureOutcome::OutsideBound);
    }
    Ok(ConjectureOutcome::Found { m: m.support(), n: n.support() })
}

/// Average length `λ(X) = Σ|x|π(x)` of a finite maximal prefix code,
/// checked against `π(P)` for the proper prefixes `P`.
pub fn average_length(alphabet: &Alphabet, code: &[Word], pi: &Bernoulli) -> Result<Rational> {
    if !is_maximal_prefix(alphabet, code, pi)? {
        return Err(domain("average length needs a maximal prefix code"));
    }
    let by_length = code.iter().fold(Rational::zero(), |acc, x| acc + pi.weight(x) * Rational::from_integer((x.len() as i64).into()));
    let prefixes: BTreeSet<Word> = code.iter().flat_map(|x| x.proper_prefixes()).collect();
    let by_prefixes = pi.measure_words(&prefixes);
    if by_length != by_prefixes {
        return Err(internal("λ(X) differs from π(P)"));
    }
    Ok(by_length)
}

/// Words of a finite set, rendered.
pub fn render_set(alphabet: &Alphabet, ws: &[Word]) -> Vec<String> {
    ws.iter().map(|w| alphabet.render(w)).collect()
}

/// The finite part of a [`WordSet`], or `"infinite"`.
pub fn render_word_set(alphabet: &Alphabet, ws: &WordSet) -> Option<Vec<String>> {
    ws.finite().map(|f| render_set(alphabet, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(a: &Alphabet, s: &str) -> Vec<Word> {
        let mut v = a.parse_words(s).unwrap();
        v.sort();
        v
    }

    #[test]
    fn pure_square_quotients() {
        let a = Alphabet::binary();
        let z = words(&a, "aaa aab abaa abab abb ba bbaa bbab bbb");
        let ps = pure_square(&z, &a.parse_word("ab").unwrap()).unwrap();
        assert_eq!(ps.left, words(&a, "a ab bb"));
        assert_eq!(ps.right, words(&a, "aa ab b"));
    }

    #[test]
    fn empty_word_is_rejected() {
        let a = Alphabet::binary();
        assert_eq!(is_prefix_code(&[Word::empty(), a.parse_word("a").unwrap()]), Err(Error::EmptyWordInCode));
    }

    #[test]
    fn squares_of_letters_give_palindrome_root() {
        let a = Alphabet::binary();
        let z = words(&a, "aa ab ba bb");
        let x = delta_w(&a, &z, &Word::letter(0)).unwrap();
        let zz = words(&a, "aa ab b");
        let mut sq: Vec<Word> = zz.iter().flat_map(|u| zz.iter().map(move |v| u.concat(v))).collect();
        sq.sort();
        assert_eq!(x, sq);
    }
}
