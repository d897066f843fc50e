//! Noncommutative polynomials over ℚ and Bernoulli measures.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::word::{Alphabet, Word};
use crate::Rational;

/// Finite ℚ-linear combination of words, terms in length-lex order.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Word, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(w, Rational::one());
        p
    }

    /// Characteristic polynomial of a finite set.
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut p = Poly::zero();
        for w in words {
            p.terms.insert(w.clone(), Rational::one());
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    /// Words with nonzero coefficient, length-lex order.
    pub fn support(&self) -> Vec<Word> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Length of the longest word with nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    pub fn constant(&self) -> Rational {
        self.coeff(&Word::empty())
    }

    /// Every coefficient is 0 or 1.
    pub fn is_characteristic(&self) -> bool {
        self.terms.values().all(One::is_one)
    }

    pub fn scaled(&self, c: &Rational) -> Poly {
        let mut p = Poly::zero();
        for (w, x) in &self.terms {
            p.add_term(w.clone(), x * c);
        }
        p
    }

    /// Terms of length at most `n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly { terms: self.terms.iter().filter(|(w, _)| w.len() <= n).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }

    /// Product truncated to length `n`.
    pub fn mul_truncated(&self, other: &Poly, n: usize) -> Poly {
        let mut out = Poly::zero();
        for (u, x) in &self.terms {
            if u.len() > n {
                continue;
            }
            for (v, y) in &other.terms {
                if u.len() + v.len() <= n {
                    out.add_term(u.concat(v), x * y);
                }
            }
        }
        out
    }

    /// `self*` truncated to length `n`; requires a zero constant term.
    pub fn star_truncated(&self, n: usize) -> Option<Poly> {
        if !self.constant().is_zero() {
            return None;
        }
        let base = self.truncate(n);
        let mut acc = Poly::one();
        let mut power = Poly::one();
        for _ in 0..n {
            power = power.mul_truncated(&base, n);
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Some(acc)
    }

    /// Mirror image of every word.
    pub fn reversed(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())).collect() }
    }

    /// The unique `q` with `self·q = target`, if any.
    pub fn left_divide(&self, target: &Poly) -> Option<Poly> {
        let dp = self.degree()?;
        let (pivot, pc) = self.terms.iter().find(|(w, _)| w.len() == dp).map(|(w, c)| (w.clone(), c.clone()))?;
        let mut rem = target.clone();
        let mut q = Poly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dp {
                return None;
            }
            let mut part = Poly::zero();
            for (u, c) in rem.terms.iter().filter(|(u, _)| u.len() == dr) {
                if let Some(m) = u.strip_prefix(&pivot) {
                    part.add_term(m, c / &pc);
                }
            }
            if part.is_zero() {
                return None;
            }
            rem = &rem - &(self * &part);
            q = &q + &part;
            if rem.degree().is_some_and(|d| d >= dr) {
                return None;
            }
        }
        Some(q)
    }

    /// The unique `q` with `q·self = target`, if any.
    pub fn right_divide(&self, target: &Poly) -> Option<Poly> {
        self.reversed().left_divide(&target.reversed()).map(|q| q.reversed())
    }

    pub fn render(&self, alphabet: &Alphabet) -> alloc::string::String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<alloc::string::String> = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { alphabet.render(w) } else { alloc::format!("{}*{}", c, alphabet.render(w)) })
            .collect();
        parts.join(" + ")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scaled(&-Rational::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, x) in &self.terms {
            for (v, y) in &rhs.terms {
                out.add_term(u.concat(v), x * y);
            }
        }
        out
    }
}

/// Positive Bernoulli measure: independent letters with fixed probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bernoulli {
    probs: Vec<Rational>,
}

impl Bernoulli {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() || probs.iter().any(|p| *p <= Rational::zero()) {
            return Err(invalid("letter probabilities must be positive"));
        }
        let total = probs.iter().fold(Rational::zero(), |a, p| a + p);
        if !total.is_one() {
            return Err(invalid(alloc::format!("letter probabilities sum to {total}, not 1")));
        }
        Ok(Bernoulli { probs })
    }

    pub fn uniform(k: usize) -> Self {
        Bernoulli { probs: alloc::vec![Rational::new(1.into(), (k as i64).into()); k] }
    }

    pub fn probabilities(&self) -> &[Rational] {
        &self.probs
    }

    pub fn size(&self) -> usize {
        self.probs.len()
    }

    pub fn weight(&self, w: &[usize]) -> Rational {
        w.iter().fold(Rational::one(), |acc, &a| acc * &self.probs[a])
    }

    pub fn measure(&self, p: &Poly) -> Rational {
        p.terms().fold(Rational::zero(), |acc, (w, c)| acc + c * self.weight(w))
    }

    pub fn measure_words<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> Rational {
        words.into_iter().fold(Rational::zero(), |acc, w| acc + self.weight(w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: &Alphabet, s: &str) -> Poly {
        Poly::from_words(&a.parse_words(s).unwrap())
    }

    #[test]
    fn product_identity_for_squares_of_letters() {
        let a = Alphabet::binary();
        let one = Poly::one();
        let letters = p(&a, "a b");
        let inner = &(&(&one + &letters) + &(&(&letters - &one) * &p(&a, "a"))) - &Poly::zero();
        let lhs = &(&one + &p(&a, "a")) * &inner;
        let rhs = &(&one + &p(&a, "a")) * &(&(&one + &(&letters * &p(&a, "a"))) + &p(&a, "b"));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_division_inverts_product() {
        let a = Alphabet::binary();
        let x = &Poly::one() + &p(&a, "ab");
        let y = &p(&a, "a ba") - &Poly::one();
        let prod = &x * &y;
        assert_eq!(x.left_divide(&prod), Some(y.clone()));
        assert_eq!(y.right_divide(&prod), Some(x.clone()));
        assert_eq!(p(&a, "aa").left_divide(&p(&a, "ba")), None);
    }

    #[test]
    fn star_counts_factorizations() {
        let a = Alphabet::binary();
        let s = p(&a, "a aa").star_truncated(3).unwrap();
        assert_eq!(s.coeff(&a.parse_word("aaa").unwrap()), crate::int(3));
    }

    #[test]
    fn bernoulli_rejects_bad_sums() {
        assert!(Bernoulli::new(alloc::vec![crate::int(1), crate::int(1)]).is_err());
        let b = Bernoulli::uniform(2);
        assert_eq!(b.weight(&[0, 1]), Rational::new(1.into(), 4.into()));
    }
}
