//! Letters, words and alphabets.
//!
//! Letters are indices into an [`Alphabet`]; the alphabet order is the
//! order used by every tie-break in the crate. [`Word`] orders
//! length-lexicographically (shorter first, then letter by letter).

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use crate::error::{invalid, Result};

pub type Letter = usize;

/// A finite word over an alphabet, ordered length-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl Into<Vec<Letter>>) -> Self {
        Word(letters.into())
    }

    pub fn letter(a: Letter) -> Self {
        Word(alloc::vec![a])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn appended(&self, a: Letter) -> Word {
        let mut w = self.clone();
        w.0.push(a);
        w
    }

    pub fn prepended(&self, a: Letter) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn power(&self, k: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn has_prefix(&self, p: &Word) -> bool {
        self.0.starts_with(&p.0)
    }

    pub fn has_suffix(&self, s: &Word) -> bool {
        self.0.ends_with(&s.0)
    }

    /// `p⁻¹ self` when `p` is a prefix.
    pub fn strip_prefix(&self, p: &Word) -> Option<Word> {
        self.0.strip_prefix(p.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    /// `self s⁻¹` when `s` is a suffix.
    pub fn strip_suffix(&self, s: &Word) -> Option<Word> {
        self.0.strip_suffix(s.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    /// Proper prefixes, shortest first (includes the empty word).
    pub fn proper_prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |k| Word(self.0[..k].to_vec()))
    }

    /// Proper suffixes, shortest first (includes the empty word).
    pub fn proper_suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(move |k| Word(self.0[self.len() - k..].to_vec()))
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Ordered finite alphabet of whitespace-free tokens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

/// Spelling of the empty word in every text format.
pub const EMPTY_WORD: &str = "eps";

impl Alphabet {
    pub fn new<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        if tokens.is_empty() {
            return Err(invalid("alphabet must contain at least one letter"));
        }
        let mut letters: Vec<String> = Vec::with_capacity(tokens.len());
        for t in tokens {
            let t = t.as_ref();
            if t.is_empty() || t.chars().any(char::is_whitespace) || t == EMPTY_WORD || t.contains('.') {
                return Err(invalid(alloc::format!("bad letter token {t:?}")));
            }
            if letters.iter().any(|l| l == t) {
                return Err(invalid(alloc::format!("duplicate letter {t:?}")));
            }
            letters.push(t.to_string());
        }
        Ok(Alphabet { letters })
    }

    /// The alphabet `{a, b}`.
    pub fn binary() -> Self {
        Alphabet::new(&["a", "b"]).expect("valid alphabet")
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn tokens(&self) -> &[String] {
        &self.letters
    }

    pub fn token(&self, a: Letter) -> &str {
        &self.letters[a]
    }

    pub fn index(&self, token: &str) -> Option<Letter> {
        self.letters.iter().position(|l| l == token)
    }

    fn single_chars(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Letters concatenated when all tokens are single characters,
    /// otherwise joined by `.`; the empty word renders as `eps`.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return EMPTY_WORD.to_string();
        }
        let sep = if self.single_chars() { "" } else { "." };
        let mut out = String::new();
        for (k, &a) in w.iter().enumerate() {
            if k > 0 {
                out.push_str(sep);
            }
            out.push_str(&self.letters[a]);
        }
        out
    }

    /// Inverse of [`Alphabet::render`]; also accepts `ε` and the empty string.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == EMPTY_WORD || s == "ε" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        if self.single_chars() && !s.contains('.') {
            for c in s.chars() {
                let mut buf = [0u8; 4];
                let tok: &str = c.encode_utf8(&mut buf);
                letters.push(self.index(tok).ok_or_else(|| invalid(alloc::format!("unknown letter {tok:?} in {s:?}")))?);
            }
        } else {
            for tok in s.split(|c: char| c == '.' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                letters.push(self.index(tok).ok_or_else(|| invalid(alloc::format!("unknown letter {tok:?} in {s:?}")))?);
            }
        }
        Ok(Word(letters))
    }

    /// Parse a whitespace-separated list of words.
    pub fn parse_words(&self, s: &str) -> Result<Vec<Word>> {
        s.split_whitespace().map(|t| self.parse_word(t)).collect()
    }
}

/// All words of length at most `max_len` over `k` letters, length-lex order.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::empty()];
    let mut level = alloc::vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(level.len() * k);
        for w in &level {
            for a in 0..k {
                next.push(w.appended(a));
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.join(" "))
    }
}
