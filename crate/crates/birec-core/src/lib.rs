//! Recurrent and birecurrent regular sets.
//!
//! A regular set is recurrent when its minimal automaton is strongly
//! connected, and birecurrent when its reversal is recurrent too. This
//! crate decides both properties, computes transition monoids and their
//! minimal ideals, left and right roots, degree, index and density,
//! builds birecurrent sets from bifix codes, and works with rational
//! linear representations of the associated series.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports
//! and the command-line driver live in the companion `birec` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod automaton;
pub mod birecurrence;
pub mod codes;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod monoid;
pub mod poly;
pub mod random;
pub mod scalar;
pub mod series;
pub mod unambiguous;
pub mod word;

pub use automaton::{Dfa, Nfa, State, Subsets};
pub use error::{Error, Result};
pub use word::{Alphabet, Letter, Word};

/// Exact rationals used for every coefficient and probability.
pub type Rational = num_rational::BigRational;

/// Parse `p/q` or an integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    use core::str::FromStr;
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = num_bigint::BigInt::from_str(p.trim()).ok()?;
        let q = num_bigint::BigInt::from_str(q.trim()).ok()?;
        if num_traits::Zero::is_zero(&q) {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        num_bigint::BigInt::from_str(s).ok().map(Rational::from_integer)
    }
}

/// `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(x: &Rational) -> alloc::string::String {
    alloc::format!("{x}")
}

pub(crate) fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}
