use birec::corpus;
use birec::format::{self, parse_automaton, parse_bernoulli, parse_code, parse_poly, parse_representation};
use birec_core::linalg::QMatrix;
use birec_core::poly::{Bernoulli, Poly};
use birec_core::random::{self, DEFAULT_SEED};
use birec_core::scalar::ScalarOutputDfa;
use birec_core::series::LinearRepresentation;
use birec_core::{Alphabet, Rational, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(DEFAULT_SEED), failure_persistence: None, ..Config::default() }
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into())
}

fn vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

#[test]
fn every_corpus_file_parses() {
    for (name, text) in corpus::FILES {
        let ok = match name.rsplit('.').next() {
            Some("aut") => parse_automaton(text).and_then(|f| f.to_dfa()).is_ok(),
            Some("nfa") => parse_automaton(text).and_then(|f| f.to_nfa()).is_ok(),
            Some("code") => parse_code(text).is_ok(),
            Some("pi") => parse_bernoulli(text, &Alphabet::binary()).is_ok(),
            _ => false,
        };
        assert!(ok, "{name} does not parse");
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let cases = [
        ("alphabet a b\nstates 1 2\ninitial 1\ninitial 2\nfinal 1\n", 4),
        ("alphabet a\nstates 1\ninitial 1\n\n# note\ntrans 1 a 3\n", 6),
        ("alphabet a\nstates 1 1\n", 2),
        ("alphabet a\nstates 1\ninitial 1\noutput 1 x\n", 4),
        ("alphabet a\nstates 1\ninitial 1\ntrans 1 a 1\ntrans 1 a 1\n", 5),
    ];
    for (text, line) in cases {
        let e = parse_automaton(text).and_then(|f| f.to_dfa()).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
    }
    assert_eq!(parse_code("alphabet a b\nab\nac\n").unwrap_err().line, 3);
    assert_eq!(parse_bernoulli("prob a 1/2\nprob a 1/2\n", &Alphabet::binary()).unwrap_err().line, 2);
    assert_eq!(parse_representation("dim 2\nlambda 1\n").unwrap_err().line, 2);
    assert_eq!(parse_representation("dim 1\nlambda 1\ngamma 1\nmatrix a\n1 2\n").unwrap_err().line, 5);
}

#[test]
fn multiple_initial_states_are_nondeterministic() {
    let text = "alphabet a\nstates 1 2\ninitial 1\ninitial 2\nfinal 1\ntrans 1 a 2\n";
    let f = parse_automaton(text).unwrap();
    assert!(!f.is_deterministic());
    assert_eq!(f.to_nfa().unwrap().initials(), vec![0, 1]);
}

#[test]
fn bernoulli_must_sum_to_one() {
    assert!(parse_bernoulli("prob a 1/2\nprob b 1/3\n", &Alphabet::binary()).is_err());
    let pi = parse_bernoulli("prob a 1/3\nprob b 2/3\n", &Alphabet::binary()).unwrap();
    let back = parse_bernoulli(&format::write_bernoulli(&Alphabet::binary(), &pi), &Alphabet::binary()).unwrap();
    assert_eq!(back, pi);
    assert_ne!(pi, Bernoulli::uniform(2));
}

#[test]
fn polynomial_files_round_trip() {
    let a = Alphabet::binary();
    let p = parse_poly("1/2 ab\n-3 eps\n2 ab\n", &a).unwrap();
    assert_eq!(p.coeff(&a.parse_word("ab").unwrap()), Rational::new(5.into(), 2.into()));
    assert_eq!(parse_poly(&format::write_poly(&a, &p), &a).unwrap(), p);
    assert_eq!(parse_poly("", &a).unwrap(), Poly::zero());
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn dfa_files_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let n = rng.gen_range(1..=6);
        let d = random::random_dfa(&mut rng, &Alphabet::binary(), n, 0.7);
        let back = parse_automaton(&format::write_dfa(&d)).unwrap().to_dfa().unwrap();
        prop_assert_eq!(&back, &d);
        let m = d.minimize();
        if m.num_states() > 0 {
            let r = m.deterministic_reversal().dfa;
            if r.num_states() > 0 {
                prop_assert_eq!(parse_automaton(&format::write_dfa(&r)).unwrap().to_dfa().unwrap(), r);
            }
        }
    }

    #[test]
    fn nfa_files_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let nfa = random::random_unambiguous_nfa(&mut rng, &Alphabet::binary(), 5);
        let back = parse_automaton(&format::write_nfa(&nfa)).unwrap().to_nfa().unwrap();
        prop_assert_eq!(back, nfa);
    }

    #[test]
    fn scalar_files_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let n = rng.gen_range(1..=5);
        let d = random::random_dfa(&mut rng, &Alphabet::binary(), n, 0.8);
        let outputs = (0..n).map(|_| small_rational(&mut rng)).collect();
        let s = ScalarOutputDfa::new(d.alphabet().clone(), None, d.initial(), outputs, d.table().to_vec()).unwrap();
        let back = parse_automaton(&format::write_scalar(&s)).unwrap().to_scalar().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn code_files_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = Alphabet::binary();
        let mut words: Vec<Word> = (0..rng.gen_range(1..8))
            .map(|_| Word::from_letters((0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>()))
            .collect();
        words.sort();
        words.dedup();
        let back = parse_code(&format::write_code(&a, &words)).unwrap();
        prop_assert_eq!(back.alphabet, a);
        prop_assert_eq!(back.words, words);
    }

    #[test]
    fn representation_files_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = Alphabet::new(&["x", "y", "z"]).unwrap();
        let n = rng.gen_range(1..=4);
        let lambda = vector(&mut rng, n);
        let gamma = vector(&mut rng, n);
        let mu = (0..3).map(|_| QMatrix::from_rows(&(0..n).map(|_| vector(&mut rng, n)).collect::<Vec<_>>())).collect();
        let rep = LinearRepresentation::new(a, lambda, mu, gamma).unwrap();
        prop_assert_eq!(parse_representation(&format::write_representation(&rep)).unwrap(), rep);
    }
}
