//! Randomized invariants. Automata are drawn from per-case seeds by the
//! crate's rejection samplers; proptest supplies the seeds from a fixed
//! master seed so every run sees the same instances.

use std::collections::BTreeSet;

use birec_core::automaton::Dfa;
use birec_core::birecurrence::{self, check_birecurrence, saturated_terminal_sets};
use birec_core::codes;
use birec_core::monoid::{self, transition_monoid, PartialMap, Transformation, DEFAULT_CAP};
use birec_core::poly::{Bernoulli, Poly};
use birec_core::random::{self, DEFAULT_SEED};
use birec_core::series::{self, Decomposition, LinearRepresentation, Reducibility};
use birec_core::unambiguous::{self, matrix_monoid};
use birec_core::word::words_up_to;
use birec_core::{Alphabet, Rational, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(DEFAULT_SEED), failure_persistence: None, ..Config::default() }
}

fn strongly_connected(seed: u64, max_states: usize) -> Dfa {
    random::random_strongly_connected_dfa(&mut random::rng(seed), &Alphabet::binary(), max_states)
}

/// A birecurrent set: a strongly connected automaton whose terminal set is
/// replaced by a set saturated by a word of minimal rank.
fn birecurrent(seed: u64, max_states: usize) -> Dfa {
    let d = strongly_connected(seed, max_states);
    let families = saturated_terminal_sets(&d, DEFAULT_CAP).unwrap();
    let sets = &families[0].sets;
    d.with_terminals(&sets[(seed as usize) % sets.len()]).minimize()
}

fn poly_from(terms: &[(u8, i8)]) -> Poly {
    let mut p = Poly::zero();
    for &(code, c) in terms {
        let len = (code % 4) as usize;
        let w = Word::from_letters((0..len).map(|j| ((code >> (2 + j)) & 1) as usize).collect::<Vec<_>>());
        p.add_term(w, Rational::from_integer(i64::from(c).into()));
    }
    p
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn monoid_contains_every_short_word(seed in any::<u64>()) {
        let d = random::random_dfa(&mut random::rng(seed), &Alphabet::binary(), 5, 0.8).trim();
        prop_assume!(d.num_states() > 0);
        let m = transition_monoid(&d, DEFAULT_CAP).unwrap();
        let mut seen = BTreeSet::new();
        for w in words_up_to(2, 8) {
            let id = m.id_of(&PartialMap::of_word(&d, &w));
            prop_assert!(id.is_some(), "word {:?} has no monoid element", w);
            let id = id.unwrap();
            prop_assert!(m.witness(id) <= &w, "witness of {:?} is not length-lex least", w);
            seen.insert(id);
        }
        // Monoid closure is reached within the words of length at most its size.
        if m.len() <= 8 {
            prop_assert_eq!(seen.len(), m.len());
        }
    }

    #[test]
    fn rank_is_submultiplicative(seed in any::<u64>()) {
        let d = strongly_connected(seed, 6);
        let m = transition_monoid(&d, DEFAULT_CAP).unwrap();
        for x in 0..m.len().min(40) {
            for y in 0..m.len().min(40) {
                let r = m.rank(m.product(x, y));
                prop_assert!(r <= m.rank(x).min(m.rank(y)), "rank of a product exceeds a factor's rank");
            }
        }
        let b = matrix_monoid(&d.to_nfa(), DEFAULT_CAP).unwrap();
        prop_assert_eq!(b.len(), m.len());
        for (id, w) in m.witnesses().iter().enumerate() {
            let bid = b.id_of_word(w);
            prop_assert_eq!(b.value(bid).rank(), m.value(id).rank(), "matrix rank differs from image size");
        }
    }

    #[test]
    fn minimal_ideal_is_one_regular_d_class(seed in any::<u64>()) {
        let d = strongly_connected(seed, 6);
        let m = transition_monoid(&d, DEFAULT_CAP).unwrap();
        let g = m.green();
        prop_assert_eq!(g.ideal_d_classes().len(), 1);
        let ideal: BTreeSet<usize> = g.ideal.iter().copied().chain(g.zero).collect();
        for &x in &g.ideal {
            for a in 0..2 {
                let gen = m.id_of_word(&[a]);
                prop_assert!(ideal.contains(&m.product(x, gen)) && ideal.contains(&m.product(gen, x)), "ideal not closed");
            }
        }
        let group = g.group.clone().unwrap();
        let e = m.value(group.identity);
        let image = e.image();
        for &p in &image {
            let orbit: BTreeSet<usize> = group.members.iter().map(|&h| m.value(h).apply(p).unwrap()).collect();
            prop_assert_eq!(orbit.into_iter().collect::<Vec<_>>(), image.clone(), "group is not transitive on its image");
        }
    }

    #[test]
    fn saturation_equals_image_of_a_subset(seed in any::<u64>()) {
        let d = strongly_connected(seed, 5);
        let n = d.num_states();
        let m = transition_monoid(&d, DEFAULT_CAP).unwrap();
        let x = m.minimal_rank_elements()[0];
        let w = m.witness(x).clone();
        for mask in 1u32..(1 << n) {
            let t: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 1).collect();
            // t = w·U: the preimage under w of some set U of states.
            let by_preimage = (0u32..(1 << n)).any(|u| {
                let pre: Vec<usize> = (0..n).filter(|&p| d.run(p, &w).is_some_and(|q| u >> q & 1 == 1)).collect();
                pre == t
            });
            prop_assert_eq!(monoid::is_saturated(&d, &t, &w), by_preimage);
        }
    }

    #[test]
    fn eventual_kernel_and_range_are_invariant(seed in any::<u64>()) {
        let d = strongly_connected(seed, 5);
        let data = series::syntactic_data(&d, DEFAULT_CAP).unwrap();
        prop_assert!(series::is_invariant(&data.rep, &data.ek), "EK is not invariant");
        prop_assert!(series::is_invariant(&data.rep, &data.er), "ER is not invariant");
        let full = LinearRepresentation::from_dfa(&data.minimal);
        let min = series::minimize_representation(&full);
        prop_assert_eq!(min.rep.dim(), data.dim(), "two minimal representations differ in dimension");
        prop_assert!(min.rep.agrees_with(&full, 12));
        prop_assert_eq!(series::minimize_representation(&min.rep).rep.dim(), min.rep.dim());
    }

    #[test]
    fn polynomial_ring_identities(
        a in prop::collection::vec((any::<u8>(), -3i8..=3), 0..5),
        b in prop::collection::vec((any::<u8>(), -3i8..=3), 0..5),
        c in prop::collection::vec((any::<u8>(), -3i8..=3), 0..5),
        n in 0usize..6,
    ) {
        let (p, q, r) = (poly_from(&a), poly_from(&b), poly_from(&c));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        let letters = Poly::from_words(&[Word::letter(0), Word::letter(1)]);
        let one = Poly::one();
        let mut sum = Poly::zero();
        let mut power = Poly::one();
        for _ in 0..=n {
            sum = &sum + &power;
            power = &power * &letters;
        }
        prop_assert_eq!(&(&one - &letters) * &sum, &one - &power);
    }

    #[test]
    fn prefix_code_star_is_characteristic(seed in any::<u64>()) {
        let d = birecurrent(seed, 5);
        let (x, _) = birecurrence::left_root(&d).unwrap();
        let words = x.words_up_to(10);
        let star = Poly::from_words(&words).star_truncated(10).unwrap();
        prop_assert!(star.is_characteristic(), "X* has a coefficient above one");
        let pi = Bernoulli::uniform(2);
        prop_assert!(pi.measure_words(&words) <= Rational::from_integer(1.into()));
    }
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn roots_reproduce_the_set(seed in any::<u64>()) {
        let d = birecurrent(seed, 4);
        let dec = birecurrence::decomposition(&d, DEFAULT_CAP).unwrap();
        prop_assert!(birecurrence::verify_decomposition(&dec, 12), "X*P or QY* differs from S up to length 12");
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn birecurrence_routes_agree(seed in any::<u64>()) {
        let d = strongly_connected(seed, 7);
        let check = check_birecurrence(&d, DEFAULT_CAP);
        prop_assert!(check.is_ok(), "{:?}", check);
    }

    #[test]
    fn synchronizable_partition_is_stable(seed in any::<u64>()) {
        let d = random::random_complete_strongly_connected_dfa(&mut random::rng(seed), &Alphabet::binary(), 5);
        let classes = monoid::strongly_synchronizable_classes(&d, DEFAULT_CAP).unwrap();
        let class_of = |p: usize| classes.iter().position(|c| c.contains(&p)).unwrap();
        for c in &classes {
            for &p in c {
                for &q in c {
                    for a in 0..2 {
                        prop_assert_eq!(class_of(d.next(p, a).unwrap()), class_of(d.next(q, a).unwrap()));
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn unambiguous_recurrence_matches_subset_automata(seed in any::<u64>()) {
        let nfa = random::random_unambiguous_nfa(&mut random::rng(seed), &Alphabet::binary(), 6);
        let rec = unambiguous::unambiguous_recurrence(&nfa, DEFAULT_CAP);
        prop_assert!(rec.is_ok(), "{:?}", rec);
        let mono = matrix_monoid(&nfa, DEFAULT_CAP).unwrap();
        for x in 0..mono.len().min(30) {
            for y in 0..mono.len().min(30) {
                prop_assert!(mono.value(mono.product(x, y)).rank() <= mono.value(x).rank().min(mono.value(y).rank()));
            }
        }
        let rep = LinearRepresentation::from_unambiguous(&nfa).unwrap();
        for w in words_up_to(2, 6) {
            let c = rep.coefficient(&w);
            prop_assert_eq!(c, Rational::from_integer(u64::from(nfa.accepts(&w)).into()));
        }
    }

    #[test]
    fn dense_reducible_sets_meet_every_h_class(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let d = random::random_complete_strongly_connected_dfa(&mut rng, &Alphabet::binary(), 4).minimize();
        prop_assume!(d.is_complete() && d.is_strongly_connected());
        if let Reducibility::Reducible { .. } = series::is_completely_reducible(&d, DEFAULT_CAP).unwrap() {
            prop_assert!(series::h_class_coverage(&d, DEFAULT_CAP).unwrap(), "an H-class of the minimal ideal misses the set");
        }
    }

    #[test]
    fn decompositions_are_exact(seed in any::<u64>()) {
        let d = strongly_connected(seed, 5).minimize();
        prop_assume!(d.is_strongly_connected());
        match series::decompose_into_birecurrent(&d, DEFAULT_CAP, 12).unwrap() {
            Decomposition::Found { terms, .. } => {
                let pairs: Vec<(Rational, &Dfa)> = terms.iter().map(|t| (t.coefficient.clone(), &t.automaton)).collect();
                prop_assert!(series::verify_combination(&d, &pairs, 12));
                for t in &terms {
                    prop_assert!(birecurrence::is_birecurrent(&t.automaton, DEFAULT_CAP).unwrap());
                }
            }
            Decomposition::NotCompletelyReducible { certificate } => {
                let data = series::syntactic_data(&d, DEFAULT_CAP).unwrap();
                for &x in &data.green.ideal {
                    let m = data.monoid.value(x);
                    prop_assert!(m.left_apply(&certificate).iter().all(|c| *c == Rational::from_integer(0.into())));
                }
            }
            other => prop_assert!(matches!(other, Decomposition::NotFound { .. }), "{:?}", other),
        }
    }

    #[test]
    fn bifix_duality_of_delta_and_gamma(k in 1usize..=2) {
        let a = Alphabet::binary();
        let n = 2 * k;
        let z = words_up_to(2, n).into_iter().filter(|w| w.len() == n).collect::<Vec<_>>();
        let w = Word::from_letters(vec![0; k]);
        let g = codes::gamma_w(&a, &z, &w).unwrap();
        let zr: Vec<Word> = z.iter().map(Word::reversed).collect();
        let mut dr: Vec<Word> = codes::delta_w(&a, &zr, &w.reversed()).unwrap().iter().map(Word::reversed).collect();
        dr.sort();
        let mut g = g;
        g.sort();
        prop_assert_eq!(g, dr);
    }
}
