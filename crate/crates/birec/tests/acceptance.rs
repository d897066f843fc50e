//! One line per acceptance criterion. Every comparison is exact except the
//! Cesàro estimate, which is held to 0.02 of `1/i`.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use birec::cli::{self, Options};
use birec::corpus;
use birec::format::parse_automaton;
use birec_core::birecurrence::{self, WordSet};
use birec_core::linalg::QMatrix;
use birec_core::monoid::{self, eggboxes, transition_monoid, EggBox, PartialMap, Transformation};
use birec_core::poly::{Bernoulli, Poly};
use birec_core::series::{self, Decomposition, LinearRepresentation};
use birec_core::unambiguous::{self, matrix_monoid};
use birec_core::{codes, random, Alphabet, Dfa, Nfa, Rational, Word};
use num_traits::ToPrimitive;

type Outcome = Result<String, String>;

const CAP: usize = monoid::DEFAULT_CAP;
const SEED: u64 = random::DEFAULT_SEED;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn q(s: &str) -> Rational {
    birec_core::parse_rational(s).expect("rational literal")
}

fn dfa(name: &'static str) -> Dfa {
    parse_automaton(corpus::file(name).text).unwrap().to_dfa().unwrap()
}

fn nfa(name: &'static str) -> Nfa {
    parse_automaton(corpus::file(name).text).unwrap().to_nfa().unwrap()
}

fn code(name: &'static str) -> (Alphabet, Vec<Word>) {
    let c = birec::format::parse_code(corpus::file(name).text).unwrap();
    (c.alphabet, c.words)
}

fn word(a: &Alphabet, s: &str) -> Word {
    a.parse_word(s).unwrap()
}

/// `"2,5,7"` as zero-based states.
fn states(s: &str) -> Vec<usize> {
    s.split(',').map(|p| p.parse::<usize>().unwrap() - 1).collect()
}

// Criterion 1 -----------------------------------------------------------

struct GoldenReversal {
    name: &'static str,
    /// Subset of each state, in the reference numbering.
    members: &'static [&'static str],
    /// Target per letter in the reference numbering, 0 when undefined.
    targets: &'static [&'static [usize]],
}

const REVERSALS: &[GoldenReversal] = &[
    GoldenReversal { name: "rev.aut", members: &["1", "1,2"], targets: &[&[2, 2], &[0, 1]] },
    GoldenReversal {
        name: "degree3.aut",
        members: &["1,6", "3,4,9", "2,5,7,9", "2,5,7,8", "1,7", "3,4,8", "3,5,7,9", "2,5,6,8", "2,4,8"],
        targets: &[&[2, 4, 5, 1, 2, 8, 4, 1, 1], &[3, 1, 6, 6, 7, 1, 6, 9, 1]],
    },
    GoldenReversal {
        name: "infinite_roots.aut",
        members: &["1,2,5", "1,4,6", "2,3,6", "3,4,6", "1,4,5", "2,3,5"],
        targets: &[&[2, 4, 1, 6, 4, 1], &[3, 4, 5, 5, 3, 1]],
    },
    GoldenReversal {
        name: "s4.aut",
        members: &["1,2", "2,3", "3,4", "1,4", "2,4", "1,3"],
        targets: &[&[4, 1, 2, 3, 6, 5], &[1, 6, 3, 5, 4, 2]],
    },
];

fn golden_reversal(g: &GoldenReversal) -> Result<(), String> {
    let d = dfa(g.name);
    let init = d.initial().unwrap();
    let sub = d.deterministic_reversal();
    ensure(sub.members.len() == g.members.len(), || format!("{}: {} states, expected {}", g.name, sub.members.len(), g.members.len()))?;
    let ours: BTreeMap<Vec<usize>, usize> = sub.members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let index: Vec<usize> = g
        .members
        .iter()
        .map(|m| ours.get(&states(m)).copied().ok_or_else(|| format!("{}: no state with subset {{{m}}}", g.name)))
        .collect::<Result<_, _>>()?;
    ensure(sub.dfa.initial() == Some(index[0]), || format!("{}: wrong initial state", g.name))?;
    for (k, m) in g.members.iter().enumerate() {
        for (a, row) in g.targets.iter().enumerate() {
            let want = if row[k] == 0 { None } else { Some(index[row[k] - 1]) };
            ensure(sub.dfa.next(index[k], a) == want, || format!("{}: transition from {{{m}}} on letter {a}", g.name))?;
        }
        let terminal = states(m).contains(&init);
        ensure(sub.dfa.is_terminal(index[k]) == terminal, || format!("{}: terminal flag of {{{m}}}", g.name))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    for g in REVERSALS {
        golden_reversal(g)?;
    }
    Ok(format!("{} reversals match state for state", REVERSALS.len()))
}

// Criterion 2 -----------------------------------------------------------

/// A reference eggbox: column labels, then each row label with its cells
/// as `(witness, starred)`. An empty witness is not displayed in the reference.
struct GoldenEggBox {
    name: &'static str,
    columns: &'static [&'static str],
    rows: &'static [(&'static str, &'static [(&'static str, bool)])],
}

const EGGBOXES: &[GoldenEggBox] = &[
    GoldenEggBox {
        name: "rev.aut",
        columns: &["1", "2"],
        rows: &[("1,2", &[("a", true), ("ab", true)]), ("1", &[("ba", true), ("b", false)])],
    },
    GoldenEggBox {
        name: "palindrome.aut",
        columns: &["1/3", "2/4"],
        rows: &[("1,2/3,4", &[("b", true), ("ba", true)]), ("1,4/2,3", &[("ab", true), ("aba", true)])],
    },
    GoldenEggBox {
        name: "nonambig.nfa",
        columns: &["3", "1,2"],
        rows: &[("2,3", &[("ab", true), ("aba", true)]), ("1,3", &[("bab", true), ("ba", true)])],
    },
    GoldenEggBox {
        name: "infinite_roots_bis.aut",
        columns: &["1/3", "2/4", "5/6"],
        rows: &[
            ("1,4,5/2,3,6", &[("bb", true), ("bba", true), ("bbab", true)]),
            ("1,2,5/3,4,6", &[("abb", true), ("", true), ("", true)]),
            ("1,4,6/2,3,5", &[("aabb", true), ("", true), ("", true)]),
        ],
    },
];

fn length_lex_le(x: &str, y: &str) -> bool {
    (x.len(), x) <= (y.len(), y)
}

fn compare_eggbox<E: Transformation>(
    g: &GoldenEggBox,
    boxes: &[EggBox],
    m: &monoid::Monoid<E>,
    h_class: &[usize],
    a: &Alphabet,
) -> Result<(), String> {
    ensure(boxes.len() == 1, || format!("{}: {} minimal-ideal D-classes", g.name, boxes.len()))?;
    let b = &boxes[0];
    let as_set = |v: &[String]| v.iter().cloned().collect::<BTreeSet<_>>();
    let want_cols: Vec<String> = g.columns.iter().map(|s| s.to_string()).collect();
    let want_rows: Vec<String> = g.rows.iter().map(|r| r.0.to_string()).collect();
    ensure(as_set(&b.column_labels) == as_set(&want_cols), || format!("{}: columns {:?}", g.name, b.column_labels))?;
    ensure(as_set(&b.row_labels) == as_set(&want_rows), || format!("{}: rows {:?}", g.name, b.row_labels))?;
    for (row, cells) in g.rows {
        let i = b.row_labels.iter().position(|l| l == row).unwrap();
        for (col, &(w, star)) in g.columns.iter().zip(cells.iter()) {
            let j = b.column_labels.iter().position(|l| l == col).unwrap();
            let cell = b.cells[i][j].as_ref().ok_or_else(|| format!("{}: empty cell {row} x {col}", g.name))?;
            ensure(cell.has_idempotent == star, || format!("{}: star of cell {row} x {col}", g.name))?;
            if w.is_empty() {
                continue;
            }
            ensure(cell.witness.len() == w.len() && length_lex_le(&cell.witness, w), || {
                format!("{}: witness {} for {w} in cell {row} x {col}", g.name, cell.witness)
            })?;
            let ours = m.id_of_word(&word(a, &cell.witness));
            let theirs = m.id_of_word(&word(a, w));
            ensure(h_class[ours] == h_class[theirs], || format!("{}: {w} is not in the H-class of {}", g.name, cell.witness))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    for g in EGGBOXES {
        if g.name.ends_with(".nfa") {
            let d = nfa(g.name);
            let m = matrix_monoid(&d, CAP).map_err(|e| e.to_string())?;
            let green = m.green();
            compare_eggbox(g, &eggboxes(&m, &green, d.alphabet(), d.labels()), &m, &green.h_class, d.alphabet())?;
        } else {
            let d = dfa(g.name);
            let m = transition_monoid(&d, CAP).map_err(|e| e.to_string())?;
            let green = m.green();
            compare_eggbox(g, &eggboxes(&m, &green, d.alphabet(), d.labels()), &m, &green.h_class, d.alphabet())?;
        }
    }
    Ok(format!("{} eggboxes match labels, stars and H-classes", EGGBOXES.len()))
}

// Criterion 3 -----------------------------------------------------------

/// Birecurrence by the reversal route and by the saturation route.
fn dual_routes(d: &Dfa) -> Result<(bool, bool), String> {
    let m = d.minimize();
    if m.num_states() == 0 || !m.is_strongly_connected() {
        return Ok((false, false));
    }
    let by_reversal = m.deterministic_reversal().dfa.is_strongly_connected();
    let by_saturation = monoid::find_saturating_word(&m, &m.terminals(), CAP).map_err(|e| e.to_string())?.is_some();
    Ok((by_reversal, by_saturation))
}

fn vincent_table_dfa() -> Dfa {
    nfa("vincent.nfa").determinize().dfa.minimize()
}

fn criterion_3() -> Outcome {
    let mut named: Vec<(&str, Dfa, bool)> = corpus::BIRECURRENT
        .iter()
        .filter(|n| **n != "bifix3.aut")
        .map(|n| (*n, dfa(n), true))
        .collect();
    named.push(("vincent.nfa", vincent_table_dfa(), true));
    named.push(("rev_bis.aut", dfa("rev_bis.aut"), false));
    named.push(("infinite_roots_bis.aut", dfa("infinite_roots_bis.aut"), false));
    for (name, d, want) in &named {
        let check = birecurrence::check_birecurrence(&d.minimize(), CAP).map_err(|e| e.to_string())?;
        ensure(check.birecurrent == *want, || format!("{name}: birecurrent = {}", check.birecurrent))?;
        let (r, s) = dual_routes(d)?;
        ensure(r == *want && s == *want, || format!("{name}: reversal route {r}, saturation route {s}"))?;
    }
    let mut rng = random::rng(SEED);
    let mut positives = 0;
    for k in 0..200 {
        let d = random::random_strongly_connected_dfa(&mut rng, &Alphabet::binary(), 7);
        let (r, s) = dual_routes(&d)?;
        ensure(r == s, || format!("random automaton {k}: reversal route {r}, saturation route {s}"))?;
        positives += usize::from(r);
    }
    Ok(format!("{} named verdicts; 200 random automata agree ({positives} birecurrent)", named.len()))
}

// Criterion 4 -----------------------------------------------------------

fn criterion_4() -> Outcome {
    let g3 = birecurrence::index(&dfa("group3.aut"), CAP).map_err(|e| e.to_string())?;
    ensure(g3.index == q("3/2") && g3.density == q("2/3"), || format!("group3: index {} density {}", g3.index, g3.density))?;
    let s4 = dfa("s4.aut");
    let s4_index = birecurrence::index(&s4, CAP).map_err(|e| e.to_string())?;
    ensure(s4_index.degree == 4 && s4_index.index == q("2"), || format!("s4: degree {} index {}", s4_index.degree, s4_index.index))?;

    let mut cesaro = Vec::new();
    let mut identities = 0;
    for name in corpus::BIRECURRENT {
        let m = dfa(name).minimize();
        if !birecurrence::is_dense(&m) {
            continue;
        }
        let idx = birecurrence::index(&m, CAP).map_err(|e| e.to_string())?;
        let k = m.alphabet().size();
        let avg = birecurrence::cesaro_average(&m, &Bernoulli::uniform(k), cli::CESARO_STEPS);
        let gap = (&avg - idx.index.recip()).to_f64().unwrap().abs();
        ensure(gap <= 0.02, || format!("{name}: Cesàro average {:.4} against 1/i = {}", avg.to_f64().unwrap(), idx.index.recip()))?;
        cesaro.push(format!("{}={:.3}", name.trim_end_matches(".aut"), avg.to_f64().unwrap()));

        let dec = birecurrence::decomposition(&m, CAP).map_err(|e| e.to_string())?;
        let (Some(x), Some(p)) = (dec.left_root.finite(), dec.prefixes.finite()) else { continue };
        // A one-letter alphabet carries a single Bernoulli measure.
        let measures = if k == 1 {
            vec![Bernoulli::uniform(1)]
        } else {
            let mut skewed = vec![q("1/3"), q("2/3")];
            skewed.resize(k, q("0"));
            vec![Bernoulli::uniform(k), Bernoulli::new(skewed).unwrap()]
        };
        for pi in &measures {
            let lambda = codes::average_length(m.alphabet(), x, pi).map_err(|e| e.to_string())?;
            let rhs = &idx.index * pi.measure_words(p);
            ensure(lambda == rhs, || format!("{name}: λ(X) = {lambda} but i·π(P) = {rhs}"))?;
            identities += 1;
        }
    }
    Ok(format!("index and density exact; Cesàro {}; {identities} length identities", cesaro.join(" ")))
}

// Criterion 5 -----------------------------------------------------------

/// Words returning to the initial state for the first time, up to `n` letters.
fn first_returns(d: &Dfa, n: usize) -> Vec<Word> {
    let i = d.initial().unwrap();
    let mut out = Vec::new();
    let mut frontier = vec![(Word::empty(), i)];
    for _ in 0..n {
        let mut next = Vec::new();
        for (w, p) in frontier {
            for a in 0..d.alphabet().size() {
                if let Some(r) = d.next(p, a) {
                    if r == i {
                        out.push(w.appended(a));
                    } else {
                        next.push((w.appended(a), r));
                    }
                }
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

fn criterion_5() -> Outcome {
    let (a, z) = code("z3.code");
    let mut x = codes::delta_w(&a, &z, &word(&a, "ab")).map_err(|e| e.to_string())?;
    x.sort();
    let returns = first_returns(&dfa("degree3.aut"), 10);
    ensure(x.iter().all(|w| w.letters().len() < 10) && x == returns, || {
        format!("δ_ab(Z) has {} words, first returns have {}", x.len(), returns.len())
    })?;

    let (a2, sq) = code("a2.code");
    let dp = codes::dp_set(&a2, &sq, &word(&a2, "a"), CAP, 12).map_err(|e| e.to_string())?;
    let pal = dfa("palindrome.aut").minimize();
    ensure(dp.automaton.is_isomorphic(&pal), || "dp_set(A², a) differs from the palindrome automaton".into())?;
    let mirror = dp.automaton.deterministic_reversal().dfa.minimize();
    ensure(mirror.is_isomorphic(&dp.automaton), || "dp_set(A², a) is not its own reversal".into())?;

    let (ra, rz) = code("z3_reversed.code");
    let v = codes::vincent_iteration(&ra, &rz, &word(&ra, "ba"), CAP, 12).map_err(|e| e.to_string())?;
    ensure(unambiguous::is_unambiguous(&v.nfa).verdict, || "iterated automaton is ambiguous".into())?;
    ensure(v.automaton.num_states() == 17, || format!("minimal automaton has {} states", v.automaton.num_states()))?;
    let table = nfa("vincent.nfa");
    ensure(unambiguous::is_unambiguous(&table).verdict, || "reference table is ambiguous".into())?;
    let det = table.determinize().dfa;
    ensure(det.num_states() == 17, || format!("reference table determinizes to {} states", det.num_states()))?;
    ensure(det.minimize().is_isomorphic(&v.automaton), || "reference table and construction recognize different sets".into())?;
    let aa = word(&ra, "aa");
    let rank = unambiguous::word_rank(&table, aa.letters()).map_err(|e| e.to_string())?;
    let rec = unambiguous::unambiguous_recurrence(&table, CAP).map_err(|e| e.to_string())?;
    ensure(rank == 3 && rec.min_rank == 3, || format!("rank of aa {rank}, minimal rank {}", rec.min_rank))?;
    let mm = matrix_monoid(&table, CAP).map_err(|e| e.to_string())?;
    let m_aa = mm.value(mm.id_of_word(aa.letters()));
    let n = table.num_states();
    ensure((0..n).any(|p| m_aa.row(p) == table.initials()), || "initial set is not a row of μ(aa)".into())?;
    ensure((0..n).any(|p| m_aa.column(p) == table.terminals()), || "terminal set is not a column of μ(aa)".into())?;
    let birec = birecurrence::is_birecurrent(&v.automaton, CAP).map_err(|e| e.to_string())?;
    ensure(birec && rec.birecurrent(), || "iterated set is not birecurrent".into())?;
    Ok(format!("δ_ab(Z) = {} first returns; palindrome self-reversed; 17 states, rank 3", x.len()))
}

// Criterion 6 -----------------------------------------------------------

fn indicator(n: usize, set: &[usize]) -> Vec<Rational> {
    (0..n).map(|p| if set.contains(&p) { q("1") } else { q("0") }).collect()
}

fn mat(rows: &[&[i64]]) -> QMatrix {
    QMatrix::from_i64(rows)
}

fn criterion_6() -> Outcome {
    let d = dfa("bifix3.aut");
    let data = series::syntactic_data(&d, CAP).map_err(|e| e.to_string())?;
    ensure(data.dim() == 4, || format!("bifix3: dimension {}", data.dim()))?;
    let rev = d.deterministic_reversal();
    let want: Vec<Vec<usize>> = ["1", "2,4", "3,5", "2,5", "3,4"].iter().map(|s| states(s)).collect();
    let ours: BTreeSet<&Vec<usize>> = rev.members.iter().collect();
    ensure(ours == want.iter().collect(), || format!("bifix3 reversal subsets {:?}", rev.members))?;
    let v: Vec<Vec<Rational>> = want.iter().map(|s| indicator(5, s)).collect();
    let lhs: Vec<Rational> = v[1].iter().zip(&v[2]).map(|(x, y)| x + y).collect();
    let rhs: Vec<Rational> = v[3].iter().zip(&v[4]).map(|(x, y)| x + y).collect();
    ensure(lhs == rhs, || "dependency among reversal indicators fails".into())?;
    let full = LinearRepresentation::from_dfa(&d);
    let r = full.restrict_to_column_basis(&v[..4]).map_err(|e| e.to_string())?;
    let unit = [q("1"), q("0"), q("0"), q("0")];
    ensure(r.lambda() == unit && r.gamma() == unit, || "λ or γ differs in the reversal basis".into())?;
    ensure(r.mu(0) == &mat(&[&[0, 1, 0, 1], &[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 0]]), || "μ(a) differs".into())?;
    ensure(r.mu(1) == &mat(&[&[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1], &[1, 0, -1, -1]]), || "μ(b) differs".into())?;
    ensure(r.agrees_with(&full, 12), || "restricted representation changes the series".into())?;

    let plus = dfa("a_plus.aut");
    let star = plus.with_terminals(&[0, 1]);
    let dim_of = |d: &Dfa| series::minimize_representation(&LinearRepresentation::from_dfa(d)).rep.dim();
    ensure(dim_of(&plus) == 2 && dim_of(&star) == 1, || format!("a⁺ dim {}, a* dim {}", dim_of(&plus), dim_of(&star)))?;

    let names = corpus::BIRECURRENT.iter().chain(&["rev_bis.aut", "infinite_roots_bis.aut"]);
    let mut count = 0;
    for name in names {
        let ek = series::syntactic_data(&dfa(name), CAP).map_err(|e| e.to_string())?.ek_dim();
        ensure(ek == 0, || format!("{name}: eventual kernel of dimension {ek}"))?;
        count += 1;
    }
    Ok(format!("bifix3 dim 4 in reversal basis; a⁺ 2, a* 1; EK = 0 on {count} sets"))
}

// Criterion 7 -----------------------------------------------------------

/// `Σ c_i 𝟙(S_i) = 𝟙(S)` on every word up to `bound`, by a walk of the
/// product automaton with coefficients scaled to integers.
fn combination_holds(target: &Dfa, terms: &[(i64, &Dfa)], scale: i64, bound: usize) -> Result<(), Word> {
    let start: Vec<Option<usize>> = terms.iter().map(|(_, d)| d.initial()).collect();
    let mut stack = vec![(Word::empty(), target.initial(), start)];
    while let Some((w, p, qs)) = stack.pop() {
        let lhs: i64 = terms.iter().zip(&qs).map(|((c, d), q)| if q.is_some_and(|q| d.is_terminal(q)) { *c } else { 0 }).sum();
        let rhs = if p.is_some_and(|p| target.is_terminal(p)) { scale } else { 0 };
        if lhs != rhs {
            return Err(w);
        }
        if w.letters().len() == bound {
            continue;
        }
        for a in 0..target.alphabet().size() {
            let next: Vec<Option<usize>> = terms.iter().zip(&qs).map(|((_, d), q)| q.and_then(|q| d.next(q, a))).collect();
            stack.push((w.appended(a), p.and_then(|p| target.next(p, a)), next));
        }
    }
    Ok(())
}

fn random_birecurrent(seed: u64) -> Dfa {
    let d = random::random_strongly_connected_dfa(&mut random::rng(seed), &Alphabet::binary(), 5);
    let families = birecurrence::saturated_terminal_sets(&d, CAP).unwrap();
    let sets = &families[0].sets;
    d.with_terminals(&sets[(seed as usize) % sets.len()]).minimize()
}

fn criterion_7() -> Outcome {
    let opts = Options::default();
    let src = corpus::file("qlin.aut");
    let r = cli::cmd_decompose(src, &opts).map_err(|e| e.to_string())?;
    let mut coeffs: Vec<String> =
        r.get("terms").as_array().into_iter().flatten().filter_map(|t| t["coefficient"].as_str().map(String::from)).collect();
    coeffs.sort();
    ensure(r.get("outcome") == "found" && coeffs == ["-1/2", "1/2", "1/2"], || format!("qlin: {}", r.get("outcome")))?;
    ensure(r.all_checks_pass(), || "qlin: report check failed".into())?;

    let target = dfa("qlin.aut");
    let Decomposition::Found { terms, .. } = series::decompose_into_birecurrent(&target, CAP, 12).map_err(|e| e.to_string())? else {
        return Err("qlin: no decomposition".into());
    };
    let mut scaled = Vec::new();
    for t in &terms {
        let c = &t.coefficient * q("2");
        ensure(c.is_integer(), || format!("coefficient {} is not a half-integer", t.coefficient))?;
        ensure(birecurrence::is_birecurrent(&t.automaton, CAP).map_err(|e| e.to_string())?, || "a term is not birecurrent".into())?;
        scaled.push((c.to_integer().to_i64().unwrap(), &t.automaton));
    }
    combination_holds(&target, &scaled, 2, 12).map_err(|w| format!("qlin: combination differs on {}", target.alphabet().render(&w)))?;

    let mut inputs: Vec<(String, Dfa)> = corpus::BIRECURRENT.iter().map(|n| (n.to_string(), dfa(n))).collect();
    inputs.extend((0..30).map(|k| (format!("random set {k}"), random_birecurrent(SEED + k))));
    for (name, d) in &inputs {
        match series::decompose_into_birecurrent(d, CAP, 12).map_err(|e| e.to_string())? {
            Decomposition::Found { terms, .. } if terms.len() == 1 && terms[0].coefficient == q("1") => {}
            other => return Err(format!("{name}: {other:?}")),
        }
    }
    Ok(format!("qlin: 3 terms, exact to length 12; {} birecurrent inputs give one term", inputs.len()))
}

// Criterion 8 -----------------------------------------------------------

fn monoid_brute_force(seed: u64) -> Result<(), String> {
    let d = random::random_dfa(&mut random::rng(seed), &Alphabet::binary(), 5, 0.8).trim();
    if d.num_states() == 0 {
        return Ok(());
    }
    let m = transition_monoid(&d, CAP).map_err(|e| e.to_string())?;
    let n = d.num_states();
    let mut first: BTreeMap<Vec<Option<usize>>, Word> = BTreeMap::new();
    let mut size_at = Vec::new();
    for w in birec_core::word::words_up_to(2, 8) {
        let map: Vec<Option<usize>> = (0..n).map(|p| d.run(p, &w)).collect();
        let len = w.letters().len();
        if size_at.len() <= len {
            size_at.push(0);
        }
        first.entry(map).or_insert(w);
        size_at[len] = first.len();
    }
    for (map, w) in &first {
        let id = m.id_of_word(w.letters());
        let value: Vec<Option<usize>> = (0..n).map(|p| m.value(id).apply(p)).collect();
        ensure(&value == map, || format!("element of {w:?} acts differently"))?;
        ensure(m.witness(id) == w, || format!("witness of {w:?} is not its length-lex least word"))?;
    }
    // No new map at length 8 means every element has been met.
    if size_at[7] == size_at[8] {
        ensure(first.len() == m.len(), || format!("{} maps by brute force, {} elements", first.len(), m.len()))?;
    }
    ensure(m.id_of(&PartialMap::identity(n)) == Some(m.id_of_word(&[])), || "identity is not the empty word".into())
}

fn rank_monotone(seed: u64) -> Result<(), String> {
    let d = random::random_strongly_connected_dfa(&mut random::rng(seed), &Alphabet::binary(), 6);
    let m = transition_monoid(&d, CAP).map_err(|e| e.to_string())?;
    for x in 0..m.len().min(40) {
        for y in 0..m.len().min(40) {
            ensure(m.rank(m.product(x, y)) <= m.rank(x).min(m.rank(y)), || "rank of a product exceeds a factor".into())?;
        }
    }
    Ok(())
}

fn eventual_spaces_invariant(seed: u64) -> Result<(), String> {
    let d = random::random_strongly_connected_dfa(&mut random::rng(seed), &Alphabet::binary(), 5);
    let data = series::syntactic_data(&d, CAP).map_err(|e| e.to_string())?;
    ensure(series::is_invariant(&data.rep, &data.ek), || "EK not invariant".into())?;
    ensure(series::is_invariant(&data.rep, &data.er), || "ER not invariant".into())
}

fn random_poly(rng: &mut impl rand::Rng) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(0..5) {
        let w = Word::from_letters((0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..2)).collect::<Vec<_>>());
        p.add_term(w, Rational::from_integer(rng.gen_range(-3i64..=3).into()));
    }
    p
}

fn ring_identities(seed: u64) -> Result<(), String> {
    let mut rng = random::rng(seed);
    let (p, r, s) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
    ensure(&(&p * &r) * &s == &p * &(&r * &s), || "product not associative".into())?;
    ensure(&p * &(&r + &s) == &(&p * &r) + &(&p * &s), || "left distributivity fails".into())?;
    ensure(&(&p + &r) * &s == &(&p * &s) + &(&r * &s), || "right distributivity fails".into())?;
    ensure(&p + &r == &r + &p, || "sum not commutative".into())
}

fn truncated(set: &WordSet, n: usize) -> Poly {
    Poly::from_words(&set.words_up_to(n))
}

fn root_identities(seed: u64) -> Result<(), String> {
    const N: usize = 12;
    let d = random_birecurrent(seed);
    let dec = birecurrence::decomposition(&d, CAP).map_err(|e| e.to_string())?;
    let s = Poly::from_words(&d.enumerate_accepted(N));
    let x_star = truncated(&dec.left_root, N).star_truncated(N).ok_or("left root contains the empty word")?;
    let y_star = truncated(&dec.right_root, N).star_truncated(N).ok_or("right root contains the empty word")?;
    ensure(x_star.mul_truncated(&truncated(&dec.prefixes, N), N) == s, || "X*P differs from S".into())?;
    ensure(truncated(&dec.suffixes, N).mul_truncated(&y_star, N) == s, || "QY* differs from S".into())?;
    ensure(birecurrence::verify_decomposition(&dec, N), || "library check of the roots fails".into())
}

fn unambiguous_biconditional(seed: u64) -> Result<(), String> {
    let t = random::random_unambiguous_nfa(&mut random::rng(seed), &Alphabet::binary(), 6).trim();
    if t.num_states() == 0 || !t.is_strongly_connected() {
        return Ok(());
    }
    let rec = unambiguous::unambiguous_recurrence(&t, CAP).map_err(|e| e.to_string())?;
    let by_subsets = t.determinize().dfa.is_strongly_connected() && t.reverse().determinize().dfa.is_strongly_connected();
    ensure(rec.birecurrent() == by_subsets, || format!("matrix criterion {} but subset automata {by_subsets}", rec.birecurrent()))?;
    let language = birecurrence::check_birecurrence(&t.determinize().dfa.minimize(), CAP).map_err(|e| e.to_string())?;
    ensure(rec.birecurrent() == language.birecurrent, || "matrix criterion disagrees with the minimal automaton".into())
}

fn h_class_coverage() -> Result<usize, String> {
    let mut n = 0;
    for name in corpus::BIRECURRENT {
        let d = dfa(name).minimize();
        if !birecurrence::is_dense(&d) {
            continue;
        }
        ensure(series::syntactic_data(&d, CAP).map_err(|e| e.to_string())?.ek_dim() == 0, || format!("{name}: not reducible"))?;
        ensure(series::h_class_coverage(&d, CAP).map_err(|e| e.to_string())?, || format!("{name}: an H-class misses the set"))?;
        n += 1;
    }
    Ok(n)
}

type Suite = (&'static str, fn(u64) -> Result<(), String>, u64);

fn criterion_8() -> Outcome {
    let suites: &[Suite] = &[
        ("monoid brute force up to length 8", monoid_brute_force, 64),
        ("rank monotonicity", rank_monotone, 64),
        ("EK/ER invariance", eventual_spaces_invariant, 64),
        ("polynomial ring identities", ring_identities, 64),
        ("X*P = QY* = S up to length 12", root_identities, 32),
        ("unambiguous birecurrence biconditional", unambiguous_biconditional, 64),
    ];
    for (name, f, cases) in suites {
        for k in 0..*cases {
            f(SEED.wrapping_add(k)).map_err(|e| format!("{name} violated (case {k}): {e}"))?;
        }
    }
    let n = h_class_coverage().map_err(|e| format!("H-class coverage violated: {e}"))?;
    Ok(format!("{} suites pass; H-class coverage on {n} dense sets", suites.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {n}: PASS {detail}"),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
