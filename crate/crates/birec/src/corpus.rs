//! Golden examples, embedded at build time, and the runner behind the
//! `corpus` subcommand.

use serde_json::{json, Value};

use birec_core::birecurrence;
use birec_core::random;
use birec_core::Alphabet;

use crate::cli::{self, CliResult, Options, Source};
use crate::report::Report;

/// `(file name, contents)` of every corpus file.
pub const FILES: &[(&str, &str)] = &[
    ("rev.aut", include_str!("../corpus/rev.aut")),
    ("rev_bis.aut", include_str!("../corpus/rev_bis.aut")),
    ("palindrome.aut", include_str!("../corpus/palindrome.aut")),
    ("group3.aut", include_str!("../corpus/group3.aut")),
    ("degree3.aut", include_str!("../corpus/degree3.aut")),
    ("infinite_roots.aut", include_str!("../corpus/infinite_roots.aut")),
    ("infinite_roots_bis.aut", include_str!("../corpus/infinite_roots_bis.aut")),
    ("infinite_roots_star.aut", include_str!("../corpus/infinite_roots_star.aut")),
    ("s4.aut", include_str!("../corpus/s4.aut")),
    ("bifix3.aut", include_str!("../corpus/bifix3.aut")),
    ("qlin.aut", include_str!("../corpus/qlin.aut")),
    ("a_plus.aut", include_str!("../corpus/a_plus.aut")),
    ("nonambig.nfa", include_str!("../corpus/nonambig.nfa")),
    ("vincent.nfa", include_str!("../corpus/vincent.nfa")),
    ("a2.code", include_str!("../corpus/a2.code")),
    ("a4.code", include_str!("../corpus/a4.code")),
    ("z3.code", include_str!("../corpus/z3.code")),
    ("z3_reversed.code", include_str!("../corpus/z3_reversed.code")),
    ("uniform.pi", include_str!("../corpus/uniform.pi")),
    ("skewed.pi", include_str!("../corpus/skewed.pi")),
];

/// Corpus file by name.
///
/// # Panics
/// If `name` is not in [`FILES`].
pub fn file(name: &'static str) -> Source<'static> {
    let (n, t) = FILES.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no corpus file {name}"));
    Source::new(n, t)
}

/// Birecurrent sets of the corpus given by deterministic automata.
pub const BIRECURRENT: &[&str] =
    &["rev.aut", "palindrome.aut", "group3.aut", "degree3.aut", "infinite_roots.aut", "s4.aut", "bifix3.aut"];

/// Recurrent corpus sets that are not birecurrent.
pub const NOT_BIRECURRENT: &[&str] = &["rev_bis.aut", "infinite_roots_bis.aut", "infinite_roots_star.aut", "qlin.aut"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

type Entry = (&'static str, fn(&Options) -> CliResult<(bool, String)>);

fn field<'a>(r: &'a Report, key: &str) -> &'a Value {
    r.get(key)
}

fn check_fields(name: &'static str, opts: &Options, expected: &[(&str, Value)]) -> CliResult<(bool, String)> {
    let r = cli::cmd_check(file(name), opts)?;
    let mut bad = Vec::new();
    for (k, v) in expected {
        if field(&r, k) != v {
            bad.push(format!("{k} = {} (expected {v})", field(&r, k)));
        }
    }
    let pass = bad.is_empty() && r.all_checks_pass();
    let detail = if bad.is_empty() {
        expected.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    } else {
        bad.join("; ")
    };
    Ok((pass, detail))
}

fn reversal_size(name: &'static str, opts: &Options, expected: u64) -> CliResult<(bool, String)> {
    let r = cli::cmd_reverse(file(name), opts)?;
    let n = field(&r, "states").as_array().map_or(0, Vec::len) as u64;
    Ok((n == expected, format!("{n} states (expected {expected})")))
}

fn unambiguous_entry(name: &'static str, opts: &Options, rank: u64) -> CliResult<(bool, String)> {
    let r = cli::cmd_unambiguous(file(name), opts)?;
    let rec = field(&r, "recurrence");
    let pass = field(&r, "unambiguous") == &json!(true)
        && rec["min_rank"] == json!(rank)
        && rec["birecurrent"] == json!(true)
        && r.all_checks_pass();
    Ok((pass, format!("unambiguous={} min_rank={} birecurrent={}", field(&r, "unambiguous"), rec["min_rank"], rec["birecurrent"])))
}

fn coefficients(r: &Report) -> Vec<String> {
    let mut c: Vec<String> = field(r, "terms")
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|t| t["coefficient"].as_str().map(String::from))
        .collect();
    c.sort();
    c
}

const ENTRIES: &[Entry] = &[
    ("check rev", |o| check_fields("rev.aut", o, &[("recurrent", json!(true)), ("birecurrent", json!(true)), ("finite_type", json!(false))])),
    ("check rev_bis", |o| check_fields("rev_bis.aut", o, &[("recurrent", json!(true)), ("birecurrent", json!(false))])),
    ("check palindrome", |o| check_fields("palindrome.aut", o, &[("birecurrent", json!(true)), ("finite_type", json!(true)), ("left_root", json!(["bb", "aab", "abb", "baa", "bab", "aaaa", "aaab", "abaa", "abab"]))])),
    ("check group3", |o| check_fields("group3.aut", o, &[("birecurrent", json!(true)), ("index", json!("3/2")), ("density", json!("2/3"))])),
    ("check degree3", |o| check_fields("degree3.aut", o, &[("birecurrent", json!(true)), ("degree", json!(3)), ("finite_type", json!(true))])),
    ("check infinite_roots", |o| check_fields("infinite_roots.aut", o, &[("birecurrent", json!(true)), ("finite_type", json!(false))])),
    ("check infinite_roots_bis", |o| check_fields("infinite_roots_bis.aut", o, &[("recurrent", json!(true)), ("birecurrent", json!(false))])),
    ("check s4", |o| check_fields("s4.aut", o, &[("birecurrent", json!(true)), ("degree", json!(4)), ("index", json!("2"))])),
    ("reverse rev", |o| reversal_size("rev.aut", o, 2)),
    ("reverse degree3", |o| reversal_size("degree3.aut", o, 9)),
    ("reverse infinite_roots", |o| reversal_size("infinite_roots.aut", o, 6)),
    ("reverse s4", |o| reversal_size("s4.aut", o, 6)),
    ("monoid palindrome", |o| {
        let r = cli::cmd_monoid(file("palindrome.aut"), o)?;
        let b = &field(&r, "eggboxes")[0];
        let starred = b["cells"].as_array().into_iter().flatten().flat_map(|row| row.as_array().into_iter().flatten()).filter(|c| c["idempotent"] == json!(true)).count();
        Ok((b["rows"].as_array().map_or(0, Vec::len) == 2 && starred == 4, format!("rows {} columns {} starred cells {starred}", b["rows"], b["columns"])))
    }),
    ("delta A² a", |o| {
        let r = cli::cmd_delta(file("a2.code"), "a", o)?;
        let expected = json!(["aab", "abb", "baa", "bab", "aaaa", "aaab", "abaa", "abab", "bb"]);
        let mut got: Vec<String> = field(&r, "words").as_array().into_iter().flatten().filter_map(|w| w.as_str().map(String::from)).collect();
        let mut want: Vec<String> = expected.as_array().into_iter().flatten().filter_map(|w| w.as_str().map(String::from)).collect();
        got.sort();
        want.sort();
        Ok((got == want, format!("{} words", got.len())))
    }),
    ("classify δ_a(A²)", |o| {
        let r = cli::cmd_delta(file("a2.code"), "a", o)?;
        let c = cli::cmd_classify(Source::new("delta", &r.text), o)?;
        Ok((field(&c, "class") == &json!("decomposable"), format!("class {}", field(&c, "class"))))
    }),
    ("minrep bifix3", |o| {
        let r = cli::cmd_minrep(file("bifix3.aut"), o)?;
        Ok((field(&r, "dim") == &json!(4) && r.all_checks_pass(), format!("dim {}", field(&r, "dim"))))
    }),
    ("minrep a_plus", |o| {
        let r = cli::cmd_minrep(file("a_plus.aut"), o)?;
        Ok((field(&r, "dim") == &json!(2), format!("dim {}", field(&r, "dim"))))
    }),
    ("reducible rev_bis", |o| {
        let r = cli::cmd_reducible(file("rev_bis.aut"), o)?;
        Ok((field(&r, "ek_dim") == &json!(0), format!("verdict {} ek_dim {}", field(&r, "verdict"), field(&r, "ek_dim"))))
    }),
    ("reducible infinite_roots_bis", |o| {
        let r = cli::cmd_reducible(file("infinite_roots_bis.aut"), o)?;
        Ok((field(&r, "ek_dim") == &json!(0), format!("verdict {} ek_dim {}", field(&r, "verdict"), field(&r, "ek_dim"))))
    }),
    ("decompose qlin", |o| {
        let r = cli::cmd_decompose(file("qlin.aut"), o)?;
        let c = coefficients(&r);
        Ok((c == ["-1/2", "1/2", "1/2"] && r.all_checks_pass(), format!("coefficients {}", c.join(" "))))
    }),
    ("decompose birecurrent", |o| {
        let mut bad = Vec::new();
        for name in BIRECURRENT {
            let r = cli::cmd_decompose(file(name), o)?;
            if coefficients(&r) != ["1"] {
                bad.push(*name);
            }
        }
        Ok((bad.is_empty(), if bad.is_empty() { format!("{} single terms", BIRECURRENT.len()) } else { format!("failed on {bad:?}") }))
    }),
    ("vincent Z̃ ba", |o| {
        let r = cli::cmd_vincent(file("z3_reversed.code"), "ba", o)?;
        let pass = field(&r, "minimal_states") == &json!(17)
            && field(&r, "unambiguous") == &json!(true)
            && field(&r, "min_rank") == &json!(3)
            && field(&r, "birecurrent") == &json!(true)
            && r.all_checks_pass();
        Ok((pass, format!("{} states, min rank {}", field(&r, "minimal_states"), field(&r, "min_rank"))))
    }),
    ("unambiguous nonambig", |o| {
        let r = cli::cmd_unambiguous(file("nonambig.nfa"), o)?;
        Ok((field(&r, "unambiguous") == &json!(true) && r.all_checks_pass(), format!("unambiguous={}", field(&r, "unambiguous"))))
    }),
    ("unambiguous vincent table", |o| unambiguous_entry("vincent.nfa", o, 3)),
    ("density degree3", |o| {
        let mut ok = true;
        let mut vals = Vec::new();
        for pi in ["uniform.pi", "skewed.pi"] {
            let r = cli::cmd_density(file("degree3.aut"), Some(file(pi)), cli::CESARO_STEPS, o)?;
            ok &= r.all_checks_pass() && !field(&r, "left_root").is_null();
            vals.push(format!("{}: λ(X)={}", pi, field(&r, "left_root")["average_length"]));
        }
        Ok((ok, vals.join(", ")))
    }),
    ("random dual routes", |o| {
        let a = Alphabet::binary();
        let mut rng = random::rng(o.seed);
        let mut birec = 0;
        for _ in 0..200 {
            let d = random::random_strongly_connected_dfa(&mut rng, &a, 7);
            birec += usize::from(birecurrence::check_birecurrence(&d, o.cap)?.birecurrent);
        }
        Ok((true, format!("200 automata agree, {birec} birecurrent")))
    }),
];

/// Run every entry in order. Errors become failing outcomes.
pub fn run_all(opts: &Options) -> Vec<Outcome> {
    ENTRIES
        .iter()
        .map(|(name, f)| match f(opts) {
            Ok((pass, detail)) => Outcome { name: name.to_string(), pass, detail },
            Err(e) => Outcome { name: name.to_string(), pass: false, detail: format!("error: {e}") },
        })
        .collect()
}

pub fn render_table(outcomes: &[Outcome]) -> String {
    let w = outcomes.iter().map(|o| o.name.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for o in outcomes {
        let pad = w - o.name.chars().count();
        s += &format!("{}{} | {} | {}\n", o.name, " ".repeat(pad), if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    s += &format!("{passed}/{} passed\n", outcomes.len());
    s
}

pub fn report(opts: &Options) -> Report {
    let outcomes = run_all(opts);
    let mut r = Report::new("corpus", FILES.iter().map(|(n, _)| n.to_string()).collect());
    r.text = render_table(&outcomes);
    r.result = json!({
        "entries": outcomes.iter().map(|o| json!({"name": o.name, "pass": o.pass, "detail": o.detail})).collect::<Vec<_>>(),
        "passed": outcomes.iter().filter(|o| o.pass).count(),
        "total": outcomes.len(),
    });
    r.check("every corpus entry passes", outcomes.iter().all(|o| o.pass));
    r
}
