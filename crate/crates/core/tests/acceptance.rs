//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use grich::lang_index::LanguageIndex;
use grich::palin::g_defect;
use grich::symgraph::{rauzy_graph, symmetry_graph, SymmetryGraph};
use grich::verify::{repro_ex6, repro_ex8, verify, Ex6Report, Ex8Report, RichnessReport, Verdict, VerifyOptions};
use grich::{presets, SymmetryGroup, SymmetryMap, Word, WordSource};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const TABLE_LIMIT: Duration = Duration::from_secs(1);
const VERDICT_LIMIT: Duration = Duration::from_secs(10);
const PREFIX: usize = 2000;

const TABLE: [(usize, usize, &str); 20] = [
    (1, 1, ""),
    (2, 1, "0"),
    (3, 2, "01"),
    (4, 2, "11"),
    (5, 3, "0110"),
    (6, 3, "101"),
    (7, 4, "1010"),
    (8, 5, "110100"),
    (9, 6, "01101001"),
    (9, 7, "0011"),
    (9, 8, "100110"),
    (10, 9, "001100"),
    (11, 10, "10011001"),
    (12, 10, "0100110010"),
    (13, 11, "101001100101"),
    (14, 12, "11010011001011"),
    (15, 13, "0110100110010110"),
    (16, 13, "101101"),
    (17, 13, "01011010"),
    (18, 13, "0010110100"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn report(id: usize, name: &str, o: &Outcome) {
    println!("{} {id} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
}

fn table_rows() -> Outcome {
    let start = Instant::now();
    let g = presets::i2(2);
    let p = presets::thue_morse().prefix(19).unwrap();
    let profile = g_defect(&g, &p).unwrap();
    let elapsed = start.elapsed();
    let r = profile.pal_names.iter().position(|n| n == "R").unwrap();
    let e = profile.pal_names.iter().position(|n| n == "E").unwrap();
    let bad: Vec<usize> = TABLE
        .iter()
        .enumerate()
        .filter(|(n, &(pr, pe, lps))| {
            profile.pal_counts[*n][r] != pr || profile.pal_counts[*n][e] != pe || profile.lps[*n] != Word::digits(lps)
        })
        .map(|(n, _)| n)
        .collect();
    outcome(
        bad.is_empty() && elapsed < TABLE_LIMIT,
        format!("20 rows, mismatched rows {bad:?}, {elapsed:.2?} (limit {TABLE_LIMIT:?})"),
    )
}

fn classes(g: &SymmetryGroup, words: &[&str]) -> BTreeSet<Word> {
    words.iter().map(|w| g.canonical(&Word::digits(w))).collect()
}

fn digits(words: &[&str]) -> BTreeSet<Word> {
    words.iter().map(|w| Word::digits(w)).collect()
}

fn loops(graph: &SymmetryGraph) -> BTreeSet<Word> {
    graph.loops().map(|e| e.class.clone()).collect()
}

fn connecting(graph: &SymmetryGraph) -> BTreeSet<Word> {
    graph.connecting().map(|e| e.class.clone()).collect()
}

fn vertex_set(graph: &SymmetryGraph) -> BTreeSet<Word> {
    graph.vertices.iter().cloned().collect()
}

fn graph_of(source: &WordSource, g: &SymmetryGroup, len: usize) -> (LanguageIndex, SymmetryGraph) {
    let idx = LanguageIndex::build(source.prefix(len).unwrap(), 6, None).unwrap();
    let graph = symmetry_graph(g, &idx, 3).unwrap();
    (idx, graph)
}

fn figures() -> Outcome {
    let mut failed = Vec::new();

    let r = presets::classical(2);
    let (_, fib) = graph_of(&presets::fibonacci(), &r, 500);
    let labels: BTreeSet<Word> = fib.directed.iter().map(|e| e.label.clone()).collect();
    if fib.vertices != [Word::digits("010")]
        || labels != digits(&["010010", "01010"])
        || loops(&fib) != classes(&r, &["010010", "01010"])
        || fib.connecting().count() != 0
    {
        failed.push("fibonacci");
    }

    let tm = presets::thue_morse();
    let idx = LanguageIndex::build(tm.prefix(512).unwrap(), 6, None).unwrap();
    let rauzy = rauzy_graph(&idx, 3).unwrap();
    let rv: BTreeSet<Word> = rauzy.vertices.iter().cloned().collect();
    let re: BTreeSet<Word> = rauzy.edges.iter().cloned().collect();
    if rv != digits(&["101", "010", "100", "001", "011", "110"])
        || re != digits(&["1010", "0101", "0100", "0010", "1011", "1101", "1001", "0011", "0110", "1100"])
    {
        failed.push("rauzy");
    }

    let i2 = presets::i2(2);
    let (_, tmg) = graph_of(&tm, &i2, 512);
    let drawn = [
        ("101", "0100", "011"),
        ("101", "1011", "011"),
        ("011", "0010", "101"),
        ("011", "1101", "101"),
        ("011", "0011", "011"),
        ("011", "1100", "011"),
        ("011", "0110", "011"),
        ("011", "1001", "011"),
        ("101", "0101", "101"),
        ("101", "1010", "101"),
    ];
    let expected: BTreeSet<(Word, Word, Word)> = drawn
        .iter()
        .map(|(f, l, t)| (i2.canonical(&Word::digits(f)), Word::digits(l), i2.canonical(&Word::digits(t))))
        .collect();
    let got: BTreeSet<(Word, Word, Word)> = tmg
        .directed
        .iter()
        .map(|e| (tmg.vertices[e.from].clone(), e.label.clone(), tmg.vertices[e.to].clone()))
        .collect();
    if tmg.directed.len() != 10 || got != expected || vertex_set(&tmg) != classes(&i2, &["011", "101"]) {
        failed.push("directed");
    }
    if connecting(&tmg) != classes(&i2, &["0100"])
        || loops(&tmg) != classes(&i2, &["1010", "1100", "1001"])
        || !tmg.is_tree()
    {
        failed.push("undirected");
    }

    let (_, tmr) = graph_of(&tm, &r, 512);
    if vertex_set(&tmr) != classes(&r, &["011", "101", "010", "001"])
        || connecting(&tmr) != classes(&r, &["1011", "0101", "0010", "0011"])
        || loops(&tmr) != classes(&r, &["0110", "1001"])
        || tmr.cycle_witness().is_none()
        || grich::symgraph::TlsVerdict::of(&tmr).satisfied
    {
        failed.push("reversal cycle");
    }

    let i3 = presets::i2(3);
    let (idx33, t33) = graph_of(&presets::t33(), &i3, PREFIX);
    let drawn_loops = classes(&i3, &["012120", "0120"]);
    let extra: BTreeSet<Word> = loops(&t33).difference(&drawn_loops).cloned().collect();
    let extra_justified = extra.iter().all(|l| {
        idx33.contains(l)
            && (1..l.len() - 3).all(|i| !idx33.data(&l[i..i + 3]).is_some_and(|d| d.is_special()))
            && !i3.fixers(l).is_empty()
    });
    if t33.vertices != [i3.canonical(&Word::digits("012"))]
        || !drawn_loops.is_subset(&loops(&t33))
        || !extra_justified
        || t33.connecting().count() != 0
    {
        failed.push("t33");
    }
    let extra: Vec<String> = extra.iter().map(|w| format!("[{w}]")).collect();
    outcome(
        failed.is_empty(),
        format!(
            "7 graphs, failed {failed:?}; t33 order 3 has additional palindromic loop(s) {} beyond the two drawn",
            extra.join(", ")
        ),
    )
}

struct Runs {
    tm_i2: (RichnessReport, Duration),
    tm_r: (RichnessReport, Duration),
    fib: (RichnessReport, Duration),
    t33: (RichnessReport, Duration),
    ex8: (Ex8Report, Duration),
    ex6: (Ex6Report, Duration),
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn run_all() -> Runs {
    let v = |g: SymmetryGroup, s: WordSource, n: usize, w: &str, gid: &str| {
        timed(|| verify(&g, &s, &VerifyOptions::new(PREFIX, n).ids(w, gid)).unwrap())
    };
    Runs {
        tm_i2: v(presets::i2(2), presets::thue_morse(), 30, "t22", "I2(2)"),
        tm_r: v(presets::classical(2), presets::thue_morse(), 30, "t22", "{Id,R}"),
        fib: v(presets::classical(2), presets::fibonacci(), 50, "fibonacci", "{Id,R}"),
        t33: v(presets::i2(3), presets::t33(), 30, "t33", "I2(3)"),
        ex8: timed(|| repro_ex8(PREFIX, 30).unwrap()),
        ex6: timed(|| repro_ex6(PREFIX, 30).unwrap()),
    }
}

fn verdicts(runs: &Runs) -> Outcome {
    let refuted_at_3 = matches!(&runs.tm_r.0.verdict, Verdict::Refuted { witness } if witness.starts_with("n = 3"));
    let fib_defect = g_defect(&presets::classical(2), &presets::fibonacci().prefix(runs.fib.0.prefix_length).unwrap())
        .unwrap()
        .d_g
        .iter()
        .all(|&d| d == 0);
    let checks = [
        runs.tm_i2.0.verdict == Verdict::Rich { up_to: 30 },
        refuted_at_3,
        runs.fib.0.verdict == Verdict::Rich { up_to: 50 } && fib_defect,
        runs.t33.0.verdict == Verdict::Rich { up_to: 30 },
    ];
    let times = [runs.tm_i2.1, runs.tm_r.1, runs.fib.1, runs.t33.1];
    let slowest = times.iter().max().copied().unwrap_or_default();
    outcome(
        checks.iter().all(|&c| c) && slowest < VERDICT_LIMIT,
        format!("verdicts {checks:?}, slowest {slowest:.2?} (limit {VERDICT_LIMIT:?}), L = {PREFIX}"),
    )
}

fn ex8(runs: &Runs) -> Outcome {
    let (e, t) = &runs.ex8;
    let l2 = digits(&["54", "62", "47", "12", "04", "76", "65", "40", "01", "23", "30", "26"]);
    let got_l2: BTreeSet<Word> = e.l2.iter().cloned().collect();
    let pass = e.all_ok()
        && e.richness.verdict == Verdict::Rich { up_to: 30 }
        && e.delta_c1 == 4
        && e.palindromes_len1 == 8
        && e.palindromes_len2 == 4
        && got_l2 == l2
        && e.bispecial_shape.checked > 0
        && e.pi_recursion.checked > 0
        && e.commutation.checked > 0
        && *t < VERDICT_LIMIT;
    outcome(
        pass,
        format!(
            "{}; dC(1) = {}, palindromes {}/{}; bispecials {}, pi {} (+{} skipped), commutation {} checks; {t:.2?}",
            e.richness.verdict,
            e.delta_c1,
            e.palindromes_len1,
            e.palindromes_len2,
            e.bispecial_shape.checked,
            e.pi_recursion.checked,
            e.pi_recursion.skipped,
            e.commutation.checked
        ),
    )
}

fn ex6(runs: &Runs) -> Outcome {
    let (e, t) = &runs.ex6;
    let h = presets::ex6_group();
    let expected: BTreeSet<BTreeSet<String>> = (0..3)
        .map(|i| {
            presets::ex6_subgroup(i)
                .elements()
                .iter()
                .map(|m| h.name(h.index_of(m).unwrap()).to_string())
                .collect()
        })
        .collect();
    let rich: BTreeSet<BTreeSet<String>> =
        e.subgroups.rich_proper().map(|s| s.elements.iter().cloned().collect()).collect();
    let sums_four = e.subgroups.rich_proper().all(|s| {
        s.index_two_ok == Some(true) && !s.index_two_sums.is_empty() && s.index_two_sums.iter().all(|&(_, v)| v == 4)
    });
    let pass = e.all_ok()
        && e.richness.verdict == Verdict::Rich { up_to: 30 }
        && (e.delta_c1, e.delta_c2, e.sum_p2, e.sum_p3) == (2, 4, 0, 12)
        && e.pal["Psi0"][0] == 2
        && e.pal["Psi2"][0] == 2
        && e.pal["Psi1"][0] == 4
        && rich == expected
        && sums_four
        && *t < VERDICT_LIMIT;
    outcome(
        pass,
        format!(
            "{}; dC(1) = {}, dC(2) = {}, sum P(2) = {}, sum P(3) = {}; {} rich proper subgroups; {t:.2?}",
            e.richness.verdict,
            e.delta_c1,
            e.delta_c2,
            e.sum_p2,
            e.sum_p3,
            rich.len()
        ),
    )
}

fn m<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

fn properties() -> Outcome {
    use common::*;
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    let runner = || TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let mut failures = Vec::new();
    let mut record = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    record("defect", m(runner().run(&word_and_group(), |(w, g)| check_defect(&w, &g))));
    record("growth", m(runner().run(&(word_and_group(), 0u8..5), |((w, g), a)| check_growth(&w, &g, a))));
    record("invariance", m(runner().run(&word_and_group(), |(w, g)| check_invariance(&w, &g))));
    record("pal bounds", m(runner().run(&word_and_group(), |(w, g)| check_pal_bounds(&w, &g))));
    record("extensions", m(runner().run(&periodic_case(), |(p, g)| check_extension_identities(&p, &g))));
    record("inequality", m(runner().run(&periodic_case(), |(p, g)| check_inequality(&p, &g))));
    outcome(
        failures.is_empty(),
        format!(
            "6 suites x {CASES} cases, |w| <= {MAX_LEN}, alphabets <= 5, group order <= {MAX_ORDER}; failures {failures:?}"
        ),
    )
}

fn agreement(runs: &Runs) -> Outcome {
    let mut reports: Vec<&RichnessReport> =
        vec![&runs.tm_i2.0, &runs.tm_r.0, &runs.fib.0, &runs.t33.0, &runs.ex8.0.richness, &runs.ex6.0.richness];
    let bad: Vec<String> = reports
        .drain(..)
        .filter(|r| !r.agreement.consistent() || matches!(r.verdict, Verdict::Inconsistent { .. }))
        .map(|r| format!("{}/{}: {:?}", r.word_id, r.group_id, r.agreement.disagreements()))
        .collect();
    let subgroups_ok = runs.ex6.0.subgroups.entries.iter().all(|e| !matches!(e.verdict, Verdict::Inconsistent { .. }));
    outcome(
        bad.is_empty() && subgroups_ok,
        format!("6 word/group pairs plus {} subgroups; disagreements {bad:?}", runs.ex6.0.subgroups.entries.len()),
    )
}

fn involutive_generation(runs: &Runs) -> Outcome {
    let rich_pairs = [&runs.tm_i2.0, &runs.fib.0, &runs.t33.0, &runs.ex8.0.richness, &runs.ex6.0.richness];
    let rich_ok = rich_pairs.iter().all(|r| !r.verdict.holds() || r.involutively_generated);

    let theta = SymmetryMap::antimorphism(vec![1, 2, 3, 0]).unwrap();
    let cyclic = SymmetryGroup::close_named(vec![("Theta".into(), theta)]).unwrap();
    let cyclic_flag = cyclic.order() == 4 && !cyclic.is_involutively_generated();
    let words = [
        WordSource::periodic(Word::digits("0123")).unwrap(),
        WordSource::periodic(Word::digits("01230321")).unwrap(),
        WordSource::digit_sum(2, 4).unwrap(),
        WordSource::digit_sum(4, 4).unwrap(),
    ];
    let refused = words.iter().all(|s| {
        let r = verify(&cyclic, s, &VerifyOptions::new(400, 8)).unwrap();
        r.contains_all_letters && matches!(r.verdict, Verdict::Refuted { .. } | Verdict::Inconsistent { .. })
    });
    outcome(
        rich_ok && cyclic_flag && refused,
        format!(
            "rich pairs involutively generated: {rich_ok}; order-4 cyclic group flagged: {cyclic_flag}; not certified on {} words: {refused}",
            words.len()
        ),
    )
}

fn main() {
    let mut all = true;
    let mut emit = |id: usize, name: &str, o: Outcome| {
        all &= o.pass;
        report(id, name, &o);
    };
    emit(1, "prefix table", table_rows());
    emit(2, "graph reproductions", figures());
    let runs = run_all();
    emit(3, "richness verdicts", verdicts(&runs));
    emit(4, "eight-letter example", ex8(&runs));
    emit(5, "six-letter example", ex6(&runs));
    emit(6, "property suites", properties());
    emit(7, "characterization agreement", agreement(&runs));
    emit(8, "involutive generation", involutive_generation(&runs));
    if !all {
        std::process::exit(1);
    }
}
