use std::collections::BTreeSet;

use grich::lang_index::LanguageIndex;
use grich::symgraph::{rauzy_graph, symmetry_graph, tls_verdict, SymmetryGraph};
use grich::{presets, SymmetryGroup, Word, WordSource};

fn index(source: &WordSource, len: usize, n_max: usize) -> LanguageIndex {
    LanguageIndex::build(source.prefix(len).unwrap(), n_max, None).unwrap()
}

fn classes(g: &SymmetryGroup, words: &[&str]) -> BTreeSet<Word> {
    words.iter().map(|w| g.canonical(&Word::digits(w))).collect()
}

fn loop_classes(graph: &SymmetryGraph) -> BTreeSet<Word> {
    graph.loops().map(|e| e.class.clone()).collect()
}

fn connecting_classes(graph: &SymmetryGraph) -> BTreeSet<Word> {
    graph.connecting().map(|e| e.class.clone()).collect()
}

#[test]
fn fibonacci_order_three_single_vertex() {
    let g = presets::classical(2);
    let idx = index(&presets::fibonacci(), 500, 6);
    let graph = symmetry_graph(&g, &idx, 3).unwrap();
    assert_eq!(graph.vertices, vec![Word::digits("010")]);
    let labels: BTreeSet<Word> = graph.directed.iter().map(|e| e.label.clone()).collect();
    assert_eq!(labels, [Word::digits("010010"), Word::digits("01010")].into_iter().collect());
    assert_eq!(loop_classes(&graph), classes(&g, &["010010", "01010"]));
    assert_eq!(graph.connecting().count(), 0);
    assert!(graph.loops().all(|e| !e.fixers.is_empty()));
    assert!(tls_verdict(&g, &idx, 3).unwrap().satisfied);
}

#[test]
fn thue_morse_rauzy_order_three() {
    let idx = index(&presets::thue_morse(), 512, 6);
    let r = rauzy_graph(&idx, 3).unwrap();
    let vertices: BTreeSet<Word> = r.vertices.iter().cloned().collect();
    let expected: BTreeSet<Word> =
        ["101", "010", "100", "001", "011", "110"].iter().map(|w| Word::digits(w)).collect();
    assert_eq!(vertices, expected);
    let edges: BTreeSet<Word> = r.edges.iter().cloned().collect();
    let expected: BTreeSet<Word> = [
        "1010", "0101", "0100", "0010", "1011", "1101", "1001", "0011", "0110", "1100",
    ]
    .iter()
    .map(|w| Word::digits(w))
    .collect();
    assert_eq!(edges, expected);
    for v in &r.vertices {
        assert!(r.out_degree(v) >= 1 && r.in_degree(v) >= 1);
    }
}

#[test]
fn thue_morse_directed_graph_dihedral() {
    let g = presets::i2(2);
    let idx = index(&presets::thue_morse(), 512, 6);
    let graph = symmetry_graph(&g, &idx, 3).unwrap();
    assert_eq!(graph.vertices.iter().cloned().collect::<BTreeSet<_>>(), classes(&g, &["011", "101"]));

    // (from, label, to) as drawn, compared through canonical classes.
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
        .map(|(f, l, t)| (g.canonical(&Word::digits(f)), Word::digits(l), g.canonical(&Word::digits(t))))
        .collect();
    let got: BTreeSet<(Word, Word, Word)> = graph
        .directed
        .iter()
        .map(|e| (graph.vertices[e.from].clone(), e.label.clone(), graph.vertices[e.to].clone()))
        .collect();
    assert_eq!(graph.directed.len(), 10);
    assert_eq!(got, expected);
}

#[test]
fn thue_morse_undirected_graph_dihedral() {
    let g = presets::i2(2);
    let idx = index(&presets::thue_morse(), 512, 6);
    let graph = symmetry_graph(&g, &idx, 3).unwrap();
    assert_eq!(connecting_classes(&graph), classes(&g, &["0100"]));
    assert_eq!(loop_classes(&graph), classes(&g, &["1010", "1100", "1001"]));
    let v101 = graph.vertices.binary_search(&g.canonical(&Word::digits("101"))).unwrap();
    let loop1010 = graph.undirected.iter().find(|e| e.class == g.canonical(&Word::digits("1010"))).unwrap();
    assert_eq!(loop1010.ends, (v101, v101));
    assert!(graph.is_tree());
    assert!(tls_verdict(&g, &idx, 3).unwrap().satisfied);
}

#[test]
fn thue_morse_reversal_only_has_cycle() {
    let g = presets::classical(2);
    let idx = index(&presets::thue_morse(), 512, 6);
    let graph = symmetry_graph(&g, &idx, 3).unwrap();
    assert_eq!(
        graph.vertices.iter().cloned().collect::<BTreeSet<_>>(),
        classes(&g, &["011", "101", "010", "001"])
    );
    assert_eq!(connecting_classes(&graph), classes(&g, &["1011", "0101", "0010", "0011"]));
    assert_eq!(loop_classes(&graph), classes(&g, &["0110", "1001"]));
    assert!(graph.is_connected());
    assert!(!graph.is_tree());
    let cycle = graph.cycle_witness().expect("cycle");
    assert_eq!(cycle.len(), 4);
    let v = tls_verdict(&g, &idx, 3).unwrap();
    assert!(!v.satisfied && v.cycle.is_some());
}

// The drawn graph shows two loops; 012201 = image of 02 under 0->012,
// 1->120, 2->201 is a third one (012 has three right extensions).
#[test]
fn t33_order_three() {
    let g = presets::i2(3);
    let idx = index(&presets::t33(), 2000, 6);
    let graph = symmetry_graph(&g, &idx, 3).unwrap();
    assert_eq!(graph.vertices, vec![g.canonical(&Word::digits("012"))]);
    assert_eq!(loop_classes(&graph), classes(&g, &["012120", "0120", "012201"]));
    assert_eq!(idx.data(&Word::digits("012")).unwrap().rext(), vec![0, 1, 2]);
    assert!(idx.contains(&Word::digits("012201")));
    for i in 1..3 {
        assert!(!idx.data(&Word::digits("012201")[i..i + 3]).unwrap().is_special());
    }
    assert_eq!(graph.connecting().count(), 0);
    assert!(tls_verdict(&g, &idx, 3).unwrap().satisfied);
}

#[test]
fn short_prefix_is_reported() {
    let g = presets::i2(2);
    let idx = index(&presets::thue_morse(), 13, 4);
    assert!(matches!(symmetry_graph(&g, &idx, 3), Err(grich::Error::InsufficientPrefix(_))));
    let idx = index(&presets::thue_morse(), 64, 4);
    assert!(symmetry_graph(&g, &idx, 3).is_ok());
}

#[test]
fn dot_exports_use_canonical_labels() {
    let g = presets::i2(3);
    let idx = index(&presets::t33(), 2000, 6);
    let graph = symmetry_graph(&g, &idx, 3).unwrap();
    let alphabet = grich::Alphabet::digits(3);
    let dot = graph.undirected_dot(&alphabet);
    assert!(dot.starts_with("graph"));
    assert!(dot.contains("[012]"));
    let directed = graph.directed_dot(&alphabet);
    assert!(directed.starts_with("digraph"));
    assert_eq!(dot, symmetry_graph(&g, &idx, 3).unwrap().undirected_dot(&alphabet));
}
