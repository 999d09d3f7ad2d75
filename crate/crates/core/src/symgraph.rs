//! Rauzy graphs, graphs of symmetries and the tree-like-structure test.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang_index::LanguageIndex;
use crate::symmetry::SymmetryGroup;
use crate::words::{Alphabet, Word};

fn check_order(index: &LanguageIndex, n: usize) -> Result<()> {
    if n > index.n_max() {
        return Err(Error::LengthOutOfRange { requested: n + 1, available: index.max_len() });
    }
    Ok(())
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices `L_n`, edges `L_{n+1}` from prefix to suffix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RauzyGraph {
    pub n: usize,
    pub vertices: Vec<Word>,
    pub edges: Vec<Word>,
}

impl RauzyGraph {
    pub fn out_degree(&self, v: &[u8]) -> usize {
        self.edges.iter().filter(|e| &e[..self.n] == v).count()
    }

    pub fn in_degree(&self, v: &[u8]) -> usize {
        self.edges.iter().filter(|e| &e[1..] == v).count()
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("digraph rauzy_{} {{\n", self.n);
        for v in &self.vertices {
            writeln!(out, "  {};", quote(&alphabet.render(v))).unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&alphabet.render(&e[..self.n])),
                quote(&alphabet.render(&e[1..])),
                quote(&alphabet.render(e))
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn rauzy_graph(index: &LanguageIndex, n: usize) -> Result<RauzyGraph> {
    check_order(index, n)?;
    Ok(RauzyGraph {
        n,
        vertices: index.factors(n).to_vec(),
        edges: index.factors(n + 1).to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectedEdge {
    pub label: Word,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UndirectedEdge {
    /// Lexicographically least member of the label class.
    pub class: Word,
    /// Vertex indices, smaller first.
    pub ends: (usize, usize),
    /// Antimorphisms fixing `class`; only meaningful for loops.
    pub fixers: Vec<usize>,
}

impl UndirectedEdge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

/// Directed and undirected graphs of symmetries of one order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryGraph {
    pub n: usize,
    /// Canonical representatives of the vertex classes, sorted.
    pub vertices: Vec<Word>,
    pub members: Vec<BTreeSet<Word>>,
    pub directed: Vec<DirectedEdge>,
    pub undirected: Vec<UndirectedEdge>,
}

/// Builds both graphs of symmetries of order `n`.
///
/// Edge labels are found by walking forward from every occurrence of a
/// special factor to the next occurrence of a special factor. Each right
/// extension of each special factor must start at least one completed walk.
pub fn symmetry_graph(g: &SymmetryGroup, index: &LanguageIndex, n: usize) -> Result<SymmetryGraph> {
    check_order(index, n)?;
    let text = index.text();
    let special_at: Vec<bool> = (0..=text.len() - n)
        .map(|i| index.data(&text[i..i + n]).is_some_and(|d| d.is_special()))
        .collect();

    let mut labels: BTreeSet<Word> = BTreeSet::new();
    let mut next: Option<usize> = None;
    for i in (0..special_at.len()).rev() {
        if special_at[i] {
            if let Some(j) = next {
                labels.insert(Word::from(&text[i..j + n]));
            }
            next = Some(i);
        }
    }

    let specials: Vec<&Word> = index
        .factors(n)
        .iter()
        .filter(|w| index.data(w).is_some_and(|d| d.is_special()))
        .collect();
    for s in &specials {
        for a in index.data(s).expect("indexed").rext() {
            let started = labels
                .range(Word::from([s.letters(), &[a]].concat())..)
                .next()
                .is_some_and(|l| l.starts_with(s) && l[n] == a);
            if !started {
                return Err(Error::InsufficientPrefix(format!(
                    "walk from special factor {s} followed by {a} leaves the prefix of length {}",
                    text.len()
                )));
            }
        }
    }

    let mut members: BTreeMap<Word, BTreeSet<Word>> = BTreeMap::new();
    for s in &specials {
        members.entry(g.canonical(s)).or_default().insert((*s).clone());
    }
    let vertices: Vec<Word> = members.keys().cloned().collect();
    let vertex = |w: &[u8]| -> Result<usize> {
        vertices.binary_search(&g.canonical(w)).map_err(|_| {
            Error::InsufficientPrefix(format!("class of {} has no special member", Word::from(w)))
        })
    };

    let mut directed = Vec::with_capacity(labels.len());
    for label in &labels {
        let from = vertex(&label[..n])?;
        let to = vertex(&label[label.len() - n..])?;
        directed.push(DirectedEdge { label: label.clone(), from, to });
    }

    let mut classes: BTreeMap<Word, (usize, usize)> = BTreeMap::new();
    for e in &directed {
        classes
            .entry(g.canonical(&e.label))
            .or_insert((e.from.min(e.to), e.from.max(e.to)));
    }
    let undirected = classes
        .into_iter()
        .map(|(class, ends)| {
            let fixers = g.fixers(&class);
            UndirectedEdge { class, ends, fixers }
        })
        .collect();

    Ok(SymmetryGraph {
        n,
        vertices,
        members: members.into_values().collect(),
        directed,
        undirected,
    })
}

impl SymmetryGraph {
    pub fn loops(&self) -> impl Iterator<Item = &UndirectedEdge> {
        self.undirected.iter().filter(|e| e.is_loop())
    }

    pub fn connecting(&self) -> impl Iterator<Item = &UndirectedEdge> {
        self.undirected.iter().filter(|e| !e.is_loop())
    }

    pub fn is_connected(&self) -> bool {
        let k = self.vertices.len();
        if k == 0 {
            return true;
        }
        let mut seen = vec![false; k];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in self.connecting() {
                let (a, b) = e.ends;
                let other = if a == v { b } else if b == v { a } else { continue };
                if !seen[other] {
                    seen[other] = true;
                    queue.push_back(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Class representatives of connecting edges forming a cycle, if any.
    /// Two parallel edge classes count as a cycle of length two.
    pub fn cycle_witness(&self) -> Option<Vec<Word>> {
        let k = self.vertices.len();
        let mut forest: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k];
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let edges: Vec<&UndirectedEdge> = self.connecting().collect();
        for (idx, e) in edges.iter().enumerate() {
            let (a, b) = e.ends;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                // Path from a to b inside the forest, then close with e.
                let mut prev: Vec<Option<(usize, usize)>> = vec![None; k];
                let mut seen = vec![false; k];
                seen[a] = true;
                let mut queue = VecDeque::from([a]);
                while let Some(v) = queue.pop_front() {
                    for &(w, ei) in &forest[v] {
                        if !seen[w] {
                            seen[w] = true;
                            prev[w] = Some((v, ei));
                            queue.push_back(w);
                        }
                    }
                }
                let mut cycle = vec![e.class.clone()];
                let mut v = b;
                while let Some((p, ei)) = prev[v] {
                    cycle.push(edges[ei].class.clone());
                    v = p;
                }
                return Some(cycle);
            }
            parent[ra] = rb;
            forest[a].push((b, idx));
            forest[b].push((a, idx));
        }
        None
    }

    /// Whether the graph without loops is a tree. Empty and single-vertex
    /// graphs are trees.
    pub fn is_tree(&self) -> bool {
        let k = self.vertices.len();
        let e = self.connecting().count();
        k <= 1 && e == 0 || self.is_connected() && e + 1 == k && self.cycle_witness().is_none()
    }

    fn vertex_label(&self, i: usize, alphabet: &Alphabet) -> String {
        format!("[{}]", alphabet.render(&self.vertices[i]))
    }

    pub fn directed_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("digraph symmetries_directed_{} {{\n", self.n);
        for i in 0..self.vertices.len() {
            writeln!(out, "  {};", quote(&self.vertex_label(i, alphabet))).unwrap();
        }
        for e in &self.directed {
            writeln!(
                out,
                "  {} -> {} [label={}];",
                quote(&self.vertex_label(e.from, alphabet)),
                quote(&self.vertex_label(e.to, alphabet)),
                quote(&alphabet.render(&e.label))
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn undirected_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("graph symmetries_{} {{\n", self.n);
        for i in 0..self.vertices.len() {
            writeln!(out, "  {};", quote(&self.vertex_label(i, alphabet))).unwrap();
        }
        for e in &self.undirected {
            writeln!(
                out,
                "  {} -- {} [label={}];",
                quote(&self.vertex_label(e.ends.0, alphabet)),
                quote(&self.vertex_label(e.ends.1, alphabet)),
                quote(&format!("[{}]", alphabet.render(&e.class)))
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Outcome of the tree-like-structure test at one order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TlsVerdict {
    pub n: usize,
    /// Loop classes with the antimorphisms fixing them.
    pub loops: Vec<(Word, Vec<usize>)>,
    pub non_palindromic_loops: Vec<Word>,
    pub connected: bool,
    pub tree: bool,
    pub cycle: Option<Vec<Word>>,
    pub satisfied: bool,
}

impl TlsVerdict {
    pub fn of(graph: &SymmetryGraph) -> Self {
        let loops: Vec<(Word, Vec<usize>)> =
            graph.loops().map(|e| (e.class.clone(), e.fixers.clone())).collect();
        let non_palindromic_loops: Vec<Word> =
            loops.iter().filter(|(_, f)| f.is_empty()).map(|(w, _)| w.clone()).collect();
        let tree = graph.is_tree();
        TlsVerdict {
            n: graph.n,
            satisfied: tree && non_palindromic_loops.is_empty(),
            loops,
            non_palindromic_loops,
            connected: graph.is_connected(),
            tree,
            cycle: graph.cycle_witness(),
        }
    }
}

pub fn tls_verdict(g: &SymmetryGroup, index: &LanguageIndex, n: usize) -> Result<TlsVerdict> {
    Ok(TlsVerdict::of(&symmetry_graph(g, index, n)?))
}

/// Bilateral order of one bispecial factor against the expected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BispecialRecord {
    pub word: Word,
    pub bilateral_order: i64,
    pub left: usize,
    pub right: usize,
    /// `(antimorphism index, #Pext)` for every antimorphism fixing the word.
    pub pext: Vec<(usize, usize)>,
    /// `b(w) = 0` for non-palindromes, `b(w) = #Pext_Θ(w) − 1` for some
    /// fixing Θ otherwise.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BispecialSummary {
    pub n: usize,
    pub records: Vec<BispecialRecord>,
    pub all_ok: bool,
}

pub fn bispecial_check(
    g: &SymmetryGroup,
    index: &LanguageIndex,
    n: usize,
) -> Result<BispecialSummary> {
    check_order(index, n)?;
    let mut records = Vec::new();
    for w in index.factors(n) {
        let data = index.data(w).expect("indexed");
        if !data.is_bispecial() {
            continue;
        }
        let b = data.bilateral_order();
        let mut pext = Vec::new();
        for t in g.fixers(w) {
            pext.push((t, index.pext(g.element(t), w)?.len()));
        }
        let ok = if pext.is_empty() {
            b == 0
        } else {
            pext.iter().any(|&(_, p)| b == p as i64 - 1)
        };
        records.push(BispecialRecord {
            word: w.clone(),
            bilateral_order: b,
            left: data.left_degree(),
            right: data.right_degree(),
            pext,
            ok,
        });
    }
    let all_ok = records.iter().all(|r| r.ok);
    Ok(BispecialSummary { n, records, all_ok })
}

/// Both sides of `ΔC(n) + #G ≥ Σ_{Θ∈G^(2)} (P_Θ(n) + P_Θ(n+1))` and the
/// second-difference form of the equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub n: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub distinguishing: bool,
    pub inequality_holds: bool,
    pub equal: bool,
    /// Δ²C(n), when `n < n_max`.
    pub delta2_c: Option<i64>,
    /// `Σ_{Θ∈G^(2)} Σ_{w=Θ(w)} (#Pext_Θ(w) − 1)` over `L_n`.
    pub pext_sum: i64,
    pub second_form_equal: Option<bool>,
}

pub fn complexity_identity(
    g: &SymmetryGroup,
    index: &LanguageIndex,
    n: usize,
) -> Result<IdentityRecord> {
    check_order(index, n)?;
    let lhs = index.delta_c(n) + g.order() as i64;
    let mut rhs = 0i64;
    let mut pext_sum = 0i64;
    for &t in g.involutive_antimorphisms() {
        let theta = g.element(t);
        for w in index.factors(n).iter().filter(|w| theta.fixes(w)) {
            rhs += 1;
            pext_sum += index.pext(theta, w)?.len() as i64 - 1;
        }
        rhs += index.factors(n + 1).iter().filter(|w| theta.fixes(w)).count() as i64;
    }
    let delta2_c = (n < index.n_max()).then(|| index.delta2_c(n));
    Ok(IdentityRecord {
        n,
        lhs,
        rhs,
        distinguishing: index.is_distinguishing(g, n),
        inequality_holds: lhs >= rhs,
        equal: lhs == rhs,
        delta2_c,
        pext_sum,
        second_form_equal: delta2_c.map(|d| d == pext_sum),
    })
}
