//! Bounded verification of G-richness through all of its characterizations,
//! plus checks specific to the 8- and 6-letter example words.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};

use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang_index::{stability_check, LanguageIndex, Stability};
use crate::palin::{self, DefectProfile};
use crate::presets;
use crate::symgraph::{
    bispecial_check, complexity_identity, symmetry_graph, BispecialSummary, IdentityRecord,
    TlsVerdict,
};
use crate::symmetry::SymmetryGroup;
use crate::words::{Letter, Word, WordSource};

/// How many times `verify` doubles an unstable prefix before giving up.
pub const MAX_DOUBLINGS: usize = 4;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub prefix_length: usize,
    pub n_max: usize,
    /// The N of Property G-tls(N); 1 asks for G-richness.
    pub threshold: usize,
    pub word_id: String,
    pub group_id: String,
}

impl VerifyOptions {
    pub fn new(prefix_length: usize, n_max: usize) -> Self {
        VerifyOptions {
            prefix_length,
            n_max,
            threshold: 1,
            word_id: "word".into(),
            group_id: "group".into(),
        }
    }

    pub fn threshold(mut self, n: usize) -> Self {
        self.threshold = n.max(1);
        self
    }

    pub fn ids(mut self, word: &str, group: &str) -> Self {
        self.word_id = word.into();
        self.group_id = group.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Rich { up_to: usize },
    AlmostRichCandidate { threshold: usize, up_to: usize },
    Refuted { witness: String },
    Inconsistent { reason: String },
}

impl Verdict {
    pub fn is_rich(&self) -> bool {
        matches!(self, Verdict::Rich { .. })
    }

    /// Rich, or rich from the threshold on.
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Rich { .. } | Verdict::AlmostRichCandidate { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Rich { up_to } => write!(f, "G-rich up to n = {up_to}"),
            Verdict::AlmostRichCandidate { threshold, up_to } => {
                write!(f, "almost G-rich candidate: tree-like structure for {threshold} <= n <= {up_to}")
            }
            Verdict::Refuted { witness } => write!(f, "refuted: {witness}"),
            Verdict::Inconsistent { reason } => write!(f, "inconsistent: {reason}"),
        }
    }
}

/// Bounded return-word property.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrwResult {
    pub classes_checked: usize,
    /// Classes with fewer than two G-occurrences in the prefix.
    pub unchecked: Vec<Word>,
    /// `(factor, complete return word)` for the first non-palindromic return word.
    pub counterexample: Option<(Word, Word)>,
    /// Return words whose suffix of length |w|+1 is no antimorphic image of the prefix.
    pub shape_violations: Vec<Word>,
}

impl CrwResult {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpsResult {
    pub from: usize,
    pub positions_checked: usize,
    pub first_lacuna: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectSummary {
    pub defect: usize,
    pub stabilized: bool,
    pub formula_agrees: bool,
    pub lacunas: Vec<usize>,
}

/// One entry per characterization; `None` where it does not apply.
///
/// The complexity and bispecial characterizations describe the orders from
/// the least distinguishing one on, so they are compared with the
/// tree-like structure on that range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub tls: bool,
    pub tls_from_distinguishing: Option<bool>,
    pub crw: bool,
    pub complexity: Option<bool>,
    pub bispecial: Option<bool>,
    pub lps: Option<bool>,
    pub defect: Option<bool>,
}

impl Agreement {
    pub fn consistent(&self) -> bool {
        self.disagreements().is_empty()
    }

    pub fn disagreements(&self) -> Vec<&'static str> {
        let t = Some(self.tls);
        let td = self.tls_from_distinguishing;
        let entries = [
            ("return words", Some(self.crw), t),
            ("complexity identity", self.complexity, td),
            ("bispecial factors", self.bispecial, td),
            ("longest palindromic suffix", self.lps, t),
            ("defect", self.defect, t),
        ];
        entries
            .into_iter()
            .filter(|(_, v, expected)| v.is_some() && v != expected)
            .map(|(name, _, _)| name)
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RichnessReport {
    pub word_id: String,
    pub group_id: String,
    pub prefix_length: usize,
    pub threshold: usize,
    pub n_max: usize,
    pub group_order: usize,
    pub element_names: Vec<String>,
    pub involutively_generated: bool,
    pub contains_all_letters: bool,
    pub distinguishing_threshold: Option<usize>,
    pub stability: Stability,
    pub closure_witness: Option<String>,
    /// Tree-like-structure verdicts for every `1 ≤ n ≤ n_max`.
    pub tls: Vec<TlsVerdict>,
    pub identities: Vec<IdentityRecord>,
    pub bispecials: Vec<BispecialSummary>,
    pub crw: CrwResult,
    pub lps: LpsResult,
    pub defect: DefectSummary,
    pub agreement: Agreement,
    /// Least N with tree-like structure for every N ≤ n ≤ n_max.
    pub candidate_threshold: Option<usize>,
    pub verdict: Verdict,
}

fn with_stable_prefix(source: &WordSource, len: usize, n_max: usize) -> Result<(Word, Stability)> {
    let mut len = len.max(n_max + 2);
    for _ in 0..=MAX_DOUBLINGS {
        let s = stability_check(source, len, n_max)?;
        if s.stable {
            return Ok((source.prefix(len)?, s));
        }
        let (n, a, b) = s.first_difference.unwrap_or_default();
        warn!("prefix of length {len} is unstable at n = {n} ({a} vs {b} factors); doubling");
        len *= 2;
    }
    Err(Error::InsufficientPrefix(format!(
        "factor sets up to length {} still change at prefix length {len}",
        n_max + 1
    )))
}

fn tls_witness(v: &TlsVerdict) -> String {
    if let Some(l) = v.non_palindromic_loops.first() {
        format!("n = {}: loop [{l}] is not a G-palindrome", v.n)
    } else if let Some(c) = &v.cycle {
        let edges: Vec<String> = c.iter().map(|e| format!("[{e}]")).collect();
        format!("n = {}: cycle through {}", v.n, edges.join(", "))
    } else {
        format!("n = {}: graph of symmetries is not connected", v.n)
    }
}

/// Bounded return-word check over factors of lengths `from..=to`.
pub fn crw_check(g: &SymmetryGroup, index: &LanguageIndex, from: usize, to: usize) -> CrwResult {
    let text = index.text();
    let mut out = CrwResult::default();
    for n in from.max(1)..=to.min(index.max_len()) {
        let mut done: HashSet<Word> = HashSet::new();
        for w in index.factors(n) {
            let rep = g.canonical(w);
            if !done.insert(rep.clone()) {
                continue;
            }
            let mut occ: Vec<u32> = g
                .equivalence_class(w)
                .iter()
                .flat_map(|m| index.occurrences(m).iter().copied())
                .collect();
            occ.sort_unstable();
            occ.dedup();
            if occ.len() < 2 {
                out.unchecked.push(rep);
                continue;
            }
            out.classes_checked += 1;
            let mut seen: HashSet<&[Letter]> = HashSet::new();
            for p in occ.windows(2) {
                let v = &text[p[0] as usize..p[1] as usize + n];
                if !seen.insert(v) {
                    continue;
                }
                if !g.is_g_palindrome(v) {
                    if out.counterexample.is_none() {
                        out.counterexample = Some((rep.clone(), Word::from(v)));
                    }
                    continue;
                }
                let head = &v[..n + 1];
                let tail = &v[v.len() - n - 1..];
                let shaped = g.antimorphisms().any(|t| g.element(t).image(head).letters() == tail);
                if !shaped {
                    out.shape_violations.push(Word::from(v));
                }
            }
        }
    }
    out
}

/// Runs every characterization of G-richness on a prefix of `source`.
pub fn verify(g: &SymmetryGroup, source: &WordSource, opts: &VerifyOptions) -> Result<RichnessReport> {
    if !g.has_antimorphism() {
        return Err(Error::NoAntimorphism);
    }
    if source.alphabet_size() > g.alphabet_size() {
        return Err(Error::AlphabetMismatch { expected: g.alphabet_size(), found: source.alphabet_size() });
    }
    let n_max = opts.n_max;
    let big_n = opts.threshold.max(1);
    let (text, stability) = with_stable_prefix(source, opts.prefix_length, n_max)?;
    info!("verifying {} under {} on {} letters", opts.word_id, opts.group_id, text.len());
    let index = LanguageIndex::build(text, n_max, None)?;

    let closure_witness = index.closure_witness(g, n_max + 1).map(|(w, i)| {
        format!("{} maps factor {w} to {}, which does not occur", g.name(i), g.element(i).image(&w))
    });

    let tls: Vec<TlsVerdict> = (1..=n_max)
        .into_par_iter()
        .map(|n| symmetry_graph(g, &index, n).map(|sg| TlsVerdict::of(&sg)))
        .collect::<Result<_>>()?;
    let tls_from = |from: usize| tls.iter().filter(|v| v.n >= from).all(|v| v.satisfied);
    let candidate_threshold = (1..=n_max).find(|&m| tls_from(m));

    let distinguishing_threshold = index.distinguishing_threshold(g);
    let n0 = distinguishing_threshold.map(|d| d.max(big_n)).filter(|&n0| n0 <= n_max);

    let identities: Vec<IdentityRecord> = (0..=n_max)
        .map(|n| complexity_identity(g, &index, n))
        .collect::<Result<_>>()?;
    let bispecials: Vec<BispecialSummary> = (0..=n_max)
        .map(|n| bispecial_check(g, &index, n))
        .collect::<Result<_>>()?;

    let crw = crw_check(g, &index, big_n, n_max);

    let profile: DefectProfile = palin::g_defect(g, index.text())?;
    let lps = LpsResult {
        from: big_n,
        positions_checked: index.text().len() + 1 - big_n,
        first_lacuna: profile.lacunas.iter().copied().find(|&p| p >= big_n),
    };
    let defect = DefectSummary {
        defect: profile.defect(),
        stabilized: profile.is_stabilized(),
        formula_agrees: profile.formula_agrees,
        lacunas: profile.lacunas.iter().copied().take(20).collect(),
    };

    let tls_ok = tls_from(big_n);
    let (complexity, bispecial) = match n0 {
        Some(n0) => {
            let eq = identities.iter().filter(|r| r.n >= n0).all(|r| r.equal);
            let bs = identities[n0].equal && bispecials.iter().filter(|b| b.n >= n0).all(|b| b.all_ok);
            (Some(eq), Some(bs))
        }
        None => (None, None),
    };
    let agreement = Agreement {
        tls: tls_ok,
        tls_from_distinguishing: n0.map(tls_from),
        crw: crw.holds(),
        complexity,
        bispecial,
        lps: (big_n == 1).then(|| lps.first_lacuna.is_none()),
        defect: (big_n == 1).then(|| profile.defect() == 0 && profile.formula_agrees),
    };

    let contains_all_letters = (0..g.alphabet_size()).all(|a| index.contains(&[a as Letter]));
    let involutively_generated = g.is_involutively_generated();

    let verdict = if let Some(w) = &closure_witness {
        Verdict::Refuted { witness: format!("language is not closed under the group: {w}") }
    } else if !agreement.consistent() {
        Verdict::Inconsistent {
            reason: format!(
                "tree-like structure gives {tls_ok} but {} disagree",
                agreement.disagreements().join(", ")
            ),
        }
    } else if tls_ok {
        if contains_all_letters && !involutively_generated {
            Verdict::Inconsistent {
                reason: "every check passes although the group is not generated by its involutive antimorphisms"
                    .into(),
            }
        } else if big_n == 1 {
            Verdict::Rich { up_to: n_max }
        } else {
            Verdict::AlmostRichCandidate { threshold: big_n, up_to: n_max }
        }
    } else {
        let first = tls.iter().find(|v| v.n >= big_n && !v.satisfied).expect("some order fails");
        Verdict::Refuted { witness: tls_witness(first) }
    };

    Ok(RichnessReport {
        word_id: opts.word_id.clone(),
        group_id: opts.group_id.clone(),
        prefix_length: index.text().len(),
        threshold: big_n,
        n_max,
        group_order: g.order(),
        element_names: g.names().to_vec(),
        involutively_generated,
        contains_all_letters,
        distinguishing_threshold,
        stability,
        closure_witness,
        tls,
        identities,
        bispecials,
        crw,
        lps,
        defect,
        agreement,
        candidate_threshold,
        verdict,
    })
}

fn flag(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt_flag(b: Option<bool>) -> &'static str {
    b.map_or("n/a", flag)
}

impl RichnessReport {
    pub fn tls_at(&self, n: usize) -> Option<&TlsVerdict> {
        self.tls.iter().find(|v| v.n == n)
    }

    /// Human-readable report.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "word: {}", self.word_id).unwrap();
        writeln!(w, "group: {} (order {})", self.group_id, self.group_order).unwrap();
        writeln!(w, "prefix length: {}", self.prefix_length).unwrap();
        writeln!(w, "orders checked: {}..={}", self.threshold, self.n_max).unwrap();
        writeln!(w, "involutively generated: {}", flag(self.involutively_generated)).unwrap();
        writeln!(w, "contains all letters: {}", flag(self.contains_all_letters)).unwrap();
        match self.distinguishing_threshold {
            Some(d) => writeln!(w, "least distinguishing length: {d}").unwrap(),
            None => writeln!(w, "least distinguishing length: none indexed").unwrap(),
        }
        if let Some(c) = &self.closure_witness {
            writeln!(w, "closure: {c}").unwrap();
        }
        writeln!(w).unwrap();
        writeln!(w, "n   dC(n)  dC+#G  sum P  dist  tls").unwrap();
        for r in self.identities.iter().filter(|r| r.n >= 1) {
            let tls = self.tls_at(r.n).map_or("-", |v| flag(v.satisfied));
            let dc = r.lhs - self.group_order as i64;
            writeln!(
                w,
                "{:<3} {:>5}  {:>5}  {:>5}  {:<4}  {}",
                r.n,
                dc,
                r.lhs,
                r.rhs,
                flag(r.distinguishing),
                tls
            )
            .unwrap();
        }
        writeln!(w).unwrap();
        writeln!(w, "agreement:").unwrap();
        writeln!(w, "  tree-like structure: {}", flag(self.agreement.tls)).unwrap();
        writeln!(w, "  return words: {}", flag(self.agreement.crw)).unwrap();
        writeln!(w, "  complexity identity: {}", opt_flag(self.agreement.complexity)).unwrap();
        writeln!(w, "  bispecial factors: {}", opt_flag(self.agreement.bispecial)).unwrap();
        writeln!(w, "  longest palindromic suffix: {}", opt_flag(self.agreement.lps)).unwrap();
        writeln!(w, "  defect zero: {}", opt_flag(self.agreement.defect)).unwrap();
        writeln!(
            w,
            "return words: {} classes checked, {} unchecked",
            self.crw.classes_checked,
            self.crw.unchecked.len()
        )
        .unwrap();
        if let Some((f, v)) = &self.crw.counterexample {
            writeln!(w, "  return word {v} of [{f}] is not a G-palindrome").unwrap();
        }
        writeln!(
            w,
            "defect of prefix: {} (stabilized: {})",
            self.defect.defect,
            flag(self.defect.stabilized)
        )
        .unwrap();
        if let Some(p) = self.lps.first_lacuna {
            writeln!(w, "first lacuna at position {p}").unwrap();
        }
        if let Some(t) = self.candidate_threshold {
            writeln!(w, "candidate threshold: {t}").unwrap();
        }
        writeln!(w).unwrap();
        writeln!(w, "verdict: {}", self.verdict).unwrap();
        if self.verdict.holds() {
            writeln!(w, "(verified only for orders up to {})", self.n_max).unwrap();
        }
        out
    }
}

/// Whether consecutive G-occurrences of `w` are antimorphic images of each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alternation {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

pub fn alternation_check(g: &SymmetryGroup, w: &[Letter], text: &[Letter]) -> Result<Alternation> {
    let occ = palin::g_occurrences(g, w, text)?;
    let n = w.len();
    let antis: Vec<usize> = g.antimorphisms().collect();
    for p in occ.windows(2) {
        let prev = &text[p[0]..p[0] + n];
        let next = &text[p[1]..p[1] + n];
        if !antis.iter().any(|&t| g.element(t).image(prev).letters() == next) {
            return Ok(Alternation { holds: false, first_violation: Some(p[1]) });
        }
    }
    Ok(Alternation { holds: true, first_violation: None })
}

/// A family of identities checked over many factors, with the first failure.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub checked: usize,
    pub skipped: usize,
    pub violation: Option<String>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }

    fn fail(&mut self, msg: String) {
        if self.violation.is_none() {
            self.violation = Some(msg);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Ex8Report {
    pub richness: RichnessReport,
    pub delta_c1: i64,
    pub palindromes_len1: usize,
    pub palindromes_len2: usize,
    pub l2: Vec<Word>,
    pub bispecial_shape: IdentityCheck,
    pub pi_recursion: IdentityCheck,
    pub commutation: IdentityCheck,
}

impl Ex8Report {
    pub fn all_ok(&self) -> bool {
        self.richness.verdict.is_rich()
            && self.bispecial_shape.holds()
            && self.pi_recursion.holds()
            && self.commutation.holds()
    }
}

/// Checks the example word u over eight letters and its group G.
pub fn repro_ex8(len: usize, n_max: usize) -> Result<Ex8Report> {
    let g = presets::ex8_group();
    let source = presets::ex8_word();
    let richness = verify(&g, &source, &VerifyOptions::new(len, n_max).ids("u", "G"))?;
    let index = LanguageIndex::build(source.prefix(richness.prefix_length)?, n_max, None)?;
    let phi = presets::phi();
    let thetas = presets::thetas();

    let mut bispecial_shape = IdentityCheck::default();
    let mut pi_recursion = IdentityCheck::default();
    for n in 1..=n_max {
        for w in index.factors(n) {
            let data = index.data(w).expect("indexed");
            if !data.is_bispecial() {
                continue;
            }
            bispecial_shape.checked += 1;
            let fixers = g.fixers(w);
            let one_ext = fixers.len() == 1
                && index.pext(g.element(fixers[0]), w).map(|p| p.len()) == Ok(1);
            if data.bilateral_order() != 0 || data.left_degree() != 2 || data.right_degree() != 2 || !one_ext {
                bispecial_shape.fail(format!("bispecial {w}: b = {}, {} left, {} right extensions, fixed by {} antimorphisms",
                    data.bilateral_order(), data.left_degree(), data.right_degree(), fixers.len()));
            }
            let last = w[w.len() - 1];
            let Some(p) = presets::pi(last) else {
                pi_recursion.fail(format!("bispecial {w} ends with {last}"));
                continue;
            };
            let mut z = phi.apply(w)?;
            z.push(p);
            match index.data(&z) {
                Some(d) => {
                    pi_recursion.checked += 1;
                    if !d.is_bispecial() || d.bilateral_order() != data.bilateral_order() {
                        pi_recursion.fail(format!("{z} = φ({w})π({last}) is not bispecial with equal bilateral order"));
                    }
                }
                None if z.len() > index.max_len() => pi_recursion.skipped += 1,
                None => pi_recursion.fail(format!("{z} = φ({w})π({last}) is not a factor")),
            }
        }
    }

    let mut commutation = IdentityCheck::default();
    for n in 1..=index.max_len() {
        for w in index.factors(n) {
            for i in 0..3 {
                let ti = &thetas[i];
                let tprev = &thetas[(i + 2) % 3];
                // y_i(w) = Θ_i applied to the first letter of φ(w₀).
                let y = ti.letter(phi.image(w[0])[0]);
                let x = phi.image(tprev.letter(w[n - 1]))[0];
                let mut lhs = Word::new(vec![x]);
                lhs.extend_from_slice(&ti.image(&phi.apply(w)?));
                let mut rhs = phi.apply(&tprev.image(w))?;
                rhs.push(y);
                commutation.checked += 1;
                if lhs != rhs {
                    commutation.fail(format!("w = {w}, i = {i}: {lhs} vs {rhs}"));
                }
            }
        }
    }

    Ok(Ex8Report {
        delta_c1: index.delta_c(1),
        palindromes_len1: index.g_palindrome_count(&g, 1),
        palindromes_len2: index.g_palindrome_count(&g, 2),
        l2: index.factors(2).to_vec(),
        richness,
        bispecial_shape,
        pi_recursion,
        commutation,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Ex6Report {
    pub richness: RichnessReport,
    pub delta_c1: i64,
    pub delta_c2: i64,
    /// P_Ψ(n) for n = 1, 2, 3, one row per involutive antimorphism.
    pub pal: BTreeMap<String, [usize; 3]>,
    pub sum_p2: usize,
    pub sum_p3: usize,
    pub palindrome_lift: IdentityCheck,
    pub bispecial_correspondence: IdentityCheck,
    pub subgroups: SubgroupScan,
}

impl Ex6Report {
    pub fn all_ok(&self) -> bool {
        self.richness.verdict.is_rich()
            && self.palindrome_lift.holds()
            && self.bispecial_correspondence.holds()
            && self.subgroups.index_two_ok()
    }
}

/// Checks the example word v = μ(u) over six letters and its group H.
pub fn repro_ex6(len: usize, n_max: usize) -> Result<Ex6Report> {
    let h = presets::ex6_group();
    let source = presets::ex6_word();
    let richness = verify(&h, &source, &VerifyOptions::new(len, n_max).ids("v", "H"))?;
    let v_index = LanguageIndex::build(source.prefix(richness.prefix_length)?, n_max, None)?;
    let u_len = richness.prefix_length;
    let u_n_max = n_max.saturating_sub(2) / 2;
    let u_index = LanguageIndex::build(presets::ex8_word().prefix(u_len)?, u_n_max.max(1), None)?;
    let (mu, eta) = (presets::mu(), presets::eta());
    let thetas = presets::thetas();
    let psis = presets::psis();
    let lift = |w: &[Letter]| -> Result<Word> {
        let mut z = mu.apply(w)?;
        z.extend_from_slice(eta.image(w[w.len() - 1]));
        Ok(z)
    };

    let mut palindrome_lift = IdentityCheck::default();
    for n in 1..=u_index.max_len() {
        for w in u_index.factors(n) {
            for i in 0..3 {
                if !thetas[i].fixes(w) {
                    continue;
                }
                let z = lift(w)?;
                if z.len() > v_index.max_len() {
                    palindrome_lift.skipped += 1;
                    continue;
                }
                palindrome_lift.checked += 1;
                if !v_index.contains(&z) || !psis[i].fixes(&z) {
                    palindrome_lift.fail(format!("Theta{i}-palindrome {w} lifts to {z}"));
                }
            }
        }
    }

    let mut bispecial_correspondence = IdentityCheck::default();
    let mut lifted: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for n in 1..=u_index.max_len() {
        for w in u_index.factors(n) {
            if u_index.data(w).is_some_and(|d| d.is_bispecial()) {
                let z = lift(w)?;
                if z.len() <= v_index.max_len() {
                    bispecial_correspondence.checked += 1;
                    if !v_index.data(&z).is_some_and(|d| d.is_bispecial()) {
                        bispecial_correspondence.fail(format!("lift {z} of bispecial {w} is not bispecial"));
                    }
                }
                lifted.entry(z).or_default().push(w.clone());
            }
        }
    }
    // Lifts of u-bispecials of length ≤ m cover v-bispecials of length ≤ 2m + 3.
    let covered = 2 * u_index.max_len() + 3;
    for n in 5..=v_index.max_len().min(covered) {
        for z in v_index.factors(n) {
            if !v_index.data(z).is_some_and(|d| d.is_bispecial()) {
                continue;
            }
            bispecial_correspondence.checked += 1;
            let count = lifted.get(z).map_or(0, Vec::len);
            if count != 1 {
                bispecial_correspondence.fail(format!("bispecial {z} of v is the lift of {count} bispecials of u"));
            }
        }
    }

    let mut pal = BTreeMap::new();
    let (mut sum_p2, mut sum_p3) = (0, 0);
    for &t in h.involutive_antimorphisms() {
        let p = v_index.palindromic_complexity(h.element(t));
        sum_p2 += p[2];
        sum_p3 += p[3];
        pal.insert(h.name(t).to_string(), [p[1], p[2], p[3]]);
    }

    let subgroups = subgroup_scan(&h, &source, len, n_max)?;

    Ok(Ex6Report {
        delta_c1: v_index.delta_c(1),
        delta_c2: v_index.delta_c(2),
        pal,
        sum_p2,
        sum_p3,
        richness,
        palindrome_lift,
        bispecial_correspondence,
        subgroups,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupEntry {
    pub elements: Vec<String>,
    pub order: usize,
    pub proper: bool,
    pub verdict: Verdict,
    /// `(n, Σ_{Θ ∈ G^(2) ∖ G₁^(2)} (P_Θ(n) + P_Θ(n+1)))` at distinguishing n.
    pub index_two_sums: Vec<(usize, usize)>,
    /// Checked only for proper subgroups that hold alongside the whole group.
    pub index_two_ok: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupScan {
    pub group_order: usize,
    pub group_verdict: Verdict,
    pub entries: Vec<SubgroupEntry>,
}

impl SubgroupScan {
    pub fn index_two_ok(&self) -> bool {
        self.entries.iter().all(|e| e.index_two_ok != Some(false))
    }

    /// Proper subgroups found rich (or rich from their threshold).
    pub fn rich_proper(&self) -> impl Iterator<Item = &SubgroupEntry> {
        self.entries.iter().filter(|e| e.proper && e.verdict.holds())
    }
}

/// Verifies every subgroup containing an antimorphism and checks the
/// index-two identity for proper subgroups that are rich alongside `g`.
pub fn subgroup_scan(
    g: &SymmetryGroup,
    source: &WordSource,
    len: usize,
    n_max: usize,
) -> Result<SubgroupScan> {
    let full = verify(g, source, &VerifyOptions::new(len, n_max))?;
    let index = LanguageIndex::build(source.prefix(full.prefix_length)?, n_max, None)?;
    let distinguishing: Vec<usize> = (1..=n_max).filter(|&n| index.is_distinguishing(g, n)).collect();
    let pals: BTreeMap<usize, Vec<usize>> = g
        .involutive_antimorphisms()
        .iter()
        .map(|&t| (t, index.palindromic_complexity(g.element(t))))
        .collect();

    let members: Vec<Vec<usize>> = g
        .subgroup_members()
        .into_iter()
        .filter(|m| m.iter().any(|&i| g.element(i).is_antimorphic()))
        .collect();
    let entries = members
        .par_iter()
        .map(|m| {
            let sub = g.subgroup(m)?;
            let proper = m.len() < g.order();
            let report = verify(&sub, source, &VerifyOptions::new(full.prefix_length, n_max))?;
            let outside: Vec<usize> = g
                .involutive_antimorphisms()
                .iter()
                .copied()
                .filter(|t| m.binary_search(t).is_err())
                .collect();
            let index_two_sums: Vec<(usize, usize)> = distinguishing
                .iter()
                .map(|&n| (n, outside.iter().map(|t| pals[t][n] + pals[t][n + 1]).sum()))
                .collect();
            let index_two_ok = (proper && report.verdict.holds() && full.verdict.holds()).then(|| {
                2 * m.len() == g.order() && index_two_sums.iter().all(|&(_, s)| s == m.len())
            });
            Ok(SubgroupEntry {
                elements: m.iter().map(|&i| g.name(i).to_string()).collect(),
                order: m.len(),
                proper,
                verdict: report.verdict,
                index_two_sums,
                index_two_ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubgroupScan { group_order: g.order(), group_verdict: full.verdict, entries })
}

/// `2·D(prefix)` against `Σ T(n)` with `T(n) = ΔC(n) + 2 − P(n+1) − P(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrlekReutenauer {
    pub defect: usize,
    pub t: Vec<i64>,
    pub partial_sum: i64,
    pub stable: bool,
    pub matches: bool,
}

pub fn brlek_reutenauer_check(source: &WordSource, len: usize, n_max: usize) -> Result<BrlekReutenauer> {
    let k = source.alphabet_size();
    let r = SymmetryGroup::classical(k);
    let text = source.prefix(len)?;
    let index = LanguageIndex::build(text, n_max, None)?;
    let p = index.palindromic_complexity(r.element(1));
    let t: Vec<i64> = (0..n_max)
        .map(|n| index.delta_c(n) + 2 - p[n + 1] as i64 - p[n] as i64)
        .collect();
    let partial_sum = t.iter().sum();
    let profile = palin::g_defect(&r, index.text())?;
    let tail_zero = t.iter().skip(n_max * 3 / 4).all(|&x| x == 0);
    let stable = profile.is_stabilized() && tail_zero;
    Ok(BrlekReutenauer {
        defect: profile.defect(),
        partial_sum,
        matches: 2 * profile.defect() as i64 == partial_sum,
        stable,
        t,
    })
}
