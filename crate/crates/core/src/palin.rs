//! G-palindromes, G-occurrences, complete G-return words, G-lps and the
//! G-defect of finite words.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use memchr::memmem;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symmetry::{SymmetryGroup, SymmetryMap};
use crate::words::{Alphabet, Letter, Word};

fn check_letters(size: usize, w: &[Letter]) -> Result<()> {
    match w.iter().find(|&&a| a as usize >= size) {
        Some(&a) => Err(Error::LetterOutOfRange { letter: a as usize, size }),
        None => Ok(()),
    }
}

/// A word together with the antimorphisms (group indices) fixing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PalindromeWitness {
    pub word: Word,
    pub fixers: Vec<usize>,
}

impl PalindromeWitness {
    pub fn is_palindrome(&self) -> bool {
        !self.fixers.is_empty()
    }
}

pub fn g_palindrome(g: &SymmetryGroup, w: &[Letter]) -> Result<PalindromeWitness> {
    check_letters(g.alphabet_size(), w)?;
    Ok(PalindromeWitness { word: Word::from(w), fixers: g.fixers(w) })
}

/// Start positions of every member of `[w]` in `text`, sorted.
///
/// The empty word occurs at every position `0..=|text|`.
pub fn g_occurrences(g: &SymmetryGroup, w: &[Letter], text: &[Letter]) -> Result<Vec<usize>> {
    check_letters(g.alphabet_size(), w)?;
    if w.is_empty() {
        return Ok((0..=text.len()).collect());
    }
    if w.len() > text.len() {
        return Ok(Vec::new());
    }
    let class = g.equivalence_class(w);
    let members: HashSet<&[Letter]> = class.iter().map(|m| m.letters()).collect();
    Ok(text
        .windows(w.len())
        .enumerate()
        .filter(|(_, f)| members.contains(f))
        .map(|(i, _)| i)
        .collect())
}

pub fn is_g_unioccurrent(g: &SymmetryGroup, w: &[Letter], text: &[Letter]) -> Result<bool> {
    Ok(g_occurrences(g, w, text)?.len() == 1)
}

/// Factors running from one G-occurrence of `w` to the next one.
pub fn complete_g_return_words(
    g: &SymmetryGroup,
    w: &[Letter],
    text: &[Letter],
) -> Result<BTreeSet<Word>> {
    if w.is_empty() {
        return Ok(BTreeSet::new());
    }
    let occ = g_occurrences(g, w, text)?;
    Ok(occ
        .windows(2)
        .map(|p| Word::from(&text[p[0]..p[1] + w.len()]))
        .collect())
}

/// Longest suffix of `v` fixed by some antimorphism of the group.
pub fn g_lps(g: &SymmetryGroup, v: &[Letter]) -> Result<Word> {
    check_letters(g.alphabet_size(), v)?;
    let antis: Vec<&SymmetryMap> = g.antimorphisms().map(|i| g.element(i)).collect();
    Ok((0..=v.len())
        .map(|start| &v[start..])
        .find(|s| antis.iter().any(|t| t.fixes(s)))
        .map(Word::from)
        .unwrap_or_default())
}

/// Number of classes `[a]` of letters of `w` fixed by no antimorphism.
pub fn gamma_g(g: &SymmetryGroup, w: &[Letter]) -> Result<usize> {
    check_letters(g.alphabet_size(), w)?;
    let classes: BTreeSet<Word> = w
        .iter()
        .filter(|&&a| !g.is_g_palindrome(&[a]))
        .map(|&a| g.canonical(&[a]))
        .collect();
    Ok(classes.len())
}

/// Canonical representatives of the classes of G-palindromic factors of `w`.
pub fn g_palindrome_classes(g: &SymmetryGroup, w: &[Letter]) -> Result<BTreeSet<Word>> {
    check_letters(g.alphabet_size(), w)?;
    let mut out = BTreeSet::new();
    for i in 0..=w.len() {
        for j in i..=w.len() {
            if g.is_g_palindrome(&w[i..j]) {
                out.insert(g.canonical(&w[i..j]));
            }
        }
    }
    Ok(out)
}

/// Lengths of the Θ-palindromic suffixes of a growing word.
struct SuffixTracker<'a> {
    theta: &'a SymmetryMap,
    lengths: Vec<usize>,
}

impl<'a> SuffixTracker<'a> {
    fn new(theta: &'a SymmetryMap) -> Self {
        SuffixTracker { theta, lengths: vec![0] }
    }

    /// Updates for `text[..=i]` given the state for `text[..i]`.
    fn push(&mut self, text: &[Letter], i: usize) {
        let a = text[i];
        let t = self.theta;
        let mut next = vec![0];
        if t.letter(a) == a {
            next.push(1);
        }
        for &l in &self.lengths {
            if l < i {
                let b = text[i - l - 1];
                if t.letter(a) == b && t.letter(b) == a {
                    next.push(l + 2);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        self.lengths = next;
    }

    fn longest(&self) -> usize {
        *self.lengths.last().unwrap_or(&0)
    }
}

/// Prefix-by-prefix G-defect data of a finite word.
///
/// Index `i` of each vector refers to the prefix of length `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectProfile {
    pub d_g: Vec<usize>,
    pub pal_classes: Vec<usize>,
    pub gamma: Vec<usize>,
    /// 1-based lacuna positions.
    pub lacunas: Vec<usize>,
    pub lps: Vec<Word>,
    /// Names of the antimorphisms of `pal_counts`, in group order.
    pub pal_names: Vec<String>,
    /// Distinct Θ-palindromic factors per prefix, one column per Θ ∈ G^(2).
    pub pal_counts: Vec<Vec<usize>>,
    /// Whether the formula and the lacuna count agree at every prefix.
    pub formula_agrees: bool,
}

impl DefectProfile {
    pub fn len(&self) -> usize {
        self.d_g.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn defect(&self) -> usize {
        *self.d_g.last().unwrap_or(&0)
    }

    pub fn is_lacuna(&self, position: usize) -> bool {
        self.lacunas.binary_search(&position).is_ok()
    }

    /// No increase over the final half of the analyzed word.
    pub fn is_stabilized(&self) -> bool {
        let n = self.len();
        self.d_g[n / 2] == self.defect()
    }

    /// Columns `n, Pal_Θ..., G_lps, D_G, lacuna`; ε is rendered empty.
    pub fn to_csv(&self) -> String {
        self.render_csv(|w| w.to_string())
    }

    pub fn to_csv_with(&self, alphabet: &Alphabet) -> String {
        self.render_csv(|w| alphabet.render(w))
    }

    fn render_csv(&self, render: impl Fn(&Word) -> String) -> String {
        let mut out = String::from("n");
        for name in &self.pal_names {
            write!(out, ",Pal_{name}").unwrap();
        }
        out.push_str(",G_lps,D_G,lacuna\n");
        for i in 0..=self.len() {
            write!(out, "{i}").unwrap();
            for c in &self.pal_counts[i] {
                write!(out, ",{c}").unwrap();
            }
            let lps = if self.lps[i].is_empty() { String::new() } else { render(&self.lps[i]) };
            writeln!(out, ",{lps},{},{}", self.d_g[i], u8::from(self.is_lacuna(i))).unwrap();
        }
        out
    }
}

/// G-defect of every prefix of `w`, by the counting formula and by lacunas.
pub fn g_defect(g: &SymmetryGroup, w: &[Letter]) -> Result<DefectProfile> {
    check_letters(g.alphabet_size(), w)?;
    let antis: Vec<usize> = g.antimorphisms().collect();
    let mut trackers: Vec<SuffixTracker> =
        antis.iter().map(|&i| SuffixTracker::new(g.element(i))).collect();
    let involutive = g.involutive_antimorphisms();
    let mut theta_pals: Vec<HashSet<Word>> = vec![HashSet::from([Word::empty()]); involutive.len()];

    let mut classes: HashSet<Word> = HashSet::from([Word::empty()]);
    let mut gamma_classes: HashSet<Word> = HashSet::new();
    let mut seen_letters = [false; 64];

    let mut profile = DefectProfile {
        d_g: vec![0],
        pal_classes: vec![1],
        gamma: vec![0],
        lacunas: Vec::new(),
        lps: vec![Word::empty()],
        pal_names: involutive.iter().map(|&i| g.name(i).to_string()).collect(),
        pal_counts: vec![vec![1; involutive.len()]],
        formula_agrees: true,
    };

    for i in 0..w.len() {
        let prefix = &w[..=i];
        let a = w[i];
        for t in &mut trackers {
            t.push(w, i);
        }

        // Formula route: every G-palindromic suffix contributes its class.
        let mut lengths: Vec<usize> = trackers.iter().flat_map(|t| t.lengths.iter().copied()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        for &l in &lengths {
            classes.insert(g.canonical(&prefix[prefix.len() - l..]));
        }
        for (k, &theta) in involutive.iter().enumerate() {
            let pos = antis.iter().position(|&x| x == theta).expect("involutive is antimorphic");
            for &l in &trackers[pos].lengths {
                theta_pals[k].insert(Word::from(&prefix[prefix.len() - l..]));
            }
        }
        let new_letter = !seen_letters[a as usize];
        if new_letter && !g.is_g_palindrome(&[a]) {
            gamma_classes.insert(g.canonical(&[a]));
        }
        let letter_class_new = !g
            .equivalence_class(&[a])
            .iter()
            .any(|m| seen_letters[m[0] as usize]);
        seen_letters[a as usize] = true;

        let len = i + 1;
        let d = len + 1 - classes.len() - gamma_classes.len();

        // Lacuna route: the last letter's class and the lps are both repeated.
        let lps_len = trackers.iter().map(SuffixTracker::longest).max().unwrap_or(0);
        let lps = Word::from(&prefix[len - lps_len..]);
        let lps_unique = lps_len > 0 && {
            let earlier = &w[..i];
            g.equivalence_class(&lps)
                .iter()
                .all(|m| memmem::find(earlier, m).is_none())
        };
        if !letter_class_new && !lps_unique {
            profile.lacunas.push(len);
        }
        if profile.lacunas.len() != d {
            profile.formula_agrees = false;
        }

        profile.d_g.push(d);
        profile.pal_classes.push(classes.len());
        profile.gamma.push(gamma_classes.len());
        profile.lps.push(lps);
        profile.pal_counts.push(theta_pals.iter().map(HashSet::len).collect());
    }
    Ok(profile)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalRichness {
    pub pal_count: usize,
    pub is_rich: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaRichness {
    pub pal_count: usize,
    pub gamma: usize,
    pub is_rich: bool,
}

fn distinct_theta_palindromes(theta: &SymmetryMap, w: &[Letter]) -> usize {
    let mut tracker = SuffixTracker::new(theta);
    let mut pals: HashSet<&[Letter]> = HashSet::from([&w[..0]]);
    for i in 0..w.len() {
        tracker.push(w, i);
        for &l in &tracker.lengths {
            pals.insert(&w[i + 1 - l..=i]);
        }
    }
    pals.len()
}

/// Classical richness: `#Pal(w) = |w| + 1`.
pub fn classical_richness(w: &[Letter]) -> ClassicalRichness {
    let k = w.iter().map(|&a| a as usize + 1).max().unwrap_or(1);
    let pal_count = distinct_theta_palindromes(&SymmetryMap::reversal(k), w);
    ClassicalRichness { pal_count, is_rich: pal_count == w.len() + 1 }
}

/// Θ-richness: `#Pal_Θ(w) = |w| + 1 − γ_Θ(w)`.
pub fn theta_richness(theta: &SymmetryMap, w: &[Letter]) -> Result<ThetaRichness> {
    if !theta.is_antimorphic() {
        return Err(Error::NotAntimorphism);
    }
    if !theta.is_involution() {
        return Err(Error::NotInvolutive);
    }
    check_letters(theta.alphabet_size(), w)?;
    let pal_count = distinct_theta_palindromes(theta, w);
    let pairs: BTreeSet<(Letter, Letter)> = w
        .iter()
        .filter(|&&a| theta.letter(a) != a)
        .map(|&a| (a.min(theta.letter(a)), a.max(theta.letter(a))))
        .collect();
    let gamma = pairs.len();
    Ok(ThetaRichness { pal_count, gamma, is_rich: pal_count + gamma == w.len() + 1 })
}
