//! Strategies and oracles shared by the property suites and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeSet;

use grich::lang_index::LanguageIndex;
use grich::palin::{classical_richness, g_defect, g_lps, is_g_unioccurrent, theta_richness};
use grich::symgraph::complexity_identity;
use grich::{SymmetryGroup, SymmetryMap, Word};
use proptest::prelude::*;
use proptest::sample::subsequence;
use proptest::test_runner::TestCaseError;

pub const MAX_ORDER: usize = 8;
pub const MAX_LEN: usize = 40;
pub const CASES: u32 = 1000;

type Check = Result<(), TestCaseError>;

fn perm(k: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((0..k as u8).collect::<Vec<_>>()).prop_shuffle()
}

/// A group of order at most 8 with at least one antimorphism.
pub fn group(k: usize) -> impl Strategy<Value = SymmetryGroup> {
    (perm(k), perm(k), any::<bool>(), any::<bool>()).prop_map(move |(p, q, anti, two)| {
        let first = SymmetryMap::antimorphism(p).unwrap();
        let candidates = [
            two.then(|| vec![first.clone(), SymmetryMap::new(q, anti).unwrap()]),
            Some(vec![first]),
        ];
        candidates
            .into_iter()
            .flatten()
            .filter_map(|gens| SymmetryGroup::close(&gens).ok())
            .find(|g| g.order() <= MAX_ORDER)
            .unwrap_or_else(|| SymmetryGroup::classical(k))
    })
}

pub fn word_and_group() -> impl Strategy<Value = (Word, SymmetryGroup)> {
    (1usize..=5).prop_flat_map(|k| {
        (prop::collection::vec(0..k as u8, 0..=MAX_LEN).prop_map(Word::new), group(k))
    })
}

/// Period over a random subset of the letters, plus a group.
pub fn periodic_case() -> impl Strategy<Value = (Vec<u8>, SymmetryGroup)> {
    (1usize..=5).prop_flat_map(|k| {
        let letters: Vec<u8> = (0..k as u8).collect();
        (
            subsequence(letters, 1..=k)
                .prop_flat_map(|used| prop::collection::vec(prop::sample::select(used), 1..=8)),
            group(k),
        )
    })
}

fn image_min(g: &SymmetryGroup, w: &[u8]) -> Word {
    g.elements().iter().map(|m| m.image(w)).min().unwrap()
}

fn is_fixed(m: &SymmetryMap, w: &[u8]) -> bool {
    m.image(w).letters() == w
}

/// |w| + 1 − #classes of G-palindromic factors − #letter classes fixed by no antimorphism.
pub fn defect_oracle(g: &SymmetryGroup, w: &[u8]) -> usize {
    let antis: Vec<&SymmetryMap> = g.elements().iter().filter(|m| m.is_antimorphic()).collect();
    let mut classes: BTreeSet<Word> = BTreeSet::new();
    for i in 0..=w.len() {
        for j in i..=w.len() {
            if antis.iter().any(|t| is_fixed(t, &w[i..j])) {
                classes.insert(image_min(g, &w[i..j]));
            }
        }
    }
    let letters: BTreeSet<Word> = w
        .iter()
        .filter(|&&a| antis.iter().all(|t| t.letter(a) != a))
        .map(|&a| image_min(g, &[a]))
        .collect();
    w.len() + 1 - classes.len() - letters.len()
}

pub fn pal_oracle(theta: &SymmetryMap, w: &[u8]) -> usize {
    let mut set: BTreeSet<&[u8]> = BTreeSet::new();
    for i in 0..=w.len() {
        for j in i..=w.len() {
            if is_fixed(theta, &w[i..j]) {
                set.insert(&w[i..j]);
            }
        }
    }
    set.len()
}

pub fn check_defect(w: &Word, g: &SymmetryGroup) -> Check {
    let profile = g_defect(g, w).unwrap();
    prop_assert!(profile.formula_agrees);
    for i in 0..=w.len() {
        prop_assert_eq!(profile.d_g[i], defect_oracle(g, &w[..i]));
        prop_assert_eq!(profile.lacunas.iter().filter(|&&p| p <= i).count(), profile.d_g[i]);
    }
    for i in 1..=w.len() {
        let prefix = &w[..i];
        let lps = g_lps(g, prefix).unwrap();
        let lacuna = !is_g_unioccurrent(g, &prefix[i - 1..], prefix).unwrap()
            && !is_g_unioccurrent(g, &lps, prefix).unwrap();
        prop_assert_eq!(profile.is_lacuna(i), lacuna, "position {}", i);
        prop_assert_eq!(&profile.lps[i], &lps);
    }
    Ok(())
}

pub fn check_growth(w: &Word, g: &SymmetryGroup, a: u8) -> Check {
    let a = a % g.alphabet_size() as u8;
    let profile = g_defect(g, w).unwrap();
    for i in 0..w.len() {
        prop_assert!(profile.d_g[i] <= profile.d_g[i + 1]);
        prop_assert!(profile.d_g[i + 1] <= profile.d_g[i] + 1);
    }
    let mut aw = vec![a];
    aw.extend_from_slice(w);
    let d = profile.defect();
    let d_aw = g_defect(g, &aw).unwrap().defect();
    prop_assert!(d <= d_aw && d_aw <= d + 1);
    Ok(())
}

pub fn check_invariance(w: &Word, g: &SymmetryGroup) -> Check {
    let d = g_defect(g, w).unwrap().defect();
    for m in g.elements() {
        prop_assert_eq!(g_defect(g, &m.image(w)).unwrap().defect(), d);
    }
    Ok(())
}

pub fn check_pal_bounds(w: &Word, g: &SymmetryGroup) -> Check {
    let classical = classical_richness(w);
    prop_assert!(classical.pal_count <= w.len() + 1);
    prop_assert_eq!(classical.pal_count, pal_oracle(&SymmetryMap::reversal(g.alphabet_size()), w));
    for &t in g.involutive_antimorphisms() {
        let theta = g.element(t);
        let r = theta_richness(theta, w).unwrap();
        prop_assert!(r.pal_count + r.gamma <= w.len() + 1);
        prop_assert_eq!(r.pal_count, pal_oracle(theta, w));
        prop_assert_eq!(r.is_rich, r.pal_count + r.gamma == w.len() + 1);
    }
    Ok(())
}

pub const CLOSED_N_MAX: usize = 6;

/// Long prefix of `period^ω` indexed with the closure under `g`: a union of
/// periodic languages, so every factor has an interior occurrence.
pub fn closed_periodic(g: &SymmetryGroup, period: &[u8]) -> LanguageIndex {
    let len = 3 * period.len() + CLOSED_N_MAX + 4;
    let text: Vec<u8> = period.iter().copied().cycle().take(len).collect();
    LanguageIndex::build(Word::new(text), CLOSED_N_MAX, Some(g)).unwrap()
}

pub fn check_extension_identities(period: &[u8], g: &SymmetryGroup) -> Check {
    let index = closed_periodic(g, period);
    prop_assert!(index.closure_witness(g, CLOSED_N_MAX + 1).is_none());
    for n in 0..CLOSED_N_MAX {
        let b_sum: i64 = index.factors(n).iter().map(|w| index.bilateral_order(w).unwrap()).sum();
        prop_assert_eq!(index.delta2_c(n), b_sum, "n = {}", n);
        for &t in g.involutive_antimorphisms() {
            let theta = g.element(t);
            let pext: usize = index
                .factors(n)
                .iter()
                .filter(|w| theta.fixes(w))
                .map(|w| index.pext(theta, w).unwrap().len())
                .sum();
            prop_assert_eq!(index.palindromic_complexity(theta)[n + 2], pext);
        }
    }
    Ok(())
}

pub fn check_inequality(period: &[u8], g: &SymmetryGroup) -> Check {
    let index = closed_periodic(g, period);
    for n in 1..=CLOSED_N_MAX {
        let rec = complexity_identity(g, &index, n).unwrap();
        if rec.distinguishing {
            prop_assert!(rec.inequality_holds, "n = {}: {} < {}", n, rec.lhs, rec.rhs);
        }
    }
    Ok(())
}
