//! Factor index of a finite prefix: occurrences, extensions, complexities.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::symmetry::{SymmetryGroup, SymmetryMap};
use crate::words::{Letter, Word, WordSource};

/// Per-factor data. Letter sets are bitmasks over the (≤ 64 letter) alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorData {
    occurrences: Vec<u32>,
    left: u64,
    right: u64,
    both: Vec<(Letter, Letter)>,
}

impl FactorData {
    /// Sorted start positions in the text; empty for factors added by closure.
    pub fn occurrences(&self) -> &[u32] {
        &self.occurrences
    }

    pub fn lext(&self) -> Vec<Letter> {
        mask_letters(self.left)
    }

    pub fn rext(&self) -> Vec<Letter> {
        mask_letters(self.right)
    }

    /// Sorted pairs `(a, b)` with `a·w·b` a factor.
    pub fn bext(&self) -> &[(Letter, Letter)] {
        &self.both
    }

    pub fn left_degree(&self) -> usize {
        self.left.count_ones() as usize
    }

    pub fn right_degree(&self) -> usize {
        self.right.count_ones() as usize
    }

    pub fn is_left_special(&self) -> bool {
        self.left_degree() >= 2
    }

    pub fn is_right_special(&self) -> bool {
        self.right_degree() >= 2
    }

    pub fn is_special(&self) -> bool {
        self.is_left_special() || self.is_right_special()
    }

    pub fn is_bispecial(&self) -> bool {
        self.is_left_special() && self.is_right_special()
    }

    /// `#Bext − #Lext − #Rext + 1`.
    pub fn bilateral_order(&self) -> i64 {
        self.both.len() as i64 - self.left_degree() as i64 - self.right_degree() as i64 + 1
    }

    fn add_both(&mut self, a: Letter, b: Letter) {
        self.left |= 1 << a;
        self.right |= 1 << b;
        if let Err(pos) = self.both.binary_search(&(a, b)) {
            self.both.insert(pos, (a, b));
        }
    }

    /// Extension data of `m(w)` given the data of `w`.
    fn image(&self, m: &SymmetryMap) -> FactorData {
        let mut out = FactorData::default();
        for &(a, b) in &self.both {
            let (a, b) = (m.letter(a), m.letter(b));
            if m.is_antimorphic() {
                out.add_both(b, a);
            } else {
                out.add_both(a, b);
            }
        }
        out
    }

    fn merge_extensions(&mut self, other: &FactorData) -> bool {
        let before = (self.left, self.right, self.both.len());
        for &(a, b) in &other.both {
            self.add_both(a, b);
        }
        before != (self.left, self.right, self.both.len())
    }
}

fn mask_letters(mask: u64) -> Vec<Letter> {
    (0..64).filter(|&a| mask >> a & 1 == 1).map(|a| a as Letter).collect()
}

/// What closing the factor sets under a group changed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosureInfo {
    pub added_factors: usize,
    pub extended_factors: usize,
}

/// Factor index of a prefix for lengths `0..=n_max + 1`.
#[derive(Clone, Debug)]
pub struct LanguageIndex {
    text: Word,
    n_max: usize,
    alphabet_size: usize,
    levels: Vec<HashMap<Word, FactorData>>,
    sorted: Vec<Vec<Word>>,
    closure: Option<ClosureInfo>,
}

impl LanguageIndex {
    /// Indexes every factor of `text` of length at most `n_max + 1`.
    ///
    /// Extension sets only use occurrences with both neighbours inside the
    /// text, so the last window of a length does not fake a missing extension.
    pub fn build(text: Word, n_max: usize, group: Option<&SymmetryGroup>) -> Result<Self> {
        if n_max + 1 > text.len() {
            return Err(Error::LengthOutOfRange { requested: n_max + 1, available: text.len() });
        }
        let mut alphabet_size = text.letter_bound();
        if let Some(g) = group {
            if g.alphabet_size() < alphabet_size {
                return Err(Error::AlphabetMismatch { expected: g.alphabet_size(), found: alphabet_size });
            }
            alphabet_size = g.alphabet_size();
        }
        let len = text.len();
        let mut levels = Vec::with_capacity(n_max + 2);
        for n in 0..=n_max + 1 {
            let mut level: HashMap<Word, FactorData> = HashMap::new();
            for i in 0..=len - n {
                let entry = level.entry(Word::from(&text[i..i + n])).or_default();
                entry.occurrences.push(i as u32);
                if i >= 1 && i + n < len {
                    entry.add_both(text[i - 1], text[i + n]);
                }
            }
            levels.push(level);
        }
        let mut index = LanguageIndex {
            text,
            n_max,
            alphabet_size,
            levels,
            sorted: Vec::new(),
            closure: None,
        };
        if let Some(g) = group {
            index.close_under(g);
        }
        index.sorted = index
            .levels
            .iter()
            .map(|level| {
                let mut keys: Vec<Word> = level.keys().cloned().collect();
                keys.sort();
                keys
            })
            .collect();
        Ok(index)
    }

    fn close_under(&mut self, g: &SymmetryGroup) {
        let mut info = ClosureInfo::default();
        for level in &mut self.levels {
            let mut images: Vec<(Word, FactorData)> = Vec::new();
            for (w, data) in level.iter() {
                for m in g.elements().iter().filter(|m| !m.is_identity()) {
                    images.push((m.image(w), data.image(m)));
                }
            }
            let mut extended: HashSet<Word> = HashSet::new();
            for (w, data) in images {
                match level.get_mut(&w) {
                    Some(existing) => {
                        if existing.merge_extensions(&data) {
                            extended.insert(w);
                        }
                    }
                    None => {
                        info.added_factors += 1;
                        level.insert(w, data);
                    }
                }
            }
            info.extended_factors += extended.len();
        }
        self.closure = Some(info);
    }

    pub fn text(&self) -> &Word {
        &self.text
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Largest indexed factor length, `n_max + 1`.
    pub fn max_len(&self) -> usize {
        self.n_max + 1
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// `Some` when the factor sets were closed under a group.
    pub fn closure(&self) -> Option<ClosureInfo> {
        self.closure
    }

    /// Whether closure under a group added any factor.
    pub fn g_closed(&self) -> bool {
        self.closure.is_some_and(|c| c.added_factors > 0)
    }

    /// Sorted factors of length `n`.
    pub fn factors(&self, n: usize) -> &[Word] {
        self.sorted.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn data(&self, w: &[Letter]) -> Option<&FactorData> {
        self.levels.get(w.len())?.get(w)
    }

    fn require(&self, w: &[Letter]) -> Result<&FactorData> {
        self.data(w).ok_or_else(|| Error::NotAFactor(Word::from(w).to_string()))
    }

    pub fn contains(&self, w: &[Letter]) -> bool {
        self.data(w).is_some()
    }

    pub fn occurrences(&self, w: &[Letter]) -> &[u32] {
        self.data(w).map(FactorData::occurrences).unwrap_or(&[])
    }

    /// Factor complexity C(n) for `n ≤ n_max + 1`.
    pub fn c(&self, n: usize) -> usize {
        self.levels[n].len()
    }

    /// ΔC(n) for `n ≤ n_max`.
    pub fn delta_c(&self, n: usize) -> i64 {
        self.c(n + 1) as i64 - self.c(n) as i64
    }

    /// Δ²C(n) for `n < n_max`.
    pub fn delta2_c(&self, n: usize) -> i64 {
        self.delta_c(n + 1) - self.delta_c(n)
    }

    pub fn bilateral_order(&self, w: &[Letter]) -> Result<i64> {
        Ok(self.require(w)?.bilateral_order())
    }

    /// `Pext_Θ(w)`: letters `a` with `a·w·Θ(a)` a factor.
    pub fn pext(&self, theta: &SymmetryMap, w: &[Letter]) -> Result<Vec<Letter>> {
        if !theta.is_antimorphic() {
            return Err(Error::NotAntimorphism);
        }
        if !theta.fixes(w) {
            return Err(Error::NotPalindrome(Word::from(w).to_string()));
        }
        let data = self.require(w)?;
        Ok(data
            .both
            .iter()
            .filter(|&&(a, b)| theta.letter(a) == b)
            .map(|&(a, _)| a)
            .collect())
    }

    /// P_Θ(n) for `n = 0..=n_max + 1`.
    pub fn palindromic_complexity(&self, theta: &SymmetryMap) -> Vec<usize> {
        self.levels
            .iter()
            .map(|level| level.keys().filter(|w| theta.fixes(w)).count())
            .collect()
    }

    /// Number of G-palindromic factors of length `n` (fixed by some antimorphism).
    pub fn g_palindrome_count(&self, g: &SymmetryGroup, n: usize) -> usize {
        self.factors(n).iter().filter(|w| g.is_g_palindrome(w)).count()
    }

    /// Whether `n` is G-distinguishing for the indexed factors.
    pub fn is_distinguishing(&self, g: &SymmetryGroup, n: usize) -> bool {
        g.is_distinguishing(self.factors(n).iter().map(|w| w.letters()))
    }

    /// Least indexed G-distinguishing length, if any.
    pub fn distinguishing_threshold(&self, g: &SymmetryGroup) -> Option<usize> {
        (0..=self.max_len()).find(|&n| self.is_distinguishing(g, n))
    }

    /// First factor whose image under some group element is missing.
    pub fn closure_witness(&self, g: &SymmetryGroup, up_to: usize) -> Option<(Word, usize)> {
        for n in 0..=up_to.min(self.max_len()) {
            for w in self.factors(n) {
                for (i, m) in g.elements().iter().enumerate() {
                    if !self.contains(&m.image(w)) {
                        return Some((w.clone(), i));
                    }
                }
            }
        }
        None
    }

    /// Complexity rows for `n < n_max`, with one P_Θ column per antimorphism.
    pub fn complexity(&self, g: &SymmetryGroup) -> ComplexityTable {
        let antis: Vec<usize> = g.antimorphisms().collect();
        let pals: Vec<Vec<usize>> =
            antis.iter().map(|&i| self.palindromic_complexity(g.element(i))).collect();
        let rows = (0..self.n_max)
            .map(|n| ComplexityRow {
                n,
                c: self.c(n),
                delta_c: self.delta_c(n),
                delta2_c: self.delta2_c(n),
                pal: pals.iter().map(|p| p[n]).collect(),
            })
            .collect();
        ComplexityTable { antimorphisms: antis.iter().map(|&i| g.name(i).to_string()).collect(), rows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ComplexityRow {
    pub n: usize,
    pub c: usize,
    pub delta_c: i64,
    pub delta2_c: i64,
    pub pal: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ComplexityTable {
    pub antimorphisms: Vec<String>,
    pub rows: Vec<ComplexityRow>,
}

impl ComplexityTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,C,DeltaC,Delta2C");
        for name in &self.antimorphisms {
            write!(out, ",P_{name}").unwrap();
        }
        out.push('\n');
        for r in &self.rows {
            write!(out, "{},{},{},{}", r.n, r.c, r.delta_c, r.delta2_c).unwrap();
            for p in &r.pal {
                write!(out, ",{p}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Outcome of comparing the factor sets of two prefix lengths.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Stability {
    pub len: usize,
    pub stable: bool,
    /// First length whose factor count differs: `(n, C on L, C on 2L)`.
    pub first_difference: Option<(usize, usize, usize)>,
}

/// Compares factors of lengths `≤ n_max + 1` in prefixes of length `len`
/// and `2·len`. Finite sources are trivially stable.
pub fn stability_check(source: &WordSource, len: usize, n_max: usize) -> Result<Stability> {
    if !source.is_infinite() {
        return Ok(Stability { len, stable: true, first_difference: None });
    }
    let short = source.prefix(len)?;
    let long = source.prefix(2 * len)?;
    for n in 1..=(n_max + 1).min(len) {
        let a: HashSet<&[Letter]> = short.windows(n).collect();
        let b: HashSet<&[Letter]> = long.windows(n).collect();
        if a != b {
            return Ok(Stability {
                len,
                stable: false,
                first_difference: Some((n, a.len(), b.len())),
            });
        }
    }
    Ok(Stability { len, stable: true, first_difference: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::dihedral_group;

    fn fib(len: usize) -> Word {
        let rules = crate::words::Morphism::from_digits(&["01", "0"]).unwrap();
        WordSource::fixed_point(rules, 0).unwrap().prefix(len).unwrap()
    }

    fn words(list: &[&str]) -> Vec<Word> {
        let mut v: Vec<Word> = list.iter().map(|s| Word::digits(s)).collect();
        v.sort();
        v
    }

    #[test]
    fn fibonacci_factor_sets() {
        let idx = LanguageIndex::build(fib(200), 5, None).unwrap();
        assert_eq!(idx.factors(3), words(&["101", "010", "100", "001"]).as_slice());
        assert_eq!(idx.factors(4), words(&["1001", "1010", "0100", "0010", "0101"]).as_slice());
        assert_eq!(idx.c(0), 1);
    }

    #[test]
    fn fibonacci_extensions() {
        let idx = LanguageIndex::build(fib(500), 6, None).unwrap();
        let d = idx.data(&Word::digits("010")).unwrap();
        assert_eq!(d.bext(), &[(0, 0), (0, 1), (1, 0)]);
        assert_eq!(d.bilateral_order(), 0);
        let r = SymmetryMap::reversal(2);
        assert_eq!(idx.pext(&r, &Word::digits("010")).unwrap(), vec![0]);
        assert_eq!(idx.pext(&r, &[]).unwrap(), vec![0]);
        assert!(matches!(idx.pext(&r, &Word::digits("01")), Err(Error::NotPalindrome(_))));
        assert!(matches!(idx.bilateral_order(&Word::digits("11")), Err(Error::NotAFactor(_))));
        assert_eq!(idx.palindromic_complexity(&r)[1], 2);
    }

    #[test]
    fn sturmian_complexity() {
        let idx = LanguageIndex::build(fib(5000), 50, None).unwrap();
        for n in 0..=50 {
            assert_eq!(idx.c(n), n + 1);
        }
    }

    #[test]
    fn closure_records_additions() {
        // 0001 is not closed under exchange-and-reverse.
        let g = dihedral_group(2).unwrap();
        let idx = LanguageIndex::build(Word::digits("00010"), 2, Some(&g)).unwrap();
        assert!(idx.g_closed());
        assert!(idx.contains(&Word::digits("11")));
        assert!(idx.occurrences(&Word::digits("11")).is_empty());
        let plain = LanguageIndex::build(Word::digits("00010"), 2, None).unwrap();
        assert!(plain.closure_witness(&g, 3).is_some());
    }

    #[test]
    fn rejects_long_n_max() {
        assert!(LanguageIndex::build(Word::digits("0101"), 4, None).is_err());
    }

    #[test]
    fn csv_header() {
        let idx = LanguageIndex::build(fib(100), 3, None).unwrap();
        let csv = idx.complexity(&SymmetryGroup::classical(2)).to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("n,C,DeltaC,Delta2C,P_R"));
        assert_eq!(lines.next(), Some("0,1,1,0,1"));
        assert_eq!(lines.next(), Some("1,2,1,0,2"));
    }

    #[test]
    fn stability() {
        let rules = crate::words::Morphism::from_digits(&["01", "0"]).unwrap();
        let src = WordSource::fixed_point(rules, 0).unwrap();
        assert!(stability_check(&src, 2000, 30).unwrap().stable);
        let s = stability_check(&src, 10, 8).unwrap();
        assert!(!s.stable);
    }
}
