//! Finite groups of morphisms and antimorphisms acting on the free monoid.
//!
//! Every element of such a group restricts to a permutation of the letters,
//! so a [`SymmetryMap`] is a permutation table plus an orientation bit.
//! Groups are closed eagerly and keep a full Cayley table.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word, MAX_ALPHABET};

/// Groups larger than this are rejected by [`SymmetryGroup::close`].
pub const MAX_GROUP_ORDER: usize = 1024;

/// A letter permutation, optionally followed by reversal.
///
/// The derived order puts morphisms before antimorphisms and the identity
/// first; groups list their elements in this order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetryMap {
    antimorphic: bool,
    perm: Vec<Letter>,
}

impl SymmetryMap {
    pub fn new(perm: Vec<Letter>, antimorphic: bool) -> Result<Self> {
        let k = perm.len();
        if k == 0 || k > MAX_ALPHABET {
            return Err(Error::InvalidSymmetry(format!("table of size {k}")));
        }
        let mut seen = vec![false; k];
        for &a in &perm {
            let a = a as usize;
            if a >= k {
                return Err(Error::InvalidSymmetry(format!("image {a} outside alphabet of size {k}")));
            }
            if seen[a] {
                return Err(Error::InvalidSymmetry(format!("letter {a} is hit twice")));
            }
            seen[a] = true;
        }
        Ok(SymmetryMap { antimorphic, perm })
    }

    pub fn morphism(perm: Vec<Letter>) -> Result<Self> {
        SymmetryMap::new(perm, false)
    }

    pub fn antimorphism(perm: Vec<Letter>) -> Result<Self> {
        SymmetryMap::new(perm, true)
    }

    pub fn identity(k: usize) -> Self {
        SymmetryMap { antimorphic: false, perm: (0..k as Letter).collect() }
    }

    /// The reversal mapping R.
    pub fn reversal(k: usize) -> Self {
        SymmetryMap { antimorphic: true, perm: (0..k as Letter).collect() }
    }

    pub fn alphabet_size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[Letter] {
        &self.perm
    }

    pub fn is_antimorphic(&self) -> bool {
        self.antimorphic
    }

    pub fn is_identity(&self) -> bool {
        !self.antimorphic && self.perm.iter().enumerate().all(|(i, &a)| i == a as usize)
    }

    pub fn letter(&self, a: Letter) -> Letter {
        self.perm[a as usize]
    }

    /// Image of `w`; fails if `w` uses letters outside the map's alphabet.
    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        if let Some(&a) = w.iter().find(|&&a| a as usize >= self.perm.len()) {
            return Err(Error::LetterOutOfRange { letter: a as usize, size: self.perm.len() });
        }
        Ok(self.image(w))
    }

    /// Image of `w` for words already known to be over the right alphabet.
    pub fn image(&self, w: &[Letter]) -> Word {
        if self.antimorphic {
            w.iter().rev().map(|&a| self.perm[a as usize]).collect()
        } else {
            w.iter().map(|&a| self.perm[a as usize]).collect()
        }
    }

    /// Whether `self(w) == w`, without allocating.
    pub fn fixes(&self, w: &[Letter]) -> bool {
        let n = w.len();
        if self.antimorphic {
            // Half the positions suffice only for involutions.
            (0..n).all(|i| self.perm[w[n - 1 - i] as usize] == w[i])
        } else {
            w.iter().all(|&a| self.perm[a as usize] == a)
        }
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &SymmetryMap) -> Result<SymmetryMap> {
        if self.perm.len() != g.perm.len() {
            return Err(Error::AlphabetMismatch { expected: self.perm.len(), found: g.perm.len() });
        }
        Ok(SymmetryMap {
            antimorphic: self.antimorphic ^ g.antimorphic,
            perm: g.perm.iter().map(|&a| self.perm[a as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> SymmetryMap {
        let mut perm = vec![0; self.perm.len()];
        for (i, &a) in self.perm.iter().enumerate() {
            perm[a as usize] = i as Letter;
        }
        SymmetryMap { antimorphic: self.antimorphic, perm }
    }

    pub fn is_involution(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &a)| self.perm[a as usize] as usize == i)
    }

    /// Letter table as `"0→2 1→1 ..."` using the alphabet's glyphs.
    pub fn describe(&self, alphabet: &Alphabet) -> String {
        let kind = if self.antimorphic { "antimorphism" } else { "morphism" };
        let pairs: Vec<String> = self
            .perm
            .iter()
            .enumerate()
            .map(|(i, &a)| format!("{}→{}", alphabet.glyph(i as Letter), alphabet.glyph(a)))
            .collect();
        format!("{kind} {}", pairs.join(" "))
    }
}

impl fmt::Debug for SymmetryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.antimorphic { "anti" } else { "morph" };
        write!(f, "{kind}{:?}", self.perm)
    }
}

/// A finite group of (anti)morphisms with precomputed composition.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    alphabet_size: usize,
    elements: Vec<SymmetryMap>,
    names: Vec<String>,
    index: HashMap<SymmetryMap, usize>,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    involutive_antimorphisms: Vec<usize>,
}

impl PartialEq for SymmetryGroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for SymmetryGroup {}

impl SymmetryGroup {
    /// Closure of the generators; compositions are named by the shortest
    /// product of generator names found.
    pub fn close_named(generators: Vec<(String, SymmetryMap)>) -> Result<Self> {
        let Some((_, first)) = generators.first() else {
            return Err(Error::InvalidSymmetry("no generators".into()));
        };
        let k = first.alphabet_size();
        for (_, g) in &generators {
            // Re-validate: maps may have been deserialized.
            SymmetryMap::new(g.perm.clone(), g.antimorphic)?;
            if g.alphabet_size() != k {
                return Err(Error::AlphabetMismatch { expected: k, found: g.alphabet_size() });
            }
        }

        let mut found: HashMap<SymmetryMap, String> = HashMap::new();
        let mut queue = VecDeque::new();
        let id = SymmetryMap::identity(k);
        found.insert(id.clone(), "Id".to_string());
        queue.push_back(id);
        for (name, g) in &generators {
            if !found.contains_key(g) {
                found.insert(g.clone(), name.clone());
                queue.push_back(g.clone());
            }
        }
        while let Some(x) = queue.pop_front() {
            let x_name = found[&x].clone();
            for (g_name, g) in &generators {
                let y = g.compose(&x)?;
                if !found.contains_key(&y) {
                    if found.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge {
                            order: found.len() + 1,
                            limit: MAX_GROUP_ORDER,
                        });
                    }
                    let name = if x.is_identity() {
                        g_name.clone()
                    } else if y == SymmetryMap::reversal(k) {
                        "R".to_string()
                    } else {
                        format!("{g_name}{x_name}")
                    };
                    found.insert(y.clone(), name);
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_elements(k, found.into_iter().collect()))
    }

    /// Closure with default names `g0, g1, ...` (reversal is always `R`).
    pub fn close(generators: &[SymmetryMap]) -> Result<Self> {
        Self::close_named(
            generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let name = if *g == SymmetryMap::reversal(g.alphabet_size()) {
                        "R".to_string()
                    } else {
                        format!("g{i}")
                    };
                    (name, g.clone())
                })
                .collect(),
        )
    }

    /// Builds the tables for an element list already known to be a group.
    fn from_elements(k: usize, mut elems: Vec<(SymmetryMap, String)>) -> Self {
        elems.sort();
        let (elements, names): (Vec<_>, Vec<_>) = elems.into_iter().unzip();
        let index: HashMap<SymmetryMap, usize> =
            elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let cayley: Vec<Vec<usize>> = elements
            .iter()
            .map(|f| {
                elements
                    .iter()
                    .map(|g| index[&f.compose(g).expect("same alphabet")])
                    .collect()
            })
            .collect();
        let inverse: Vec<usize> = elements.iter().map(|m| index[&m.inverse()]).collect();
        let involutive_antimorphisms = (0..elements.len())
            .filter(|&i| elements[i].antimorphic && elements[i].is_involution())
            .collect();
        SymmetryGroup {
            alphabet_size: k,
            elements,
            names,
            index,
            cayley,
            inverse,
            involutive_antimorphisms,
        }
    }

    /// `{Id, R}` on `k` letters.
    pub fn classical(k: usize) -> Self {
        Self::close_named(vec![("R".into(), SymmetryMap::reversal(k))]).expect("valid")
    }

    /// `{Id, Θ}` for an involutive antimorphism Θ.
    pub fn generated_by_antimorphism(name: &str, theta: SymmetryMap) -> Result<Self> {
        if !theta.is_antimorphic() {
            return Err(Error::NotAntimorphism);
        }
        if !theta.is_involution() {
            return Err(Error::NotInvolutive);
        }
        Self::close_named(vec![(name.to_string(), theta)])
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SymmetryMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SymmetryMap {
        &self.elements[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, m: &SymmetryMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn index_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.cayley[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn antimorphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&i| self.elements[i].antimorphic)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&i| !self.elements[i].antimorphic)
    }

    pub fn has_antimorphism(&self) -> bool {
        self.antimorphisms().next().is_some()
    }

    /// Indices of G^(2), the involutive antimorphisms, in canonical order.
    pub fn involutive_antimorphisms(&self) -> &[usize] {
        &self.involutive_antimorphisms
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|i| (0..i).all(|j| self.cayley[i][j] == self.cayley[j][i]))
    }

    /// Whether the involutive antimorphisms generate the whole group.
    pub fn is_involutively_generated(&self) -> bool {
        if self.involutive_antimorphisms.is_empty() {
            return false;
        }
        self.closure_of(&self.involutive_antimorphisms).len() == self.order()
    }

    /// Members of the subgroup generated by the given element indices.
    pub fn closure_of(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[self.identity()] = true;
        let mut stack: Vec<usize> = vec![self.identity()];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.cayley[g][x];
                if !members[y] {
                    members[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| members[i]).collect()
    }

    /// Member sets of all subgroups, smallest first.
    pub fn subgroup_members(&self) -> Vec<Vec<usize>> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![self.identity()];
        seen.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(k) = queue.pop_front() {
            for g in 0..self.order() {
                if k.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = k.clone();
                gens.push(g);
                let bigger = self.closure_of(&gens);
                if seen.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = seen.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// The subgroup on the given members, keeping this group's names.
    pub fn subgroup(&self, members: &[usize]) -> Result<SymmetryGroup> {
        let closed = self.closure_of(members);
        if closed.len() != members.len() {
            return Err(Error::InvalidSymmetry("member set is not a subgroup".into()));
        }
        Ok(Self::from_elements(
            self.alphabet_size,
            members
                .iter()
                .map(|&i| (self.elements[i].clone(), self.names[i].clone()))
                .collect(),
        ))
    }

    /// Subgroup generated by named elements of this group.
    pub fn subgroup_generated_by(&self, names: &[&str]) -> Result<SymmetryGroup> {
        let gens = names
            .iter()
            .map(|n| {
                self.index_by_name(n)
                    .ok_or_else(|| Error::InvalidSymmetry(format!("no element named {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.subgroup(&self.closure_of(&gens))
    }

    /// Whether every element of `self` is an element of `other`.
    pub fn is_subgroup_of(&self, other: &SymmetryGroup) -> bool {
        self.elements.iter().all(|m| other.index.contains_key(m))
    }

    /// The class `[w] = {μ(w) : μ ∈ G}`.
    pub fn equivalence_class(&self, w: &[Letter]) -> BTreeSet<Word> {
        self.elements.iter().map(|m| m.image(w)).collect()
    }

    /// Lexicographically least member of `[w]`.
    pub fn canonical(&self, w: &[Letter]) -> Word {
        self.elements
            .iter()
            .map(|m| m.image(w))
            .min()
            .unwrap_or_else(|| Word::from(w))
    }

    /// Antimorphisms of the group fixing `w`.
    pub fn fixers(&self, w: &[Letter]) -> Vec<usize> {
        self.antimorphisms().filter(|&i| self.elements[i].fixes(w)).collect()
    }

    pub fn is_g_palindrome(&self, w: &[Letter]) -> bool {
        self.antimorphisms().any(|i| self.elements[i].fixes(w))
    }

    /// Distinct antimorphisms act distinctly on every word of the set.
    pub fn is_distinguishing<'a, I>(&self, factors: I) -> bool
    where
        I: IntoIterator<Item = &'a [Letter]>,
    {
        let antis: Vec<&SymmetryMap> =
            self.antimorphisms().map(|i| &self.elements[i]).collect();
        factors.into_iter().all(|w| {
            let images: BTreeSet<Word> = antis.iter().map(|t| t.image(w)).collect();
            images.len() == antis.len()
        })
    }

    /// One line per element: name, kind and letter table.
    pub fn describe(&self, alphabet: &Alphabet) -> Vec<String> {
        (0..self.order())
            .map(|i| format!("{}: {}", self.names[i], self.elements[i].describe(alphabet)))
            .collect()
    }
}

/// The dihedral group I₂(m) on letters `0..m`: morphisms `ℓ ↦ ℓ + c` and
/// antimorphisms `ℓ ↦ c − ℓ` (mod m).
pub fn dihedral_group(m: usize) -> Result<SymmetryGroup> {
    if m == 0 || m > MAX_ALPHABET {
        return Err(Error::InvalidSymmetry(format!("dihedral group on {m} letters")));
    }
    let gens = (0..m)
        .map(|c| {
            let perm = (0..m).map(|l| ((c + m - l) % m) as Letter).collect();
            let name = match (m, c) {
                (_, _) if (0..m).all(|l| (c + m - l) % m == l) => "R".to_string(),
                (2, 1) => "E".to_string(),
                _ => format!("Psi{c}"),
            };
            SymmetryMap::antimorphism(perm).map(|t| (name, t))
        })
        .collect::<Result<Vec<_>>>()?;
    SymmetryGroup::close_named(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> SymmetryMap {
        SymmetryMap::reversal(2)
    }

    fn e2() -> SymmetryMap {
        SymmetryMap::antimorphism(vec![1, 0]).unwrap()
    }

    #[test]
    fn apply_examples() {
        assert_eq!(r2().apply(&Word::digits("0110")).unwrap(), Word::digits("0110"));
        assert_eq!(e2().apply(&Word::digits("011")).unwrap(), Word::digits("001"));
        assert_eq!(r2().apply(&[]).unwrap(), Word::empty());
        assert!(matches!(r2().apply(&[0, 2]), Err(Error::LetterOutOfRange { .. })));
    }

    #[test]
    fn compose_examples() {
        assert!(r2().compose(&r2()).unwrap().is_identity());
        let er = e2().compose(&r2()).unwrap();
        assert!(!er.is_antimorphic());
        assert_eq!(er.perm(), &[1, 0]);
        assert!(matches!(
            r2().compose(&SymmetryMap::reversal(3)),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn fixes_non_involutive_antimorphism() {
        let theta = SymmetryMap::antimorphism(vec![2, 0, 1]).unwrap();
        assert!(!theta.fixes(&[0, 1]));
        assert_eq!(theta.image(&[0, 1]).letters(), &[0, 2]);
        let r = SymmetryMap::reversal(3);
        assert!(r.fixes(&[0, 1, 0]) && !r.fixes(&[0, 1]));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(SymmetryMap::morphism(vec![0, 0]).is_err());
        assert!(SymmetryMap::morphism(vec![0, 2]).is_err());
    }

    #[test]
    fn binary_groups() {
        let g1 = SymmetryGroup::close(&[r2()]).unwrap();
        assert_eq!(g1.order(), 2);
        assert_eq!(g1.involutive_antimorphisms().len(), 1);
        let g3 = SymmetryGroup::close_named(vec![("R".into(), r2()), ("E".into(), e2())]).unwrap();
        assert_eq!(g3.order(), 4);
        let g2: Vec<&str> = g3.involutive_antimorphisms().iter().map(|&i| g3.name(i)).collect();
        assert_eq!(g2, vec!["R", "E"]);
        assert_eq!(g3.name(1), "ER");
        assert!(g3.is_abelian());
        assert!(g3.is_involutively_generated());
    }

    #[test]
    fn dihedral_small_cases() {
        let d1 = dihedral_group(1).unwrap();
        assert_eq!(d1.order(), 2);
        assert_eq!(d1.name(1), "R");
        let d2 = dihedral_group(2).unwrap();
        assert_eq!(d2.names(), &["Id", "ER", "R", "E"]);
        let d3 = dihedral_group(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
        assert_eq!(d3.involutive_antimorphisms().len(), 3);
        // μ: ℓ ↦ ℓ − 1 belongs to the group.
        assert!(d3.index_of(&SymmetryMap::morphism(vec![2, 0, 1]).unwrap()).is_some());
    }

    #[test]
    fn equivalence_classes() {
        let g = dihedral_group(2).unwrap();
        let class: Vec<Word> = g.equivalence_class(&Word::digits("011")).into_iter().collect();
        let expect: Vec<Word> = ["001", "011", "100", "110"].iter().map(|s| Word::digits(s)).collect();
        assert_eq!(class, expect);
        assert_eq!(g.equivalence_class(&[]).len(), 1);
        let d3 = dihedral_group(3).unwrap();
        assert_eq!(d3.equivalence_class(&[0]).len(), 3);
    }

    #[test]
    fn cyclic_antimorphism_group_is_not_involutively_generated() {
        let theta = SymmetryMap::antimorphism(vec![1, 2, 3, 0]).unwrap();
        let g = SymmetryGroup::close(&[theta]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.involutive_antimorphisms().is_empty());
        assert!(!g.is_involutively_generated());
    }

    #[test]
    fn distinguishing() {
        let d3 = dihedral_group(3).unwrap();
        let letters: Vec<Word> = (0..3).map(|a| Word::new(vec![a])).collect();
        assert!(d3.is_distinguishing(letters.iter().map(|w| w.letters())));
        // R and E agree on no letter, but both fix ε.
        let d2 = dihedral_group(2).unwrap();
        assert!(!d2.is_distinguishing([&[][..]]));
    }

    #[test]
    fn subgroups_of_klein_group() {
        let g = dihedral_group(2).unwrap();
        let subs = g.subgroup_members();
        // trivial, three of order two, the whole group
        assert_eq!(subs.len(), 5);
        let with_anti = subs
            .iter()
            .filter(|m| m.iter().any(|&i| g.element(i).is_antimorphic()))
            .count();
        assert_eq!(with_anti, 3);
        let r = g.subgroup_generated_by(&["R"]).unwrap();
        assert_eq!(r, SymmetryGroup::classical(2));
        assert!(r.is_subgroup_of(&g));
    }

    #[test]
    fn morphic_and_antimorphic_counts_match() {
        for m in 1..=6 {
            let g = dihedral_group(m).unwrap();
            assert_eq!(g.antimorphisms().count(), g.morphisms().count());
        }
    }
}
