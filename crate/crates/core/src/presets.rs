//! Words and groups used throughout the examples and tests.

use crate::symmetry::{dihedral_group, SymmetryGroup, SymmetryMap};
use crate::words::{Letter, Morphism, WordSource};

/// Fixed point of 0 → 01, 1 → 0.
pub fn fibonacci() -> WordSource {
    WordSource::fixed_point(Morphism::from_digits(&["01", "0"]).expect("valid"), 0).expect("valid")
}

/// Thue–Morse word t_{2,2}, from digit sums.
pub fn thue_morse() -> WordSource {
    WordSource::digit_sum(2, 2).expect("valid")
}

/// t_{3,3}, from digit sums.
pub fn t33() -> WordSource {
    WordSource::digit_sum(3, 3).expect("valid")
}

/// φ: 0→01, 1→2, 2→65, 3→4, 4→23, 5→6, 6→47, 7→0.
pub fn phi() -> Morphism {
    Morphism::from_digits(&["01", "2", "65", "4", "23", "6", "47", "0"]).expect("valid")
}

/// μ from the 8-letter to the 6-letter alphabet.
pub fn mu() -> Morphism {
    Morphism::from_digits(&["15", "04", "12", "03", "04", "12", "03", "15"]).expect("valid")
}

/// η from the 8-letter to the 6-letter alphabet.
pub fn eta() -> Morphism {
    Morphism::from_digits(&["041", "120", "031", "150", "150", "041", "120", "031"]).expect("valid")
}

/// π on {0, 2, 4, 6}: 0→2, 2→4, 4→0, 6→6.
pub fn pi(a: Letter) -> Option<Letter> {
    match a {
        0 => Some(2),
        2 => Some(4),
        4 => Some(0),
        6 => Some(6),
        _ => None,
    }
}

/// The fixed point u of φ starting with 0.
pub fn ex8_word() -> WordSource {
    WordSource::fixed_point(phi(), 0).expect("valid")
}

/// v = μ(u).
pub fn ex6_word() -> WordSource {
    WordSource::image(mu(), ex8_word()).expect("valid")
}

pub fn classical(k: usize) -> SymmetryGroup {
    SymmetryGroup::classical(k)
}

pub fn i2(m: usize) -> SymmetryGroup {
    dihedral_group(m).expect("valid size")
}

fn anti(perm: [Letter; 8]) -> SymmetryMap {
    SymmetryMap::antimorphism(perm.to_vec()).expect("bijection")
}

/// Θ₀, Θ₁, Θ₂ on eight letters.
pub fn thetas() -> [SymmetryMap; 3] {
    [
        anti([2, 1, 0, 3, 6, 5, 4, 7]),
        anti([4, 5, 6, 7, 0, 1, 2, 3]),
        anti([0, 3, 2, 1, 4, 7, 6, 5]),
    ]
}

/// Ψ₀, Ψ₁, Ψ₂ on six letters.
pub fn psis() -> [SymmetryMap; 3] {
    let p = |perm: [Letter; 6]| SymmetryMap::antimorphism(perm.to_vec()).expect("bijection");
    [p([0, 1, 4, 5, 2, 3]), p([1, 0, 2, 3, 4, 5]), p([0, 1, 3, 2, 5, 4])]
}

/// The order-8 group G generated by the Θ_i.
pub fn ex8_group() -> SymmetryGroup {
    let gens = thetas().into_iter().enumerate().map(|(i, t)| (format!("Theta{i}"), t)).collect();
    SymmetryGroup::close_named(gens).expect("valid")
}

/// The order-8 group H generated by the Ψ_i.
pub fn ex6_group() -> SymmetryGroup {
    let gens = psis().into_iter().enumerate().map(|(i, t)| (format!("Psi{i}"), t)).collect();
    SymmetryGroup::close_named(gens).expect("valid")
}

/// H_i = ⟨Ψ_i, Ψ_{i+1 mod 3}⟩.
pub fn ex6_subgroup(i: usize) -> SymmetryGroup {
    let h = ex6_group();
    let a = format!("Psi{}", i % 3);
    let b = format!("Psi{}", (i + 1) % 3);
    h.subgroup_generated_by(&[&a, &b]).expect("named generators")
}
