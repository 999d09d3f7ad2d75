//! Alphabets, finite words and prefix generators for infinite words.
//!
//! Letters are canonical integer ids `0..k`; an [`Alphabet`] only attaches
//! printable glyphs to them. Every infinite word handled by the crate is
//! described by a [`WordSource`] and materialized as a finite prefix.

use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;

/// Largest alphabet the crate accepts. Letters must fit in a byte.
pub const MAX_ALPHABET: usize = 64;

/// A finite word over letter ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses a word written with decimal digit glyphs, e.g. `"0110"`.
    ///
    /// Panics on non-digit input; meant for literals in code and tests.
    pub fn digits(s: &str) -> Self {
        Word(
            s.chars()
                .map(|c| c.to_digit(10).expect("decimal digit") as Letter)
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from_slice(&mut self, letters: &[Letter]) {
        self.0.extend_from_slice(letters);
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    /// The factor `self[start..start + len]` as an owned word.
    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &[Letter]) -> bool {
        other.starts_with(&self.0)
    }

    /// Largest letter id plus one, or zero for the empty word.
    pub fn letter_bound(&self) -> usize {
        self.0.iter().map(|&a| a as usize + 1).max().unwrap_or(0)
    }

    pub fn contains_letter(&self, letter: Letter) -> bool {
        self.0.contains(&letter)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    /// Digits for alphabets of at most ten letters, dot-separated ids otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.iter().all(|&a| a < 10) {
            for &a in &self.0 {
                write!(f, "{a}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
            f.write_str(&parts.join("."))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Ordered list of pairwise distinct glyphs; glyph `i` names letter `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    glyphs: Vec<char>,
}

impl Alphabet {
    pub fn new(glyphs: Vec<char>) -> Result<Self> {
        if glyphs.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if glyphs.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!(
                "{} glyphs exceed the limit of {MAX_ALPHABET}",
                glyphs.len()
            )));
        }
        for (i, g) in glyphs.iter().enumerate() {
            if g.is_whitespace() || g.is_control() {
                return Err(Error::InvalidAlphabet(format!("glyph {g:?} is not printable")));
            }
            if glyphs[..i].contains(g) {
                return Err(Error::InvalidAlphabet(format!("glyph {g:?} appears twice")));
            }
        }
        Ok(Alphabet { glyphs })
    }

    /// The alphabet `0, 1, ..., k-1` written with decimal digits (k ≤ 10).
    pub fn digits(k: usize) -> Self {
        assert!((1..=10).contains(&k), "digit alphabets hold 1..=10 letters");
        Alphabet {
            glyphs: (0..k as u32).map(|d| char::from_digit(d, 10).unwrap()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.glyphs.len()
    }

    pub fn glyphs(&self) -> &[char] {
        &self.glyphs
    }

    pub fn glyph(&self, letter: Letter) -> char {
        self.glyphs[letter as usize]
    }

    pub fn letter(&self, glyph: char) -> Result<Letter> {
        self.glyphs
            .iter()
            .position(|&g| g == glyph)
            .map(|i| i as Letter)
            .ok_or(Error::UnknownGlyph { glyph })
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        s.chars().map(|c| self.letter(c)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn render(&self, w: &[Letter]) -> String {
        w.iter().map(|&a| self.glyph(a)).collect()
    }
}

/// A non-erasing morphism given by the image of every source letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidSource("morphism has no rules".into()));
        }
        if let Some(a) = images.iter().position(|img| img.is_empty()) {
            return Err(Error::InvalidSource(format!("rule for letter {a} is erasing")));
        }
        Ok(Morphism { images })
    }

    /// Shorthand for digit-alphabet rules, e.g. `&["01", "0"]`.
    pub fn from_digits(images: &[&str]) -> Result<Self> {
        Morphism::new(images.iter().map(|s| Word::digits(s)).collect())
    }

    pub fn source_size(&self) -> usize {
        self.images.len()
    }

    /// Smallest alphabet containing every letter used in the images.
    pub fn target_bound(&self) -> usize {
        self.images.iter().map(|w| w.letter_bound()).max().unwrap_or(0)
    }

    pub fn image(&self, letter: Letter) -> &Word {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &a in w {
            let img = self.images.get(a as usize).ok_or(Error::LetterOutOfRange {
                letter: a as usize,
                size: self.images.len(),
            })?;
            out.extend_from_slice(img);
        }
        Ok(Word(out))
    }
}

/// Description of an infinite word by a prefix generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WordSource {
    /// Fixed point of `rules` starting with `seed`.
    MorphicFixedPoint { rules: Morphism, seed: Letter },
    /// `s_b(n) mod m` where `s_b` is the base-`b` digit sum.
    DigitSum { base: u32, modulus: u32 },
    /// The periodic word `period^ω`.
    Periodic { period: Word },
    /// A finite word; prefixes longer than it are rejected.
    Literal { word: Word },
    /// Letterwise image of another infinite word.
    MorphicImage { morphism: Morphism, source: Box<WordSource> },
}

impl WordSource {
    pub fn fixed_point(rules: Morphism, seed: Letter) -> Result<Self> {
        let s = WordSource::MorphicFixedPoint { rules, seed };
        s.validate()?;
        Ok(s)
    }

    pub fn digit_sum(base: u32, modulus: u32) -> Result<Self> {
        let s = WordSource::DigitSum { base, modulus };
        s.validate()?;
        Ok(s)
    }

    pub fn periodic(period: Word) -> Result<Self> {
        let s = WordSource::Periodic { period };
        s.validate()?;
        Ok(s)
    }

    pub fn literal(word: Word) -> Self {
        WordSource::Literal { word }
    }

    pub fn image(morphism: Morphism, source: WordSource) -> Result<Self> {
        let s = WordSource::MorphicImage { morphism, source: Box::new(source) };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            WordSource::MorphicFixedPoint { rules, seed } => {
                let k = rules.source_size();
                if *seed as usize >= k {
                    return Err(Error::InvalidSource(format!("seed {seed} has no rule")));
                }
                if rules.target_bound() > k {
                    return Err(Error::InvalidSource(
                        "rules use letters outside the source alphabet".into(),
                    ));
                }
                let img = rules.image(*seed);
                if img[0] != *seed || img.len() < 2 {
                    return Err(Error::InvalidSource(format!(
                        "seed {seed} is not prolongable: its image is {img}"
                    )));
                }
                Ok(())
            }
            WordSource::DigitSum { base, modulus } => {
                if *base < 2 {
                    return Err(Error::InvalidSource(format!("base {base} must be at least 2")));
                }
                if *modulus < 1 || *modulus as usize > MAX_ALPHABET {
                    return Err(Error::InvalidSource(format!("modulus {modulus} out of range")));
                }
                Ok(())
            }
            WordSource::Periodic { period } => {
                if period.is_empty() {
                    Err(Error::InvalidSource("empty period".into()))
                } else {
                    Ok(())
                }
            }
            WordSource::Literal { .. } => Ok(()),
            WordSource::MorphicImage { morphism, source } => {
                source.validate()?;
                if morphism.source_size() < source.alphabet_size() {
                    return Err(Error::InvalidSource(
                        "image morphism does not cover the source alphabet".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Number of letters the generated word is drawn from.
    pub fn alphabet_size(&self) -> usize {
        match self {
            WordSource::MorphicFixedPoint { rules, .. } => rules.source_size(),
            WordSource::DigitSum { modulus, .. } => *modulus as usize,
            WordSource::Periodic { period } => period.letter_bound(),
            WordSource::Literal { word } => word.letter_bound(),
            WordSource::MorphicImage { morphism, .. } => morphism.target_bound(),
        }
    }

    /// True when prefixes of every length exist.
    pub fn is_infinite(&self) -> bool {
        match self {
            WordSource::Literal { .. } => false,
            WordSource::MorphicImage { source, .. } => source.is_infinite(),
            _ => true,
        }
    }

    /// The first `len` letters of the word.
    pub fn prefix(&self, len: usize) -> Result<Word> {
        self.validate()?;
        match self {
            WordSource::MorphicFixedPoint { rules, seed } => {
                let mut w = Word(vec![*seed]);
                while w.len() < len {
                    // w is a prefix of its image; only the part needed for `len` is expanded.
                    let mut next = Vec::with_capacity(len);
                    for &a in w.iter() {
                        next.extend_from_slice(rules.image(a));
                        if next.len() >= len {
                            break;
                        }
                    }
                    w = Word(next);
                }
                w.truncate(len);
                Ok(w)
            }
            WordSource::DigitSum { base, modulus } => Ok((0..len as u64)
                .map(|n| (digit_sum(n, *base as u64) % *modulus as u64) as Letter)
                .collect()),
            WordSource::Periodic { period } => {
                Ok((0..len).map(|i| period[i % period.len()]).collect())
            }
            WordSource::Literal { word } => {
                if len > word.len() {
                    Err(Error::LengthOutOfRange { requested: len, available: word.len() })
                } else {
                    Ok(word.factor(0, len))
                }
            }
            WordSource::MorphicImage { morphism, source } => {
                // Non-erasing, so `len` source letters always suffice.
                let src_len = if source.is_infinite() {
                    len
                } else {
                    len.min(source.prefix_max())
                };
                let mut w = morphism.apply(&source.prefix(src_len)?)?;
                if w.len() < len {
                    return Err(Error::LengthOutOfRange { requested: len, available: w.len() });
                }
                w.truncate(len);
                Ok(w)
            }
        }
    }

    fn prefix_max(&self) -> usize {
        match self {
            WordSource::Literal { word } => word.len(),
            WordSource::MorphicImage { source, .. } => source.prefix_max(),
            _ => usize::MAX,
        }
    }
}

/// Sum of the base-`base` digits of `n`.
pub fn digit_sum(mut n: u64, base: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % base;
        n /= base;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_prefix() {
        let fib = WordSource::fixed_point(Morphism::from_digits(&["01", "0"]).unwrap(), 0).unwrap();
        assert_eq!(fib.prefix(16).unwrap(), Word::digits("0100101001001010"));
        assert_eq!(
            fib.prefix(40).unwrap(),
            Word::digits("0100101001001010010100100101001001010010")
        );
        assert_eq!(fib.prefix(0).unwrap(), Word::empty());
    }

    #[test]
    fn thue_morse_digit_sum_and_morphism_agree() {
        let ds = WordSource::digit_sum(2, 2).unwrap();
        assert_eq!(ds.prefix(16).unwrap(), Word::digits("0110100110010110"));
        let fp = WordSource::fixed_point(Morphism::from_digits(&["01", "10"]).unwrap(), 0).unwrap();
        assert_eq!(ds.prefix(1000).unwrap(), fp.prefix(1000).unwrap());
    }

    #[test]
    fn t33_from_digit_sums() {
        // s_3(n) for n = 0..8 is 0,1,2,1,2,3,2,3,4.
        let ds = WordSource::digit_sum(3, 3).unwrap();
        assert_eq!(ds.prefix(9).unwrap(), Word::digits("012120201"));
        let fp = WordSource::fixed_point(Morphism::from_digits(&["012", "120", "201"]).unwrap(), 0)
            .unwrap();
        assert_eq!(ds.prefix(729).unwrap(), fp.prefix(729).unwrap());
    }

    #[test]
    fn rejects_bad_sources() {
        let erasing = Morphism::from_digits(&["01", ""]);
        assert!(matches!(erasing, Err(Error::InvalidSource(_))));
        let not_prolongable = Morphism::from_digits(&["10", "0"]).unwrap();
        assert!(WordSource::fixed_point(not_prolongable, 0).is_err());
        let too_short = Morphism::from_digits(&["0", "10"]).unwrap();
        assert!(WordSource::fixed_point(too_short, 0).is_err());
        assert!(WordSource::digit_sum(1, 2).is_err());
        assert!(WordSource::digit_sum(2, 0).is_err());
        assert!(WordSource::periodic(Word::empty()).is_err());
    }

    #[test]
    fn literal_and_periodic() {
        let lit = WordSource::literal(Word::digits("0110"));
        assert_eq!(lit.prefix(3).unwrap(), Word::digits("011"));
        assert!(matches!(lit.prefix(5), Err(Error::LengthOutOfRange { .. })));
        let per = WordSource::periodic(Word::digits("011")).unwrap();
        assert_eq!(per.prefix(7).unwrap(), Word::digits("0110110"));
    }

    #[test]
    fn morphic_image_prefix() {
        let tm = WordSource::digit_sum(2, 2).unwrap();
        let doubled = WordSource::image(Morphism::from_digits(&["00", "11"]).unwrap(), tm).unwrap();
        assert_eq!(doubled.prefix(8).unwrap(), Word::digits("00111100"));
    }

    #[test]
    fn alphabet_round_trip() {
        let a = Alphabet::new(vec!['a', 'b', 'c']).unwrap();
        let w = a.parse("abca").unwrap();
        assert_eq!(w.letters(), &[0, 1, 2, 0]);
        assert_eq!(a.render(&w), "abca");
        assert!(matches!(a.parse("abd"), Err(Error::UnknownGlyph { glyph: 'd' })));
        assert!(Alphabet::new(vec!['a', 'a']).is_err());
        assert!(Alphabet::new(vec![]).is_err());
    }
}
