//! TOML analysis configs with line-precise validation errors.

use std::collections::BTreeMap;
use std::ops::Range;

use grich::{Alphabet, Morphism, SymmetryGroup, SymmetryMap, Word, WordSource};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

pub const DEFAULT_PREFIX: usize = 2000;
pub const DEFAULT_N_MAX: usize = 30;
/// Upper bound on `n_max`; every analysis of interest lives at small orders.
pub const N_MAX_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Dot,
    Report,
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    alphabet: Spanned<Vec<Spanned<String>>>,
    prefix_length: Option<Spanned<usize>>,
    n_max: Option<Spanned<usize>>,
    threshold: Option<Spanned<usize>>,
    format: Option<Spanned<String>>,
    word: Spanned<RawWord>,
    group: Spanned<RawGroup>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWord {
    id: Option<String>,
    kind: Spanned<String>,
    rules: Option<Spanned<Vec<Spanned<String>>>>,
    seed: Option<Spanned<String>>,
    base: Option<Spanned<u32>>,
    modulus: Option<Spanned<u32>>,
    period: Option<Spanned<String>>,
    letters: Option<Spanned<String>>,
    /// Alphabet of `source` for `kind = "image"`.
    alphabet: Option<Spanned<Vec<Spanned<String>>>>,
    source: Option<Box<Spanned<RawWord>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    id: Option<String>,
    generators: Spanned<Vec<Spanned<RawGenerator>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: Option<String>,
    kind: Spanned<String>,
    map: Spanned<BTreeMap<Spanned<String>, Spanned<String>>>,
}

/// A validated analysis configuration.
#[derive(Clone, Debug)]
pub struct AnalysisConfig {
    pub alphabet: Alphabet,
    pub group: SymmetryGroup,
    pub word: WordSource,
    pub prefix_length: usize,
    pub n_max: usize,
    pub threshold: usize,
    pub format: Option<Format>,
    pub word_id: String,
    pub group_id: String,
}

/// Maps byte spans of one document to `origin:line:column` locations.
struct Locator<'a> {
    origin: &'a str,
    text: &'a str,
}

impl Locator<'_> {
    fn at(&self, span: Range<usize>, msg: impl std::fmt::Display) -> CliError {
        let start = span.start.min(self.text.len());
        let before = &self.text[..start];
        let line = before.matches('\n').count() + 1;
        let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
        CliError::Config(format!("{}:{line}:{column}: {msg}", self.origin))
    }
}

pub fn parse_format(s: &str) -> Option<Format> {
    match s {
        "csv" => Some(Format::Csv),
        "dot" => Some(Format::Dot),
        "report" => Some(Format::Report),
        "json" => Some(Format::Json),
        _ => None,
    }
}

impl AnalysisConfig {
    /// Parses and validates `text`; `origin` names it in error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let loc = Locator { origin, text };
        let raw: RawConfig = toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => loc.at(span, e.message()),
            None => CliError::Config(format!("{origin}: {}", e.message())),
        })?;

        let alphabet = alphabet(&loc, &raw.alphabet)?;
        let word = word(&loc, &raw.word, &alphabet)?;
        let group = group(&loc, &raw.group, &alphabet)?;

        let prefix_length = raw.prefix_length.as_ref().map_or(DEFAULT_PREFIX, |s| *s.get_ref());
        let n_max = raw.n_max.as_ref().map_or(DEFAULT_N_MAX, |s| *s.get_ref());
        let threshold = raw.threshold.as_ref().map_or(1, |s| *s.get_ref());
        if let Some(t) = &raw.threshold {
            if *t.get_ref() == 0 {
                return Err(loc.at(t.span(), "threshold must be at least 1"));
            }
        }
        if let Some(n) = &raw.n_max {
            if *n.get_ref() == 0 || *n.get_ref() > N_MAX_LIMIT {
                return Err(loc.at(n.span(), format!("n_max must lie in 1..={N_MAX_LIMIT}")));
            }
        }
        if let Some(l) = &raw.prefix_length {
            if *l.get_ref() < n_max + 2 {
                return Err(loc.at(l.span(), format!("prefix_length must be at least n_max + 2 = {}", n_max + 2)));
            }
        }
        let format = match &raw.format {
            Some(f) => Some(
                parse_format(f.get_ref())
                    .ok_or_else(|| loc.at(f.span(), format!("unknown format {:?}", f.get_ref())))?,
            ),
            None => None,
        };

        let word_id = raw.word.get_ref().id.clone().unwrap_or_else(|| "word".into());
        let group_id = raw.group.get_ref().id.clone().unwrap_or_else(|| "G".into());
        let cfg = AnalysisConfig { alphabet, group, word, prefix_length, n_max, threshold, format, word_id, group_id };
        cfg.check_lengths().map_err(|e| match (e, &raw.prefix_length) {
            (CliError::Config(m), Some(l)) => loc.at(l.span(), m),
            (e, _) => e,
        })?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Applies command-line overrides; callers indexing factors up to
    /// `n_max` re-check the lengths with [`AnalysisConfig::check_lengths`].
    pub fn override_with(
        &mut self,
        length: Option<usize>,
        n_max: Option<usize>,
        threshold: Option<usize>,
    ) -> Result<(), CliError> {
        if let Some(n) = n_max {
            if n == 0 || n > N_MAX_LIMIT {
                return Err(CliError::Config(format!("--nmax must lie in 1..={N_MAX_LIMIT}")));
            }
            self.n_max = n;
        }
        if let Some(t) = threshold {
            if t == 0 {
                return Err(CliError::Config("--threshold must be at least 1".into()));
            }
            self.threshold = t;
        }
        if let Some(l) = length {
            self.prefix_length = l;
        }
        Ok(())
    }

    pub fn check_lengths(&self) -> Result<(), CliError> {
        if self.prefix_length < self.n_max + 2 {
            return Err(CliError::Config(format!(
                "prefix length {} is below n_max + 2 = {}",
                self.prefix_length,
                self.n_max + 2
            )));
        }
        if let WordSource::Literal { word: w } = &self.word {
            if w.len() < self.prefix_length {
                return Err(CliError::Config(format!(
                    "literal word has {} letters but the prefix length is {}",
                    w.len(),
                    self.prefix_length
                )));
            }
        }
        Ok(())
    }

    pub fn prefix(&self) -> Result<Word, CliError> {
        Ok(self.word.prefix(self.prefix_length)?)
    }
}

fn glyph(loc: &Locator, s: &Spanned<String>) -> Result<char, CliError> {
    let mut chars = s.get_ref().chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(loc.at(s.span(), format!("{:?} is not a single glyph", s.get_ref()))),
    }
}

fn alphabet(loc: &Locator, raw: &Spanned<Vec<Spanned<String>>>) -> Result<Alphabet, CliError> {
    let glyphs = raw.get_ref().iter().map(|g| glyph(loc, g)).collect::<Result<Vec<_>, _>>()?;
    Alphabet::new(glyphs).map_err(|e| loc.at(raw.span(), e))
}

fn parse_word(loc: &Locator, alphabet: &Alphabet, s: &Spanned<String>) -> Result<Word, CliError> {
    alphabet.parse(s.get_ref()).map_err(|e| loc.at(s.span(), e))
}

fn required<'a, T>(loc: &Locator, raw: &Spanned<RawWord>, field: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    field.as_ref().ok_or_else(|| {
        loc.at(raw.span(), format!("word of kind {:?} needs `{name}`", raw.get_ref().kind.get_ref()))
    })
}

/// Rules `"a -> xyz"`, one per source glyph, in alphabet order.
fn morphism(
    loc: &Locator,
    rules: &Spanned<Vec<Spanned<String>>>,
    source: &Alphabet,
    target: &Alphabet,
) -> Result<Morphism, CliError> {
    let mut images: Vec<Option<Word>> = vec![None; source.size()];
    for rule in rules.get_ref() {
        let (lhs, rhs) = rule
            .get_ref()
            .split_once("->")
            .ok_or_else(|| loc.at(rule.span(), format!("rule {:?} is not of the form \"a -> w\"", rule.get_ref())))?;
        let lhs = lhs.trim();
        let mut chars = lhs.chars();
        let a = match (chars.next(), chars.next()) {
            (Some(c), None) => source.letter(c).map_err(|e| loc.at(rule.span(), e))?,
            _ => return Err(loc.at(rule.span(), format!("left side {lhs:?} is not a single glyph"))),
        };
        let image = target.parse(rhs.trim()).map_err(|e| loc.at(rule.span(), e))?;
        if image.is_empty() {
            return Err(loc.at(rule.span(), "rule has an empty image"));
        }
        if images[a as usize].replace(image).is_some() {
            return Err(loc.at(rule.span(), format!("second rule for glyph {:?}", source.glyph(a))));
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| loc.at(rules.span(), format!("no rule for glyph {:?}", source.glyph(i as u8)))))
        .collect::<Result<Vec<_>, _>>()?;
    Morphism::new(images).map_err(|e| loc.at(rules.span(), e))
}

fn word(loc: &Locator, raw: &Spanned<RawWord>, alphabet: &Alphabet) -> Result<WordSource, CliError> {
    let w = raw.get_ref();
    let source = match w.kind.get_ref().as_str() {
        "fixed_point" => {
            let rules = required(loc, raw, &w.rules, "rules")?;
            let seed = required(loc, raw, &w.seed, "seed")?;
            let m = morphism(loc, rules, alphabet, alphabet)?;
            let seed_letter = parse_word(loc, alphabet, seed)?;
            if seed_letter.len() != 1 {
                return Err(loc.at(seed.span(), "seed must be one glyph"));
            }
            WordSource::fixed_point(m, seed_letter[0]).map_err(|e| loc.at(raw.span(), e))?
        }
        "digit_sum" => {
            let base = required(loc, raw, &w.base, "base")?;
            let modulus = required(loc, raw, &w.modulus, "modulus")?;
            if *modulus.get_ref() as usize > alphabet.size() {
                return Err(loc.at(modulus.span(), "modulus exceeds the alphabet size"));
            }
            WordSource::digit_sum(*base.get_ref(), *modulus.get_ref()).map_err(|e| loc.at(raw.span(), e))?
        }
        "periodic" => {
            let period = required(loc, raw, &w.period, "period")?;
            WordSource::periodic(parse_word(loc, alphabet, period)?).map_err(|e| loc.at(period.span(), e))?
        }
        "literal" => {
            let letters = required(loc, raw, &w.letters, "letters")?;
            WordSource::literal(parse_word(loc, alphabet, letters)?)
        }
        "image" => {
            let rules = required(loc, raw, &w.rules, "rules")?;
            let source_alphabet = alphabet_of_source(loc, raw)?;
            let inner = required(loc, raw, &w.source, "source")?;
            let m = morphism(loc, rules, &source_alphabet, alphabet)?;
            let inner = word(loc, inner, &source_alphabet)?;
            WordSource::image(m, inner).map_err(|e| loc.at(raw.span(), e))?
        }
        other => {
            return Err(loc.at(
                w.kind.span(),
                format!("unknown word kind {other:?} (expected fixed_point, digit_sum, periodic, literal or image)"),
            ))
        }
    };
    Ok(source)
}

fn alphabet_of_source(loc: &Locator, raw: &Spanned<RawWord>) -> Result<Alphabet, CliError> {
    let a = required(loc, raw, &raw.get_ref().alphabet, "alphabet")?;
    alphabet(loc, a)
}

fn group(loc: &Locator, raw: &Spanned<RawGroup>, alphabet: &Alphabet) -> Result<SymmetryGroup, CliError> {
    let gens = &raw.get_ref().generators;
    if gens.get_ref().is_empty() {
        return Err(loc.at(gens.span(), "group needs at least one generator"));
    }
    let mut named = Vec::new();
    for (i, g) in gens.get_ref().iter().enumerate() {
        let g_ref = g.get_ref();
        let antimorphic = match g_ref.kind.get_ref().as_str() {
            "morphism" => false,
            "antimorphism" => true,
            other => {
                return Err(loc.at(
                    g_ref.kind.span(),
                    format!("unknown generator kind {other:?} (expected morphism or antimorphism)"),
                ))
            }
        };
        let mut perm: Vec<Option<u8>> = vec![None; alphabet.size()];
        for (from, to) in g_ref.map.get_ref() {
            let a = alphabet.letter(glyph(loc, from)?).map_err(|e| loc.at(from.span(), e))?;
            let b = alphabet.letter(glyph(loc, to)?).map_err(|e| loc.at(to.span(), e))?;
            perm[a as usize] = Some(b);
        }
        let perm = perm
            .into_iter()
            .enumerate()
            .map(|(a, b)| {
                b.ok_or_else(|| loc.at(g_ref.map.span(), format!("map does not cover glyph {:?}", alphabet.glyph(a as u8))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let map = SymmetryMap::new(perm, antimorphic).map_err(|e| loc.at(g_ref.map.span(), e))?;
        let name = g_ref.name.clone().unwrap_or_else(|| format!("g{}", i + 1));
        named.push((name, map));
    }
    SymmetryGroup::close_named(named).map_err(|e| loc.at(gens.span(), e))
}
