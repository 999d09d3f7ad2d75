use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: expected {expected} letters, found {found}")]
    AlphabetMismatch { expected: usize, found: usize },

    #[error("letter {letter} is outside an alphabet of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("unknown glyph {glyph:?}")]
    UnknownGlyph { glyph: char },

    #[error("invalid symmetry map: {0}")]
    InvalidSymmetry(String),

    #[error("invalid word source: {0}")]
    InvalidSource(String),

    #[error("requested length {requested} exceeds available length {available}")]
    LengthOutOfRange { requested: usize, available: usize },

    #[error("{0} is not a factor of the indexed text")]
    NotAFactor(String),

    #[error("{0} is not a palindrome for the given antimorphism")]
    NotPalindrome(String),

    #[error("expected an antimorphism")]
    NotAntimorphism,

    #[error("antimorphism is not an involution")]
    NotInvolutive,

    #[error("group contains no antimorphism")]
    NoAntimorphism,

    #[error("group of order {order} exceeds the supported bound {limit}")]
    GroupTooLarge { order: usize, limit: usize },

    #[error("insufficient prefix: {0}")]
    InsufficientPrefix(String),
}
