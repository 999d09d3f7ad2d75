//! Generalized palindromic richness for infinite words closed under a finite
//! group of morphisms and antimorphisms.

pub mod error;
pub mod lang_index;
pub mod palin;
pub mod presets;
pub mod symgraph;
pub mod symmetry;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use symmetry::{dihedral_group, SymmetryGroup, SymmetryMap};
pub use words::{Alphabet, Letter, Morphism, Word, WordSource};
