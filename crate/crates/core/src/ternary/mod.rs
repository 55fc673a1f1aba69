//! The free alternating ternary algebra: association types, canonical
//! monomials, symmetry generators and the expansion map into the free
//! associative algebra.

mod basis;
mod shape;
mod term;
mod words;

pub use basis::MonomialBasis;
pub use shape::{association_types, shape_cmp, AssocType, Shape, TypeSet, BRACKET_TERMS};
pub use term::{canonical_monomial, expand_collected, normalize, TernaryMonomial, Term};
pub use words::{enumerate_canonical_words, WordIndexer};

/// Signed associative words of the expansion of a monomial: each term of
/// the type's expansion with the leaves replaced by the word's letters.
pub fn expand(ty: &AssocType, word: &[u8]) -> Vec<(Vec<u8>, i8)> {
    ty.expansion().into_iter().map(|(pos, s)| (pos.iter().map(|&p| word[p as usize]).collect(), s)).collect()
}
