//! The symmetric group: permutations, partitions, standard tableaux,
//! Clifton's matrices, the natural representation and matrix units.

mod cache;
mod clifton;
mod group_algebra;
mod matrix_units;
mod partition;
mod permutation;
mod tableau;

pub use cache::RepCache;
pub use clifton::NaturalRep;
pub use group_algebra::{rational_mod, GroupAlgebraElement};
pub use matrix_units::{
    d_element, diagonal_element, matrix_unit_element, matrix_unit_in_d_terms, rep_of_d, rep_of_diagonal, transport,
};
pub use partition::Partition;
pub use permutation::{inversion_sign, next_permutation, Permutation};
pub use tableau::{standard_tableaux, StandardTableau};

pub(crate) use clifton::check_modulus;
