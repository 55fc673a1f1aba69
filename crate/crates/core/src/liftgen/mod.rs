//! The degree-7 identity `I(a,...,g)` and its consequences ("liftings") in
//! degrees 9 and 11, multilinear and with repeated variables.

mod expr;
mod multidegree;

pub use expr::{identity_i, liftings, liftings_degree11, liftings_degree9, lifting_patterns, LiftExpr, TernaryPolynomial};
pub use multidegree::{family_substitutions, multidegree_substitutions, SubstitutionRow};
