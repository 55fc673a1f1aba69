//! Polynomial identities for the alternating ternary commutator
//! `[a,b,c] = abc - acb - bac + bca + cab - cba`.
//!
//! The crate is organised bottom-up:
//!
//! * [`permgroup`]: permutations, partitions, standard tableaux, Clifton's
//!   matrices, the natural representation of `S_n` and matrix units in the
//!   group algebra.
//! * [`modlinalg`]: dense linear algebra over `Z/p` built around an
//!   incremental row canonical form.
//! * [`ternary`]: association types, canonical monomials of the free
//!   alternating ternary algebra, and the expansion map into the free
//!   associative algebra.
//! * [`liftgen`]: the degree-7 identity and its consequences in degrees 9
//!   and 11.
//! * [`mlpipeline`]: per-partition rank computations and extraction of an
//!   explicit multilinear identity.
//! * [`mdpipeline`]: the non-multilinear search in multidegree
//!   `a^2 b^2 c^2 d^2 e^2 f`.

pub mod error;
pub mod liftgen;
pub mod mdpipeline;
pub mod mlpipeline;
pub mod modlinalg;
pub mod permgroup;
pub mod ternary;

pub use error::{Error, Result};

/// Default modulus: the largest prime below `2^28`.
///
/// Products of two residues fit in 56 bits, so 256 of them can be summed in a
/// `u64` before reduction, and symmetric rational reconstruction recovers
/// fractions whose numerator and denominator are both below 11585.
pub const DEFAULT_PRIME: u32 = 268_435_399;
