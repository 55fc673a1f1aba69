//! Identities of one multidegree with repeated variables: the kernel of the
//! expansion map, the quotient by known consequences, the search for a new
//! identity and its exact verification.

mod artifact;
mod kernel;
mod run;
mod search;
mod store;
mod verify;

pub use artifact::{read_identity, write_identity};
pub use kernel::{
    annihilates, kernel_of_expansion, length_order, summarize, vector_stats, KernelBasis, KernelSummary, VectorStats,
};
pub use run::{run_multidegree, MultidegreeOutcome, MultidegreeReport};
pub use search::{consequence_matrix, find_new_vector, NewVector};
pub use store::{ExpansionStore, WordRows};
pub use verify::{
    identify, linearize, stacked_rank_check, typed_terms, verify_expansion_zero, RawTerm, StackedCheck,
};

/// The multidegree `a^2 b^2 c^2 d^2 e^2 f`.
pub const DELTA: [u8; 6] = [2, 2, 2, 2, 2, 1];
/// Words per chunk of the streaming reduction.
pub const CHUNK_WORDS: usize = 16200;

#[cfg(test)]
mod tests;
