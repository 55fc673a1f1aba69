//! Exact linear algebra over prime fields: dense matrices, incremental row
//! canonical form, nullspace bases and integer lifting.

mod field;
mod lift;
mod matrix;
mod reducer;

pub use field::{is_prime, Fp};
pub use lift::{integer_reconstruct, rational_reconstruct, symmetric_lift};
pub use matrix::{row_space_equal, ModMatrix};
pub use reducer::{chunked_reduce, RowReducer};

#[cfg(test)]
mod tests;
