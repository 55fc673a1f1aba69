use serde::Serialize;

use crate::error::{Error, Result};
use crate::liftgen::multidegree_substitutions;
use crate::modlinalg::{Fp, ModMatrix, RowReducer};
use crate::ternary::MonomialBasis;

use super::kernel::{length_order, KernelBasis, VectorStats};

/// The consequences of the liftings in one multidegree: a matrix with one
/// spare zero row at the bottom for the candidate vector.
pub fn consequence_matrix(basis: &MonomialBasis, field: Fp) -> ModMatrix {
    let rows = multidegree_substitutions(basis);
    let mut m = ModMatrix::zeros(rows.len() + 1, basis.len(), field);
    for (i, r) in rows.iter().enumerate() {
        let row = m.row_mut(i);
        for &(c, v) in &r.entries {
            row[c] = field.add(row[c], field.from_i64(v));
        }
    }
    m
}

/// The first kernel vector in length order outside the consequence space.
#[derive(Clone, Debug, Serialize)]
pub struct NewVector {
    /// 1-based position in the length-sorted list.
    pub sorted_position: usize,
    /// 1-based position in the canonical basis.
    pub basis_index: usize,
    pub stats: VectorStats,
    pub rank_before: usize,
    pub vector: Vec<i64>,
}

/// Walks the kernel in order of increasing square length and returns the
/// first vector that raises the rank of the consequence matrix.
pub fn find_new_vector(kernel: &KernelBasis, stats: &[VectorStats], consequences: &ModMatrix) -> Result<NewVector> {
    let mut red = RowReducer::new(consequences.cols(), kernel.field);
    for i in 0..consequences.rows() {
        red.push_dense(consequences.row(i));
    }
    let rank_before = red.rank();
    for (pos, &i) in length_order(stats).iter().enumerate() {
        let entries: Vec<(usize, i64)> =
            kernel.modular[i].iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x as i64)).collect();
        if red.is_independent(&entries) {
            return Ok(NewVector {
                sorted_position: pos + 1,
                basis_index: i + 1,
                stats: stats[i].clone(),
                rank_before,
                vector: kernel.integer[i].clone(),
            });
        }
    }
    Err(Error::Invariant("every kernel vector lies in the consequence space".into()))
}
