//! Per-partition rank computations for multilinear identities and the
//! extraction of an explicit new identity.

mod extract;
mod pipeline;

pub use extract::{
    emit_group_algebra_identity, extract_new_identities, extract_new_identity, render_group_algebra_identity,
    rep_of_emitted, stacked_rank, IdentityReport, MatrixUnitTerm, RowEntry,
};
pub use pipeline::{typed_element, PartitionReport, PartitionRun, Pipeline, TypedElement};

use crate::error::Result;
use crate::modlinalg::Fp;
use crate::permgroup::Partition;

/// Partitions of `n` with dimension at most `max_dim`, in ascending
/// dimension (ties in the usual numbering order).
pub fn partitions_up_to_dim(n: usize, max_dim: u64) -> Vec<Partition> {
    let mut v: Vec<(usize, Partition)> =
        Partition::all(n).into_iter().enumerate().filter(|(_, p)| p.dimension() <= max_dim).collect();
    v.sort_by_key(|(i, p)| (p.dimension(), *i));
    v.into_iter().map(|(_, p)| p).collect()
}

/// Reports for a list of partitions, computed one after another.
pub fn table(degree: usize, partitions: &[Partition], field: Fp) -> Result<Vec<PartitionReport>> {
    let pipe = Pipeline::new(degree, field)?;
    partitions.iter().map(|p| pipe.partition_report(p)).collect()
}
