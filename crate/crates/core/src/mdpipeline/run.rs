use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mlpipeline::Pipeline;
use crate::modlinalg::Fp;
use crate::permgroup::Partition;
use crate::ternary::{MonomialBasis, TypeSet};

use super::kernel::{kernel_of_expansion, summarize, vector_stats, KernelSummary, VectorStats};
use super::search::{consequence_matrix, find_new_vector};
use super::store::ExpansionStore;
use super::verify::{identify, linearize, stacked_rank_check, typed_terms, verify_expansion_zero, StackedCheck};
use super::DELTA;

/// Everything the multidegree run establishes.
#[derive(Clone, Debug, Serialize)]
pub struct MultidegreeReport {
    pub schema: u32,
    pub prime: u32,
    pub multidegree: Vec<u8>,
    pub columns: usize,
    pub words: usize,
    pub terms_per_column: usize,
    pub rank: usize,
    pub nullity: usize,
    pub kernel: KernelSummary,
    pub kernel_expands_to_zero: bool,
    pub consequences: usize,
    pub consequence_rank: usize,
    pub sorted_position: usize,
    pub basis_index: usize,
    pub winner: VectorStats,
    /// Distinct nonzero coefficients of the new identity.
    pub coefficients: Vec<i64>,
    /// 1-based association types it involves.
    pub types: Vec<usize>,
    pub expansion_zero: bool,
    pub linearized_terms: usize,
    pub identification_ok: bool,
    pub final_check: StackedCheck,
}

pub struct MultidegreeOutcome {
    pub report: MultidegreeReport,
    pub basis: MonomialBasis,
    /// The new identity over the monomial basis.
    pub identity: Vec<i64>,
}

fn stage(name: &str, ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant(format!("{name}: {}", what())))
    }
}

/// Runs the multidegree computation end to end. `pipe` supplies the degree-11
/// representation data for the final rank check.
pub fn run_multidegree(pipe: &Pipeline) -> Result<MultidegreeOutcome> {
    let field: Fp = pipe.field();
    let basis = MonomialBasis::new(TypeSet::new(11)?, &DELTA);
    log::info!("basis: {} monomials", basis.len());
    let store = ExpansionStore::build(&basis);
    let (words, terms_per_column) = (store.word_count(), store.terms_per_column());
    log::info!("expansion store: {} words, {} terms per column", store.word_count(), store.terms_per_column());
    let kernel = {
        let rows = store.transpose();
        kernel_of_expansion(&rows, basis.len(), field)?
    };
    log::info!("rank={} nullity={}", kernel.rank, kernel.len());

    let stats: Vec<VectorStats> = kernel.integer.iter().enumerate().map(|(i, v)| vector_stats(i + 1, v)).collect();
    let summary = summarize(&stats);
    log::info!(
        "kernel: nonzero {}..{} distinct {}..{} square length {}..{}",
        summary.nonzero.0,
        summary.nonzero.1,
        summary.distinct.0,
        summary.distinct.1,
        summary.square_length.0,
        summary.square_length.1
    );
    let kernel_zero = kernel.integer.iter().all(|v| verify_expansion_zero(&store, v));
    stage("kernel", kernel_zero, || "a lifted kernel vector does not expand to zero".into())?;

    let m = consequence_matrix(&basis, field);
    let consequences = m.rows() - 1;
    let consequence_rank = m.rank();
    log::info!("consequences: {consequences} rows, rank={consequence_rank}");
    stage("consequences", consequence_rank < kernel.len(), || "consequence space fills the kernel".into())?;

    let winner = find_new_vector(&kernel, &stats, &m)?;
    let v = winner.vector.clone();
    let coefficients: Vec<i64> = v.iter().copied().filter(|&c| c != 0).collect::<BTreeSet<_>>().into_iter().collect();
    let types: Vec<usize> = (0..v.len())
        .filter(|&j| v[j] != 0)
        .map(|j| basis.monomial(j).type_index + 1)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    log::info!(
        "new vector: sorted position {} basis index {} with {} terms",
        winner.sorted_position,
        winner.basis_index,
        winner.stats.nonzero
    );

    let expansion_zero = verify_expansion_zero(&store, &v);
    log::info!("expansion-zero={expansion_zero}");
    stage("expansion", expansion_zero, || "new identity does not expand to zero".into())?;
    drop(store);

    let lin = linearize(&basis, &v);
    let back = identify(&basis, &lin)?;
    let identification_ok = back.iter().zip(&v).all(|(&b, &x)| b == 32 * x);
    log::info!("linearized terms={}", lin.len());
    stage("linearize", identification_ok, || "identifying the letters does not recover 32 v".into())?;

    let shape = Partition::new(vec![2, 2, 2, 2, 2, 1])?;
    let run = pipe.run(&shape)?;
    let element = typed_terms(&lin, pipe.types().len())?;
    let final_check = stacked_rank_check(pipe, &shape, &element, &run.allmat)?;
    log::info!("rank={} allmat-match={}", final_check.rank, final_check.matches_allmat);
    stage("final", final_check.matches_allmat, || format!("stacked rank {}", final_check.rank))?;

    let report = MultidegreeReport {
        schema: 1,
        prime: field.p(),
        multidegree: DELTA.to_vec(),
        columns: basis.len(),
        words,
        terms_per_column,
        rank: kernel.rank,
        nullity: kernel.len(),
        kernel: summary,
        kernel_expands_to_zero: kernel_zero,
        consequences,
        consequence_rank,
        sorted_position: winner.sorted_position,
        basis_index: winner.basis_index,
        winner: winner.stats,
        coefficients,
        types,
        expansion_zero,
        linearized_terms: lin.len(),
        identification_ok,
        final_check,
    };
    Ok(MultidegreeOutcome { report, basis, identity: v })
}
