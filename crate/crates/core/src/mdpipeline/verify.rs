use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mlpipeline::{Pipeline, TypedElement};
use crate::modlinalg::{ModMatrix, RowReducer};
use crate::permgroup::{Partition, Permutation};
use crate::ternary::{MonomialBasis, TernaryMonomial};

use super::store::ExpansionStore;

/// Exact expansion of `sum v_j m_j` into the associative words; true iff
/// every word cancels.
pub fn verify_expansion_zero(store: &ExpansionStore, v: &[i64]) -> bool {
    let nw = store.word_count();
    let acc = (0..v.len())
        .into_par_iter()
        .filter(|&j| v[j] != 0)
        .fold(
            || vec![0i64; nw],
            |mut acc, j| {
                for &e in store.column(j) {
                    acc[(e.unsigned_abs() - 1) as usize] += e.signum() as i64 * v[j];
                }
                acc
            },
        )
        .reduce_with(|mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    acc.is_none_or(|a| a.iter().all(|&x| x == 0))
}

/// One term of a polynomial given by type (0-based) and word.
pub type RawTerm = (i64, TernaryMonomial);

/// Full linearization of the repeated letters: every letter `x` occurring
/// twice is split into `x` and a fresh letter `repeated_count + x + ...`,
/// in both orders, so each term yields `2^k` multilinear terms. Fresh
/// letters follow the original ones in order of the letters they split.
pub fn linearize(basis: &MonomialBasis, v: &[i64]) -> Vec<RawTerm> {
    let delta = basis.delta();
    let nletters = delta.len() as u8;
    let repeated: Vec<u8> = (0..nletters).filter(|&x| delta[x as usize] == 2).collect();
    let mut out = Vec::new();
    for (j, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let m = basis.monomial(j);
        let pairs: Vec<(usize, usize)> = repeated
            .iter()
            .map(|&x| {
                let mut it = m.word.iter().enumerate().filter(|(_, &y)| y == x).map(|(i, _)| i);
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        for mask in 0..1u32 << pairs.len() {
            let mut w = m.word.clone();
            for (k, &(p, q)) in pairs.iter().enumerate() {
                let fresh = nletters + k as u8;
                if mask >> k & 1 == 0 {
                    w[q] = fresh;
                } else {
                    w[p] = fresh;
                }
            }
            out.push((c, TernaryMonomial { type_index: m.type_index, word: w }));
        }
    }
    out
}

/// Identifies every fresh letter with the letter it split, collecting by
/// basis column.
pub fn identify(basis: &MonomialBasis, terms: &[RawTerm]) -> Result<Vec<i64>> {
    let delta = basis.delta();
    let repeated: Vec<u8> = (0..delta.len() as u8).filter(|&x| delta[x as usize] == 2).collect();
    let n = delta.len() as u8;
    let mut v = vec![0i64; basis.len()];
    for (c, m) in terms {
        let word: Vec<u8> = m.word.iter().map(|&x| if x >= n { repeated[(x - n) as usize] } else { x }).collect();
        let mono = TernaryMonomial { type_index: m.type_index, word };
        let col = basis.column_of(&mono).ok_or_else(|| Error::Invariant("identified monomial is not canonical".into()))?;
        v[col] += c;
    }
    Ok(v)
}

/// Groups multilinear terms by type as permutations, merging equal words.
pub fn typed_terms(terms: &[RawTerm], ntypes: usize) -> Result<TypedElement> {
    let mut by_type: Vec<BTreeMap<Vec<u8>, i64>> = vec![BTreeMap::new(); ntypes];
    for (c, m) in terms {
        *by_type[m.type_index].entry(m.word.clone()).or_insert(0) += c;
    }
    by_type
        .into_iter()
        .map(|t| {
            t.into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(w, c)| Ok((Permutation::from_images(w)?, c)))
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Outcome of stacking the symmetries, liftings and a new identity in one
/// representation.
#[derive(Clone, Debug, Serialize)]
pub struct StackedCheck {
    pub partition: String,
    pub rank_without: usize,
    pub rank: usize,
    pub matches_allmat: bool,
}

/// Stacks the symmetry rows, lifting rows and the rows of `element` in the
/// representation `shape`, and compares the row canonical form with the
/// space of all identities.
pub fn stacked_rank_check(pipe: &Pipeline, shape: &Partition, element: &TypedElement, allmat: &ModMatrix) -> Result<StackedCheck> {
    let rep = pipe.natural_rep(shape)?;
    let d = rep.dim();
    let field = pipe.field();
    let mut red = RowReducer::new(pipe.types().len() * d, field);
    for m in [pipe.sym_matrix(&rep)?, pipe.lifting_matrix(&rep)?] {
        for i in 0..m.rows() {
            red.push_dense(m.row(i));
        }
    }
    let rank_without = red.rank();
    let mut rows = ModMatrix::zeros(d, pipe.types().len() * d, field);
    for (t, terms) in element.iter().enumerate() {
        if !terms.is_empty() {
            rows.set_block(0, t * d, &pipe.rep_of_terms(&rep, terms));
        }
    }
    for i in 0..d {
        red.push_dense(rows.row(i));
    }
    let rank = red.rank();
    let rcf = red.to_rcf();
    Ok(StackedCheck { partition: shape.exponent_notation(), rank_without, rank, matches_allmat: rcf == *allmat })
}
