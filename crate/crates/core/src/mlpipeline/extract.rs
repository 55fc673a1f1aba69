use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modlinalg::{integer_reconstruct, Fp, ModMatrix, RowReducer};
use crate::permgroup::{matrix_unit_in_d_terms, rep_of_d, NaturalRep};

use super::pipeline::PartitionRun;

/// One nonzero entry of the row representing a new identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowEntry {
    /// 1-based column of the row.
    pub column: usize,
    /// 1-based association type.
    pub type_index: usize,
    /// 1-based tableau index.
    pub tableau_index: usize,
    /// Row-flattened tableau.
    pub tableau: Vec<u8>,
    pub coefficient: i64,
}

/// A new identity read off the canonical form of all identities.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub partition: String,
    pub dim: usize,
    /// 1-based leading column of the row.
    pub leading_column: usize,
    /// 1-based row of the canonical form of all identities.
    pub row: usize,
    /// The row scaled to coprime integers.
    pub coefficients: Vec<i64>,
    pub entries: Vec<RowEntry>,
}

impl IdentityReport {
    pub fn distinct_coefficients(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.coefficient).collect::<BTreeSet<_>>().into_iter().collect()
    }
}

/// One summand `coefficient * [D_{1,k}]_t` of the identity in group-algebra form,
/// grouped by the matrix unit it comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixUnitTerm {
    pub coefficient: i64,
    /// 1-based association type.
    pub type_index: usize,
    /// 1-based `j` of `E_{1,j}`.
    pub unit: usize,
    /// `(k, a_jk)`: `E_{1,j} = sum a_jk D_{1,k}`, `k` 1-based.
    pub d_terms: Vec<(usize, i64)>,
}

/// Rows of all identities whose leading columns are missing from the
/// lifted identities, each scaled to coprime integers.
pub fn extract_new_identities(run: &PartitionRun, rep: &NaturalRep) -> Result<Vec<IdentityReport>> {
    let old: BTreeSet<usize> = run.oldmat.leading_columns()?.into_iter().collect();
    let lead = run.allmat.leading_columns()?;
    let d = rep.dim();
    let field = run.allmat.field();
    let mut out = Vec::new();
    for (r, &c) in lead.iter().enumerate() {
        if old.contains(&c) {
            continue;
        }
        let coefficients = integer_reconstruct(run.allmat.row(r), field)?;
        let entries = coefficients
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(col, &v)| RowEntry {
                column: col + 1,
                type_index: col / d + 1,
                tableau_index: col % d + 1,
                tableau: rep.tableaux()[col % d].flattened(),
                coefficient: v,
            })
            .collect();
        out.push(IdentityReport {
            partition: rep.shape().exponent_notation(),
            dim: d,
            leading_column: c + 1,
            row: r + 1,
            coefficients,
            entries,
        });
    }
    Ok(out)
}

/// The first new identity of a partition; fails when there is none.
pub fn extract_new_identity(run: &PartitionRun, rep: &NaturalRep) -> Result<IdentityReport> {
    extract_new_identities(run, rep)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::NoNewIdentity(rep.shape().exponent_notation()))
}

/// Rewrites `sum c [E_{1j}]_t` through `E_{1j} = sum_k a_jk D_{1k}`.
pub fn emit_group_algebra_identity(report: &IdentityReport, rep: &NaturalRep) -> Vec<MatrixUnitTerm> {
    report
        .entries
        .iter()
        .map(|e| MatrixUnitTerm {
            coefficient: e.coefficient,
            type_index: e.type_index,
            unit: e.tableau_index,
            d_terms: matrix_unit_in_d_terms(rep, e.tableau_index - 1).into_iter().map(|(k, a)| (k + 1, a)).collect(),
        })
        .collect()
}

/// Text form, e.g. `+72 [D_{1,119}]_2 -24 ([D_{1,118}]_6 - [D_{1,126}]_6 + [D_{1,131}]_6)`,
/// one summand per line.
pub fn render_group_algebra_identity(terms: &[MatrixUnitTerm]) -> String {
    let mut out = String::new();
    for t in terms {
        let d = |k: usize| format!("[D_{{1,{k}}}]_{}", t.type_index);
        if let [(k, 1)] = t.d_terms[..] {
            let _ = writeln!(out, "{:+} {}", t.coefficient, d(k));
        } else {
            let mut inner = String::new();
            for (n, &(k, a)) in t.d_terms.iter().enumerate() {
                let sign = match (n, a < 0) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                let mag = if a.abs() == 1 { String::new() } else { format!("{} ", a.abs()) };
                let _ = write!(inner, "{sign}{mag}{}", d(k));
            }
            let _ = writeln!(out, "{:+} ({inner})", t.coefficient);
        }
    }
    out
}

/// Representation of the emitted identity: a `d x ntypes*d` block row
/// built from the factored `D_{1k}` matrices.
pub fn rep_of_emitted(terms: &[MatrixUnitTerm], rep: &NaturalRep, ntypes: usize, field: Fp) -> Result<ModMatrix> {
    let d = rep.dim();
    let mut blocks = vec![ModMatrix::zeros(d, d, field); ntypes];
    let mut cache: HashMap<usize, ModMatrix> = HashMap::new();
    for t in terms {
        for &(k, a) in &t.d_terms {
            if let Entry::Vacant(e) = cache.entry(k) {
                e.insert(rep_of_d(rep, 0, k - 1, field)?);
            }
            let m = &cache[&k];
            let c = field.from_i64(t.coefficient * a);
            let b = &mut blocks[t.type_index - 1];
            for i in 0..d {
                for j in 0..d {
                    let v = field.add(b.get(i, j), field.mul(c, m.get(i, j)));
                    b.set(i, j, v);
                }
            }
        }
    }
    let mut out = ModMatrix::zeros(d, ntypes * d, field);
    for (t, b) in blocks.iter().enumerate() {
        out.set_block(0, t * d, b);
    }
    Ok(out)
}

/// Rank of `base` with `extra` appended.
pub fn stacked_rank(base: &ModMatrix, extra: &ModMatrix) -> usize {
    let mut red = RowReducer::new(base.cols(), base.field());
    for i in 0..base.rows() {
        red.push_dense(base.row(i));
    }
    for i in 0..extra.rows() {
        red.push_dense(extra.row(i));
    }
    red.rank()
}
