use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::Result;
use crate::modlinalg::{chunked_reduce, integer_reconstruct, Fp};

use super::store::WordRows;
use super::CHUNK_WORDS;

/// Canonical basis of the kernel of the expansion map: one vector per free
/// column of the row canonical form, with that column set to 1.
pub struct KernelBasis {
    pub field: Fp,
    pub rank: usize,
    pub free_columns: Vec<usize>,
    pub modular: Vec<Vec<u32>>,
    /// The same vectors scaled to coprime integers.
    pub integer: Vec<Vec<i64>>,
}

impl KernelBasis {
    pub fn len(&self) -> usize {
        self.modular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modular.is_empty()
    }
}

/// Reduces the expansion matrix in chunks of words and reads off the
/// canonical nullspace basis.
pub fn kernel_of_expansion(rows: &WordRows, columns: usize, field: Fp) -> Result<KernelBasis> {
    let n = rows.len();
    let chunks = (0..n).step_by(CHUNK_WORDS).map(|s| {
        let c = rows.chunk(s..(s + CHUNK_WORDS).min(n));
        log::debug!("chunk {} of {}", s / CHUNK_WORDS + 1, n.div_ceil(CHUNK_WORDS));
        c
    });
    let mut red = chunked_reduce(columns, field, chunks);
    let rank = red.rank();
    let free_columns = red.free_columns();
    let modular = red.nullspace_basis();
    let integer = modular.iter().map(|v| integer_reconstruct(v, field)).collect::<Result<Vec<_>>>()?;
    Ok(KernelBasis { field, rank, free_columns, modular, integer })
}

/// Size measures of one integer kernel vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorStats {
    /// 1-based position in the canonical basis.
    pub index: usize,
    pub nonzero: usize,
    pub distinct: usize,
    pub square_length: u64,
}

pub fn vector_stats(index: usize, v: &[i64]) -> VectorStats {
    let sq: BigInt = v.iter().map(|&x| BigInt::from(x) * x).sum();
    VectorStats {
        index,
        nonzero: v.iter().filter(|&&x| x != 0).count(),
        distinct: v.iter().filter(|&&x| x != 0).collect::<BTreeSet<_>>().len(),
        square_length: u64::try_from(sq).expect("square length fits in 64 bits"),
    }
}

/// Basis positions (0-based) ordered by square length, ties by position.
pub fn length_order(stats: &[VectorStats]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..stats.len()).collect();
    order.sort_by_key(|&i| (stats[i].square_length, i));
    order
}

/// Ranges of the statistics over a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelSummary {
    pub nonzero: (usize, usize),
    pub distinct: (usize, usize),
    pub square_length: (u64, u64),
}

pub fn summarize(stats: &[VectorStats]) -> KernelSummary {
    let range = |f: &dyn Fn(&VectorStats) -> u64| {
        let it = stats.iter().map(f);
        (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
    };
    let nz = range(&|s| s.nonzero as u64);
    let di = range(&|s| s.distinct as u64);
    KernelSummary {
        nonzero: (nz.0 as usize, nz.1 as usize),
        distinct: (di.0 as usize, di.1 as usize),
        square_length: range(&|s| s.square_length),
    }
}

/// Whether every vector is annihilated by the expansion matrix mod `p`.
pub fn annihilates(rows: &WordRows, v: &[u32], field: Fp) -> bool {
    (0..rows.len()).all(|w| {
        let s = rows.row(w).iter().fold(0i64, |s, &(c, x)| (s + x * v[c] as i64).rem_euclid(field.p() as i64));
        s == 0
    })
}
