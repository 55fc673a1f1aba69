//! Incremental row reduction over `Z/p`.
//!
//! The reducer keeps the row canonical form of everything pushed so far in
//! compressed form: the pivot column of every stored row, the sorted list of
//! free (non-pivot) columns, and each stored row restricted to the free
//! columns. Incoming rows are reduced against the stored rows, buffered, and
//! merged in blocks so that the dominant update is a blocked multiply with
//! delayed modular reduction.

use super::field::Fp;
use super::matrix::ModMatrix;

const NONE: u32 = u32::MAX;
const TILE: usize = 1024;

pub struct RowReducer {
    field: Fp,
    cols: usize,
    /// Pivot column of each stored row, in insertion order.
    pivots: Vec<usize>,
    /// Sorted free columns.
    free: Vec<usize>,
    /// Column -> stored row index, or `NONE`.
    pivot_row: Vec<u32>,
    /// Column -> position in `free`, or `NONE`.
    free_pos: Vec<u32>,
    /// Stored rows restricted to the free columns (`pivots.len() x free.len()`).
    data: Vec<u32>,
    /// Reduced, nonzero rows over the current free columns awaiting a merge.
    pending: Vec<Vec<u32>>,
    batch: usize,
    /// Products of two residues that fit in a `u64` accumulator before a reduction.
    budget: usize,
    acc: Vec<u64>,
}

impl RowReducer {
    pub fn new(cols: usize, field: Fp) -> Self {
        Self::with_batch(cols, field, 256)
    }

    pub fn with_batch(cols: usize, field: Fp, batch: usize) -> Self {
        let pm1 = field.p() as u64 - 1;
        let budget = ((u64::MAX / 2) / (pm1 * pm1).max(1)).clamp(1, 4096) as usize;
        RowReducer {
            field,
            cols,
            pivots: Vec::new(),
            free: (0..cols).collect(),
            pivot_row: vec![NONE; cols],
            free_pos: (0..cols as u32).collect(),
            data: Vec::new(),
            pending: Vec::new(),
            batch: batch.max(1),
            budget,
            acc: Vec::new(),
        }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Rank of everything pushed so far.
    pub fn rank(&mut self) -> usize {
        self.flush();
        self.pivots.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&mut self) -> Vec<usize> {
        self.flush();
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Free columns in increasing order.
    pub fn free_columns(&mut self) -> Vec<usize> {
        self.flush();
        self.free.clone()
    }

    /// Pushes a sparse row given as `(column, value)` pairs; repeated columns add.
    pub fn push_sparse(&mut self, entries: &[(usize, i64)]) {
        if let Some(r) = self.reduce_sparse_inner(entries) {
            self.pending.push(r);
            if self.pending.len() >= self.batch {
                self.flush();
            }
        }
    }

    pub fn push_dense(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        let entries: Vec<(usize, i64)> =
            row.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v as i64)).collect();
        self.push_sparse(&entries);
    }

    /// Whether the row lies outside the span of everything pushed so far.
    pub fn is_independent(&mut self, entries: &[(usize, i64)]) -> bool {
        self.flush();
        self.reduce_sparse_inner(entries).is_some()
    }

    /// Reduces a row against the stored rows, returning its coordinates on
    /// the free columns, or `None` if it reduces to zero. Pending rows are
    /// not taken into account.
    fn reduce_sparse_inner(&mut self, entries: &[(usize, i64)]) -> Option<Vec<u32>> {
        let f = self.free.len();
        let p = self.field.p() as u64;
        self.acc.clear();
        self.acc.resize(f, 0);
        let acc = &mut self.acc;
        let mut hits = 0usize;
        for &(c, v) in entries {
            let v = self.field.from_i64(v);
            if v == 0 {
                continue;
            }
            let fp = self.free_pos[c];
            if fp != NONE {
                acc[fp as usize] += v as u64;
                continue;
            }
            let r = self.pivot_row[c] as usize;
            let m = (p - v as u64) as u32;
            let row = &self.data[r * f..(r + 1) * f];
            for (a, &x) in acc.iter_mut().zip(row) {
                *a += m as u64 * x as u64;
            }
            hits += 1;
            if hits >= self.budget {
                acc.iter_mut().for_each(|a| *a %= p);
                hits = 0;
            }
        }
        let out: Vec<u32> = acc.iter().map(|&a| (a % p) as u32).collect();
        out.iter().any(|&x| x != 0).then_some(out)
    }

    /// Merges all pending rows into the stored canonical form.
    pub fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let pending = std::mem::take(&mut self.pending);
        let f = self.free.len();
        // Canonical form of the pending block over the current free columns.
        let (qpos, nrows) = if pending.len() <= 4 || self.batch <= 4 {
            small_rcf(self.field, f, pending)
        } else {
            let mut child = RowReducer::with_batch(f, self.field, (self.batch / 8).max(4));
            for r in &pending {
                child.push_dense(r);
            }
            child.into_sorted_parts()
        };
        if qpos.is_empty() {
            return;
        }
        self.absorb(&qpos, nrows);
    }

    /// Applies a block of new rows in canonical form over the current free
    /// columns: `qpos` are their pivot positions (sorted, indices into
    /// `free`) and `nrows` their full coordinates over `free`.
    fn absorb(&mut self, qpos: &[usize], nrows: Vec<u32>) {
        let f = self.free.len();
        let q = qpos.len();
        let r = self.pivots.len();
        let p = self.field.p() as u64;
        let budget = self.budget;
        if r > 0 {
            // Coefficients of the stored rows on the new pivot columns.
            let mut coef = vec![0u32; r * q];
            for i in 0..r {
                for (t, &qp) in qpos.iter().enumerate() {
                    coef[i * q + t] = self.data[i * f + qp];
                }
            }
            let nrows_ref = &nrows;
            let update = |(i, row): (usize, &mut [u32])| {
                let c = &coef[i * q..(i + 1) * q];
                if c.iter().all(|&x| x == 0) {
                    return;
                }
                let mut acc = vec![0u64; TILE];
                for t0 in (0..f).step_by(TILE) {
                    let t1 = (t0 + TILE).min(f);
                    let w = t1 - t0;
                    let acc = &mut acc[..w];
                    acc.iter_mut().for_each(|a| *a = 0);
                    let mut hits = 0;
                    for (t, &ct) in c.iter().enumerate() {
                        if ct == 0 {
                            continue;
                        }
                        let nr = &nrows_ref[t * f + t0..t * f + t1];
                        for (a, &x) in acc.iter_mut().zip(nr) {
                            *a += ct as u64 * x as u64;
                        }
                        hits += 1;
                        if hits >= budget {
                            acc.iter_mut().for_each(|a| *a %= p);
                            hits = 0;
                        }
                    }
                    for (x, &a) in row[t0..t1].iter_mut().zip(acc.iter()) {
                        let s = (a % p) as u32;
                        *x = if *x >= s { *x - s } else { *x + p as u32 - s };
                    }
                }
            };
            if r * f >= 1 << 16 {
                use rayon::prelude::*;
                self.data.par_chunks_mut(f).enumerate().for_each(update);
            } else {
                self.data.chunks_mut(f).enumerate().for_each(update);
            }
        }
        // Drop the new pivot columns from the free set.
        let mut keep = Vec::with_capacity(f - q);
        let mut qi = 0;
        for j in 0..f {
            if qi < q && qpos[qi] == j {
                qi += 1;
            } else {
                keep.push(j);
            }
        }
        let nf = keep.len();
        let mut data = Vec::with_capacity((r + q) * nf);
        for i in 0..r {
            let row = &self.data[i * f..(i + 1) * f];
            data.extend(keep.iter().map(|&j| row[j]));
        }
        for t in 0..q {
            let row = &nrows[t * f..(t + 1) * f];
            data.extend(keep.iter().map(|&j| row[j]));
        }
        self.data = data;
        for &qp in qpos {
            let c = self.free[qp];
            self.pivot_row[c] = self.pivots.len() as u32;
            self.free_pos[c] = NONE;
            self.pivots.push(c);
        }
        self.free = keep.iter().map(|&j| self.free[j]).collect();
        for (k, &c) in self.free.iter().enumerate() {
            self.free_pos[c] = k as u32;
        }
    }

    /// Pivot columns (sorted) and full rows in canonical form, row-major.
    fn into_sorted_parts(mut self) -> (Vec<usize>, Vec<u32>) {
        let m = self.to_rcf();
        let piv = m.leading_columns().expect("reducer output is canonical");
        (piv, m.data().to_vec())
    }

    /// Row canonical form of the pushed rows, nonzero rows only.
    pub fn to_rcf(&mut self) -> ModMatrix {
        self.flush();
        let f = self.free.len();
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_unstable_by_key(|&i| self.pivots[i]);
        let mut out = ModMatrix::zeros(order.len(), self.cols, self.field);
        for (k, &i) in order.iter().enumerate() {
            let row = out.row_mut(k);
            row[self.pivots[i]] = 1;
            for (t, &c) in self.free.iter().enumerate() {
                row[c] = self.data[i * f + t];
            }
        }
        out
    }

    /// One basis vector per free column, in column order: the free variable
    /// is 1, the other free variables 0, and pivot variables are determined.
    pub fn nullspace_basis(&mut self) -> Vec<Vec<u32>> {
        self.flush();
        let f = self.free.len();
        (0..f)
            .map(|t| {
                let mut v = vec![0u32; self.cols];
                v[self.free[t]] = 1;
                for (i, &pc) in self.pivots.iter().enumerate() {
                    v[pc] = self.field.neg(self.data[i * f + t]);
                }
                v
            })
            .collect()
    }
}

/// Plain Gauss-Jordan on a handful of rows; returns sorted pivot positions
/// and the canonical rows.
fn small_rcf(field: Fp, f: usize, mut rows: Vec<Vec<u32>>) -> (Vec<usize>, Vec<u32>) {
    let mut piv = Vec::new();
    let mut rank = 0;
    for c in 0..f {
        let Some(k) = (rank..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(rank, k);
        let inv = field.inv(rows[rank][c]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pr = rows[rank].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != rank && row[c] != 0 {
                let m = row[c];
                for (x, &y) in row.iter_mut().zip(&pr) {
                    *x = field.sub(*x, field.mul(m, y));
                }
            }
        }
        piv.push(c);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (piv, rows.concat())
}

/// Row-reduces a matrix presented as consecutive chunks of sparse rows,
/// merging each chunk before the next is produced. Returns the reducer so
/// the caller can read off the rank, pivots and nullspace.
pub fn chunked_reduce<I>(cols: usize, field: Fp, chunks: I) -> RowReducer
where
    I: IntoIterator<Item = Vec<Vec<(usize, i64)>>>,
{
    let mut red = RowReducer::new(cols, field);
    for chunk in chunks {
        for row in &chunk {
            red.push_sparse(row);
        }
        red.flush();
    }
    red
}
