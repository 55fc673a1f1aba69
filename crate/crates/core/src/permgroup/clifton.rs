//! Clifton's matrices and the natural representation.
//!
//! For standard tableaux `T_1 < ... < T_d` (row-flattened lexicographic
//! order) and a permutation `pi`, entry `(i, j)` of `A_pi` is the coefficient
//! of the tabloid `{pi T_j}` in the polytabloid of `T_i`: zero when two
//! numbers share a row of `pi T_j` and a column of `T_i`, otherwise the sign
//! of the unique column permutation of `T_i` that moves every entry to its
//! row in `pi T_j`. The natural representation is `R_pi = A_id^{-1} A_pi`.

use crate::error::{Error, Result};
use crate::modlinalg::{Fp, ModMatrix};

use super::partition::Partition;
use super::permutation::Permutation;
use super::tableau::{standard_tableaux, StandardTableau};

/// Precomputed data for one irreducible representation of `S_n`.
#[derive(Clone, Debug)]
pub struct NaturalRep {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    /// Entries of every tableau grouped by column (0-based entries), flattened.
    columns: Vec<u8>,
    /// Column boundaries inside one tableau's slice of `columns`.
    col_bounds: Vec<usize>,
    /// `row_of[j * n + x]` = row of 0-based entry `x` in `T_j`.
    row_of: Vec<u8>,
    /// `A_id`, row-major.
    a_identity: Vec<i8>,
    /// `A_id^{-1}`, exact, row-major.
    a_identity_inv: Vec<i64>,
}

impl NaturalRep {
    pub fn new(shape: &Partition) -> Result<Self> {
        let tableaux = standard_tableaux(shape);
        let n = shape.n();
        let mut columns = Vec::with_capacity(tableaux.len() * n);
        let mut col_bounds = vec![0];
        for &len in &shape.conjugate() {
            col_bounds.push(col_bounds.last().unwrap() + len);
        }
        let mut row_of = Vec::with_capacity(tableaux.len() * n);
        for t in &tableaux {
            for col in t.columns() {
                columns.extend(col.iter().map(|&x| x - 1));
            }
            row_of.extend(t.row_of());
        }
        let mut rep = NaturalRep {
            shape: shape.clone(),
            tableaux,
            columns,
            col_bounds,
            row_of,
            a_identity: Vec::new(),
            a_identity_inv: Vec::new(),
        };
        let id = Permutation::identity(n);
        rep.a_identity = rep.clifton_matrix(&id);
        rep.a_identity_inv = invert_unitriangular(&rep.a_identity, rep.dim())?;
        Ok(rep)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    /// `A_id` as a row-major `d x d` matrix.
    pub fn a_identity(&self) -> &[i8] {
        &self.a_identity
    }

    /// `A_id^{-1}` as a row-major `d x d` integer matrix.
    pub fn a_identity_inverse(&self) -> &[i64] {
        &self.a_identity_inv
    }

    /// Clifton's matrix `A_pi`, row-major with entries in `{-1, 0, 1}`.
    pub fn clifton_matrix(&self, pi: &Permutation) -> Vec<i8> {
        let d = self.dim();
        let mut out = vec![0i8; d * d];
        self.for_each_clifton_entry(pi, |i, j, s| out[i * d + j] = s as i8);
        out
    }

    /// Adds `coeff * A_pi` into the row-major `d x d` accumulator.
    pub fn accumulate_clifton(&self, pi: &Permutation, coeff: i64, acc: &mut [i64]) {
        let d = self.dim();
        self.for_each_clifton_entry(pi, |i, j, s| acc[i * d + j] += coeff * s as i64);
    }

    fn for_each_clifton_entry(&self, pi: &Permutation, mut f: impl FnMut(usize, usize, i32)) {
        let n = self.n();
        let d = self.dim();
        assert_eq!(pi.degree(), n, "permutation degree must match the partition");
        let mut target = vec![0u8; n];
        let ncols = self.col_bounds.len() - 1;
        for j in 0..d {
            // target[x] = row of x in pi T_j = row of pi^{-1}(x) in T_j
            let rows_j = &self.row_of[j * n..(j + 1) * n];
            for (y, &r) in rows_j.iter().enumerate() {
                target[pi.apply(y)] = r;
            }
            for i in 0..d {
                let cols = &self.columns[i * n..(i + 1) * n];
                let mut sign = 1i32;
                let mut ok = true;
                for c in 0..ncols {
                    let col = &cols[self.col_bounds[c]..self.col_bounds[c + 1]];
                    let mut seen = 0u32;
                    let mut inv = 0u32;
                    for &x in col {
                        let t = target[x as usize] as u32;
                        let bit = 1u32 << t;
                        if seen & bit != 0 {
                            ok = false;
                            break;
                        }
                        // entries placed earlier with a larger target row
                        inv += (seen >> t).count_ones();
                        seen |= bit;
                    }
                    if !ok {
                        break;
                    }
                    if inv & 1 == 1 {
                        sign = -sign;
                    }
                }
                if ok {
                    f(i, j, sign);
                }
            }
        }
    }

    /// Converts an accumulated integer combination `sum c_pi A_pi` into the
    /// representing matrix `A_id^{-1} (sum c_pi A_pi)` over `Z/p`.
    pub fn finish_mod(&self, acc: &[i64], field: Fp) -> ModMatrix {
        let d = self.dim();
        let accm: Vec<u32> = acc.iter().map(|&v| field.from_i64(v)).collect();
        let inv: Vec<u32> = self.a_identity_inv.iter().map(|&v| field.from_i64(v)).collect();
        let mut out = ModMatrix::zeros(d, d, field);
        for i in 0..d {
            let mut row = vec![0u64; d];
            for k in 0..d {
                let a = inv[i * d + k] as u64;
                if a == 0 {
                    continue;
                }
                let src = &accm[k * d..(k + 1) * d];
                for (r, &s) in row.iter_mut().zip(src) {
                    *r = (*r + a * s as u64) % field.p() as u64;
                }
            }
            for (j, v) in row.into_iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    /// The natural representation matrix `R_pi` over `Z/p`.
    pub fn natural_rep(&self, pi: &Permutation, field: Fp) -> Result<ModMatrix> {
        check_modulus(field, self.n())?;
        let d = self.dim();
        let mut acc = vec![0i64; d * d];
        self.accumulate_clifton(pi, 1, &mut acc);
        Ok(self.finish_mod(&acc, field))
    }

    /// `sum c_pi R_pi` for an integer combination of permutations.
    pub fn rep_of_integer_combination<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a Permutation, i64)>,
        field: Fp,
    ) -> Result<ModMatrix> {
        check_modulus(field, self.n())?;
        let d = self.dim();
        let mut acc = vec![0i64; d * d];
        for (pi, c) in terms {
            self.accumulate_clifton(pi, c, &mut acc);
        }
        Ok(self.finish_mod(&acc, field))
    }
}

pub(crate) fn check_modulus(field: Fp, n: usize) -> Result<()> {
    if (field.p() as usize) <= n {
        return Err(Error::BadModulus { p: field.p(), n });
    }
    Ok(())
}

/// Exact inverse of an upper unitriangular integer matrix.
fn invert_unitriangular(a: &[i8], d: usize) -> Result<Vec<i64>> {
    for i in 0..d {
        if a[i * d + i] != 1 {
            return Err(Error::Invariant(format!("A_id has diagonal entry {} at {i}", a[i * d + i])));
        }
        for j in 0..i {
            if a[i * d + j] != 0 {
                return Err(Error::Invariant(format!("A_id is not upper triangular at ({i},{j})")));
            }
        }
    }
    // Solve A X = I column by column, bottom-up.
    let mut inv = vec![0i64; d * d];
    for col in 0..d {
        for i in (0..=col).rev() {
            let mut s: i64 = if i == col { 1 } else { 0 };
            for k in i + 1..=col {
                let aik = a[i * d + k] as i64;
                if aik != 0 {
                    s = s
                        .checked_sub(aik * inv[k * d + col])
                        .ok_or_else(|| Error::Invariant("overflow inverting A_id".into()))?;
                }
            }
            inv[i * d + col] = s;
        }
    }
    Ok(inv)
}
