//! Matrix units of `Q S_n` attached to the natural representation.
//!
//! For the `i`-th standard tableau, `D_ii = (d/n!) sum_{s in R_i} sum_{t in C_i} sign(t) s t`
//! with `R_i`/`C_i` its row/column groups, and `D_ij = D_ii s_ij^{-1}` where
//! `s_ij` carries the entries of `T_i` cell by cell onto those of `T_j`.
//! The element mapping to the elementary matrix `E_ij` is
//! `sum_k a_jk D_ik` with `(a_jk) = A_id^{-1}`.
//!
//! Full elements are only practical for small `n`; the `rep_of_*` functions
//! evaluate the same elements in factored form (one symmetriser per row,
//! one antisymmetriser per column) so they scale to `n = 11`.

use num_rational::Rational64;

use crate::error::Result;
use crate::modlinalg::{Fp, ModMatrix};

use super::clifton::{check_modulus, NaturalRep};
use super::group_algebra::{scale_matrix, GroupAlgebraElement};
use super::permutation::{next_permutation, Permutation};

/// All permutations of `n` points that permute `block` among itself and fix
/// everything else, paired with their signs.
fn block_permutations(n: usize, block: &[u8]) -> Vec<(Permutation, i32)> {
    let src: Vec<usize> = block.iter().map(|&x| x as usize - 1).collect();
    let mut img = src.clone();
    let mut out = Vec::new();
    loop {
        let mut images: Vec<u8> = (0..n as u8).collect();
        for (&a, &b) in src.iter().zip(&img) {
            images[a] = b as u8;
        }
        let pi = Permutation::from_images_unchecked(images);
        let s = pi.sign();
        out.push((pi, s));
        if !next_permutation(&mut img) {
            break;
        }
    }
    out
}

/// Row group of a tableau: products of permutations of each row.
fn row_group(rep: &NaturalRep, i: usize) -> Vec<Permutation> {
    product_group(rep.n(), rep.tableaux()[i].rows(), false).into_iter().map(|(p, _)| p).collect()
}

/// Column group with signs.
fn column_group(rep: &NaturalRep, i: usize) -> Vec<(Permutation, i32)> {
    product_group(rep.n(), &rep.tableaux()[i].columns(), true)
}

fn product_group(n: usize, blocks: &[Vec<u8>], signed: bool) -> Vec<(Permutation, i32)> {
    let mut acc = vec![(Permutation::identity(n), 1)];
    for b in blocks.iter().filter(|b| b.len() > 1) {
        let perms = block_permutations(n, b);
        acc = acc
            .iter()
            .flat_map(|(p, s)| perms.iter().map(move |(q, t)| (p * q, if signed { s * t } else { 1 })))
            .collect();
    }
    acc
}

fn normalizer(rep: &NaturalRep) -> Rational64 {
    let fact: i64 = (1..=rep.n() as i64).product();
    Rational64::new(rep.dim() as i64, fact)
}

/// `D_ii` with the factor `d/n!` held as the global scalar.
pub fn diagonal_element(rep: &NaturalRep, i: usize) -> GroupAlgebraElement {
    let n = rep.n();
    let mut e = GroupAlgebraElement::zero(n);
    let cols = column_group(rep, i);
    for s in row_group(rep, i) {
        for (t, sg) in &cols {
            e.add_term(&s * t, Rational64::from_integer(*sg as i64));
        }
    }
    e.set_scalar(normalizer(rep));
    e
}

/// `s_ij`: the permutation with `s_ij T_i = T_j`.
pub fn transport(rep: &NaturalRep, i: usize, j: usize) -> Permutation {
    rep.tableaux()[i].transport_to(&rep.tableaux()[j])
}

/// `D_ij = D_ii s_ij^{-1}`.
pub fn d_element(rep: &NaturalRep, i: usize, j: usize) -> GroupAlgebraElement {
    let s = GroupAlgebraElement::from_permutation(transport(rep, i, j).inverse(), Rational64::from_integer(1));
    diagonal_element(rep, i).mul(&s)
}

/// The element of `Q S_n` mapped to the elementary matrix with a 1 in
/// position `(i, j)` (0-based).
pub fn matrix_unit_element(rep: &NaturalRep, i: usize, j: usize) -> GroupAlgebraElement {
    let d = rep.dim();
    let ainv = rep.a_identity_inverse();
    let mut out = GroupAlgebraElement::zero(rep.n());
    for k in 0..d {
        let a = ainv[j * d + k];
        if a != 0 {
            out = out.add(&d_element(rep, i, k).scale(Rational64::from_integer(a)));
        }
    }
    out
}

/// Coefficients `a_jk` expressing `E_ij` through `D_ik`: the nonzero entries
/// of row `j` of `A_id^{-1}` as `(k, a_jk)`.
pub fn matrix_unit_in_d_terms(rep: &NaturalRep, j: usize) -> Vec<(usize, i64)> {
    let d = rep.dim();
    let ainv = rep.a_identity_inverse();
    (0..d).filter(|&k| ainv[j * d + k] != 0).map(|k| (k, ainv[j * d + k])).collect()
}

/// Representation of `sum_{g in block group} sign^e(g) g` for one row or column.
fn rep_of_block_sum(rep: &NaturalRep, block: &[u8], signed: bool, field: Fp) -> ModMatrix {
    let d = rep.dim();
    let mut acc = vec![0i64; d * d];
    for (p, s) in block_permutations(rep.n(), block) {
        rep.accumulate_clifton(&p, if signed { s as i64 } else { 1 }, &mut acc);
    }
    rep.finish_mod(&acc, field)
}

/// `rho(D_ii)` computed as `(d/n!) * prod_rows rho(P_row) * prod_cols rho(N_col)`.
pub fn rep_of_diagonal(rep: &NaturalRep, i: usize, field: Fp) -> Result<ModMatrix> {
    check_modulus(field, rep.n())?;
    let t = &rep.tableaux()[i];
    let mut m = ModMatrix::identity(rep.dim(), field);
    for row in t.rows().iter().filter(|r| r.len() > 1) {
        m = m.mul(&rep_of_block_sum(rep, row, false, field))?;
    }
    for col in t.columns().iter().filter(|c| c.len() > 1) {
        m = m.mul(&rep_of_block_sum(rep, col, true, field))?;
    }
    scale_matrix(&m, normalizer(rep), field)
}

/// `rho(D_ij)` in factored form.
pub fn rep_of_d(rep: &NaturalRep, i: usize, j: usize, field: Fp) -> Result<ModMatrix> {
    let dii = rep_of_diagonal(rep, i, field)?;
    dii.mul(&rep.natural_rep(&transport(rep, i, j).inverse(), field)?)
}
