use std::collections::BTreeMap;

use crate::permgroup::next_permutation;
use crate::ternary::{canonical_monomial, MonomialBasis, Term};

use super::expr::{liftings_degree11, LiftExpr};

/// One consequence with repeated variables: the lifting family, the letter
/// substituted for each of its variables, and the collected row over the
/// canonical monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionRow {
    pub family: usize,
    pub letters: Vec<u8>,
    pub entries: Vec<(usize, i64)>,
}

/// Pairs of variable lists whose letter words must increase strictly: the
/// arguments of a bracket, and the arguments `b..g` of `I`, grouped by
/// pattern key. These quotient out the alternation of the bracket and of
/// `I` in `b..g`.
fn order_conditions(e: &LiftExpr, out: &mut Vec<(Vec<u8>, Vec<u8>)>) {
    let push_groups = |args: &[LiftExpr], out: &mut Vec<(Vec<u8>, Vec<u8>)>| {
        let keys: Vec<String> = args.iter().map(LiftExpr::pattern_key).collect();
        for i in 0..args.len() {
            if let Some(j) = (i + 1..args.len()).find(|&j| keys[j] == keys[i]) {
                out.push((args[i].variables(), args[j].variables()));
            }
        }
    };
    match e {
        LiftExpr::Var(_) => {}
        LiftExpr::Bracket(ch) => {
            ch.iter().for_each(|c| order_conditions(c, out));
            push_groups(&ch[..], out);
        }
        LiftExpr::I(args) => {
            args.iter().for_each(|c| order_conditions(c, out));
            push_groups(&args[1..], out);
        }
    }
}

/// Letter assignments (letter for variable `x` at position `x`) with
/// multidegree `delta` satisfying the strict order conditions, in
/// lexicographic order.
pub fn family_substitutions(family: &LiftExpr, delta: &[u8]) -> Vec<Vec<u8>> {
    let mut conds = Vec::new();
    order_conditions(family, &mut conds);
    let mut letters: Vec<u8> = delta.iter().enumerate().flat_map(|(x, &k)| std::iter::repeat_n(x as u8, k as usize)).collect();
    assert_eq!(letters.len(), family.degree());
    let word = |vs: &[u8], l: &[u8]| -> Vec<u8> { vs.iter().map(|&v| l[v as usize]).collect() };
    let mut out = Vec::new();
    loop {
        if conds.iter().all(|(p, q)| word(p, &letters) < word(q, &letters)) {
            out.push(letters.clone());
        }
        if !next_permutation(&mut letters) {
            break;
        }
    }
    out
}

/// Collected row of a family under a letter assignment.
fn substituted_row(template: &[(i64, Term)], letters: &[u8], basis: &MonomialBasis) -> Vec<(usize, i64)> {
    let args: Vec<Term> = letters.iter().map(|&l| Term::var(l)).collect();
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (c, t) in template {
        if let Some((s, m)) = canonical_monomial(basis.types(), &t.substitute(&args)) {
            let col = basis.column_of(&m).expect("canonical monomial lies in the basis");
            *acc.entry(col).or_insert(0) += c * s as i64;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// All consequences of the degree-11 liftings in the multidegree of
/// `basis`, ordered by family and then by letter assignment.
pub fn multidegree_substitutions(basis: &MonomialBasis) -> Vec<SubstitutionRow> {
    let mut out = Vec::new();
    for (family, expr) in liftings_degree11().iter().enumerate() {
        let template = expr.evaluate().expect("degree 11").to_terms(basis.types());
        for letters in family_substitutions(expr, basis.delta()) {
            let entries = substituted_row(&template, &letters, basis);
            out.push(SubstitutionRow { family, letters, entries });
        }
    }
    out
}
