//! End-to-end acceptance checks, one line per criterion. All comparisons are
//! exact (tolerance 0). Criteria 7-9 are the heavy tier: together they take
//! roughly a quarter of an hour on one core and peak below 2 GB.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ternary_core::liftgen::{identity_i, liftings, multidegree_substitutions};
use ternary_core::mdpipeline::{read_identity, run_multidegree, write_identity, DELTA};
use ternary_core::mlpipeline::{
    emit_group_algebra_identity, extract_new_identity, rep_of_emitted, stacked_rank, table, Pipeline,
};
use ternary_core::modlinalg::Fp;
use ternary_core::permgroup::{matrix_unit_element, NaturalRep, Partition, Permutation};
use ternary_core::ternary::{expand_collected, MonomialBasis, Term, TypeSet, WordIndexer};
use ternary_core::DEFAULT_PRIME;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Result<(), String> {
    ensure(got == want, || format!("{what}: got {got:?}, expected {want:?}"))
}

fn field() -> Fp {
    Fp::new(DEFAULT_PRIME)
}

/// Table 3: (number, dimension, partition, sym, sym+lif, all, new).
const TABLE: [(usize, u64, &str, usize, usize, usize, usize); 25] = [
    (1, 1, "11", 8, 8, 8, 0),
    (2, 10, "10,1", 80, 80, 80, 0),
    (3, 44, "9,2", 352, 352, 352, 0),
    (4, 45, "9,1^2", 360, 360, 360, 0),
    (5, 110, "8,3", 880, 880, 880, 0),
    (6, 231, "8,2,1", 1848, 1848, 1848, 0),
    (7, 120, "8,1^3", 960, 960, 960, 0),
    (8, 165, "7,4", 1320, 1320, 1320, 0),
    (10, 385, "7,2^2", 3080, 3080, 3080, 0),
    (12, 210, "7,1^4", 1680, 1680, 1680, 0),
    (13, 132, "6,5", 1056, 1056, 1056, 0),
    (19, 252, "6,1^5", 2016, 2016, 2016, 0),
    (20, 330, "5^2,1", 2639, 2639, 2639, 0),
    (29, 210, "5,1^6", 1676, 1676, 1676, 0),
    (40, 120, "4,1^7", 944, 948, 948, 0),
    (45, 385, "3^2,1^5", 3005, 3020, 3020, 0),
    (46, 330, "3,2^4", 2639, 2639, 2639, 0),
    (49, 231, "3,2,1^6", 1764, 1795, 1795, 0),
    (50, 45, "3,1^8", 333, 349, 349, 0),
    (51, 132, "2^5,1", 1006, 1020, 1021, 1),
    (52, 165, "2^4,1^3", 1242, 1269, 1270, 1),
    (53, 110, "2^3,1^5", 807, 842, 842, 0),
    (54, 44, "2^2,1^7", 302, 333, 333, 0),
    (55, 10, "2,1^9", 57, 76, 76, 0),
    (56, 1, "1^11", 0, 7, 7, 0),
];

fn criterion_1() -> Result<String, String> {
    let types = TypeSet::new(11).map_err(|e| e.to_string())?;
    // Per-type multilinear counts from the alternating property of the bracket.
    let f = |num: u64, den: u64| 39_916_800 / den / num;
    let expected = [
        f(1, 6 * 16),
        f(2, 36 * 4),
        f(1, 36 * 4),
        f(6, 216 * 2),
        f(1, 36 * 4),
        f(2, 216),
        f(2, 36 * 4),
        f(2, 216 * 2),
    ];
    let got: Vec<u64> = types.types().iter().map(|t| t.count_multilinear()).collect();
    eq(got.as_slice(), &expected[..], "multilinear counts")?;
    eq(got.iter().sum::<u64>(), 1_401_400, "multilinear total")?;
    let basis = MonomialBasis::new(types, &DELTA);
    eq(basis.type_counts(), vec![6720, 1980, 4010, 180, 4010, 1190, 2000, 550], "multidegree counts")?;
    eq(basis.len(), 20640, "multidegree total")?;
    eq(WordIndexer::new(&DELTA).len(), 1_247_400, "associative words")?;
    Ok("1401400 multilinear, 20640 multidegree, 1247400 words".into())
}

fn criterion_2() -> Result<String, String> {
    let types = TypeSet::new(11).map_err(|e| e.to_string())?;
    let gens = types.symmetry_generators();
    eq(gens.len(), 43, "generators")?;
    let mut per_type = vec![0; 8];
    let id: Vec<u8> = (0..11).collect();
    for (t, pi) in &gens {
        per_type[*t] += 1;
        let mut sum = expand_collected(&Term::from_shape(types.get(*t).shape(), &id));
        for (w, c) in expand_collected(&Term::from_shape(types.get(*t).shape(), pi.images())) {
            *sum.entry(w).or_insert(0) += c;
        }
        ensure(sum.values().all(|&c| c == 0), || format!("generator of type {} does not expand to zero", t + 1))?;
    }
    eq(per_type, vec![6, 5, 6, 5, 6, 5, 4, 6], "distribution")?;
    Ok("43 generators, 6/5/6/5/6/5/4/6, all expand to zero".into())
}

fn criterion_3() -> Result<String, String> {
    let i = identity_i();
    eq(i.len(), 120, "terms of I")?;
    let types = TypeSet::new(7).map_err(|e| e.to_string())?;
    ensure(i.expansion(&types).values().all(|&c| c == 0), || "I does not expand to zero".into())?;
    eq(liftings(9).len(), 3, "degree-9 families")?;
    eq(liftings(11).len(), 8, "degree-11 families")?;
    let basis = MonomialBasis::new(TypeSet::new(11).map_err(|e| e.to_string())?, &DELTA);
    let rows = multidegree_substitutions(&basis);
    let mut per_family = vec![0; 8];
    rows.iter().for_each(|r| per_family[r.family] += 1);
    eq(per_family, vec![10, 50, 10, 170, 215, 170, 20, 30], "substitutions per family")?;
    eq(rows.len(), 675, "substitutions")?;
    Ok("I has 120 terms and vanishes; 3 and 8 families; 675 substitutions".into())
}

fn criterion_4() -> Result<String, String> {
    let all11 = Partition::all(11);
    for &(num, d, shape, ..) in &TABLE {
        let p = Partition::parse(shape).map_err(|e| e.to_string())?;
        eq(p.dimension(), d, shape)?;
        eq(&all11[num - 1], &p, &format!("partition number {num}"))?;
    }
    for n in 1..=8u64 {
        let s: u64 = Partition::all(n as usize).iter().map(|p| p.dimension().pow(2)).sum();
        eq(s, (1..=n).product::<u64>(), &format!("sum of squares for n = {n}"))?;
    }
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let perms = Permutation::all(6);
    for l in Partition::all(6) {
        let rep = NaturalRep::new(&l).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let a = &perms[rng.gen_range(0..perms.len())];
            let b = &perms[rng.gen_range(0..perms.len())];
            let lhs = rep.natural_rep(&(a * b), f).map_err(|e| e.to_string())?;
            let rhs = rep.natural_rep(a, f).and_then(|x| x.mul(&rep.natural_rep(b, f)?)).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, || format!("homomorphism fails for {l}"))?;
        }
    }
    for n in [4, 5] {
        for l in Partition::all(n) {
            let rep = NaturalRep::new(&l).map_err(|e| e.to_string())?;
            let d = rep.dim();
            let e: Vec<Vec<_>> = (0..d).map(|i| (0..d).map(|j| matrix_unit_element(&rep, i, j).normalized()).collect()).collect();
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        for m in 0..d {
                            let prod = e[i][j].mul(&e[k][m]).normalized();
                            let ok = if j == k { prod == e[i][m] } else { prod.is_empty() };
                            ensure(ok, || format!("matrix unit relation fails for {l}"))?;
                        }
                    }
                }
            }
        }
    }
    let rep = NaturalRep::new(&Partition::parse("2^5,1").unwrap()).map_err(|e| e.to_string())?;
    let d = rep.dim();
    let off = |k: usize| k / d != k % d;
    let a_nz = (0..d * d).filter(|&k| off(k) && rep.a_identity()[k] != 0).count();
    let inv: Vec<i64> = (0..d * d).filter(|&k| off(k)).map(|k| rep.a_identity_inverse()[k]).filter(|&x| x != 0).collect();
    eq(a_nz, 262, "off-diagonal nonzeros of A_id")?;
    eq(inv.len(), 424, "off-diagonal nonzeros of the inverse")?;
    ensure(inv.iter().all(|x| matches!(x, -2 | -1 | 1 | 2)), || "inverse entries outside {+-1, +-2}".into())?;
    Ok("25 dimensions, sum of squares n <= 8, homomorphism n = 6, units n = 4, 5, 262/424".into())
}

fn criterion_5() -> Result<String, String> {
    let f = field();
    for r in table(5, &Partition::all(5), f).map_err(|e| e.to_string())? {
        eq(r.new, 0, &format!("new for {}", r.partition))?;
        eq(r.row_space_match, Some(true), &format!("row spaces for {}", r.partition))?;
    }
    let pipe = Pipeline::new(7, f).map_err(|e| e.to_string())?;
    let i = identity_i();
    let mut total = 0;
    for l in Partition::all(7) {
        let run = pipe.run(&l).map_err(|e| e.to_string())?;
        total += run.report.new;
        let rep = pipe.natural_rep(&l).map_err(|e| e.to_string())?;
        let rows = pipe.polynomial_rows(&rep, &i);
        eq(stacked_rank(&run.allmat, &rows), run.report.all, &format!("I inside all identities for {l}"))?;
    }
    ensure(total > 0, || "no new identities in degree 7".into())?;
    Ok(format!("degree 5 new = 0 everywhere; degree 7 new total {total}, I in every all-space"))
}

fn ranks_for(pipe: &Pipeline, shape: &str) -> Result<(usize, usize, usize, usize), String> {
    let r = pipe.partition_report(&Partition::parse(shape).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    Ok((r.sym, r.symlif, r.all, r.new))
}

fn criterion_6() -> Result<String, String> {
    let pipe = Pipeline::new(11, field()).map_err(|e| e.to_string())?;
    let mut n = 0;
    for &(_, d, shape, s, sl, a, new) in TABLE.iter().filter(|r| r.1 <= 45) {
        eq(ranks_for(&pipe, shape)?, (s, sl, a, new), &format!("{shape} (d = {d})"))?;
        n += 1;
    }
    Ok(format!("{n} partitions with d <= 45 match"))
}

/// Table 4: (column, type, tableau index, coefficient).
const TABLE_4: [(usize, usize, usize, i64); 24] = [
    (251, 2, 119, 72),
    (253, 2, 121, -36),
    (361, 3, 97, 54),
    (378, 3, 114, 144),
    (388, 3, 124, 216),
    (393, 3, 129, -60),
    (396, 3, 132, 36),
    (528, 4, 132, 9),
    (622, 5, 94, 108),
    (623, 5, 95, -36),
    (626, 5, 98, 108),
    (645, 5, 117, 216),
    (653, 5, 125, -432),
    (655, 5, 127, 24),
    (658, 5, 130, 144),
    (660, 5, 132, 96),
    (778, 6, 118, -24),
    (781, 6, 121, 72),
    (792, 6, 132, -34),
    (890, 7, 98, -9),
    (916, 7, 124, 216),
    (918, 7, 126, 108),
    (924, 7, 132, 108),
    (1056, 8, 132, 18),
];

fn criterion_7() -> Result<String, String> {
    let f = field();
    let pipe = Pipeline::new(11, f).map_err(|e| e.to_string())?;
    let shape = Partition::parse("2^5,1").unwrap();
    let run = pipe.run(&shape).map_err(|e| e.to_string())?;
    let r = &run.report;
    eq((r.sym, r.symlif, r.all, r.new), (1006, 1020, 1021, 1), "ranks")?;
    let old: BTreeSet<usize> = run.oldmat.leading_columns().map_err(|e| e.to_string())?.into_iter().collect();
    let all: BTreeSet<usize> = run.allmat.leading_columns().map_err(|e| e.to_string())?.into_iter().collect();
    eq(all.difference(&old).map(|c| c + 1).collect::<Vec<_>>(), vec![251], "leading-set difference")?;
    let rep = pipe.natural_rep(&shape).map_err(|e| e.to_string())?;
    let id = extract_new_identity(&run, &rep).map_err(|e| e.to_string())?;
    eq(id.row, 246, "row")?;
    let got: Vec<(usize, usize, usize, i64)> =
        id.entries.iter().map(|e| (e.column, e.type_index, e.tableau_index, e.coefficient)).collect();
    eq(got.as_slice(), &TABLE_4[..], "Table 4")?;
    let coeffs: BTreeSet<i64> = TABLE_4.iter().map(|e| e.3).collect();
    eq(coeffs.len(), 16, "distinct coefficients")?;
    eq(id.distinct_coefficients(), coeffs.into_iter().collect::<Vec<_>>(), "coefficient set")?;
    let tableau = |j: usize| id.entries.iter().find(|e| e.tableau_index == j).map(|e| e.tableau.clone());
    eq(tableau(119), Some(vec![1, 5, 2, 6, 3, 8, 4, 9, 7, 11, 10]), "tableau 119")?;
    eq(tableau(121), Some(vec![1, 5, 2, 6, 3, 9, 4, 10, 7, 11, 8]), "tableau 121")?;
    eq(tableau(132), Some(vec![1, 7, 2, 8, 3, 9, 4, 10, 5, 11, 6]), "tableau 132")?;
    let terms = emit_group_algebra_identity(&id, &rep);
    eq(terms.len(), 24, "summands")?;
    for t in &terms {
        let want = if (t.type_index, t.unit) == (6, 118) { vec![(118, 1), (126, -1), (131, 1)] } else { vec![(t.unit, 1)] };
        eq(&t.d_terms, &want, &format!("expansion of E(1,{}) in type {}", t.unit, t.type_index))?;
    }
    let m = rep_of_emitted(&terms, &rep, 8, f).map_err(|e| e.to_string())?;
    eq(stacked_rank(&run.allmat, &m), 1021, "emitted identity inside all identities")?;
    eq(stacked_rank(&run.oldmat, &m), 1021, "emitted identity outside lifted identities")?;
    Ok("1006/1020/1021/1, difference {251}, row 246, Table 4 and 24 summands reproduced".into())
}

fn criterion_8() -> Result<String, String> {
    let pipe = Pipeline::new(11, field()).map_err(|e| e.to_string())?;
    eq(ranks_for(&pipe, "2^4,1^3")?, (1242, 1269, 1270, 1), "ranks")?;
    Ok("1242/1269/1270/1".into())
}

fn criterion_9() -> Result<String, String> {
    let f = field();
    let pipe = Pipeline::new(11, f).map_err(|e| e.to_string())?;
    let out = run_multidegree(&pipe).map_err(|e| e.to_string())?;
    let r = &out.report;
    eq((r.rank, r.nullity), (19964, 676), "rank and nullity")?;
    eq(r.consequence_rank, 675, "consequence rank")?;
    eq((r.kernel.nonzero, r.kernel.distinct, r.kernel.square_length), ((58, 15901), (2, 509), (60, 79_134_357)), "kernel statistics")?;
    ensure(r.kernel_expands_to_zero, || "a kernel vector does not expand to zero".into())?;
    eq(r.winner.nonzero, 10292, "winner terms")?;
    let mut want: Vec<i64> = (1..=11).flat_map(|x| [x, -x]).chain([-12, 13]).collect();
    want.sort_unstable();
    eq(&r.coefficients, &want, "winner coefficients")?;
    eq(&r.types, &vec![1, 2, 3, 5, 6], "winner types")?;
    ensure(r.expansion_zero, || "winner does not expand to zero".into())?;
    eq(r.linearized_terms, 329_344, "linearized terms")?;
    ensure(r.identification_ok, || "identification does not invert linearization".into())?;
    eq((r.final_check.rank_without, r.final_check.rank), (1020, 1021), "stacked ranks")?;
    ensure(r.final_check.matches_allmat, || "stacked canonical form differs from allmat".into())?;
    eq((r.sorted_position, r.basis_index), (585, 241), "winner positions")?;
    let mut buf = Vec::new();
    write_identity(&mut buf, &out.basis, &out.identity, f.p()).map_err(|e| e.to_string())?;
    let back = read_identity(buf.as_slice(), &out.basis).map_err(|e| e.to_string())?;
    ensure(back == out.identity, || "identity file does not read back".into())?;
    let by_type: BTreeMap<usize, usize> =
        out.identity.iter().enumerate().filter(|(_, &c)| c != 0).fold(BTreeMap::new(), |mut m, (j, _)| {
            *m.entry(out.basis.monomial(j).type_index + 1).or_insert(0) += 1;
            m
        });
    Ok(format!(
        "19964/676/675, stats 58..15901 2..509 60..79134357, winner 585/241 with 10292 terms {by_type:?}, 329344 linear terms, rank 1021 = allmat"
    ))
}

fn main() -> ExitCode {
    let checks: [(usize, &str, Check); 9] = [
        (1, "monomial counts", criterion_1),
        (2, "symmetry generators", criterion_2),
        (3, "identity I and liftings", criterion_3),
        (4, "representations", criterion_4),
        (5, "degree 5 and 7 pipelines", criterion_5),
        (6, "ranks for d <= 45", criterion_6),
        (7, "partition 2^5 1 and its identity", criterion_7),
        (8, "partition 2^4 1^3", criterion_8),
        (9, "multidegree a^2 b^2 c^2 d^2 e^2 f", criterion_9),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, check) in checks {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {n} ({name}): PASS [exact, tolerance 0, {secs:.1}s] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} ({name}): FAIL [exact, tolerance 0, {secs:.1}s] {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
