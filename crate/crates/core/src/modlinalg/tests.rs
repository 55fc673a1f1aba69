use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

/// Textbook Gauss-Jordan with immediate reduction.
fn naive_rcf(m: &ModMatrix) -> ModMatrix {
    let f = m.field();
    let mut rows: Vec<Vec<u32>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(k) = (rank..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(rank, k);
        let inv = f.inv(rows[rank][c]);
        rows[rank].iter_mut().for_each(|x| *x = f.mul(*x, inv));
        let pr = rows[rank].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != rank {
                let a = row[c];
                row.iter_mut().zip(&pr).for_each(|(x, &y)| *x = f.sub(*x, f.mul(a, y)));
            }
        }
        rank += 1;
    }
    let data = rows.concat();
    ModMatrix::from_data(m.rows(), m.cols(), f, data).unwrap()
}

/// Rank over the rationals by exact elimination.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(k) = (rank..a.len()).find(|&k| !a[k][c].is_zero()) else { continue };
        a.swap(rank, k);
        let pr = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if !row[c].is_zero() {
                let m = &row[c] / &pr[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &m * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_low_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize, field: Fp) -> ModMatrix {
    let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let b: Vec<Vec<i64>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
    let a = ModMatrix::from_i64_rows(&a, field).unwrap();
    let b = ModMatrix::from_i64_rows(&b, field).unwrap();
    a.mul(&b).unwrap()
}

#[test]
fn reducer_matches_textbook_elimination() {
    let field = Fp::new(crate::DEFAULT_PRIME);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for &(r, c, k) in &[(5, 7, 3), (40, 30, 20), (300, 200, 150), (600, 700, 520), (10, 10, 10)] {
        let m = random_low_rank(&mut rng, r, c, k, field);
        let mut fast = m.clone();
        let rank = fast.rcf();
        assert_eq!(fast, naive_rcf(&m));
        assert!(fast.is_rcf());
        assert_eq!(rank, k.min(r).min(c));
    }
}

#[test]
fn small_batches_agree() {
    let field = Fp::new(1_048_573);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = random_low_rank(&mut rng, 120, 90, 70, field);
    let expect = m.rcf_nonzero();
    for batch in [1, 3, 5, 17, 64] {
        let mut red = RowReducer::with_batch(90, field, batch);
        for i in 0..m.rows() {
            red.push_dense(m.row(i));
        }
        assert_eq!(red.to_rcf(), expect, "batch {batch}");
    }
}

#[test]
fn modular_rank_matches_rational_rank_for_small_entries() {
    let field = Fp::new(101);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..50 {
        let sparse = k % 2 == 0;
        let rows: Vec<Vec<i64>> = (0..20)
            .map(|_| (0..30).map(|_| if sparse && rng.gen_bool(0.8) { 0 } else { rng.gen_range(-2..=2) }).collect())
            .collect();
        let m = ModMatrix::from_i64_rows(&rows, field).unwrap();
        assert_eq!(m.rank(), rational_rank(&rows));
    }
}

#[test]
fn nullspace_vectors_are_annihilated() {
    let field = Fp::new(crate::DEFAULT_PRIME);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_low_rank(&mut rng, 50, 80, 33, field);
    let basis = m.nullspace_canonical_basis();
    assert_eq!(basis.len(), 80 - 33);
    let mut piv = m.clone();
    piv.rcf();
    let lead = piv.leading_columns().unwrap();
    let free: Vec<usize> = (0..80).filter(|c| !lead.contains(c)).collect();
    for (v, &fc) in basis.iter().zip(&free) {
        assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        for &g in &free {
            assert_eq!(v[g], u32::from(g == fc));
        }
    }
}

#[test]
fn chunked_matches_whole() {
    let field = Fp::new(crate::DEFAULT_PRIME);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = random_low_rank(&mut rng, 200, 150, 110, field);
    let sparse: Vec<Vec<(usize, i64)>> = (0..200)
        .map(|i| m.row(i).iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v as i64)).collect())
        .collect();
    let chunks: Vec<_> = sparse.chunks(37).map(|c| c.to_vec()).collect();
    let mut red = chunked_reduce(150, field, chunks);
    assert_eq!(red.to_rcf(), m.rcf_nonzero());
}

#[test]
fn leading_columns_rejects_non_canonical() {
    let field = Fp::new(101);
    let m = ModMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]], field).unwrap();
    assert!(m.leading_columns().is_err());
}

#[test]
fn reconstruction() {
    let field = Fp::new(crate::DEFAULT_PRIME);
    let x = field.mul(field.from_i64(-7), field.inv(12));
    assert_eq!(rational_reconstruct(x, field), Some((-7, 12)));
    let v: Vec<u32> = [3i64, -9, 0, 12].iter().map(|&a| field.mul(field.from_i64(a), field.inv(5))).collect();
    assert_eq!(integer_reconstruct(&v, field).unwrap(), vec![1, -3, 0, 4]);
    assert_eq!(symmetric_lift(&[field.from_i64(-4), 5], field), vec![-4, 5]);
    assert_eq!(symmetric_lift(&[2, 4, 6], field), vec![1, 2, 3]);
    assert_eq!(symmetric_lift(&[0, 0], field), vec![0, 0]);
    let small = Fp::new(101);
    assert_eq!(symmetric_lift(&[100], small), vec![-1]);
}

#[test]
fn dump_round_trip() {
    let field = Fp::new(101);
    let m = ModMatrix::from_i64_rows(&[vec![1, 2, 3], vec![-1, 0, 100]], field).unwrap();
    let mut buf = Vec::new();
    m.write_dump(&mut buf).unwrap();
    assert!(buf.starts_with(b"2 3 101\n"));
    assert_eq!(ModMatrix::read_dump(&buf[..]).unwrap(), m);
    assert!(ModMatrix::read_dump(&b"2 3 101\n1 2\n"[..]).is_err());
}

#[test]
fn identity_is_neutral() {
    let field = Fp::new(101);
    let m = ModMatrix::from_i64_rows(&[vec![1, 2, 3], vec![-1, 0, 100]], field).unwrap();
    assert_eq!(ModMatrix::identity(2, field).mul(&m).unwrap(), m);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rcf_idempotent_and_row_order_invariant(
        entries in proptest::collection::vec(-4i64..=4, 12 * 9),
        shuffle in proptest::sample::subsequence((0..12usize).collect::<Vec<_>>(), 12),
        seed in any::<u64>(),
    ) {
        let field = Fp::new(1_048_573);
        let rows: Vec<Vec<i64>> = entries.chunks(9).map(|c| c.to_vec()).collect();
        let m = ModMatrix::from_i64_rows(&rows, field).unwrap();
        let mut once = m.clone();
        once.rcf();
        let mut twice = once.clone();
        twice.rcf();
        prop_assert_eq!(&once, &twice);
        let mut order = shuffle;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let permuted: Vec<Vec<i64>> = order.iter().map(|&i| rows[i].clone()).collect();
        let mut pm = ModMatrix::from_i64_rows(&permuted, field).unwrap();
        pm.rcf();
        prop_assert!(row_space_equal(&once, &pm));
        prop_assert_eq!(once.rank(), rational_rank(&rows));
    }
}
