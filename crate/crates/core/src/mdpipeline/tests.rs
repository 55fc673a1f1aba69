use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::modlinalg::Fp;
use crate::ternary::{expand_collected, MonomialBasis, TernaryMonomial, TypeSet, WordIndexer};
use crate::DEFAULT_PRIME;

fn small_basis() -> MonomialBasis {
    MonomialBasis::new(TypeSet::new(7).unwrap(), &[2, 2, 1, 1, 1])
}

#[test]
fn store_columns_match_direct_expansion() {
    let basis = MonomialBasis::new(TypeSet::new(9).unwrap(), &[2, 2, 2, 2, 1]);
    let store = ExpansionStore::build(&basis);
    let words = WordIndexer::new(basis.delta());
    assert_eq!(store.terms_per_column(), 6usize.pow(4));
    let mut cols: Vec<usize> = (0..basis.len()).collect();
    cols.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    for &j in cols.iter().take(50) {
        let oracle: Vec<(usize, i64)> = expand_collected(&basis.monomial(j).to_term(basis.types()))
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(w, c)| (words.index(&w) as usize, c))
            .collect::<std::collections::BTreeMap<_, _>>()
            .into_iter()
            .collect();
        assert_eq!(store.collected_column(j), oracle, "column {j}");
        assert!(store.column(j).iter().all(|&e| e != 0 && e.unsigned_abs() as usize <= store.word_count()));
    }
}

#[test]
fn small_kernel_vectors_vanish_exactly() {
    // Multilinear degree 7 contains the degree-7 identity, so the kernel is nonzero.
    let basis = MonomialBasis::new(TypeSet::new(7).unwrap(), &[1; 7]);
    let store = ExpansionStore::build(&basis);
    let rows = store.transpose();
    let field = Fp::new(DEFAULT_PRIME);
    let k = kernel_of_expansion(&rows, basis.len(), field).unwrap();
    assert_eq!(k.rank + k.len(), basis.len());
    assert!(!k.is_empty());
    for (v, z) in k.modular.iter().zip(&k.integer) {
        assert!(annihilates(&rows, v, field));
        assert!(verify_expansion_zero(&store, z));
    }
    // The free column of each vector carries its only nonzero free entry.
    for (t, v) in k.modular.iter().enumerate() {
        for (s, &c) in k.free_columns.iter().enumerate() {
            assert_eq!(v[c], (s == t) as u32);
        }
    }
}

#[test]
fn a_single_monomial_does_not_vanish() {
    let basis = small_basis();
    let store = ExpansionStore::build(&basis);
    for j in [0, basis.len() / 2, basis.len() - 1] {
        let mut v = vec![0i64; basis.len()];
        v[j] = 1;
        assert!(!verify_expansion_zero(&store, &v));
    }
}

#[test]
fn linearization_round_trip() {
    let basis = small_basis();
    let mut v = vec![0i64; basis.len()];
    v[3] = 5;
    v[17] = -2;
    v[basis.len() - 1] = 1;
    let lin = linearize(&basis, &v);
    assert_eq!(lin.len(), 3 * 4);
    for (_, m) in &lin {
        let mut w = m.word.clone();
        w.sort_unstable();
        assert_eq!(w, (0..7).collect::<Vec<u8>>());
    }
    let back = identify(&basis, &lin).unwrap();
    assert_eq!(back, v.iter().map(|x| 4 * x).collect::<Vec<_>>());
}

#[test]
fn length_order_breaks_ties_by_position() {
    let stats: Vec<VectorStats> =
        [vec![1, 1, 0], vec![2, 0, 0], vec![0, 1, -1], vec![1, 0, 0]].iter().enumerate().map(|(i, v)| vector_stats(i + 1, v)).collect();
    assert_eq!(length_order(&stats), vec![3, 0, 2, 1]);
    assert_eq!(stats[2].distinct, 2);
    let s = summarize(&stats);
    assert_eq!((s.nonzero, s.square_length), ((1, 2), (1, 4)));
}

#[test]
fn identity_file_round_trip_and_tamper_detection() {
    let basis = small_basis();
    let mut v = vec![0i64; basis.len()];
    v[1] = 13;
    v[39] = -12;
    let mut buf = Vec::new();
    write_identity(&mut buf, &basis, &v, DEFAULT_PRIME).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("# multidegree 2,2,1,1,1\n"));
    assert_eq!(read_identity(text.as_bytes(), &basis).unwrap(), v);
    let tampered = text.replace("13\t", "14\t");
    assert!(read_identity(tampered.as_bytes(), &basis).is_err());
    let m = basis.monomial(1);
    assert_eq!(basis.column_of(&TernaryMonomial { type_index: m.type_index, word: m.word }), Some(1));
}
