use std::collections::HashMap;

use super::shape::TypeSet;
use super::term::TernaryMonomial;
use super::words::enumerate_canonical_words;

/// The canonical monomials of a multidegree, ordered by association type and
/// then lexicographically by word; this order numbers the columns of every
/// matrix indexed by nonassociative monomials.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    types: TypeSet,
    delta: Vec<u8>,
    words: Vec<Vec<Vec<u8>>>,
    offsets: Vec<usize>,
    lookup: HashMap<u64, u32>,
}

fn pack(type_index: usize, word: &[u8]) -> u64 {
    debug_assert!(word.len() <= 14 && word.iter().all(|&x| x < 16));
    word.iter().fold(type_index as u64, |k, &x| (k << 4) | x as u64)
}

impl MonomialBasis {
    pub fn new(types: TypeSet, delta: &[u8]) -> Self {
        assert!(types.degree() <= 14 && delta.len() <= 16, "packed lookup keys need degree <= 14 and <= 16 letters");
        let words: Vec<Vec<Vec<u8>>> = types.types().iter().map(|t| enumerate_canonical_words(t, delta)).collect();
        let mut offsets = vec![0];
        for w in &words {
            offsets.push(offsets.last().unwrap() + w.len());
        }
        let mut lookup = HashMap::with_capacity(*offsets.last().unwrap());
        for (t, ws) in words.iter().enumerate() {
            for (k, w) in ws.iter().enumerate() {
                lookup.insert(pack(t, w), (offsets[t] + k) as u32);
            }
        }
        MonomialBasis { types, delta: delta.to_vec(), words, offsets, lookup }
    }

    pub fn types(&self) -> &TypeSet {
        &self.types
    }

    pub fn delta(&self) -> &[u8] {
        &self.delta
    }

    pub fn len(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of canonical monomials of each type.
    pub fn type_counts(&self) -> Vec<usize> {
        self.words.iter().map(Vec::len).collect()
    }

    pub fn type_offset(&self, t: usize) -> usize {
        self.offsets[t]
    }

    pub fn words_of_type(&self, t: usize) -> &[Vec<u8>] {
        &self.words[t]
    }

    pub fn column_of(&self, m: &TernaryMonomial) -> Option<usize> {
        self.lookup.get(&pack(m.type_index, &m.word)).map(|&c| c as usize)
    }

    pub fn monomial(&self, column: usize) -> TernaryMonomial {
        let t = self.offsets.partition_point(|&o| o <= column) - 1;
        TernaryMonomial { type_index: t, word: self.words[t][column - self.offsets[t]].clone() }
    }
}
