use rayon::prelude::*;

use crate::ternary::{expand, MonomialBasis, WordIndexer};

/// Expansions of every canonical monomial of one multidegree, as signed
/// 1-based indices of associative words (`+k` or `-k` for word `k`).
pub struct ExpansionStore {
    words: WordIndexer,
    columns: usize,
    terms_per_column: usize,
    entries: Vec<i32>,
}

impl ExpansionStore {
    pub fn build(basis: &MonomialBasis) -> Self {
        let words = WordIndexer::new(basis.delta());
        let columns = basis.len();
        let terms_per_column = basis.types().get(0).expansion().len();
        let mut entries = vec![0i32; columns * terms_per_column];
        entries.par_chunks_mut(terms_per_column).enumerate().for_each(|(j, out)| {
            let m = basis.monomial(j);
            let terms = expand(basis.types().get(m.type_index), &m.word);
            for (slot, (w, s)) in out.iter_mut().zip(terms) {
                let k = words.index(&w) as i32 + 1;
                *slot = if s > 0 { k } else { -k };
            }
        });
        ExpansionStore { words, columns, terms_per_column, entries }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn terms_per_column(&self) -> usize {
        self.terms_per_column
    }

    /// Number of associative words of the multidegree.
    pub fn word_count(&self) -> usize {
        self.words.len() as usize
    }

    pub fn words(&self) -> &WordIndexer {
        &self.words
    }

    pub fn column(&self, j: usize) -> &[i32] {
        &self.entries[j * self.terms_per_column..(j + 1) * self.terms_per_column]
    }

    /// Collected expansion of one column as `(0-based word, coefficient)`.
    pub fn collected_column(&self, j: usize) -> Vec<(usize, i64)> {
        let mut v: Vec<(usize, i64)> =
            self.column(j).iter().map(|&e| ((e.unsigned_abs() - 1) as usize, e.signum() as i64)).collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
        for (w, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == w => last.1 += c,
                _ => out.push((w, c)),
            }
        }
        out.retain(|e| e.1 != 0);
        out
    }

    /// The store transposed: for every word, the columns whose expansions
    /// contain it with their collected coefficients.
    pub fn transpose(&self) -> WordRows {
        let nw = self.word_count();
        let mut offsets = vec![0usize; nw + 1];
        for j in 0..self.columns {
            for (w, _) in self.collected_column(j) {
                offsets[w + 1] += 1;
            }
        }
        for w in 0..nw {
            offsets[w + 1] += offsets[w];
        }
        let mut fill = offsets.clone();
        let mut cols = vec![0u32; offsets[nw]];
        let mut coefs = vec![0i8; offsets[nw]];
        for j in 0..self.columns {
            for (w, c) in self.collected_column(j) {
                cols[fill[w]] = j as u32;
                coefs[fill[w]] = c as i8;
                fill[w] += 1;
            }
        }
        WordRows { offsets, cols, coefs }
    }
}

/// Rows of the expansion matrix, one per associative word, in compressed
/// sparse form.
pub struct WordRows {
    offsets: Vec<usize>,
    cols: Vec<u32>,
    coefs: Vec<i8>,
}

impl WordRows {
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, w: usize) -> Vec<(usize, i64)> {
        let r = self.offsets[w]..self.offsets[w + 1];
        self.cols[r.clone()].iter().zip(&self.coefs[r]).map(|(&c, &v)| (c as usize, v as i64)).collect()
    }

    /// Nonzero rows for words `range`, as sparse rows.
    pub fn chunk(&self, range: std::ops::Range<usize>) -> Vec<Vec<(usize, i64)>> {
        range.map(|w| self.row(w)).filter(|r| !r.is_empty()).collect()
    }
}
