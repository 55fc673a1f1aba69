use crate::error::{Error, Result};

use super::shape::AssocType;

/// Lexicographic ranking of the words with a fixed multidegree.
///
/// Letters are `0..delta.len()`; letter `i` occurs `delta[i]` times. Ranking
/// walks a table indexed by the vector of remaining letter counts.
#[derive(Clone, Debug)]
pub struct WordIndexer {
    delta: Vec<u8>,
    radix: Vec<usize>,
    /// Number of words for each state of remaining counts.
    count: Vec<u64>,
    /// `offset[state * m + x]`: number of words from `state` whose first
    /// letter is smaller than `x`.
    offset: Vec<u64>,
    full: usize,
}

impl WordIndexer {
    pub fn new(delta: &[u8]) -> Self {
        let m = delta.len();
        let mut radix = vec![1usize; m];
        for i in 1..m {
            radix[i] = radix[i - 1] * (delta[i - 1] as usize + 1);
        }
        let states = radix.last().map_or(1, |r| r * (*delta.last().unwrap() as usize + 1));
        let digits = |s: usize| -> Vec<usize> { (0..m).map(|i| (s / radix[i]) % (delta[i] as usize + 1)).collect() };
        // States in increasing total count order: a state's successors have
        // smaller index, so plain increasing order works.
        let mut count = vec![0u64; states];
        let mut offset = vec![0u64; states * m];
        for s in 0..states {
            let d = digits(s);
            if d.iter().all(|&x| x == 0) {
                count[s] = 1;
                continue;
            }
            let mut acc = 0u64;
            for x in 0..m {
                offset[s * m + x] = acc;
                if d[x] > 0 {
                    acc += count[s - radix[x]];
                }
            }
            count[s] = acc;
        }
        let full = (0..m).map(|i| delta[i] as usize * radix[i]).sum();
        WordIndexer { delta: delta.to_vec(), radix, count, offset, full }
    }

    pub fn delta(&self) -> &[u8] {
        &self.delta
    }

    pub fn degree(&self) -> usize {
        self.delta.iter().map(|&x| x as usize).sum()
    }

    /// Number of words of this multidegree.
    pub fn len(&self) -> u64 {
        self.count[self.full]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 0-based index without validation; the word must have the right multidegree.
    #[inline]
    pub fn index(&self, word: &[u8]) -> u64 {
        let m = self.delta.len();
        let mut s = self.full;
        let mut r = 0;
        for &x in word {
            r += self.offset[s * m + x as usize];
            s -= self.radix[x as usize];
        }
        r
    }

    fn check(&self, word: &[u8]) -> Result<()> {
        let mut c = vec![0u8; self.delta.len()];
        for &x in word {
            match c.get_mut(x as usize) {
                Some(v) => *v += 1,
                None => return Err(Error::WrongMultidegree(self.delta.clone())),
            }
        }
        if c != self.delta {
            return Err(Error::WrongMultidegree(self.delta.clone()));
        }
        Ok(())
    }

    /// 1-based lexicographic rank.
    pub fn rank_word(&self, word: &[u8]) -> Result<u64> {
        self.check(word)?;
        Ok(self.index(word) + 1)
    }

    /// Inverse of [`rank_word`](Self::rank_word).
    pub fn unrank_word(&self, rank: u64) -> Result<Vec<u8>> {
        if rank == 0 || rank > self.len() {
            return Err(Error::Parse(format!("rank {rank} out of range 1..={}", self.len())));
        }
        let m = self.delta.len();
        let mut r = rank - 1;
        let mut s = self.full;
        let mut out = Vec::with_capacity(self.degree());
        for _ in 0..self.degree() {
            let x = (0..m)
                .rev()
                .find(|&x| !(s / self.radix[x]).is_multiple_of(self.delta[x] as usize + 1) && self.offset[s * m + x] <= r)
                .expect("rank within range");
            r -= self.offset[s * m + x];
            s -= self.radix[x];
            out.push(x as u8);
        }
        Ok(out)
    }
}

/// Canonical words of one association type with multidegree `delta`, in
/// lexicographic order: the words satisfying every strict constraint of the
/// type. Depth-first search; each constraint is checked once its second
/// range is filled.
pub fn enumerate_canonical_words(ty: &AssocType, delta: &[u8]) -> Vec<Vec<u8>> {
    let n = ty.degree();
    assert_eq!(delta.iter().map(|&x| x as usize).sum::<usize>(), n, "multidegree must match the type degree");
    let mut by_end: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, (_, s)) in ty.constraints().iter().enumerate() {
        by_end[s.end - 1].push(k);
    }
    let mut out = Vec::new();
    let mut word = vec![0u8; n];
    let mut left = delta.to_vec();
    dfs(ty, &by_end, 0, &mut word, &mut left, &mut out);
    out
}

fn dfs(ty: &AssocType, by_end: &[Vec<usize>], pos: usize, word: &mut [u8], left: &mut [u8], out: &mut Vec<Vec<u8>>) {
    if pos == word.len() {
        out.push(word.to_vec());
        return;
    }
    for x in 0..left.len() {
        if left[x] == 0 {
            continue;
        }
        word[pos] = x as u8;
        let ok = by_end[pos].iter().all(|&k| {
            let (r, s) = &ty.constraints()[k];
            word[r.clone()] < word[s.clone()]
        });
        if ok {
            left[x] -= 1;
            dfs(ty, by_end, pos + 1, word, left, out);
            left[x] += 1;
        }
    }
}
