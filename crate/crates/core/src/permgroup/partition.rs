use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition `lambda_1 >= ... >= lambda_k >= 1` of `n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    /// Parses `"2,2,2,2,2,1"`, `"2^5,1"` or `"2^5 1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for tok in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e),
                None => (tok, "1"),
            };
            let bad = || Error::Parse(format!("bad partition token {tok:?}"));
            let b: usize = base.parse().map_err(|_| bad())?;
            let e: usize = exp.parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(b, e));
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Lengths of the columns of the Young diagram.
    pub fn conjugate(&self) -> Vec<usize> {
        (0..self.parts[0]).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect()
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn dimension(&self) -> u64 {
        let n = self.n() as u128;
        let cols = self.conjugate();
        let mut hooks: u128 = 1;
        for (r, &len) in self.parts.iter().enumerate() {
            for (c, &col_len) in cols.iter().enumerate().take(len) {
                hooks *= ((len - c - 1) + (col_len - r - 1) + 1) as u128;
            }
        }
        let fact: u128 = (1..=n).product();
        (fact / hooks) as u64
    }

    /// All partitions of `n` in reverse lexicographic order: `(n)`,
    /// `(n-1,1)`, ..., `(1^n)`. For `n = 11` position `i` (1-based) is the
    /// conventional partition number used in rank tables.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Compact notation with exponents, e.g. `2^5 1`.
    pub fn exponent_notation(&self) -> String {
        let mut out: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == self.parts[i] {
                j += 1;
            }
            if j - i == 1 {
                out.push(self.parts[i].to_string());
            } else {
                out.push(format!("{}^{}", self.parts[i], j - i));
            }
            i = j;
        }
        out.join(" ")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(Partition::new(vec![11]).unwrap().dimension(), 1);
        assert_eq!(Partition::parse("2^5 1").unwrap().dimension(), 132);
        assert_eq!(Partition::parse("2^4,1^3").unwrap().dimension(), 165);
        assert_eq!(Partition::new(vec![10, 1]).unwrap().dimension(), 10);
        assert_eq!(Partition::parse("2,1^9").unwrap().dimension(), 10);
        assert_eq!(Partition::parse("5^2,1").unwrap().dimension(), 330);
    }

    #[test]
    fn numbering_matches_rank_table() {
        let all = Partition::all(11);
        assert_eq!(all.len(), 56);
        assert_eq!(all[0].parts(), &[11]);
        assert_eq!(all[12].parts(), &[6, 5]);
        assert_eq!(all[50], Partition::parse("2^5,1").unwrap());
        assert_eq!(all[51], Partition::parse("2^4,1^3").unwrap());
        assert_eq!(all[55], Partition::parse("1^11").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::parse("2,x").is_err());
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for n in 1..=8 {
            let s: u64 = Partition::all(n).iter().map(|l| l.dimension().pow(2)).sum();
            let f: u64 = (1..=n as u64).product();
            assert_eq!(s, f, "n = {n}");
        }
    }
}
