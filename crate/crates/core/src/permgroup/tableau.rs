use std::fmt;

use super::partition::Partition;
use super::permutation::Permutation;

/// A standard Young tableau; entries are 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Entries read row by row.
    pub fn flattened(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Columns, each listed top to bottom.
    pub fn columns(&self) -> Vec<Vec<u8>> {
        let width = self.rows[0].len();
        (0..width).map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect()).collect()
    }

    /// `row_of()[x - 1]` is the 0-based row containing entry `x`.
    pub fn row_of(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.shape.n()];
        for (r, row) in self.rows.iter().enumerate() {
            for &x in row {
                out[x as usize - 1] = r as u8;
            }
        }
        out
    }

    /// The tableau `pi T` obtained by replacing every entry `x` with `pi(x)`.
    /// The result is generally not standard.
    pub fn permuted_rows(&self, pi: &Permutation) -> Vec<Vec<u8>> {
        self.rows.iter().map(|r| r.iter().map(|&x| pi.apply(x as usize - 1) as u8 + 1).collect()).collect()
    }

    /// The permutation `s` with `s T = other`, i.e. sending each cell's entry
    /// in `self` to the entry in the same cell of `other`.
    pub fn transport_to(&self, other: &StandardTableau) -> Permutation {
        assert_eq!(self.shape, other.shape);
        let n = self.shape.n();
        let mut images = vec![0u8; n];
        for (ra, rb) in self.rows.iter().zip(&other.rows) {
            for (&a, &b) in ra.iter().zip(rb) {
                images[a as usize - 1] = b - 1;
            }
        }
        Permutation::from_images_unchecked(images)
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau{:?}", self.rows)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.flattened().iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// All standard tableaux of shape `shape`, sorted ascending by the
/// row-flattened entry sequence.
pub fn standard_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(k: u8, n: u8, shape: &[usize], rows: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if k > n {
            out.push(rows.clone());
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(k);
                rec(k + 1, n, shape, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut raw = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    rec(1, shape.n() as u8, shape.parts(), &mut rows, &mut raw);
    let mut out: Vec<StandardTableau> = raw.into_iter().map(|rows| StandardTableau { shape: shape.clone(), rows }).collect();
    out.sort_by_key(|t| t.flattened());
    out
}
