use std::fmt;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

use super::field::Fp;
use super::reducer::RowReducer;

/// Dense row-major matrix over `Z/p`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    field: Fp,
    data: Vec<u32>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Fp) -> Self {
        ModMatrix { rows, cols, field, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, field: Fp) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from residues; entries must already be reduced.
    pub fn from_data(rows: usize, cols: usize, field: Fp, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for {rows}x{cols}", data.len())));
        }
        if data.iter().any(|&x| x >= field.p()) {
            return Err(Error::Invariant("entry not reduced modulo p".into()));
        }
        Ok(ModMatrix { rows, cols, field, data })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], field: Fp) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| field.from_i64(v)).collect();
        Ok(ModMatrix { rows: rows.len(), cols, field, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.p());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ModMatrix) {
        for i in 0..block.rows {
            let dst = (r0 + i) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(i));
        }
    }

    pub fn append_rows(&mut self, other: &ModMatrix) -> Result<()> {
        if other.cols != self.cols || other.field != self.field {
            return Err(Error::Dimension("append_rows: shape or field mismatch".into()));
        }
        self.data.extend_from_slice(&other.data);
        self.rows += other.rows;
        Ok(())
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let p = self.field.p() as u64;
        let mut out = ModMatrix::zeros(self.rows, other.cols, self.field);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            let mut pending = 0;
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += a as u64 * b as u64;
                }
                pending += 1;
                if pending == 255 {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            for (j, x) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = (x % p) as u32;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for (k, (&a, &b)) in self.row(i).iter().zip(v).enumerate() {
                    s += a as u64 * b as u64;
                    if k % 255 == 254 {
                        s %= p;
                    }
                }
                (s % p) as u32
            })
            .collect()
    }

    /// Replaces the matrix by its row canonical form (nonzero rows first,
    /// zero rows below) and returns the rank.
    pub fn rcf(&mut self) -> usize {
        let mut red = RowReducer::new(self.cols, self.field);
        for i in 0..self.rows {
            red.push_dense(self.row(i));
        }
        let rank = red.rank();
        let canon = red.to_rcf();
        self.data.iter_mut().for_each(|x| *x = 0);
        self.data[..rank * self.cols].copy_from_slice(&canon.data);
        rank
    }

    /// Row canonical form restricted to its nonzero rows.
    pub fn rcf_nonzero(&self) -> ModMatrix {
        let mut red = RowReducer::new(self.cols, self.field);
        for i in 0..self.rows {
            red.push_dense(self.row(i));
        }
        red.to_rcf()
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.cols, self.field);
        for i in 0..self.rows {
            red.push_dense(self.row(i));
        }
        red.rank()
    }

    /// Whether the matrix satisfies the row-canonical-form predicate: nonzero
    /// rows first, each leading entry 1 and the only nonzero in its column,
    /// leading columns strictly increasing.
    pub fn is_rcf(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..self.rows {
            match self.row(i).iter().position(|&x| x != 0) {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || self.get(i, c) != 1 || last.is_some_and(|l| l >= c) {
                        return false;
                    }
                    if (0..self.rows).any(|k| k != i && self.get(k, c) != 0) {
                        return false;
                    }
                    last = Some(c);
                }
            }
        }
        true
    }

    /// Leading columns (0-based) of a matrix in row canonical form.
    pub fn leading_columns(&self) -> Result<Vec<usize>> {
        if !self.is_rcf() {
            return Err(Error::NotCanonical);
        }
        Ok((0..self.rows).filter_map(|i| self.row(i).iter().position(|&x| x != 0)).collect())
    }

    /// Canonical basis of the right nullspace: one vector per non-pivot
    /// column, in column order, with that free variable set to 1 and the other
    /// free variables set to 0.
    pub fn nullspace_canonical_basis(&self) -> Vec<Vec<u32>> {
        let mut red = RowReducer::new(self.cols, self.field);
        for i in 0..self.rows {
            red.push_dense(self.row(i));
        }
        red.nullspace_basis()
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(&mut self, n: usize) {
        let n = n.min(self.rows);
        self.data.truncate(n * self.cols);
        self.rows = n;
    }

    /// Columns `c0..c1` as a new matrix.
    pub fn column_range(&self, c0: usize, c1: usize) -> ModMatrix {
        let mut out = ModMatrix::zeros(self.rows, c1 - c0, self.field);
        for i in 0..self.rows {
            out.row_mut(i).copy_from_slice(&self.row(i)[c0..c1]);
        }
        out
    }

    /// Writes the text dump: a header line `rows cols p`, then one line of
    /// space-separated residues per row.
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{} {} {}", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn read_dump<R: BufRead>(r: R) -> Result<ModMatrix> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix dump".into()))??;
        let h: Vec<u64> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        if h.len() != 3 {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let (rows, cols) = (h[0] as usize, h[1] as usize);
        let field = Fp::try_new(h[2] as u32).ok_or_else(|| Error::Parse(format!("bad modulus {}", h[2])))?;
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse("truncated matrix dump".into()))??;
            let before = data.len();
            for t in line.split_whitespace() {
                data.push(t.parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {t:?}")))?);
            }
            if data.len() - before != cols {
                return Err(Error::Parse("row length mismatch".into()));
            }
        }
        ModMatrix::from_data(rows, cols, field, data)
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModMatrix {}x{} mod {}", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows.min(12) {
            writeln!(f, "  {:?}", &self.row(i)[..self.cols.min(16)])?;
        }
        Ok(())
    }
}

/// Whether two matrices in row canonical form span the same row space,
/// i.e. agree entrywise on their nonzero rows.
pub fn row_space_equal(a: &ModMatrix, b: &ModMatrix) -> bool {
    if a.cols != b.cols || a.field != b.field {
        return false;
    }
    let nz = |m: &ModMatrix| (0..m.rows).filter(|&i| m.row(i).iter().any(|&x| x != 0)).count();
    let (ra, rb) = (nz(a), nz(b));
    ra == rb && a.data[..ra * a.cols] == b.data[..rb * b.cols]
}
