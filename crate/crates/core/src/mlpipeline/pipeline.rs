use log::debug;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::liftgen::{liftings, TernaryPolynomial};
use crate::modlinalg::{row_space_equal, Fp, ModMatrix, RowReducer};
use crate::permgroup::{check_modulus, NaturalRep, Partition, Permutation, RepCache};
use crate::ternary::TypeSet;

/// Ranks computed for one partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub partition: String,
    pub parts: Vec<usize>,
    pub dim: usize,
    /// Rank of the symmetry matrix.
    pub sym: usize,
    /// Rank after adding the liftings.
    pub symlif: usize,
    /// Rank of the space of all identities.
    pub all: usize,
    pub new: usize,
    /// When `new == 0`: whether the two canonical forms coincide.
    pub row_space_match: Option<bool>,
    /// Whether the lifted identities lie inside the space of all identities.
    pub old_in_all: bool,
}

/// Report plus the canonical matrices needed downstream.
#[derive(Clone, Debug)]
pub struct PartitionRun {
    pub report: PartitionReport,
    /// Nonzero rows of the canonical form of symmetries and liftings.
    pub oldmat: ModMatrix,
    /// All identities, in canonical form.
    pub allmat: ModMatrix,
}

/// Integer combination of permutations, one per association type.
pub type TypedElement = Vec<Vec<(Permutation, i64)>>;

/// Degree-specific inputs for the per-partition computation.
pub struct Pipeline {
    degree: usize,
    field: Fp,
    types: TypeSet,
    /// `(type, pi)`: the relation `id + pi = 0` in that type.
    symmetries: Vec<(usize, Permutation)>,
    liftings: Vec<TypedElement>,
    /// Signed position permutations of each type's expansion.
    expansions: Vec<Vec<(Permutation, i64)>>,
    cache: Option<RepCache>,
}

/// Splits a multilinear polynomial into one group-algebra element per type;
/// the word `w` stands for the permutation `i -> w[i]`.
pub fn typed_element(poly: &TernaryPolynomial, ntypes: usize) -> TypedElement {
    let mut out: TypedElement = vec![Vec::new(); ntypes];
    for (c, m) in poly.terms() {
        let pi = Permutation::from_images(m.word.clone()).expect("multilinear word");
        out[m.type_index].push((pi, *c));
    }
    out
}

impl Pipeline {
    pub fn new(degree: usize, field: Fp) -> Result<Self> {
        let types = TypeSet::new(degree)?;
        check_modulus(field, degree)?;
        let symmetries = types.symmetry_generators();
        let liftings = liftings(degree)
            .iter()
            .map(|e| e.evaluate().map(|p| typed_element(&p, types.len())))
            .collect::<Result<Vec<_>>>()?;
        let expansions = types
            .types()
            .iter()
            .map(|t| {
                t.expansion()
                    .into_iter()
                    .map(|(pos, s)| (Permutation::from_images(pos).expect("expansion term"), s as i64))
                    .collect()
            })
            .collect();
        Ok(Pipeline { degree, field, types, symmetries, liftings, expansions, cache: None })
    }

    pub fn with_cache(mut self, cache: RepCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn types(&self) -> &TypeSet {
        &self.types
    }

    pub fn symmetries(&self) -> &[(usize, Permutation)] {
        &self.symmetries
    }

    pub fn lifting_count(&self) -> usize {
        self.liftings.len()
    }

    pub fn natural_rep(&self, shape: &Partition) -> Result<NaturalRep> {
        if shape.n() != self.degree {
            return Err(Error::InvalidPartition(shape.parts().to_vec()));
        }
        NaturalRep::new(shape)
    }

    /// `rho(sum c_pi pi)` accumulated in parallel over the terms.
    pub fn rep_of_terms(&self, rep: &NaturalRep, terms: &[(Permutation, i64)]) -> ModMatrix {
        let d = rep.dim();
        let acc = terms
            .par_chunks(256)
            .fold(
                || vec![0i64; d * d],
                |mut acc, chunk| {
                    for (pi, c) in chunk {
                        rep.accumulate_clifton(pi, *c, &mut acc);
                    }
                    acc
                },
            )
            .reduce(
                || vec![0i64; d * d],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        rep.finish_mod(&acc, self.field)
    }

    /// Representation matrices of each type's expansion.
    pub fn expansion_matrices(&self, rep: &NaturalRep) -> Result<Vec<ModMatrix>> {
        let tag = format!("expansion-degree-{}", self.degree);
        if let Some(cache) = &self.cache {
            if let Some(m) = cache.load(rep.shape(), self.field, &tag)? {
                debug!("cache hit for {} expansions", rep.shape());
                return Ok(m);
            }
        }
        let mats: Vec<ModMatrix> = self.expansions.iter().map(|terms| self.rep_of_terms(rep, terms)).collect();
        if let Some(cache) = &self.cache {
            cache.store(rep.shape(), self.field, &tag, &mats)?;
        }
        Ok(mats)
    }

    /// Block rows `I + R_pi` of the symmetries, `ntypes * d` columns.
    pub fn sym_matrix(&self, rep: &NaturalRep) -> Result<ModMatrix> {
        let d = rep.dim();
        let nt = self.types.len();
        let mut m = ModMatrix::zeros(self.symmetries.len() * d, nt * d, self.field);
        for (i, (t, pi)) in self.symmetries.iter().enumerate() {
            let mut block = rep.natural_rep(pi, self.field)?;
            for k in 0..d {
                block.set(k, k, self.field.add(block.get(k, k), 1));
            }
            m.set_block(i * d, t * d, &block);
        }
        Ok(m)
    }

    /// Block rows of the lifting families.
    pub fn lifting_matrix(&self, rep: &NaturalRep) -> Result<ModMatrix> {
        let d = rep.dim();
        let nt = self.types.len();
        let mut m = ModMatrix::zeros(self.liftings.len() * d, nt * d, self.field);
        for (i, fam) in self.liftings.iter().enumerate() {
            for (t, terms) in fam.iter().enumerate() {
                if !terms.is_empty() {
                    m.set_block(i * d, t * d, &self.rep_of_terms(rep, terms));
                }
            }
        }
        Ok(m)
    }

    /// Block row of an arbitrary multilinear polynomial of this degree.
    pub fn polynomial_rows(&self, rep: &NaturalRep, poly: &TernaryPolynomial) -> ModMatrix {
        let d = rep.dim();
        let nt = self.types.len();
        let mut m = ModMatrix::zeros(d, nt * d, self.field);
        for (t, terms) in typed_element(poly, nt).iter().enumerate() {
            if !terms.is_empty() {
                m.set_block(0, t * d, &self.rep_of_terms(rep, terms));
            }
        }
        m
    }

    /// The space of all identities: canonical form of the
    /// `ntypes*d x (ntypes+1)*d` matrix with the expansions in the first
    /// block column and identity blocks after it, keeping the rows whose
    /// leading entry lies past the first block column, restricted to those
    /// columns.
    pub fn all_matrix(&self, rep: &NaturalRep) -> Result<ModMatrix> {
        let d = rep.dim();
        let nt = self.types.len();
        let exps = self.expansion_matrices(rep)?;
        let cols = (nt + 1) * d;
        let mut red = RowReducer::new(cols, self.field);
        let mut row = vec![0u32; cols];
        for (i, x) in exps.iter().enumerate() {
            for k in 0..d {
                row.iter_mut().for_each(|v| *v = 0);
                row[..d].copy_from_slice(x.row(k));
                row[(i + 1) * d + k] = 1;
                red.push_dense(&row);
            }
        }
        let rank = red.rank();
        if rank != nt * d {
            return Err(Error::Invariant(format!("expansion matrix has rank {rank}, expected {}", nt * d)));
        }
        let canon = red.to_rcf();
        let lead = canon.leading_columns()?;
        let first = lead.iter().position(|&c| c >= d).unwrap_or(lead.len());
        let mut all = ModMatrix::zeros(lead.len() - first, nt * d, self.field);
        for (r, src) in (first..lead.len()).enumerate() {
            if canon.row(src)[..d].iter().any(|&x| x != 0) {
                return Err(Error::Invariant("kept row is nonzero in the associative block".into()));
            }
            all.row_mut(r).copy_from_slice(&canon.row(src)[d..]);
        }
        Ok(all)
    }

    pub fn run(&self, shape: &Partition) -> Result<PartitionRun> {
        let rep = self.natural_rep(shape)?;
        let d = rep.dim();
        let nt = self.types.len();
        debug!("partition {shape}: d = {d}");
        let sym = self.sym_matrix(&rep)?;
        let mut red = RowReducer::new(nt * d, self.field);
        for i in 0..sym.rows() {
            red.push_dense(sym.row(i));
        }
        let s = red.rank();
        drop(sym);
        let lif = self.lifting_matrix(&rep)?;
        for i in 0..lif.rows() {
            red.push_dense(lif.row(i));
        }
        let sl = red.rank();
        let oldmat = red.to_rcf();
        debug!("partition {shape}: sym {s}, sym+lif {sl}");
        let allmat = self.all_matrix(&rep)?;
        let a = allmat.rows();
        let mut both = RowReducer::new(nt * d, self.field);
        for i in 0..a {
            both.push_dense(allmat.row(i));
        }
        for i in 0..oldmat.rows() {
            both.push_dense(oldmat.row(i));
        }
        let old_in_all = both.rank() == a;
        if !(a >= sl && sl >= s) || !old_in_all {
            return Err(Error::Invariant(format!("partition {shape}: ranks {s}/{sl}/{a}, old inside all: {old_in_all}")));
        }
        let new = a - sl;
        let row_space_match = (new == 0).then(|| row_space_equal(&oldmat, &allmat));
        debug!("partition {shape}: {s} / {sl} / {a}, new {new}");
        Ok(PartitionRun {
            report: PartitionReport {
                partition: shape.exponent_notation(),
                parts: shape.parts().to_vec(),
                dim: d,
                sym: s,
                symlif: sl,
                all: a,
                new,
                row_space_match,
                old_in_all,
            },
            oldmat,
            allmat,
        })
    }

    pub fn partition_report(&self, shape: &Partition) -> Result<PartitionReport> {
        self.run(shape).map(|r| r.report)
    }
}
