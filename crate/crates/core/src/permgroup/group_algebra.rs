use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modlinalg::{Fp, ModMatrix};

use super::clifton::{check_modulus, NaturalRep};
use super::permutation::Permutation;

/// A finite rational combination of permutations in `Q S_n`, with a global
/// scalar kept apart from the term coefficients so large normalising factors
/// such as `d / n!` never multiply into every coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, Rational64>,
    scalar: Rational64,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new(), scalar: Rational64::one() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_permutation(Permutation::identity(n), Rational64::one())
    }

    pub fn from_permutation(pi: Permutation, c: Rational64) -> Self {
        let mut e = Self::zero(pi.degree());
        e.add_term(pi, c);
        e
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn scalar(&self) -> Rational64 {
        self.scalar
    }

    pub fn set_scalar(&mut self, s: Rational64) {
        self.scalar = s;
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() || self.scalar.is_zero()
    }

    /// Terms with their stored coefficients (not multiplied by the scalar).
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational64)> {
        self.terms.iter()
    }

    /// Coefficient of `pi` including the global scalar.
    pub fn coefficient(&self, pi: &Permutation) -> Rational64 {
        self.terms.get(pi).map_or(Rational64::zero(), |c| c * self.scalar)
    }

    /// Adds `c * pi` to the stored terms (before the scalar is applied).
    pub fn add_term(&mut self, pi: Permutation, c: Rational64) {
        assert_eq!(pi.degree(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(pi) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Folds the global scalar into the coefficients.
    pub fn normalized(&self) -> Self {
        let mut out = Self::zero(self.n);
        if !self.scalar.is_zero() {
            for (p, c) in &self.terms {
                out.terms.insert(p.clone(), c * self.scalar);
            }
        }
        out
    }

    pub fn scale(&self, c: Rational64) -> Self {
        let mut out = self.clone();
        out.scalar *= c;
        if out.scalar.is_zero() {
            out.terms.clear();
            out.scalar = Rational64::one();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.normalized();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c * other.scalar);
        }
        out
    }

    /// Group-algebra product; `(sum a_s s)(sum b_t t) = sum a_s b_t (s t)`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s * t, a * b);
            }
        }
        out.scalar = self.scalar * other.scalar;
        if out.scalar.is_zero() {
            out.terms.clear();
            out.scalar = Rational64::one();
        }
        out
    }
}

impl NaturalRep {
    /// `sum c_pi R_pi` over `Z/p` for a rational group-algebra element.
    pub fn rep_of_element(&self, f: &GroupAlgebraElement, field: Fp) -> Result<ModMatrix> {
        check_modulus(field, self.n())?;
        let d = self.dim();
        let den = f.terms().fold(1i64, |l, (_, c)| l.lcm(c.denom()));
        let p = field.p() as i64;
        let mut acc = vec![0i64; d * d];
        for (pi, c) in f.terms() {
            let k = (c.numer() * (den / c.denom())) % p;
            self.accumulate_clifton(pi, k, &mut acc);
            // keep the accumulator bounded
            if acc.iter().any(|x| x.abs() > 1 << 60) {
                acc.iter_mut().for_each(|x| *x %= p);
            }
        }
        let m = self.finish_mod(&acc, field);
        let s = f.scalar();
        let fac = Rational64::new(*s.numer(), s.denom() * den);
        scale_matrix(&m, fac, field)
    }
}

/// Residue of a rational number modulo `p`.
pub fn rational_mod(c: Rational64, field: Fp) -> Result<u32> {
    let den = field.from_i64(*c.denom());
    if den == 0 {
        return Err(Error::NonInvertible(*c.denom(), field.p()));
    }
    Ok(field.mul(field.from_i64(*c.numer()), field.inv(den)))
}

pub(crate) fn scale_matrix(m: &ModMatrix, c: Rational64, field: Fp) -> Result<ModMatrix> {
    let k = rational_mod(c, field)?;
    let data = m.data().iter().map(|&x| field.mul(x, k)).collect();
    ModMatrix::from_data(m.rows(), m.cols(), field, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Partition;
    use crate::DEFAULT_PRIME;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn product_is_composition() {
        let a = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let b = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        let x = GroupAlgebraElement::from_permutation(a.clone(), r(1, 2));
        let y = GroupAlgebraElement::from_permutation(b.clone(), r(3, 1));
        let z = x.mul(&y);
        assert_eq!(z.len(), 1);
        assert_eq!(z.coefficient(&(&a * &b)), r(3, 2));
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = Permutation::transposition(3, 0, 1);
        let mut x = GroupAlgebraElement::from_permutation(a.clone(), r(1, 1));
        x.add_term(a, r(-1, 1));
        assert!(x.is_empty());
    }

    #[test]
    fn sign_representation_kills_identity_plus_transposition() {
        let n = 11;
        let rep = NaturalRep::new(&Partition::new(vec![1; n]).unwrap()).unwrap();
        let mut f = GroupAlgebraElement::identity(n);
        f.add_term(Permutation::transposition(n, 0, 1), r(1, 1));
        let m = rep.rep_of_element(&f, Fp::new(DEFAULT_PRIME)).unwrap();
        assert_eq!(m.get(0, 0), 0);
    }

    #[test]
    fn rep_is_multiplicative_on_elements() {
        let field = Fp::new(DEFAULT_PRIME);
        let perms = Permutation::all(4);
        let mut x = GroupAlgebraElement::zero(4);
        let mut y = GroupAlgebraElement::zero(4);
        for (k, p) in perms.iter().enumerate() {
            x.add_term(p.clone(), r(k as i64 % 5 - 2, 3));
            y.add_term(p.clone(), r(1, (k as i64 % 3) + 1));
        }
        x.set_scalar(r(5, 7));
        for l in Partition::all(4) {
            let rep = NaturalRep::new(&l).unwrap();
            let lhs = rep.rep_of_element(&x.mul(&y), field).unwrap();
            let rhs = rep.rep_of_element(&x, field).unwrap().mul(&rep.rep_of_element(&y, field).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{l}");
        }
    }

    #[test]
    fn non_invertible_denominator() {
        let f = GroupAlgebraElement::from_permutation(Permutation::identity(3), r(1, 101));
        let rep = NaturalRep::new(&Partition::new(vec![3]).unwrap()).unwrap();
        assert!(matches!(rep.rep_of_element(&f, Fp::new(101)), Err(Error::NonInvertible(..))));
    }
}
