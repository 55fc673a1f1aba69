use num_integer::Integer;

use crate::error::{Error, Result};

use super::field::Fp;

/// Lifts residues to `(-p/2, p/2]` and divides by the gcd of the entries,
/// so a nonzero result has coprime components. The zero vector is returned
/// as is.
pub fn symmetric_lift(v: &[u32], field: Fp) -> Vec<i64> {
    let mut out: Vec<i64> = v.iter().map(|&x| field.symmetric(x)).collect();
    let g = out.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        out.iter_mut().for_each(|x| *x /= g);
    }
    out
}

/// Wang rational reconstruction: the fraction `a/b` with `|a|, b <= sqrt(p/2)`
/// congruent to `x`, if any.
pub fn rational_reconstruct(x: u32, field: Fp) -> Option<(i64, i64)> {
    let p = field.p() as i64;
    let bound = (((p / 2) as f64).sqrt()) as i64;
    let (mut r0, mut r1) = (p, x as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    let (mut a, mut b) = (r1, t1);
    if b < 0 {
        a = -a;
        b = -b;
    }
    (a.gcd(&b) == 1 || a == 0).then_some((a, b))
}

/// Reconstructs a primitive integer vector proportional to `v` over the
/// rationals: each entry is reconstructed as a fraction, denominators are
/// cleared and the common content removed.
pub fn integer_reconstruct(v: &[u32], field: Fp) -> Result<Vec<i64>> {
    let mut fracs = Vec::with_capacity(v.len());
    let mut den = 1i64;
    for &x in v {
        let (a, b) = rational_reconstruct(x, field)
            .ok_or_else(|| Error::Reconstruction(format!("residue {x} has no small fraction")))?;
        den = den.lcm(&b);
        if den > 1 << 40 {
            return Err(Error::Reconstruction("denominators too large".into()));
        }
        fracs.push((a, b));
    }
    let mut out: Vec<i64> = fracs.iter().map(|&(a, b)| a * (den / b)).collect();
    let g = out.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g > 1 {
        out.iter_mut().for_each(|x| *x /= g);
    }
    Ok(out)
}
