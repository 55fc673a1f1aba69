use std::io::{BufRead, Write};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ternary::{MonomialBasis, TernaryMonomial};

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyz";

/// Writes the nonzero terms of `v` as `coefficient<TAB>type<TAB>word`
/// (1-based type, letter word) after a header with the multidegree, the
/// prime and the sha256 of the body.
pub fn write_identity<W: Write>(mut out: W, basis: &MonomialBasis, v: &[i64], prime: u32) -> Result<()> {
    let body = identity_body(basis, v);
    let terms = v.iter().filter(|&&c| c != 0).count();
    let delta: Vec<String> = basis.delta().iter().map(u8::to_string).collect();
    writeln!(out, "# multidegree {}", delta.join(","))?;
    writeln!(out, "# prime {prime}")?;
    writeln!(out, "# terms {terms}")?;
    writeln!(out, "# sha256 {}", hex::encode(Sha256::digest(body.as_bytes())))?;
    out.write_all(body.as_bytes())?;
    Ok(())
}

fn identity_body(basis: &MonomialBasis, v: &[i64]) -> String {
    let mut body = String::new();
    for (j, &c) in v.iter().enumerate() {
        if c != 0 {
            let m = basis.monomial(j);
            let w: String = m.word.iter().map(|&x| LETTERS[x as usize] as char).collect();
            body.push_str(&format!("{c}\t{}\t{w}\n", m.type_index + 1));
        }
    }
    body
}

/// Reads an identity written by [`write_identity`] back into a coefficient
/// vector over `basis`, checking the multidegree, term count and hash.
pub fn read_identity<R: BufRead>(input: R, basis: &MonomialBasis) -> Result<Vec<i64>> {
    let mut v = vec![0i64; basis.len()];
    let mut header = std::collections::HashMap::new();
    let mut hasher = Sha256::new();
    let mut terms = 0usize;
    for line in input.lines() {
        let line = line?;
        if let Some(h) = line.strip_prefix("# ") {
            let (k, val) = h.split_once(' ').ok_or_else(|| Error::Parse(format!("bad header line {line:?}")))?;
            header.insert(k.to_string(), val.to_string());
            continue;
        }
        hasher.update(line.as_bytes());
        hasher.update(b"\n");
        let mut f = line.split('\t');
        let (Some(c), Some(t), Some(w), None) = (f.next(), f.next(), f.next(), f.next()) else {
            return Err(Error::Parse(format!("bad term line {line:?}")));
        };
        let c: i64 = c.parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
        let t: usize = t.parse().map_err(|_| Error::Parse(format!("bad type {t:?}")))?;
        let word = w
            .bytes()
            .map(|b| LETTERS.iter().position(|&l| l == b).map(|x| x as u8))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(|| Error::Parse(format!("bad word {w:?}")))?;
        let m = TernaryMonomial { type_index: t.wrapping_sub(1), word };
        let col = basis.column_of(&m).ok_or_else(|| Error::Parse(format!("{line:?} is not a canonical monomial")))?;
        v[col] += c;
        terms += 1;
    }
    let delta: Vec<String> = basis.delta().iter().map(u8::to_string).collect();
    if header.get("multidegree") != Some(&delta.join(",")) {
        return Err(Error::Parse("multidegree header does not match".into()));
    }
    if header.get("terms").and_then(|t| t.parse::<usize>().ok()) != Some(terms) {
        return Err(Error::Parse("term count does not match header".into()));
    }
    if header.get("sha256") != Some(&hex::encode(hasher.finalize())) {
        return Err(Error::Parse("hash does not match header".into()));
    }
    Ok(v)
}
