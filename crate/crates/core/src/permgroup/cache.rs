//! On-disk cache of representation matrices.
//!
//! File layout, all fields little-endian `u32`: `n`, number of parts, the
//! parts, the prime, the matrix count; then each `d x d` matrix row-major.
//! Files are named by a SHA-256 digest of the partition, the prime and a
//! caller-chosen tag describing the permutation set.

use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::modlinalg::{Fp, ModMatrix};

use super::partition::Partition;

#[derive(Clone, Debug)]
pub struct RepCache {
    dir: PathBuf,
}

impl RepCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(RepCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, shape: &Partition, field: Fp, tag: &str) -> PathBuf {
        let mut h = Sha256::new();
        for &x in shape.parts() {
            h.update((x as u32).to_le_bytes());
        }
        h.update([0xff]);
        h.update(field.p().to_le_bytes());
        h.update(tag.as_bytes());
        let digest = hex::encode(h.finalize());
        self.dir.join(format!("{}.rep", &digest[..32]))
    }

    /// Cached matrices, or `None` when absent. A file whose header does not
    /// match the request is treated as corrupt.
    pub fn load(&self, shape: &Partition, field: Fp, tag: &str) -> Result<Option<Vec<ModMatrix>>> {
        let path = self.path_for(shape, field, tag);
        if !path.exists() {
            return Ok(None);
        }
        let mut r = BufReader::new(fs::File::open(&path)?);
        let mut next = || -> Result<u32> {
            let mut b = [0u8; 4];
            r.read_exact(&mut b)?;
            Ok(u32::from_le_bytes(b))
        };
        let n = next()? as usize;
        let k = next()? as usize;
        let parts = (0..k).map(|_| next().map(|x| x as usize)).collect::<Result<Vec<_>>>()?;
        let p = next()?;
        let count = next()? as usize;
        if n != shape.n() || parts != shape.parts() || p != field.p() {
            return Err(Error::Parse(format!("cache header mismatch in {}", path.display())));
        }
        let d = shape.dimension() as usize;
        let mut out = Vec::with_capacity(count);
        let mut buf = vec![0u8; d * d * 4];
        for _ in 0..count {
            r.read_exact(&mut buf)?;
            let data = buf.chunks_exact(4).map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect();
            out.push(ModMatrix::from_data(d, d, field, data)?);
        }
        Ok(Some(out))
    }

    pub fn store(&self, shape: &Partition, field: Fp, tag: &str, mats: &[ModMatrix]) -> Result<()> {
        let path = self.path_for(shape, field, tag);
        let tmp = path.with_extension("tmp");
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            let mut put = |x: u32| w.write_all(&x.to_le_bytes());
            put(shape.n() as u32)?;
            put(shape.len() as u32)?;
            for &x in shape.parts() {
                put(x as u32)?;
            }
            put(field.p())?;
            put(mats.len() as u32)?;
            for m in mats {
                for &x in m.data() {
                    w.write_all(&x.to_le_bytes())?;
                }
            }
            w.flush()?;
        }
        fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = RepCache::new(dir.path()).unwrap();
        let l = Partition::new(vec![2, 1]).unwrap();
        let f = Fp::new(101);
        assert!(cache.load(&l, f, "x").unwrap().is_none());
        let m = ModMatrix::from_i64_rows(&[vec![1, 2], vec![3, -1]], f).unwrap();
        cache.store(&l, f, "x", &[m.clone(), m.clone()]).unwrap();
        assert_eq!(cache.load(&l, f, "x").unwrap().unwrap(), vec![m.clone(), m]);
        assert!(cache.load(&l, f, "y").unwrap().is_none());
        assert!(cache.load(&l, Fp::new(103), "x").unwrap().is_none());
    }
}
