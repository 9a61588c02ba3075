//! On-disk cache of matrices in the `BFSYZ-MAT` format.
//!
//! One file per key. Writes go through a temporary file and a rename, so
//! concurrent writers of the same (deterministic) entry simply replace each
//! other.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::exactalg::format::{read_matrix, write_matrix};
use crate::exactalg::{ExactMatrix, Storage};

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

impl MatrixCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(MatrixCache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        let safe: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}.bfsyz"))
    }

    /// A missing or unreadable entry is a miss.
    pub fn get(&self, key: &str) -> Option<ExactMatrix> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        read_matrix(&text).ok().map(|(m, _)| m)
    }

    pub fn put(&self, key: &str, m: &ExactMatrix) -> Result<()> {
        let target = self.path(key);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, write_matrix(m, Storage::Sparse))?;
        fs::rename(tmp, target)?;
        Ok(())
    }

    pub fn get_or_insert_with(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<ExactMatrix>,
    ) -> Result<ExactMatrix> {
        if let Some(m) = self.get(key) {
            return Ok(m);
        }
        let m = compute()?;
        self.put(key, &m)?;
        Ok(m)
    }
}

/// Hex SHA-256 of a canonical text rendering; used to key ideal pieces.
pub fn fingerprint(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::rat;

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = MatrixCache::open(dir.path()).unwrap();
        let m = ExactMatrix::from_triplets(2, 3, vec![(1, 2, rat(-5, 3))]);
        assert!(cache.get("fh/a2").is_none());
        cache.put("fh/a2", &m).unwrap();
        assert_eq!(cache.get("fh/a2").unwrap(), m);
        let mut calls = 0;
        let again = cache
            .get_or_insert_with("fh/a2", || {
                calls += 1;
                Ok(ExactMatrix::zeros(1, 1))
            })
            .unwrap();
        assert_eq!(again, m);
        assert_eq!(calls, 0);
    }

    #[test]
    fn fingerprints_are_stable() {
        assert_eq!(fingerprint("abc").len(), 64);
        assert_eq!(fingerprint("abc"), fingerprint("abc"));
        assert_ne!(fingerprint("abc"), fingerprint("abd"));
    }
}
