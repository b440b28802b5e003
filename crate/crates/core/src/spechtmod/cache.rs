use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::RestrictedActions;
use crate::error::{Error, Result};

/// On-disk store of restricted actions, keyed by a hash of the construction
/// parameters and the crate version.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

pub const CACHE_ENV: &str = "SPECHTVAR_CACHE";

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Option<Cache> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(format!("spechtvar {} {key}", env!("CARGO_PKG_VERSION")).as_bytes());
        self.dir.join(format!("{}.bin", hex::encode(digest)))
    }

    pub fn load(&self, key: &str) -> Result<Option<RestrictedActions>> {
        match fs::read(self.path(key)) {
            Ok(bytes) => postcard::from_bytes(&bytes).map(Some).map_err(|e| Error::Cache(e.to_string())),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::Cache(e.to_string())),
        }
    }

    pub fn store(&self, key: &str, acts: &RestrictedActions) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(e.to_string()))?;
        let bytes = postcard::to_stdvec(acts).map_err(|e| Error::Cache(e.to_string()))?;
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, bytes).and_then(|_| fs::rename(&tmp, &path)).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Returns the cached value, or builds and stores it. A corrupt entry is
    /// rebuilt.
    pub fn load_or_build(&self, key: &str, build: impl FnOnce() -> Result<RestrictedActions>) -> Result<RestrictedActions> {
        if let Ok(Some(acts)) = self.load(key) {
            return Ok(acts);
        }
        let acts = build()?;
        self.store(key, &acts)?;
        Ok(acts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spechtmod::restricted_actions;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let mu = "(2,2,2)".parse().unwrap();
        assert!(cache.load("k").unwrap().is_none());
        let built = cache.load_or_build("k", || restricted_actions(&mu, 3, 2, false)).unwrap();
        let loaded = cache.load("k").unwrap().unwrap();
        assert_eq!(built, loaded);
        fs::write(cache.path("k"), b"garbage").unwrap();
        assert!(cache.load("k").is_err());
        assert_eq!(cache.load_or_build("k", || restricted_actions(&mu, 3, 2, false)).unwrap(), built);
    }
}
