//! On-disk cache for change-of-basis matrices and constant-term vectors,
//! keyed by (module, n, engine version). Writes go to a temporary file in the
//! cache directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "QKZ_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    sha256: String,
    content: String,
}

pub fn sha256_hex(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct Cache {
    pub dir: PathBuf,
}

impl Cache {
    /// The cache named by the environment, if any.
    pub fn from_env() -> Option<Cache> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(|d| Cache { dir: PathBuf::from(d) })
    }

    pub fn key(module: &str, n: usize) -> String {
        format!("{module}-n{n}-v{}", qkz_core::VERSION)
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stored content, or `None` when absent or when the stored hash does not
    /// match the content.
    pub fn load(&self, key: &str) -> Option<String> {
        let raw = fs::read_to_string(self.path(key)).ok()?;
        let e: Entry = serde_json::from_str(&raw).ok()?;
        (e.key == key && sha256_hex(&e.content) == e.sha256).then_some(e.content)
    }

    pub fn store(&self, key: &str, content: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let e = Entry { key: key.to_string(), sha256: sha256_hex(content), content: content.to_string() };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&e).expect("cache entries serialize").as_bytes())?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
