//! On-disk cache of the structural part of a run (collection classes and
//! `s̄dC`), keyed by a SHA-256 hash of the group table, the prime and the
//! collection argument. Writers hold `<dir>/lock`, created
//! exclusively.

use std::fs::{self, File};
use std::io;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::Duration;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

const LOCK_ATTEMPTS: u32 = 100;
const LOCK_WAIT: Duration = Duration::from_millis(50);

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

struct Lock(PathBuf);

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

pub fn cache_key(table: &[u32], p: u32, collection_spec: &str) -> String {
    let mut h = Sha256::new();
    h.update(b"normdec-structure-v1\0");
    h.update((table.len() as u64).to_le_bytes());
    for &x in table {
        h.update(x.to_le_bytes());
    }
    h.update(p.to_le_bytes());
    h.update(collection_spec.as_bytes());
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn lock(&self) -> io::Result<Lock> {
        fs::create_dir_all(&self.dir)?;
        let path = self.dir.join("lock");
        for _ in 0..LOCK_ATTEMPTS {
            match File::create_new(&path) {
                Ok(_) => return Ok(Lock(path)),
                Err(e) if e.kind() == io::ErrorKind::AlreadyExists => thread::sleep(LOCK_WAIT),
                Err(e) => return Err(e),
            }
        }
        Err(io::Error::new(io::ErrorKind::WouldBlock, format!("cache lock {} is held", path.display())))
    }

    /// `None` on a miss or an unreadable entry.
    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store<T: Serialize>(&self, key: &str, value: &T) -> io::Result<()> {
        let _lock = self.lock()?;
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, serde_json::to_vec(value).map_err(io::Error::other)?)?;
        fs::rename(tmp, self.path(key))
    }
}
