//! On-disk character-table cache keyed by a hash of the group description.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use flagdl_core::chars::table::{CharacterTableRecord, TABLE_FORMAT_VERSION};
use flagdl_core::chars::CharacterTable;
use flagdl_core::groups::{GroupSpec, MatrixGroup};

pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn key(spec: &GroupSpec) -> String {
        let mut h = Sha256::new();
        h.update(spec.canonical().as_bytes());
        h.update(format!("\ntable-format={TABLE_FORMAT_VERSION}").as_bytes());
        hex::encode(h.finalize())
    }

    pub fn path(&self, spec: &GroupSpec) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(spec)))
    }

    /// A cached table, re-verified against `group`. Unreadable or stale
    /// entries count as misses.
    pub fn load(&self, spec: &GroupSpec, group: &Arc<MatrixGroup>) -> Option<CharacterTable> {
        let text = fs::read_to_string(self.path(spec)).ok()?;
        let rec: CharacterTableRecord = serde_json::from_str(&text).ok()?;
        if rec.spec != spec.canonical() {
            return None;
        }
        CharacterTable::from_record(group.clone(), &rec).ok()
    }

    /// Writes through a temporary file and renames it into place.
    pub fn store(&self, spec: &GroupSpec, table: &CharacterTable) -> std::io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let target = self.path(spec);
        let text = serde_json::to_string(&table.to_record(&spec.canonical()))?;
        let tmp = self.dir.join(format!(".{}.{}.tmp", Self::key(spec), std::process::id()));
        write_all(&tmp, text.as_bytes())?;
        fs::rename(&tmp, &target)?;
        Ok(target)
    }
}

fn write_all(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(bytes)?;
    f.sync_all()
}

#[cfg(test)]
mod tests {
    use super::*;
    use flagdl_core::groups::enumerate;

    #[test]
    fn key_separates_specs() {
        let a = GroupSpec::gl(2, 2, 2);
        assert_eq!(TableCache::key(&a), TableCache::key(&GroupSpec::gl(2, 2, 2)));
        assert_ne!(TableCache::key(&a), TableCache::key(&GroupSpec::sl(2, 2, 2)));
        assert_eq!(TableCache::key(&a).len(), 64);
    }

    #[test]
    fn round_trip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path());
        let spec = GroupSpec::gl(1, 3, 2);
        let g = Arc::new(enumerate(&spec, 1000).unwrap());
        assert!(cache.load(&spec, &g).is_none());
        let t = CharacterTable::compute(g.clone(), 1000).unwrap();
        let path = cache.store(&spec, &t).unwrap();
        assert!(path.exists());
        let back = cache.load(&spec, &g).unwrap();
        assert_eq!(back.degrees(), t.degrees());
        let other = GroupSpec::gl(2, 2, 1);
        fs::copy(&path, cache.path(&other)).unwrap();
        let og = Arc::new(enumerate(&other, 1000).unwrap());
        assert!(cache.load(&other, &og).is_none());
    }
}
