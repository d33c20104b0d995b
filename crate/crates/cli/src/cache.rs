//! On-disk cache of Littlewood-Richardson decompositions, one JSON file per
//! rank.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use beurling::lie_repr::{DominantWeight, LittlewoodRichardson, TensorDecomposition, TensorSource};
use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "BEURLING_CACHE_DIR";

/// `--cache-dir`, then `$BEURLING_CACHE_DIR`, then `$XDG_DATA_HOME/beurling`,
/// then `~/.local/share/beurling`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    let from_env = |key: &str| std::env::var_os(key).filter(|v| !v.is_empty()).map(PathBuf::from);
    from_env(CACHE_DIR_ENV)
        .or_else(|| from_env("XDG_DATA_HOME").map(|p| p.join("beurling")))
        .or_else(|| from_env("HOME").map(|p| p.join(".local/share/beurling")))
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    n: usize,
    entries: Vec<TensorDecomposition>,
}

type Key = (DominantWeight, DominantWeight);

#[derive(Default)]
struct State {
    loaded: BTreeSet<usize>,
    entries: BTreeMap<usize, BTreeMap<Key, TensorDecomposition>>,
    dirty: BTreeSet<usize>,
}

/// A [`TensorSource`] that consults the cache before computing.
pub struct LrCache {
    dir: PathBuf,
    inner: LittlewoodRichardson,
    state: Mutex<State>,
}

impl LrCache {
    pub fn new(dir: PathBuf) -> Self {
        LrCache { dir, inner: LittlewoodRichardson::default(), state: Mutex::new(State::default()) }
    }

    pub fn file_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("lr-v{CACHE_VERSION}-n{n}.json"))
    }

    // Unreadable, malformed or stale files are treated as empty.
    fn load(&self, state: &mut State, n: usize) {
        if !state.loaded.insert(n) {
            return;
        }
        let map = state.entries.entry(n).or_default();
        let Ok(text) = fs::read_to_string(self.file_for(n)) else { return };
        let Ok(file) = serde_json::from_str::<CacheFile>(&text) else { return };
        if file.version != CACHE_VERSION || file.n != n {
            return;
        }
        for dec in file.entries {
            if dec.lhs.rank() == n && dec.rhs.rank() == n {
                map.insert((dec.lhs.clone(), dec.rhs.clone()), dec);
            }
        }
    }

    /// Writes every rank with new entries, atomically.
    pub fn flush(&self) -> std::io::Result<()> {
        let mut state = self.state.lock().unwrap();
        let dirty = std::mem::take(&mut state.dirty);
        if dirty.is_empty() {
            return Ok(());
        }
        fs::create_dir_all(&self.dir)?;
        for n in dirty {
            let file = CacheFile {
                version: CACHE_VERSION,
                n,
                entries: state.entries[&n].values().cloned().collect(),
            };
            let target = self.file_for(n);
            let tmp = self.dir.join(format!(".lr-v{CACHE_VERSION}-n{n}.json.{}.tmp", std::process::id()));
            {
                let mut f = fs::File::create(&tmp)?;
                f.write_all(serde_json::to_string(&file)?.as_bytes())?;
                f.sync_all()?;
            }
            fs::rename(&tmp, &target)?;
        }
        Ok(())
    }
}

impl TensorSource for LrCache {
    fn decompose(&self, lhs: &DominantWeight, rhs: &DominantWeight) -> beurling::Result<TensorDecomposition> {
        let n = lhs.rank();
        let key = (lhs.clone(), rhs.clone());
        {
            let mut state = self.state.lock().unwrap();
            self.load(&mut state, n);
            if let Some(hit) = state.entries.get(&n).and_then(|m| m.get(&key)) {
                return Ok(hit.clone());
            }
        }
        let dec = self.inner.decompose(lhs, rhs)?;
        let mut state = self.state.lock().unwrap();
        state.entries.entry(n).or_default().insert(key, dec.clone());
        state.dirty.insert(n);
        Ok(dec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DominantWeight {
        s.parse().unwrap()
    }

    #[test]
    fn round_trip_through_disk() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LrCache::new(dir.path().to_path_buf());
        let fresh = cache.decompose(&w("2,1,0"), &w("1,0,0")).unwrap();
        cache.flush().unwrap();
        assert!(cache.file_for(3).exists());

        let reopened = LrCache::new(dir.path().to_path_buf());
        let hit = reopened.decompose(&w("2,1,0"), &w("1,0,0")).unwrap();
        assert_eq!(hit, fresh);
        assert!(reopened.state.lock().unwrap().dirty.is_empty());
    }

    #[test]
    fn stale_version_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LrCache::new(dir.path().to_path_buf());
        let bogus = r#"{"version":0,"n":2,"entries":[{"lhs":[1,0],"rhs":[1,0],"terms":[{"weight":[5,0],"multiplicity":9}]}]}"#;
        fs::write(cache.file_for(2), bogus).unwrap();
        let dec = cache.decompose(&w("1,0"), &w("1,0")).unwrap();
        assert_eq!(dec.canonical_text(), "(1,0) ⊗ (1,0) = 1·(0,0) + 1·(2,0)");
    }

    #[test]
    fn corrupt_file_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LrCache::new(dir.path().to_path_buf());
        fs::write(cache.file_for(2), "{not json").unwrap();
        assert!(cache.decompose(&w("1,0"), &w("1,0")).unwrap().conserves_dimension());
        cache.flush().unwrap();
        let text = fs::read_to_string(cache.file_for(2)).unwrap();
        assert!(text.starts_with("{\"version\":1"));
    }

    #[test]
    fn flag_takes_precedence() {
        let p = Path::new("/tmp/somewhere");
        assert_eq!(resolve_cache_dir(Some(p)), Some(p.to_path_buf()));
    }
}
