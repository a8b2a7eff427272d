//! On-disk cache of character tables, one JSON file per group.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use charvan_core::{irreducible_characters, CharacterTable, PermGroup, TableJson};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};

/// Bumped whenever the file layout or the table conventions change.
pub const CACHE_VERSION: u8 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u8,
    #[serde(flatten)]
    table: TableJson,
}

/// File name for a group: SHA-256 of the format version, the degree and
/// the sorted generator image sequences.
pub fn cache_key(group: &PermGroup) -> String {
    let mut gens: Vec<&[u32]> = group.generators().iter().map(|p| p.images()).collect();
    gens.sort_unstable();
    let mut h = Sha256::new();
    h.update([CACHE_VERSION]);
    h.update((group.degree() as u64).to_le_bytes());
    for g in gens {
        for &i in g {
            h.update(i.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

pub fn cache_path(dir: &Path, group: &PermGroup) -> PathBuf {
    dir.join(format!("{}.json", cache_key(group)))
}

/// Where a table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Computed,
}

/// Reads the table from `dir` if a valid entry exists, otherwise computes
/// it and writes the entry. Unreadable or stale entries are replaced.
pub fn cached_table(
    dir: &Path,
    name: &str,
    group: &PermGroup,
) -> Result<(CharacterTable, CacheStatus)> {
    let path = cache_path(dir, group);
    if let Some(table) = read_entry(&path, group) {
        return Ok((table, CacheStatus::Hit));
    }
    let table = irreducible_characters(group)?;
    write_entry(dir, &path, &table.to_json(name))?;
    Ok((table, CacheStatus::Computed))
}

fn read_entry(path: &Path, group: &PermGroup) -> Option<CharacterTable> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.version != CACHE_VERSION {
        return None;
    }
    CharacterTable::from_json(group, &file.table).ok()
}

fn write_entry(dir: &Path, path: &Path, table: &TableJson) -> Result<()> {
    let io = |source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    };
    fs::create_dir_all(dir).map_err(io)?;
    let file = CacheFile {
        version: CACHE_VERSION,
        table: table.clone(),
    };
    let text = serde_json::to_string(&file).expect("table serialises");
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_group;

    #[test]
    fn key_ignores_generator_order() {
        let a = builtin_group("S4").unwrap().group;
        let mut gens = a.generators().to_vec();
        gens.reverse();
        let b = PermGroup::from_generators(&gens, Default::default()).unwrap();
        assert_eq!(cache_key(&a), cache_key(&b));
        assert_eq!(cache_key(&a).len(), 64);
        assert_ne!(
            cache_key(&a),
            cache_key(&builtin_group("A4").unwrap().group)
        );
    }

    #[test]
    fn hit_after_compute_and_recompute_on_bad_version() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().join("cache");
        let g = builtin_group("SL(2,3)").unwrap().group;
        let (t1, s1) = cached_table(&dir, "SL(2,3)", &g).unwrap();
        assert_eq!(s1, CacheStatus::Computed);
        let (t2, s2) = cached_table(&dir, "SL(2,3)", &g).unwrap();
        assert_eq!(s2, CacheStatus::Hit);
        assert_eq!(t1.to_json("x"), t2.to_json("x"));

        let path = cache_path(&dir, &g);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("{\"version\":1,"));
        fs::write(&path, text.replacen("\"version\":1", "\"version\":0", 1)).unwrap();
        assert_eq!(
            cached_table(&dir, "SL(2,3)", &g).unwrap().1,
            CacheStatus::Computed
        );
        fs::write(&path, "garbage").unwrap();
        assert_eq!(
            cached_table(&dir, "SL(2,3)", &g).unwrap().1,
            CacheStatus::Computed
        );
        assert_eq!(
            cached_table(&dir, "SL(2,3)", &g).unwrap().1,
            CacheStatus::Hit
        );
    }
}
