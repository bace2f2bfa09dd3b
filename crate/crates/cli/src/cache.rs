//! On-disk store of local isomorphism tables, one JSON file per key.
//!
//! A file records the bijection in tableau text form, the local energies and
//! a SHA-256 checksum over the canonical serialization of everything else.
//! Publication is first-write-wins: a file, once in place, is never replaced
//! unless it fails validation.

use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use affine_paths::crystal::Crystal;
use affine_paths::energy::{LocalIsoTable, TableKey, TableStore};
use affine_paths::{RectShape, Tableau};
use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Body {
    format_version: u32,
    rank: usize,
    left: String,
    right: String,
    /// `(x2, x1, y1, y2, H)` with `R(x2 ⊗ x1) = y1 ⊗ y2`.
    entries: Vec<(String, String, String, String, i64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheFile {
    #[serde(flatten)]
    body: Body,
    checksum: String,
}

fn checksum(body: &Body) -> String {
    let bytes = serde_json::to_vec(body).expect("plain data serializes");
    hex::encode(Sha256::digest(bytes))
}

/// Why a file on disk cannot be used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Defect {
    Unreadable(String),
    VersionMismatch(u32),
    ChecksumMismatch,
    Invalid(String),
}

impl std::fmt::Display for Defect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Defect::Unreadable(e) => write!(f, "unreadable: {e}"),
            Defect::VersionMismatch(v) => {
                write!(f, "format version {v}, expected {FORMAT_VERSION}")
            }
            Defect::ChecksumMismatch => write!(f, "checksum mismatch"),
            Defect::Invalid(e) => write!(f, "invalid contents: {e}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Entry {
    pub file: PathBuf,
    pub checksum: Option<String>,
    pub defect: Option<Defect>,
}

pub struct TableCache {
    dir: PathBuf,
    warnings: Vec<String>,
}

pub fn file_name(key: &TableKey) -> String {
    format!("{key}.json")
}

fn encode(table: &LocalIsoTable, left: &Crystal, right: &Crystal) -> CacheFile {
    let key = table.key();
    let entries = table
        .entries()
        .map(|(x2, x1, y1, y2, h)| {
            (
                left.tableau(x2).to_string(),
                right.tableau(x1).to_string(),
                right.tableau(y1).to_string(),
                left.tableau(y2).to_string(),
                h,
            )
        })
        .collect();
    let body = Body {
        format_version: FORMAT_VERSION,
        rank: key.rank,
        left: key.left.to_string(),
        right: key.right.to_string(),
        entries,
    };
    CacheFile {
        checksum: checksum(&body),
        body,
    }
}

fn decode(file: &CacheFile, left: &Crystal, right: &Crystal) -> Result<LocalIsoTable, Defect> {
    let body = &file.body;
    if body.format_version != FORMAT_VERSION {
        return Err(Defect::VersionMismatch(body.format_version));
    }
    if checksum(body) != file.checksum {
        return Err(Defect::ChecksumMismatch);
    }
    let key = TableKey {
        rank: left.rank(),
        left: left.shape(),
        right: right.shape(),
    };
    if body.rank != key.rank
        || body.left != key.left.to_string()
        || body.right != key.right.to_string()
    {
        return Err(Defect::Invalid("key does not match file name".into()));
    }
    let index = |c: &Crystal, s: &str| -> Result<usize, Defect> {
        let t: Tableau = s
            .parse()
            .map_err(|e: affine_paths::Error| Defect::Invalid(e.to_string()))?;
        c.index_of(&t)
            .ok_or_else(|| Defect::Invalid(format!("{s} is not in B^{}", c.shape())))
    };
    let size = left.len() * right.len();
    let mut image = vec![(u32::MAX, u32::MAX); size];
    let mut energy = vec![0; size];
    for (x2, x1, y1, y2, h) in &body.entries {
        let k = index(left, x2)? * right.len() + index(right, x1)?;
        image[k] = (index(right, y1)? as u32, index(left, y2)? as u32);
        energy[k] = *h;
    }
    if body.entries.len() != size || image.iter().any(|p| p.0 == u32::MAX) {
        return Err(Defect::Invalid(
            "entries do not cover the tensor product".into(),
        ));
    }
    LocalIsoTable::from_parts(key, left.len(), right.len(), image, energy)
        .map_err(|e| Defect::Invalid(e.to_string()))
}

impl TableCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(TableCache {
            dir,
            warnings: Vec::new(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Warnings collected since the last call.
    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }

    fn path_of(&self, key: &TableKey) -> PathBuf {
        self.dir.join(file_name(key))
    }

    fn read(
        &self,
        path: &Path,
        left: &Crystal,
        right: &Crystal,
    ) -> Option<Result<LocalIsoTable, Defect>> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => return None,
            Err(e) => return Some(Err(Defect::Unreadable(e.to_string()))),
        };
        Some(
            serde_json::from_slice::<CacheFile>(&bytes)
                .map_err(|e| Defect::Unreadable(e.to_string()))
                .and_then(|f| decode(&f, left, right)),
        )
    }

    /// Publish `table` unless a valid file is already in place; an existing
    /// file must then hold the same table.
    fn publish(&self, table: &LocalIsoTable, left: &Crystal, right: &Crystal) -> Result<()> {
        let path = self.path_of(&table.key());
        let mut text = serde_json::to_string_pretty(&encode(table, left, right))?;
        text.push('\n');
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        match tmp.persist_noclobber(&path) {
            Ok(_) => Ok(()),
            Err(e) if e.error.kind() == ErrorKind::AlreadyExists => {
                match self.read(&path, left, right) {
                    Some(Ok(existing)) if existing == *table => Ok(()),
                    Some(Ok(_)) => bail!("{} holds a different table", path.display()),
                    Some(Err(d)) => bail!(
                        "{} was replaced concurrently by a defective file: {d}",
                        path.display()
                    ),
                    None => bail!("{} vanished during publication", path.display()),
                }
            }
            Err(e) => Err(e.error.into()),
        }
    }

    /// Load the table for `left ⊗ right`, building and publishing it if it is
    /// missing or defective. Returns whether it was rebuilt.
    pub fn load_or_build(
        &mut self,
        left: &Arc<Crystal>,
        right: &Arc<Crystal>,
    ) -> Result<(LocalIsoTable, bool)> {
        let key = TableKey {
            rank: left.rank(),
            left: left.shape(),
            right: right.shape(),
        };
        let path = self.path_of(&key);
        match self.read(&path, left, right) {
            Some(Ok(t)) => return Ok((t, false)),
            Some(Err(defect)) => {
                self.warnings
                    .push(format!("{}: {defect}; rebuilding", path.display()));
                fs::remove_file(&path).with_context(|| format!("removing {}", path.display()))?;
            }
            None => {}
        }
        let table = LocalIsoTable::build(left, right)?;
        self.publish(&table, left, right)?;
        Ok((table, true))
    }

    /// Make every table for ordered pairs drawn from `shapes` available in
    /// `store`, in the order the energy computation needs them.
    pub fn fill(
        &mut self,
        store: &mut TableStore,
        rank: usize,
        pairs: &[(RectShape, RectShape)],
    ) -> Result<()> {
        for &(a, b) in pairs {
            let key = TableKey {
                rank,
                left: a,
                right: b,
            };
            if store.get(&key).is_some() {
                continue;
            }
            let left = Arc::new(Crystal::new(rank, a)?);
            let right = Arc::new(Crystal::new(rank, b)?);
            let (table, _) = self.load_or_build(&left, &right)?;
            store.insert(table)?;
        }
        Ok(())
    }

    pub fn list(&self) -> Result<Vec<Entry>> {
        let mut out = Vec::new();
        for item in fs::read_dir(&self.dir)? {
            let path = item?.path();
            let name = path
                .file_name()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            if !(name.starts_with("R_n") && name.ends_with(".json")) {
                continue;
            }
            let (checksum, defect) = match self.inspect(&path) {
                Ok(sum) => (Some(sum), None),
                Err(d) => (None, Some(d)),
            };
            out.push(Entry {
                file: path,
                checksum,
                defect,
            });
        }
        out.sort_by(|a, b| a.file.cmp(&b.file));
        Ok(out)
    }

    fn inspect(&self, path: &Path) -> Result<String, Defect> {
        let bytes = fs::read(path).map_err(|e| Defect::Unreadable(e.to_string()))?;
        let file: CacheFile =
            serde_json::from_slice(&bytes).map_err(|e| Defect::Unreadable(e.to_string()))?;
        let rank = file.body.rank;
        let parse = |s: &str| {
            s.parse::<RectShape>()
                .map_err(|e| Defect::Invalid(e.to_string()))
        };
        let (l, r) = (parse(&file.body.left)?, parse(&file.body.right)?);
        let key = TableKey {
            rank,
            left: l,
            right: r,
        };
        if path.file_name().and_then(|s| s.to_str()) != Some(file_name(&key).as_str()) {
            return Err(Defect::Invalid("file name does not match key".into()));
        }
        let left = Crystal::new(rank, l).map_err(|e| Defect::Invalid(e.to_string()))?;
        let right = Crystal::new(rank, r).map_err(|e| Defect::Invalid(e.to_string()))?;
        decode(&file, &left, &right)?;
        Ok(file.checksum)
    }

    /// Remove every table file; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        for entry in self.list()? {
            fs::remove_file(&entry.file)
                .map_err(|e| anyhow!("removing {}: {e}", entry.file.display()))?;
            removed += 1;
        }
        Ok(removed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crystals() -> (Arc<Crystal>, Arc<Crystal>) {
        let l = Arc::new(Crystal::new(3, "1x2".parse().unwrap()).unwrap());
        let r = Arc::new(Crystal::new(3, "2x1".parse().unwrap()).unwrap());
        (l, r)
    }

    #[test]
    fn encode_decode_round_trip() {
        let (l, r) = crystals();
        let table = LocalIsoTable::build(&l, &r).unwrap();
        let file = encode(&table, &l, &r);
        assert_eq!(decode(&file, &l, &r).unwrap(), table);
    }

    #[test]
    fn defects_are_classified() {
        let (l, r) = crystals();
        let table = LocalIsoTable::build(&l, &r).unwrap();

        let mut bumped = encode(&table, &l, &r);
        bumped.body.format_version = FORMAT_VERSION + 1;
        bumped.checksum = checksum(&bumped.body);
        assert_eq!(
            decode(&bumped, &l, &r),
            Err(Defect::VersionMismatch(FORMAT_VERSION + 1))
        );

        let mut tampered = encode(&table, &l, &r);
        tampered.body.entries[0].4 += 1;
        assert_eq!(decode(&tampered, &l, &r), Err(Defect::ChecksumMismatch));

        let mut swapped = encode(&table, &l, &r);
        swapped.body.entries.swap(0, 1);
        swapped.body.entries[0].2 = swapped.body.entries[1].2.clone();
        swapped.body.entries[0].3 = swapped.body.entries[1].3.clone();
        swapped.checksum = checksum(&swapped.body);
        assert!(matches!(decode(&swapped, &l, &r), Err(Defect::Invalid(_))));
    }

    #[test]
    fn version_mismatch_triggers_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let (l, r) = crystals();
        let mut cache = TableCache::open(dir.path()).unwrap();
        let (table, rebuilt) = cache.load_or_build(&l, &r).unwrap();
        assert!(rebuilt);
        let path = cache.path_of(&table.key());

        let mut file = encode(&table, &l, &r);
        file.body.format_version = 0;
        file.checksum = checksum(&file.body);
        fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();

        let (again, rebuilt) = cache.load_or_build(&l, &r).unwrap();
        assert!(rebuilt);
        assert_eq!(again, table);
        let warnings = cache.take_warnings();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("format version 0"));
        assert!(!cache.load_or_build(&l, &r).unwrap().1);
    }
}
