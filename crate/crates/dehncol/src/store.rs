//! Append-only results store: one JSON record per line, keyed by
//! (knot, p, computation kind, convention version), with an index sidecar
//! for O(1) lookup. Single writer, any number of readers. Records embed a
//! hash of their inputs so stale cache entries are detected when a diagram
//! changes under the same name.

use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Version tag of the geometric conventions (corner roles, weight signs,
/// canonical generator order). Changing any convention must change this
/// string so cached records stop matching.
pub const CONVENTION_VERSION: &str = "ccw-quadrant-v1";

/// Identifies one computation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RecordKey {
    /// Knot name, or a hash-derived label for anonymous diagrams.
    pub knot: String,
    pub p: u64,
    /// Computation kind, e.g. "colorings", "invariant-nontrivial".
    pub kind: String,
    pub convention: String,
}

impl RecordKey {
    pub fn new(knot: &str, p: u64, kind: &str) -> Self {
        RecordKey {
            knot: knot.to_string(),
            p,
            kind: kind.to_string(),
            convention: CONVENTION_VERSION.to_string(),
        }
    }

    fn index_key(&self) -> String {
        format!("{}|{}|{}|{}", self.knot, self.p, self.kind, self.convention)
    }
}

/// One stored result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub key: RecordKey,
    /// SHA-256 hex of the canonical input description.
    pub inputs_hash: String,
    /// Result payload; identical inputs must reproduce this value exactly.
    pub outputs: serde_json::Value,
    /// Seconds since the Unix epoch at write time.
    pub timestamp: u64,
    pub tool_version: String,
}

/// Canonical hash of a computation's inputs (diagram text plus parameters).
pub fn inputs_hash(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize, Deserialize, Default)]
struct Index {
    /// Length of the record file the index was built against.
    file_len: u64,
    /// index_key -> byte offset of the record line.
    offsets: BTreeMap<String, u64>,
}

/// The store itself. Opening scans or reuses the sidecar index; lookups by
/// key return the most recently appended record.
pub struct ResultsStore {
    path: PathBuf,
    index: Index,
}

impl ResultsStore {
    pub fn open(path: &Path) -> Result<Self> {
        let mut store = ResultsStore {
            path: path.to_path_buf(),
            index: Index::default(),
        };
        let file_len = std::fs::metadata(path).map(|m| m.len()).unwrap_or(0);
        let sidecar = store.sidecar_path();
        let reuse = std::fs::read_to_string(&sidecar)
            .ok()
            .and_then(|text| serde_json::from_str::<Index>(&text).ok())
            .filter(|idx| idx.file_len == file_len);
        store.index = match reuse {
            Some(idx) => idx,
            None => Self::scan(path)?,
        };
        Ok(store)
    }

    fn sidecar_path(&self) -> PathBuf {
        let mut os = self.path.as_os_str().to_owned();
        os.push(".idx");
        PathBuf::from(os)
    }

    fn scan(path: &Path) -> Result<Index> {
        let mut index = Index::default();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(index),
            Err(e) => return Err(e.into()),
        };
        let mut offset = 0u64;
        for line in text.split_inclusive('\n') {
            let trimmed = line.trim();
            if !trimmed.is_empty() {
                let record: Record = serde_json::from_str(trimmed).map_err(|e| {
                    Error::InvalidInput(format!(
                        "{}: corrupt record at byte {offset}: {e}",
                        path.display()
                    ))
                })?;
                index.offsets.insert(record.key.index_key(), offset);
            }
            offset += line.len() as u64;
        }
        index.file_len = offset;
        Ok(index)
    }

    /// Fetches the latest record under the key, if any.
    pub fn get(&self, key: &RecordKey) -> Result<Option<Record>> {
        let Some(&offset) = self.index.offsets.get(&key.index_key()) else {
            return Ok(None);
        };
        let mut f = std::fs::File::open(&self.path)?;
        f.seek(SeekFrom::Start(offset))?;
        let mut rest = String::new();
        f.read_to_string(&mut rest)?;
        let line = rest.lines().next().unwrap_or_default();
        let record: Record = serde_json::from_str(line).map_err(|e| {
            Error::InvalidInput(format!(
                "{}: corrupt record at byte {offset}: {e}",
                self.path.display()
            ))
        })?;
        Ok(Some(record))
    }

    /// Appends a record and refreshes the sidecar index.
    pub fn put(&mut self, record: &Record) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let offset = f.seek(SeekFrom::End(0))?;
        let line = serde_json::to_string(record).map_err(Error::from)?;
        f.write_all(line.as_bytes())?;
        f.write_all(b"\n")?;
        f.flush()?;
        self.index.offsets.insert(record.key.index_key(), offset);
        self.index.file_len = offset + line.len() as u64 + 1;
        std::fs::write(self.sidecar_path(), serde_json::to_string(&self.index)?)?;
        Ok(())
    }

    /// Returns the cached outputs when the key is present with matching
    /// inputs hash; otherwise runs `compute`, stores the result, and
    /// returns it. The bool is true on a cache hit.
    pub fn get_or_compute(
        &mut self,
        key: RecordKey,
        inputs_hash: &str,
        compute: impl FnOnce() -> Result<serde_json::Value>,
    ) -> Result<(serde_json::Value, bool)> {
        if let Some(rec) = self.get(&key)? {
            if rec.inputs_hash == inputs_hash {
                return Ok((rec.outputs, true));
            }
        }
        let outputs = compute()?;
        let record = Record {
            key,
            inputs_hash: inputs_hash.to_string(),
            outputs: outputs.clone(),
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        };
        self.put(&record)?;
        Ok((outputs, false))
    }

    pub fn len(&self) -> usize {
        self.index.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.offsets.is_empty()
    }
}
