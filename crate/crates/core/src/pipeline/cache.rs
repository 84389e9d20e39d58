//! Artifact cache keyed by [`CacheKey`]. Entries live in memory and, when a
//! directory is configured, on disk as one directory per key:
//!
//! ```text
//! <dir>/<key>/formulation.json
//! <dir>/<key>/extractor.py
//! <dir>/<key>/pseudocode.txt
//! <dir>/<key>/solver.py
//! <dir>/<key>/provenance.json
//! ```

use std::collections::HashMap;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Condvar, Mutex, RwLock};

use serde::{Deserialize, Serialize};

use crate::graph::{CacheKey, ProblemFormulation};
use crate::llm::{Stage, Usage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProgramKind {
    Extractor,
    Solver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Program {
    pub source: String,
    pub kind: ProgramKind,
}

/// One backend call that contributed to a bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageCall {
    pub stage: Stage,
    pub attempt: u32,
    pub backend: String,
    pub model_id: String,
    pub usage: Usage,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub calls: Vec<StageCall>,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineArtifacts {
    pub formulation: ProblemFormulation,
    pub extractor: Program,
    pub pseudocode: String,
    pub solver: Program,
    pub provenance: Provenance,
}

const FILES: [&str; 5] = ["formulation.json", "extractor.py", "pseudocode.txt", "solver.py", "provenance.json"];

impl PipelineArtifacts {
    fn write_to(&self, dir: &Path) -> io::Result<()> {
        let bodies = [
            to_json(&self.formulation)?,
            self.extractor.source.clone(),
            self.pseudocode.clone(),
            self.solver.source.clone(),
            to_json(&self.provenance)?,
        ];
        std::fs::create_dir_all(dir)?;
        for (name, body) in FILES.iter().zip(bodies) {
            std::fs::write(dir.join(name), body)?;
        }
        Ok(())
    }

    fn read_from(dir: &Path) -> io::Result<Self> {
        let read = |name: &str| std::fs::read_to_string(dir.join(name));
        let invalid = |e: serde_json::Error| io::Error::new(io::ErrorKind::InvalidData, e);
        Ok(Self {
            formulation: serde_json::from_str(&read(FILES[0])?).map_err(invalid)?,
            extractor: Program { source: read(FILES[1])?, kind: ProgramKind::Extractor },
            pseudocode: read(FILES[2])?,
            solver: Program { source: read(FILES[3])?, kind: ProgramKind::Solver },
            provenance: serde_json::from_str(&read(FILES[4])?).map_err(invalid)?,
        })
    }
}

fn to_json<T: Serialize>(value: &T) -> io::Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

#[derive(Debug, Default)]
struct Slot {
    busy: Mutex<bool>,
    cond: Condvar,
}

/// Held while a key's artifacts are being built; other builders of the same
/// key wait for it to drop.
#[derive(Debug)]
pub struct SlotGuard {
    slot: Arc<Slot>,
}

impl Drop for SlotGuard {
    fn drop(&mut self) {
        *self.slot.busy.lock().unwrap_or_else(|e| e.into_inner()) = false;
        self.slot.cond.notify_all();
    }
}

#[derive(Debug, Default)]
pub struct ArtifactCache {
    dir: Option<PathBuf>,
    entries: RwLock<HashMap<CacheKey, Arc<PipelineArtifacts>>>,
    slots: Mutex<HashMap<CacheKey, Arc<Slot>>>,
}

impl ArtifactCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Cache persisted under `dir`, created if missing. Existing bundles are
    /// read lazily on lookup.
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir: Some(dir), ..Self::default() })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn get(&self, key: &CacheKey) -> Option<Arc<PipelineArtifacts>> {
        if let Some(a) = self.entries.read().unwrap().get(key) {
            return Some(a.clone());
        }
        let path = self.dir.as_ref()?.join(key.as_str());
        if !path.is_dir() {
            return None;
        }
        match PipelineArtifacts::read_from(&path) {
            Ok(a) => {
                let a = Arc::new(a);
                self.entries.write().unwrap().insert(key.clone(), a.clone());
                Some(a)
            }
            Err(e) => {
                log::warn!("ignoring unreadable cache entry {}: {e}", path.display());
                None
            }
        }
    }

    /// Stores `artifacts` under `key`, replacing any previous entry.
    pub fn insert(&self, key: &CacheKey, artifacts: Arc<PipelineArtifacts>) -> io::Result<()> {
        if let Some(dir) = &self.dir {
            // Write into a scratch directory and rename so readers never see
            // a half-written bundle.
            let scratch = tempfile::Builder::new().prefix(".incoming-").tempdir_in(dir)?;
            artifacts.write_to(scratch.path())?;
            let target = dir.join(key.as_str());
            if target.exists() {
                std::fs::remove_dir_all(&target)?;
            }
            std::fs::rename(scratch.path(), &target)?;
        }
        self.entries.write().unwrap().insert(key.clone(), artifacts);
        Ok(())
    }

    /// Blocks until no one else holds `key`'s slot, then takes it.
    pub fn lock_slot(&self, key: &CacheKey) -> SlotGuard {
        let slot = self.slots.lock().unwrap().entry(key.clone()).or_default().clone();
        let mut busy = slot.busy.lock().unwrap_or_else(|e| e.into_inner());
        while *busy {
            busy = slot.cond.wait(busy).unwrap_or_else(|e| e.into_inner());
        }
        *busy = true;
        drop(busy);
        SlotGuard { slot }
    }

    /// Keys in memory plus, for a persisted cache, those on disk.
    pub fn keys(&self) -> Vec<CacheKey> {
        let mut keys: Vec<CacheKey> = self.entries.read().unwrap().keys().cloned().collect();
        if let Some(dir) = &self.dir {
            if let Ok(read) = std::fs::read_dir(dir) {
                keys.extend(read.flatten().filter_map(|e| CacheKey::parse(&e.file_name().to_string_lossy())));
            }
        }
        keys.sort();
        keys.dedup();
        keys
    }

    pub fn len(&self) -> usize {
        self.keys().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
