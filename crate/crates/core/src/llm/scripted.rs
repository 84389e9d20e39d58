use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::RwLock;
use std::time::{Duration, Instant};

use super::{ChatRequest, Completion, CompletionBackend, LlmError, Stage, Usage};

/// Deterministic stand-in for a model. Completions are looked up by
/// `(task key, stage)`, first as `<key>.<stage>.<attempt>.txt` and then as
/// `<key>.<stage>.txt`. In-memory entries take precedence over files.
/// Task key, stage and, for attempt-specific entries, the attempt index.
type EntryKey = (String, Stage, Option<u32>);

#[derive(Debug, Default)]
pub struct ScriptedBackend {
    dir: Option<PathBuf>,
    entries: RwLock<HashMap<EntryKey, String>>,
    latency: Duration,
}

fn estimate_tokens(text: &str) -> u64 {
    text.chars().count().div_ceil(4) as u64
}

impl ScriptedBackend {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dir(dir: impl Into<PathBuf>) -> Self {
        Self { dir: Some(dir.into()), ..Self::default() }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Sleeps this long per call, to stand in for model latency.
    pub fn with_latency(mut self, latency: Duration) -> Self {
        self.latency = latency;
        self
    }

    pub fn insert(&self, key: &str, stage: Stage, text: impl Into<String>) {
        self.entries.write().unwrap().insert((key.to_string(), stage, None), text.into());
    }

    /// Fixture used only for the given attempt index.
    pub fn insert_attempt(&self, key: &str, stage: Stage, attempt: u32, text: impl Into<String>) {
        self.entries.write().unwrap().insert((key.to_string(), stage, Some(attempt)), text.into());
    }

    fn lookup(&self, req: &ChatRequest) -> Result<String, LlmError> {
        let key = req.task_key.as_str();
        {
            let entries = self.entries.read().unwrap();
            for attempt in [Some(req.attempt), None] {
                if let Some(text) = entries.get(&(key.to_string(), req.stage, attempt)) {
                    return Ok(text.clone());
                }
            }
        }
        if let Some(dir) = &self.dir {
            let names = [format!("{key}.{}.{}.txt", req.stage, req.attempt), format!("{key}.{}.txt", req.stage)];
            for name in names {
                match std::fs::read_to_string(dir.join(&name)) {
                    Ok(text) => return Ok(text),
                    Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                    Err(e) => return Err(LlmError::Io(format!("{}: {e}", dir.join(name).display()))),
                }
            }
        }
        Err(LlmError::NoFixture { stage: req.stage, key: key.to_string() })
    }
}

impl CompletionBackend for ScriptedBackend {
    fn complete(&self, req: &ChatRequest) -> Result<Completion, LlmError> {
        req.validate()?;
        let start = Instant::now();
        let text = self.lookup(req)?;
        if !self.latency.is_zero() {
            std::thread::sleep(self.latency);
        }
        let usage = Usage {
            prompt_tokens: estimate_tokens(&req.prompt),
            completion_tokens: estimate_tokens(&text),
            wall_seconds: start.elapsed().as_secs_f64(),
            cost: 0.0,
        };
        Ok(Completion { text, usage, truncated: false })
    }

    fn name(&self) -> &str {
        "scripted"
    }
}
