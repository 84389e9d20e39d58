use std::sync::Mutex;

use super::{ChatRequest, Completion, CompletionBackend, LlmError, Stage};

/// Passes requests through and remembers each one.
#[derive(Debug)]
pub struct RecordingBackend<B> {
    inner: B,
    log: Mutex<Vec<ChatRequest>>,
}

impl<B: CompletionBackend> RecordingBackend<B> {
    pub fn new(inner: B) -> Self {
        Self { inner, log: Mutex::new(Vec::new()) }
    }

    pub fn inner(&self) -> &B {
        &self.inner
    }

    pub fn requests(&self) -> Vec<ChatRequest> {
        self.log.lock().unwrap().clone()
    }

    pub fn total_calls(&self) -> usize {
        self.log.lock().unwrap().len()
    }

    pub fn calls(&self, stage: Stage) -> usize {
        self.log.lock().unwrap().iter().filter(|r| r.stage == stage).count()
    }

    pub fn clear(&self) {
        self.log.lock().unwrap().clear();
    }
}

impl<B: CompletionBackend> CompletionBackend for RecordingBackend<B> {
    fn complete(&self, req: &ChatRequest) -> Result<Completion, LlmError> {
        self.log.lock().unwrap().push(req.clone());
        self.inner.complete(req)
    }

    fn name(&self) -> &str {
        self.inner.name()
    }
}
