use std::time::Duration;

use super::{ChatRequest, Completion, CompletionBackend, LlmError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetryPolicy {
    pub max_retries: u32,
    /// Delay before the first retry; doubles on each further retry.
    pub base_delay: Duration,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self { max_retries: 3, base_delay: Duration::from_secs(1) }
    }
}

impl RetryPolicy {
    pub fn delay(&self, retry: u32) -> Duration {
        self.base_delay.saturating_mul(1u32.checked_shl(retry).unwrap_or(u32::MAX))
    }
}

/// Retries transient failures with exponential backoff. Deterministic
/// failures such as a missing fixture are returned at once.
#[derive(Debug)]
pub struct RetryingBackend<B> {
    inner: B,
    policy: RetryPolicy,
}

impl<B: CompletionBackend> RetryingBackend<B> {
    pub fn new(inner: B, policy: RetryPolicy) -> Self {
        Self { inner, policy }
    }

    pub fn inner(&self) -> &B {
        &self.inner
    }
}

impl<B: CompletionBackend> CompletionBackend for RetryingBackend<B> {
    fn complete(&self, req: &ChatRequest) -> Result<Completion, LlmError> {
        let mut retry = 0;
        loop {
            match self.inner.complete(req) {
                Ok(c) => return Ok(c),
                Err(e) if e.is_transient() && retry < self.policy.max_retries => {
                    let delay = self.policy.delay(retry);
                    log::warn!("stage {} failed ({e}); retrying in {delay:?}", req.stage);
                    std::thread::sleep(delay);
                    retry += 1;
                }
                Err(e) if e.is_transient() => {
                    return Err(LlmError::RetriesExhausted { attempts: retry + 1, last: Box::new(e) })
                }
                Err(e) => return Err(e),
            }
        }
    }

    fn name(&self) -> &str {
        self.inner.name()
    }
}
