//! Completion backends: a live chat endpoint, a scripted fixture backend for
//! offline runs, and wrappers for retries and call recording.

mod live;
mod recording;
mod retry;
mod scripted;

pub use live::{LiveBackend, LiveConfig};
pub use recording::RecordingBackend;
pub use retry::{RetryPolicy, RetryingBackend};
pub use scripted::ScriptedBackend;

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which prompt a request was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Formatting,
    PureProblem,
    Extracting,
    Reasoning,
    Coding,
    Repair,
    /// Single-prompt baseline that answers in text.
    Direct,
}

impl Stage {
    pub const ALL: [Stage; 7] = [
        Stage::Formatting,
        Stage::PureProblem,
        Stage::Extracting,
        Stage::Reasoning,
        Stage::Coding,
        Stage::Repair,
        Stage::Direct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Formatting => "formatting",
            Stage::PureProblem => "pure_problem",
            Stage::Extracting => "extracting",
            Stage::Reasoning => "reasoning",
            Stage::Coding => "coding",
            Stage::Repair => "repair",
            Stage::Direct => "direct",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Stage {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.as_str() == s)
            .ok_or_else(|| format!("unknown stage `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChatRequest {
    pub stage: Stage,
    /// Task identifier used by the scripted backend to find fixtures.
    pub task_key: String,
    /// Zero-based index of this request among requests of the same stage
    /// for one solve.
    pub attempt: u32,
    pub prompt: String,
    pub model_id: String,
    pub max_tokens: u32,
    pub temperature: f64,
}

impl ChatRequest {
    pub fn new(stage: Stage, task_key: impl Into<String>, prompt: impl Into<String>) -> Self {
        Self {
            stage,
            task_key: task_key.into(),
            attempt: 0,
            prompt: prompt.into(),
            model_id: String::new(),
            max_tokens: 4096,
            temperature: 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), LlmError> {
        if self.prompt.trim().is_empty() {
            return Err(LlmError::InvalidRequest("prompt is empty".into()));
        }
        if self.max_tokens == 0 {
            return Err(LlmError::InvalidRequest("max_tokens must be positive".into()));
        }
        if self.temperature.is_nan() || self.temperature < 0.0 {
            return Err(LlmError::InvalidRequest(format!("temperature {} is negative", self.temperature)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Usage {
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    pub wall_seconds: f64,
    pub cost: f64,
}

impl Add for Usage {
    type Output = Usage;

    fn add(self, o: Usage) -> Usage {
        Usage {
            prompt_tokens: self.prompt_tokens + o.prompt_tokens,
            completion_tokens: self.completion_tokens + o.completion_tokens,
            wall_seconds: self.wall_seconds + o.wall_seconds,
            cost: self.cost + o.cost,
        }
    }
}

impl Sum for Usage {
    fn sum<I: Iterator<Item = Usage>>(iter: I) -> Usage {
        iter.fold(Usage::default(), Add::add)
    }
}

impl<'a> Sum<&'a Usage> for Usage {
    fn sum<I: Iterator<Item = &'a Usage>>(iter: I) -> Usage {
        iter.copied().sum()
    }
}

/// Field-wise sum.
pub fn account<'a>(usages: impl IntoIterator<Item = &'a Usage>) -> Usage {
    usages.into_iter().sum()
}

/// Price per token, in whatever currency the config uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PriceTable {
    pub input_per_token: f64,
    pub output_per_token: f64,
}

impl PriceTable {
    pub fn cost(&self, prompt_tokens: u64, completion_tokens: u64) -> f64 {
        prompt_tokens as f64 * self.input_per_token + completion_tokens as f64 * self.output_per_token
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Completion {
    /// Raw completion text, unmodified.
    pub text: String,
    pub usage: Usage,
    /// The backend stopped at the token limit.
    pub truncated: bool,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LlmError {
    #[error("no fixture for stage `{stage}` and key `{key}`")]
    NoFixture { stage: Stage, key: String },
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("credential variable `{0}` is not set")]
    MissingCredential(String),
    #[error("authentication rejected (HTTP {0})")]
    Auth(u16),
    #[error("HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("transport error: {0}")]
    Transport(String),
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("fixture read failed: {0}")]
    Io(String),
    #[error("gave up after {attempts} attempts: {last}")]
    RetriesExhausted { attempts: u32, last: Box<LlmError> },
}

impl LlmError {
    /// Worth retrying: network trouble, rate limits and server errors.
    pub fn is_transient(&self) -> bool {
        match self {
            LlmError::Transport(_) => true,
            LlmError::Http { status, .. } => *status == 408 || *status == 429 || *status >= 500,
            _ => false,
        }
    }
}

pub trait CompletionBackend: Send + Sync {
    fn complete(&self, req: &ChatRequest) -> Result<Completion, LlmError>;

    /// Short name used in provenance records.
    fn name(&self) -> &str;
}

impl<B: CompletionBackend + ?Sized> CompletionBackend for std::sync::Arc<B> {
    fn complete(&self, req: &ChatRequest) -> Result<Completion, LlmError> {
        (**self).complete(req)
    }

    fn name(&self) -> &str {
        (**self).name()
    }
}
