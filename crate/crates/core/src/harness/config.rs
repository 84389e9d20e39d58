//! Run configuration, read from a TOML file.
//!
//! ```toml
//! backend = "scripted"          # or "live"
//! fixtures_dir = "crates/core/fixtures/scripted"
//! scripted_latency_ms = 0
//! workers = 4
//! max_parallel_runs = 4
//! max_retries = 3
//! retry_base_delay_seconds = 1.0
//!
//! [interpreter]
//! template = "python3 {program}"
//! program_file = "program.py"
//!
//! [live]
//! endpoint = "https://api.openai.com/v1/chat/completions"
//! api_key_env = "RTC_API_KEY"
//! prices = { input_per_token = 0.00000015, output_per_token = 0.0000006 }
//!
//! [pipeline.models]
//! reasoning = "o3-mini"
//!
//! [pipeline.solver_limits]
//! wall_timeout_seconds = 60.0
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::llm::{CompletionBackend, LiveBackend, LiveConfig, RetryPolicy, RetryingBackend, ScriptedBackend};
use crate::pipeline::{ArtifactCache, Pipeline, PipelineConfig};
use crate::sandbox::{InterpreterCommand, Sandbox};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Scripted,
    Live,
}

impl std::str::FromStr for BackendKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scripted" => Ok(BackendKind::Scripted),
            "live" => Ok(BackendKind::Live),
            other => Err(HarnessError::Config(format!("unknown backend `{other}` (expected scripted or live)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarnessConfig {
    pub backend: BackendKind,
    pub fixtures_dir: Option<PathBuf>,
    pub scripted_latency_ms: u64,
    pub workers: usize,
    pub max_parallel_runs: usize,
    pub max_retries: u32,
    pub retry_base_delay_seconds: f64,
    pub interpreter: InterpreterCommand,
    pub live: LiveConfig,
    pub pipeline: PipelineConfig,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        let retry = RetryPolicy::default();
        Self {
            backend: BackendKind::Scripted,
            fixtures_dir: None,
            scripted_latency_ms: 0,
            workers: 4,
            max_parallel_runs: 4,
            max_retries: retry.max_retries,
            retry_base_delay_seconds: retry.base_delay.as_secs_f64(),
            interpreter: InterpreterCommand::default(),
            live: LiveConfig::default(),
            pipeline: PipelineConfig::default(),
        }
    }
}

impl HarnessConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let config: HarnessConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.workers == 0 || self.max_parallel_runs == 0 {
            return bad("workers and max_parallel_runs must be at least 1".into());
        }
        if self.retry_base_delay_seconds.is_nan() || self.retry_base_delay_seconds < 0.0 {
            return bad("retry_base_delay_seconds must be non-negative".into());
        }
        if self.backend == BackendKind::Scripted && self.fixtures_dir.is_none() {
            return bad("the scripted backend needs fixtures_dir".into());
        }
        InterpreterCommand::new(self.interpreter.template.clone(), self.interpreter.program_file.clone())
            .map_err(HarnessError::Config)?;
        for (name, limits) in [("extractor", &self.pipeline.extractor_limits), ("solver", &self.pipeline.solver_limits)] {
            limits.validate().map_err(|e| HarnessError::Config(format!("{name}_limits: {e}")))?;
        }
        Ok(())
    }

    pub fn build_backend(&self) -> Result<Arc<dyn CompletionBackend>, HarnessError> {
        Ok(match self.backend {
            BackendKind::Scripted => {
                let dir = self.fixtures_dir.clone().ok_or_else(|| HarnessError::Config("fixtures_dir is not set".into()))?;
                Arc::new(ScriptedBackend::from_dir(dir).with_latency(Duration::from_millis(self.scripted_latency_ms)))
            }
            BackendKind::Live => {
                let live = LiveBackend::from_env(self.live.clone()).map_err(|e| HarnessError::Config(e.to_string()))?;
                let policy = RetryPolicy {
                    max_retries: self.max_retries,
                    base_delay: Duration::from_secs_f64(self.retry_base_delay_seconds),
                };
                Arc::new(RetryingBackend::new(live, policy))
            }
        })
    }

    pub fn build_pipeline(&self, cache: Arc<ArtifactCache>) -> Result<Pipeline, HarnessError> {
        let sandbox = Sandbox::new(self.interpreter.clone(), self.max_parallel_runs);
        Ok(Pipeline::new(self.build_backend()?, Arc::new(sandbox), cache, self.pipeline.clone()))
    }
}
