use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{ChatRequest, Completion, CompletionBackend, LlmError, PriceTable, Usage};
use crate::sync::Semaphore;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LiveConfig {
    /// Full URL of an OpenAI-compatible chat completions endpoint.
    pub endpoint: String,
    /// Environment variable holding the bearer token.
    pub api_key_env: String,
    pub prices: PriceTable,
    pub max_concurrent: usize,
    pub request_timeout_seconds: f64,
}

impl Default for LiveConfig {
    fn default() -> Self {
        Self {
            endpoint: "https://api.openai.com/v1/chat/completions".into(),
            api_key_env: "RTC_API_KEY".into(),
            prices: PriceTable::default(),
            max_concurrent: 4,
            request_timeout_seconds: 600.0,
        }
    }
}

struct ApiKey(String);

impl fmt::Debug for ApiKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ApiKey(<redacted>)")
    }
}

/// Blocking client for a chat completions endpoint.
#[derive(Debug)]
pub struct LiveBackend {
    config: LiveConfig,
    key: ApiKey,
    agent: ureq::Agent,
    gate: Semaphore,
}

impl LiveBackend {
    /// Reads the credential from `config.api_key_env`.
    pub fn from_env(config: LiveConfig) -> Result<Self, LlmError> {
        let key = std::env::var(&config.api_key_env)
            .ok()
            .filter(|k| !k.trim().is_empty())
            .ok_or_else(|| LlmError::MissingCredential(config.api_key_env.clone()))?;
        Ok(Self::with_key(config, key))
    }

    pub fn with_key(config: LiveConfig, key: String) -> Self {
        let agent_config = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs_f64(config.request_timeout_seconds)))
            .http_status_as_error(false)
            .build();
        Self {
            gate: Semaphore::new(config.max_concurrent.max(1)),
            agent: ureq::Agent::new_with_config(agent_config),
            key: ApiKey(key),
            config,
        }
    }

    fn request_body(req: &ChatRequest) -> Value {
        json!({
            "model": req.model_id,
            "messages": [{ "role": "user", "content": req.prompt }],
            "max_tokens": req.max_tokens,
            "temperature": req.temperature,
        })
    }
}

/// Pulls text, finish reason and token counts out of a chat completion
/// response.
fn parse_response(body: &Value) -> Result<(String, bool, u64, u64), LlmError> {
    let choice = body
        .pointer("/choices/0")
        .ok_or_else(|| LlmError::MalformedResponse("no choices".into()))?;
    let text = choice
        .pointer("/message/content")
        .and_then(Value::as_str)
        .ok_or_else(|| LlmError::MalformedResponse("choice has no message content".into()))?;
    let truncated = choice.get("finish_reason").and_then(Value::as_str) == Some("length");
    let tokens = |field: &str| body.pointer(&format!("/usage/{field}")).and_then(Value::as_u64).unwrap_or(0);
    Ok((text.to_string(), truncated, tokens("prompt_tokens"), tokens("completion_tokens")))
}

impl CompletionBackend for LiveBackend {
    fn complete(&self, req: &ChatRequest) -> Result<Completion, LlmError> {
        req.validate()?;
        let _permit = self.gate.acquire();
        let start = Instant::now();
        log::debug!("POST {} stage={} model={}", self.config.endpoint, req.stage, req.model_id);
        let mut response = self
            .agent
            .post(&self.config.endpoint)
            .header("Authorization", format!("Bearer {}", self.key.0))
            .send_json(Self::request_body(req))
            .map_err(|e| LlmError::Transport(e.to_string()))?;
        let status = response.status().as_u16();
        if status == 401 || status == 403 {
            return Err(LlmError::Auth(status));
        }
        if !(200..300).contains(&status) {
            let body = response.body_mut().read_to_string().unwrap_or_default();
            return Err(LlmError::Http { status, body: body.chars().take(500).collect() });
        }
        let body: Value = response
            .body_mut()
            .read_json()
            .map_err(|e| LlmError::MalformedResponse(e.to_string()))?;
        let (text, truncated, prompt_tokens, completion_tokens) = parse_response(&body)?;
        if truncated {
            log::warn!("completion for stage {} hit the token limit", req.stage);
        }
        let usage = Usage {
            prompt_tokens,
            completion_tokens,
            wall_seconds: start.elapsed().as_secs_f64(),
            cost: self.config.prices.cost(prompt_tokens, completion_tokens),
        };
        Ok(Completion { text, usage, truncated })
    }

    fn name(&self) -> &str {
        "live"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_chat_response() {
        let body = json!({
            "choices": [{ "message": { "role": "assistant", "content": "Yes" }, "finish_reason": "length" }],
            "usage": { "prompt_tokens": 12, "completion_tokens": 1 }
        });
        assert_eq!(parse_response(&body).unwrap(), ("Yes".to_string(), true, 12, 1));
        assert!(parse_response(&json!({ "choices": [] })).is_err());
    }

    #[test]
    fn key_is_not_printed() {
        let b = LiveBackend::with_key(LiveConfig::default(), "sk-secret".into());
        assert!(!format!("{b:?}").contains("sk-secret"));
    }

    #[test]
    fn missing_credential() {
        let cfg = LiveConfig { api_key_env: "RTC_TEST_UNSET_KEY_VARIABLE".into(), ..LiveConfig::default() };
        assert_eq!(
            LiveBackend::from_env(cfg).unwrap_err(),
            LlmError::MissingCredential("RTC_TEST_UNSET_KEY_VARIABLE".into())
        );
    }
}
