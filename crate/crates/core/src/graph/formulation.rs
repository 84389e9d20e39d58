use std::fmt;
use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::GraphError;

static CONCRETE_TUPLE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"\(\s*-?\d+\s*(?:,|->)\s*-?\d+").unwrap());

/// Data-free statement of a problem plus its standard input and output
/// descriptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFormulation {
    pub pure_problem: String,
    pub input_description: String,
    pub output_description: String,
}

impl ProblemFormulation {
    pub fn new(
        pure_problem: impl Into<String>,
        input_description: impl Into<String>,
        output_description: impl Into<String>,
    ) -> Result<Self, GraphError> {
        let f = Self {
            pure_problem: pure_problem.into(),
            input_description: input_description.into(),
            output_description: output_description.into(),
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let fields = [
            ("pure problem", &self.pure_problem),
            ("input description", &self.input_description),
            ("output description", &self.output_description),
        ];
        for (name, value) in fields {
            if value.trim().is_empty() {
                return Err(GraphError::InvalidFormulation(format!("{name} is empty")));
            }
        }
        if let Some(m) = CONCRETE_TUPLE.find(&self.pure_problem) {
            return Err(GraphError::InvalidFormulation(format!(
                "pure problem still contains instance data near `{}`",
                m.as_str()
            )));
        }
        Ok(())
    }

    /// The formulation as it is shown to the reasoning and coding stages.
    pub fn render(&self) -> String {
        format!(
            "{}\n\nInput\n{}\n\nOutput\n{}",
            self.pure_problem.trim(),
            self.input_description.trim(),
            self.output_description.trim()
        )
    }
}

/// Hex SHA-256 digest identifying a cache entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CacheKey(String);

impl CacheKey {
    /// Key for artifacts shared by every instance of a dataset task id.
    pub fn for_task(task_id: &str) -> Self {
        Self(digest(&["task", task_id.trim()]))
    }

    /// Accepts a 64-character lowercase hex digest.
    pub fn parse(s: &str) -> Option<Self> {
        let ok = s.len() == 64 && s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b));
        ok.then(|| Self(s.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CacheKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            h.update([0x1f]);
        }
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn normalize(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// SHA-256 over the three fields after whitespace collapse and lowercasing.
pub fn canonical_formulation_hash(f: &ProblemFormulation) -> CacheKey {
    CacheKey(digest(&[
        "formulation",
        &normalize(&f.pure_problem),
        &normalize(&f.input_description),
        &normalize(&f.output_description),
    ]))
}
