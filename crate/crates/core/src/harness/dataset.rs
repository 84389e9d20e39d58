use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::HarnessError;

/// One problem. Serialized as a single JSON object per line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub task_id: String,
    pub problem_text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gold_answer: Option<String>,
    #[serde(default)]
    pub meta: BTreeMap<String, Value>,
}

impl ProblemInstance {
    pub fn meta_u64(&self, key: &str) -> Option<u64> {
        self.meta.get(key).and_then(Value::as_u64)
    }

    /// `meta[key]` as a list of node indices.
    pub fn meta_nodes(&self, key: &str) -> Option<Vec<usize>> {
        self.meta
            .get(key)?
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|x| x as usize))
            .collect()
    }
}

pub fn parse_dataset(text: &str) -> Result<Vec<ProblemInstance>, HarnessError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = i + 1;
        let inst: ProblemInstance = serde_json::from_str(line)
            .map_err(|e| HarnessError::Dataset { line: line_no, message: e.to_string() })?;
        if inst.problem_text.trim().is_empty() {
            return Err(HarnessError::Dataset { line: line_no, message: "problem_text is empty".into() });
        }
        out.push(inst);
    }
    if out.is_empty() {
        return Err(HarnessError::EmptyDataset);
    }
    Ok(out)
}

pub fn load_dataset(path: &Path) -> Result<Vec<ProblemInstance>, HarnessError> {
    let file = std::fs::File::open(path).map_err(|e| HarnessError::io(path, e))?;
    let mut text = String::new();
    for line in BufReader::new(file).lines() {
        text.push_str(&line.map_err(|e| HarnessError::io(path, e))?);
        text.push('\n');
    }
    parse_dataset(&text)
}

pub fn render_dataset(instances: &[ProblemInstance]) -> String {
    let mut out = String::new();
    for inst in instances {
        out.push_str(&serde_json::to_string(inst).expect("instances serialize"));
        out.push('\n');
    }
    out
}

pub fn save_dataset(path: &Path, instances: &[ProblemInstance]) -> Result<(), HarnessError> {
    let mut file = std::fs::File::create(path).map_err(|e| HarnessError::io(path, e))?;
    file.write_all(render_dataset(instances).as_bytes()).map_err(|e| HarnessError::io(path, e))
}
