//! Dataset handling, instance generation, answer checking, batch
//! evaluation and reports.

mod checker;
mod config;
mod dataset;
mod eval;
mod report;
mod tasks;

pub use checker::{check_answer, CheckerKind, Verdict, VerdictReason};
pub use config::{BackendKind, HarnessConfig};
pub use dataset::{load_dataset, parse_dataset, render_dataset, save_dataset, ProblemInstance};
pub use eval::{evaluate, EvalConfig, EvalReport, InstanceRecord, SolverMode, TaskRow};
pub use report::{render_report, write_report, ReportFormat};
pub use tasks::{generate_instances, GenParams, TaskKind, TaskSpec};

use std::path::Path;

use thiserror::Error;

use crate::graph::GraphError;
use crate::oracle::OracleError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("dataset line {line}: {message}")]
    Dataset { line: usize, message: String },
    #[error("empty dataset")]
    EmptyDataset,
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown task `{0}`")]
    UnknownTask(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error("config: {0}")]
    Config(String),
}

impl HarnessError {
    pub fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        HarnessError::Io { path: path.display().to_string(), message: e.to_string() }
    }
}
