//! Batch evaluation over a dataset with a bounded worker pool.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{check_answer, HarnessError, ProblemInstance, TaskSpec, Verdict};
use crate::llm::{Stage, Usage};
use crate::pipeline::{ArtifactCache, CacheHit, Pipeline};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMode {
    /// Reasoning-then-coding pipeline.
    Pipeline,
    /// One prompt, textual answer.
    Direct,
}

impl std::str::FromStr for SolverMode {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pipeline" => Ok(SolverMode::Pipeline),
            "direct" => Ok(SolverMode::Direct),
            other => Err(HarnessError::Config(format!("unknown mode `{other}` (expected pipeline or direct)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub mode: SolverMode,
    pub workers: usize,
    /// With reuse off every instance starts from an empty cache, which is
    /// the cold baseline for timing comparisons.
    pub reuse: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self { mode: SolverMode::Pipeline, workers: 4, reuse: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub index: usize,
    pub task_id: String,
    pub predicted: Option<String>,
    pub verdict: Option<Verdict>,
    /// Solve failure category when no answer was produced.
    pub failure: Option<String>,
    pub error: Option<String>,
    pub cache: Option<CacheHit>,
    pub calls: Vec<Stage>,
    pub usage: Usage,
    pub wall_seconds: f64,
}

impl InstanceRecord {
    pub fn correct(&self) -> bool {
        self.verdict.as_ref().is_some_and(|v| v.correct)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRow {
    pub task_id: String,
    pub count: usize,
    pub correct: usize,
    pub wrong: usize,
    /// Solve failures by category (`timeout`, `nonzero_exit`, ...).
    pub failures: BTreeMap<String, usize>,
    pub accuracy: f64,
    pub usage: Usage,
    pub time_per_problem: f64,
    pub cost_per_problem: f64,
}

impl TaskRow {
    pub fn failure_count(&self) -> usize {
        self.failures.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub mode: SolverMode,
    /// Sorted by task id.
    pub rows: Vec<TaskRow>,
    pub count: usize,
    pub correct: usize,
    /// Correct over all instances.
    pub micro_accuracy: f64,
    /// Mean of per-task accuracies.
    pub macro_accuracy: f64,
    pub usage: Usage,
    /// Mean per-instance wall time.
    pub time_per_problem: f64,
    pub elapsed_seconds: f64,
    pub calls_by_stage: BTreeMap<Stage, usize>,
    pub instances: Vec<InstanceRecord>,
}

impl EvalReport {
    pub fn failure_count(&self) -> usize {
        self.rows.iter().map(TaskRow::failure_count).sum()
    }

    /// Copy with every clock-derived field zeroed, for run-to-run comparison.
    pub fn without_timing(&self) -> EvalReport {
        let mut r = self.clone();
        r.usage.wall_seconds = 0.0;
        r.time_per_problem = 0.0;
        r.elapsed_seconds = 0.0;
        for row in &mut r.rows {
            row.usage.wall_seconds = 0.0;
            row.time_per_problem = 0.0;
        }
        for inst in &mut r.instances {
            inst.usage.wall_seconds = 0.0;
            inst.wall_seconds = 0.0;
        }
        r
    }
}

pub fn evaluate(
    dataset: &[ProblemInstance],
    pipeline: &Pipeline,
    config: &EvalConfig,
) -> Result<EvalReport, HarnessError> {
    if dataset.is_empty() {
        return Err(HarnessError::EmptyDataset);
    }
    if config.workers == 0 {
        return Err(HarnessError::Config("workers must be at least 1".into()));
    }
    let specs: HashMap<&str, TaskSpec> =
        dataset.iter().map(|i| (i.task_id.as_str(), TaskSpec::for_task_id(&i.task_id))).collect();

    let started = Instant::now();
    let next = AtomicUsize::new(0);
    let records: Mutex<Vec<Option<InstanceRecord>>> = Mutex::new(vec![None; dataset.len()]);
    std::thread::scope(|scope| {
        for _ in 0..config.workers.min(dataset.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = dataset.get(i) else { break };
                let record = run_one(i, inst, &specs[inst.task_id.as_str()], pipeline, config);
                records.lock().unwrap()[i] = Some(record);
            });
        }
    });
    let elapsed = started.elapsed().as_secs_f64();
    let instances: Vec<InstanceRecord> =
        records.into_inner().unwrap().into_iter().map(|r| r.expect("every instance ran")).collect();
    Ok(aggregate(config.mode, instances, elapsed))
}

fn run_one(index: usize, inst: &ProblemInstance, spec: &TaskSpec, pipeline: &Pipeline, config: &EvalConfig) -> InstanceRecord {
    let started = Instant::now();
    let mut record = InstanceRecord {
        index,
        task_id: inst.task_id.clone(),
        predicted: None,
        verdict: None,
        failure: None,
        error: None,
        cache: None,
        calls: Vec::new(),
        usage: Usage::default(),
        wall_seconds: 0.0,
    };
    let answer = match config.mode {
        SolverMode::Pipeline => {
            let fresh;
            let p = if config.reuse {
                pipeline
            } else {
                fresh = pipeline.with_cache(Arc::new(ArtifactCache::in_memory()));
                &fresh
            };
            p.solve(&inst.task_id, &inst.problem_text).map(|out| {
                record.cache = Some(out.cache);
                record.calls = out.calls.iter().map(|c| c.stage).collect();
                record.usage = out.usage;
                out.answer
            })
        }
        SolverMode::Direct => pipeline.solve_direct(&inst.task_id, &inst.problem_text).map(|(answer, usage)| {
            record.calls = vec![Stage::Direct];
            record.usage = usage;
            answer
        }),
    };
    match answer {
        Ok(answer) => {
            record.verdict = Some(check_answer(spec, &answer, inst));
            record.predicted = Some(answer);
        }
        Err(e) => {
            log::warn!("instance {index} ({}) failed: {e}", inst.task_id);
            record.failure = Some(e.category().to_string());
            record.error = Some(e.to_string());
        }
    }
    record.wall_seconds = started.elapsed().as_secs_f64();
    record
}

fn aggregate(mode: SolverMode, instances: Vec<InstanceRecord>, elapsed: f64) -> EvalReport {
    let mut by_task: BTreeMap<&str, Vec<&InstanceRecord>> = BTreeMap::new();
    for r in &instances {
        by_task.entry(r.task_id.as_str()).or_default().push(r);
    }
    let rows: Vec<TaskRow> = by_task
        .into_iter()
        .map(|(task_id, recs)| {
            let count = recs.len();
            let correct = recs.iter().filter(|r| r.correct()).count();
            let mut failures = BTreeMap::new();
            for f in recs.iter().filter_map(|r| r.failure.as_ref()) {
                *failures.entry(f.clone()).or_insert(0) += 1;
            }
            let failed: usize = failures.values().sum();
            let usage: Usage = recs.iter().map(|r| &r.usage).sum();
            TaskRow {
                task_id: task_id.to_string(),
                count,
                correct,
                wrong: count - correct - failed,
                failures,
                accuracy: correct as f64 / count as f64,
                usage,
                time_per_problem: recs.iter().map(|r| r.wall_seconds).sum::<f64>() / count as f64,
                cost_per_problem: usage.cost / count as f64,
            }
        })
        .collect();
    let count = instances.len();
    let correct = rows.iter().map(|r| r.correct).sum();
    let mut calls_by_stage = BTreeMap::new();
    for stage in instances.iter().flat_map(|r| &r.calls) {
        *calls_by_stage.entry(*stage).or_insert(0) += 1;
    }
    EvalReport {
        mode,
        micro_accuracy: correct as f64 / count as f64,
        macro_accuracy: rows.iter().map(|r| r.accuracy).sum::<f64>() / rows.len() as f64,
        usage: instances.iter().map(|r| &r.usage).sum(),
        time_per_problem: instances.iter().map(|r| r.wall_seconds).sum::<f64>() / count as f64,
        elapsed_seconds: elapsed,
        calls_by_stage,
        rows,
        count,
        correct,
        instances,
    }
}
