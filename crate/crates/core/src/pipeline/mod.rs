//! The reasoning-then-coding solver.
//!
//! A problem goes through formatting (input/output descriptions, then the
//! data-free problem statement), extracting (a regex program that turns the
//! text into standard input), reasoning (pseudocode from the formulation
//! alone) and coding (a program implementing the pseudocode). The extractor
//! and solver then run in the sandbox. Artifacts are cached by task id and
//! by formulation hash, so later problems of the same kind only pay for the
//! two program runs.

mod cache;
pub mod parse;
pub mod prompts;

pub use cache::{ArtifactCache, PipelineArtifacts, Program, ProgramKind, Provenance, SlotGuard, StageCall};

use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{canonical_formulation_hash, CacheKey, ProblemFormulation};
use crate::llm::{ChatRequest, CompletionBackend, LlmError, Stage, Usage};
use crate::sandbox::{ExecutionLimits, ExecutionRequest, ExecutionResult, Outcome, Sandbox};

/// Model id per stage. Formatting defaults to the coding model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StageModels {
    pub formatting: String,
    pub extracting: String,
    pub reasoning: String,
    pub coding: String,
    pub direct: String,
}

impl Default for StageModels {
    fn default() -> Self {
        let coding = "gpt-4o-mini".to_string();
        Self {
            formatting: coding.clone(),
            extracting: coding.clone(),
            reasoning: "o3-mini".into(),
            direct: coding.clone(),
            coding,
        }
    }
}

impl StageModels {
    pub fn for_stage(&self, stage: Stage) -> &str {
        match stage {
            Stage::Formatting | Stage::PureProblem => &self.formatting,
            Stage::Extracting => &self.extracting,
            Stage::Reasoning => &self.reasoning,
            Stage::Coding | Stage::Repair => &self.coding,
            Stage::Direct => &self.direct,
        }
    }
}

/// How many times a failing solver is regenerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RepairBudget {
    /// Repair prompts after the first coding attempt of each round.
    pub code: u32,
    /// Extra reasoning rounds once the coding repairs are used up.
    pub reason: u32,
}

impl Default for RepairBudget {
    fn default() -> Self {
        Self { code: 2, reason: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineConfig {
    pub models: StageModels,
    pub max_tokens: u32,
    pub temperature: f64,
    pub repair: RepairBudget,
    pub extractor_limits: ExecutionLimits,
    pub solver_limits: ExecutionLimits,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            models: StageModels::default(),
            max_tokens: 4096,
            temperature: 0.0,
            repair: RepairBudget::default(),
            extractor_limits: ExecutionLimits::extractor(),
            solver_limits: ExecutionLimits::solver(),
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("problem text is empty")]
    EmptyProblem,
    #[error("{stage} call failed: {source}")]
    Backend { stage: Stage, source: LlmError },
    #[error("malformed {stage} completion: {reason}")]
    Malformed { stage: Stage, reason: String },
    #[error("extractor failed ({})", .0.outcome)]
    ExtractorFailed(Box<ExecutionResult>),
    #[error("extractor produced no standard input")]
    EmptyExtraction,
    #[error("solver failed after {attempts} attempts ({})", .last.outcome)]
    SolveFailure { attempts: u32, last: Box<ExecutionResult> },
    #[error("repair requested for a run that succeeded")]
    NothingToRepair,
    #[error("cache write failed: {0}")]
    Cache(#[from] std::io::Error),
}

impl SolveError {
    /// Short failure category used in reports.
    pub fn category(&self) -> &'static str {
        match self {
            SolveError::SolveFailure { last, .. } => last.outcome.as_str(),
            SolveError::ExtractorFailed(_) | SolveError::EmptyExtraction => "extraction",
            SolveError::Backend { .. } => "backend",
            SolveError::Malformed { .. } => "malformed",
            SolveError::EmptyProblem | SolveError::NothingToRepair | SolveError::Cache(_) => "other",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheHit {
    /// Found by dataset task id; no backend calls.
    Task,
    /// Found by formulation hash after the two formatting calls.
    Formulation,
    Miss,
}

#[derive(Debug, Clone)]
pub struct SolveOutput {
    /// Solver stdout with trailing whitespace removed.
    pub answer: String,
    pub artifacts: Arc<PipelineArtifacts>,
    /// Backend calls made for this problem.
    pub calls: Vec<StageCall>,
    /// Stage usage plus sandbox wall time.
    pub usage: Usage,
    pub cache: CacheHit,
    pub extractor_run: ExecutionResult,
    pub solver_run: ExecutionResult,
}

/// Per-solve call log, tracking attempt numbers per stage.
#[derive(Default)]
struct CallLog {
    calls: Vec<StageCall>,
}

impl CallLog {
    fn next_attempt(&self, stage: Stage) -> u32 {
        self.calls.iter().filter(|c| c.stage == stage).count() as u32
    }

    fn usage(&self) -> Usage {
        self.calls.iter().map(|c| c.usage).sum()
    }
}

pub struct Pipeline {
    backend: Arc<dyn CompletionBackend>,
    sandbox: Arc<Sandbox>,
    cache: Arc<ArtifactCache>,
    config: PipelineConfig,
}

fn now_unix() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

impl Pipeline {
    pub fn new(
        backend: Arc<dyn CompletionBackend>,
        sandbox: Arc<Sandbox>,
        cache: Arc<ArtifactCache>,
        config: PipelineConfig,
    ) -> Self {
        Self { backend, sandbox, cache, config }
    }

    /// Same backend, sandbox and config over a different cache.
    pub fn with_cache(&self, cache: Arc<ArtifactCache>) -> Pipeline {
        Pipeline { backend: self.backend.clone(), sandbox: self.sandbox.clone(), cache, config: self.config.clone() }
    }

    pub fn cache(&self) -> &Arc<ArtifactCache> {
        &self.cache
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    fn call(&self, log: &mut CallLog, stage: Stage, task_key: &str, prompt: String) -> Result<String, SolveError> {
        let attempt = log.next_attempt(stage);
        let req = ChatRequest {
            stage,
            task_key: task_key.to_string(),
            attempt,
            prompt,
            model_id: self.config.models.for_stage(stage).to_string(),
            max_tokens: self.config.max_tokens,
            temperature: self.config.temperature,
        };
        let completion = self.backend.complete(&req).map_err(|source| SolveError::Backend { stage, source })?;
        if completion.truncated {
            log::warn!("{stage} completion for `{task_key}` was truncated at {} tokens", req.max_tokens);
        }
        log.calls.push(StageCall {
            stage,
            attempt,
            backend: self.backend.name().to_string(),
            model_id: req.model_id,
            usage: completion.usage,
            truncated: completion.truncated,
        });
        Ok(completion.text)
    }

    /// Two formatting calls: input/output descriptions, then the pure
    /// problem statement.
    fn format(&self, log: &mut CallLog, task_key: &str, problem_text: &str) -> Result<ProblemFormulation, SolveError> {
        let text = self.call(log, Stage::Formatting, task_key, prompts::formatting(problem_text))?;
        let (input, output) =
            parse::io_descriptions(&text).map_err(|reason| SolveError::Malformed { stage: Stage::Formatting, reason })?;
        let text = self.call(log, Stage::PureProblem, task_key, prompts::pure_problem(problem_text, &input, &output))?;
        let pure = parse::pure_problem(&text).map_err(|reason| SolveError::Malformed { stage: Stage::PureProblem, reason })?;
        ProblemFormulation::new(pure, input, output)
            .map_err(|e| SolveError::Malformed { stage: Stage::PureProblem, reason: e.to_string() })
    }

    /// Formatting only, with its own call log.
    pub fn format_problem(&self, task_key: &str, problem_text: &str) -> Result<(ProblemFormulation, Vec<StageCall>), SolveError> {
        if problem_text.trim().is_empty() {
            return Err(SolveError::EmptyProblem);
        }
        let mut log = CallLog::default();
        let f = self.format(&mut log, task_key, problem_text)?;
        Ok((f, log.calls))
    }

    pub fn build_extractor(&self, task_key: &str, problem_text: &str, f: &ProblemFormulation) -> Result<Program, SolveError> {
        self.extractor(&mut CallLog::default(), task_key, problem_text, f)
    }

    pub fn reason_pseudocode(&self, task_key: &str, f: &ProblemFormulation) -> Result<String, SolveError> {
        self.reason(&mut CallLog::default(), task_key, f)
    }

    pub fn code_solution(&self, task_key: &str, f: &ProblemFormulation, pseudocode: &str) -> Result<Program, SolveError> {
        if pseudocode.trim().is_empty() {
            return Err(SolveError::Malformed { stage: Stage::Coding, reason: "pseudocode is empty".into() });
        }
        self.code(&mut CallLog::default(), task_key, f, pseudocode)
    }

    /// One repair call for a failed run.
    pub fn repair_solution(
        &self,
        task_key: &str,
        f: &ProblemFormulation,
        pseudocode: &str,
        failed: &Program,
        err: &ExecutionResult,
    ) -> Result<Program, SolveError> {
        self.repair(&mut CallLog::default(), task_key, f, pseudocode, failed, err)
    }

    fn extractor(&self, log: &mut CallLog, task_key: &str, problem_text: &str, f: &ProblemFormulation) -> Result<Program, SolveError> {
        let text = self.call(log, Stage::Extracting, task_key, prompts::extracting(problem_text, &f.input_description))?;
        let source = parse::last_fenced_block(&text).map_err(|reason| SolveError::Malformed { stage: Stage::Extracting, reason })?;
        Ok(Program { source, kind: ProgramKind::Extractor })
    }

    fn reason(&self, log: &mut CallLog, task_key: &str, f: &ProblemFormulation) -> Result<String, SolveError> {
        let text = self.call(log, Stage::Reasoning, task_key, prompts::reasoning(f))?;
        let (pseudocode, reasoning) =
            parse::pseudocode(&text).map_err(|reason| SolveError::Malformed { stage: Stage::Reasoning, reason })?;
        log::debug!("reasoning for `{task_key}` before the pseudocode:\n{reasoning}");
        Ok(pseudocode)
    }

    fn code(&self, log: &mut CallLog, task_key: &str, f: &ProblemFormulation, pseudocode: &str) -> Result<Program, SolveError> {
        let text = self.call(log, Stage::Coding, task_key, prompts::coding(f, pseudocode))?;
        let source = parse::last_fenced_block(&text).map_err(|reason| SolveError::Malformed { stage: Stage::Coding, reason })?;
        Ok(Program { source, kind: ProgramKind::Solver })
    }

    fn repair(
        &self,
        log: &mut CallLog,
        task_key: &str,
        f: &ProblemFormulation,
        pseudocode: &str,
        failed: &Program,
        err: &ExecutionResult,
    ) -> Result<Program, SolveError> {
        if err.outcome == Outcome::Ok {
            return Err(SolveError::NothingToRepair);
        }
        let prompt = prompts::repair(f, pseudocode, &failed.source, err);
        let text = self.call(log, Stage::Repair, task_key, prompt)?;
        let source = parse::last_fenced_block(&text).map_err(|reason| SolveError::Malformed { stage: Stage::Repair, reason })?;
        Ok(Program { source, kind: ProgramKind::Solver })
    }

    /// Runs the extractor on the problem text and returns standard input.
    fn extract(&self, extractor: &Program, problem_text: &str) -> Result<(String, ExecutionResult), SolveError> {
        let req = ExecutionRequest {
            program_source: extractor.source.clone(),
            args: vec!["problem.txt".into(), "input.txt".into()],
            input_files: vec![("problem.txt".into(), problem_text.to_string())],
            output_files: vec!["input.txt".into()],
            ..ExecutionRequest::default()
        };
        let run = self.sandbox.execute(&req, &self.config.extractor_limits);
        if run.outcome != Outcome::Ok {
            return Err(SolveError::ExtractorFailed(Box::new(run)));
        }
        let stdin = run.files.get("input.txt").map(|b| String::from_utf8_lossy(b).into_owned()).unwrap_or_default();
        if stdin.trim().is_empty() {
            return Err(SolveError::EmptyExtraction);
        }
        Ok((stdin, run))
    }

    fn run_solver(&self, solver: &Program, stdin: &str) -> ExecutionResult {
        let req = ExecutionRequest { program_source: solver.source.clone(), stdin: stdin.to_string(), ..ExecutionRequest::default() };
        self.sandbox.execute(&req, &self.config.solver_limits)
    }

    /// Runs `solver`, regenerating it on failure: up to `code` repairs per
    /// round, then up to `reason` further rounds that start from fresh
    /// pseudocode. `first_run` is a result already obtained for `solver`.
    #[allow(clippy::too_many_arguments)]
    fn run_with_repair(
        &self,
        log: &mut CallLog,
        task_key: &str,
        f: &ProblemFormulation,
        mut pseudocode: String,
        mut solver: Program,
        first_run: Option<ExecutionResult>,
        stdin: &str,
        sandbox_seconds: &mut f64,
    ) -> Result<(String, Program, ExecutionResult), SolveError> {
        let budget = self.config.repair;
        let mut attempts = u32::from(first_run.is_some());
        let mut pending = first_run;
        let mut last: Option<ExecutionResult> = None;
        for round in 0..=budget.reason {
            if round > 0 {
                pseudocode = self.reason(log, task_key, f)?;
                solver = self.code(log, task_key, f, &pseudocode)?;
            }
            for repair in 0..=budget.code {
                if repair > 0 {
                    let failed = last.as_ref().expect("a failed run precedes every repair");
                    solver = self.repair(log, task_key, f, &pseudocode, &solver, failed)?;
                }
                let run = match pending.take() {
                    Some(run) => run,
                    None => {
                        let run = self.run_solver(&solver, stdin);
                        attempts += 1;
                        *sandbox_seconds += run.wall_seconds;
                        run
                    }
                };
                if run.outcome == Outcome::Ok {
                    return Ok((pseudocode, solver, run));
                }
                log::info!("solver for `{task_key}` failed ({}) on attempt {attempts}", run.outcome);
                last = Some(run);
            }
        }
        let last = last.expect("at least one attempt ran");
        Err(SolveError::SolveFailure { attempts, last: Box::new(last) })
    }

    /// Solves one problem. `task_id` may be empty, in which case only the
    /// formulation hash is used as a cache key.
    pub fn solve(&self, task_id: &str, problem_text: &str) -> Result<SolveOutput, SolveError> {
        if problem_text.trim().is_empty() {
            return Err(SolveError::EmptyProblem);
        }
        let task_id = task_id.trim();
        let task_key = (!task_id.is_empty()).then(|| CacheKey::for_task(task_id));
        let fixture_key = if task_id.is_empty() { "default" } else { task_id };
        let mut log = CallLog::default();

        if let Some(hit) = task_key.as_ref().and_then(|k| self.cache.get(k)) {
            return self.run_cached(hit, CacheHit::Task, task_key.as_ref(), fixture_key, problem_text, log);
        }
        // Only one solve per task builds artifacts; the rest wait and reuse.
        let _task_slot = task_key.as_ref().map(|k| self.cache.lock_slot(k));
        if let Some(hit) = task_key.as_ref().and_then(|k| self.cache.get(k)) {
            return self.run_cached(hit, CacheHit::Task, task_key.as_ref(), fixture_key, problem_text, log);
        }

        let formulation = self.format(&mut log, fixture_key, problem_text)?;
        let hash_key = canonical_formulation_hash(&formulation);
        let _hash_slot = self.cache.lock_slot(&hash_key);
        if let Some(hit) = self.cache.get(&hash_key) {
            if let Some(k) = &task_key {
                self.cache.insert(k, hit.clone())?;
            }
            return self.run_cached(hit, CacheHit::Formulation, task_key.as_ref(), fixture_key, problem_text, log);
        }

        let extractor = self.extractor(&mut log, fixture_key, problem_text, &formulation)?;
        let pseudocode = self.reason(&mut log, fixture_key, &formulation)?;
        let solver = self.code(&mut log, fixture_key, &formulation, &pseudocode)?;
        let (stdin, extractor_run) = self.extract(&extractor, problem_text)?;
        let mut sandbox_seconds = extractor_run.wall_seconds;
        let (pseudocode, solver, solver_run) = self.run_with_repair(
            &mut log,
            fixture_key,
            &formulation,
            pseudocode,
            solver,
            None,
            &stdin,
            &mut sandbox_seconds,
        )?;

        let artifacts = Arc::new(PipelineArtifacts {
            formulation,
            extractor,
            pseudocode,
            solver,
            provenance: Provenance { calls: log.calls.clone(), created_at: now_unix() },
        });
        self.cache.insert(&hash_key, artifacts.clone())?;
        if let Some(k) = &task_key {
            self.cache.insert(k, artifacts.clone())?;
        }
        Ok(output(artifacts, CacheHit::Miss, log, sandbox_seconds, extractor_run, solver_run))
    }

    /// Runs cached programs. A cached solver that fails on this problem goes
    /// through the repair schedule, and a working replacement is cached.
    fn run_cached(
        &self,
        artifacts: Arc<PipelineArtifacts>,
        hit: CacheHit,
        task_key: Option<&CacheKey>,
        fixture_key: &str,
        problem_text: &str,
        mut log: CallLog,
    ) -> Result<SolveOutput, SolveError> {
        let (stdin, extractor_run) = self.extract(&artifacts.extractor, problem_text)?;
        let solver_run = self.run_solver(&artifacts.solver, &stdin);
        let mut sandbox_seconds = extractor_run.wall_seconds + solver_run.wall_seconds;
        if solver_run.outcome == Outcome::Ok {
            return Ok(output(artifacts, hit, log, sandbox_seconds, extractor_run, solver_run));
        }
        let f = &artifacts.formulation;
        let (pseudocode, solver, solver_run) = self.run_with_repair(
            &mut log,
            fixture_key,
            f,
            artifacts.pseudocode.clone(),
            artifacts.solver.clone(),
            Some(solver_run),
            &stdin,
            &mut sandbox_seconds,
        )?;
        let mut calls = artifacts.provenance.calls.clone();
        calls.extend(log.calls.iter().cloned());
        let repaired = Arc::new(PipelineArtifacts {
            formulation: f.clone(),
            extractor: artifacts.extractor.clone(),
            pseudocode,
            solver,
            provenance: Provenance { calls, created_at: now_unix() },
        });
        self.cache.insert(&canonical_formulation_hash(f), repaired.clone())?;
        if let Some(k) = task_key {
            self.cache.insert(k, repaired.clone())?;
        }
        Ok(output(repaired, hit, log, sandbox_seconds, extractor_run, solver_run))
    }

    /// Single-prompt baseline: the model answers in text.
    pub fn solve_direct(&self, task_id: &str, problem_text: &str) -> Result<(String, Usage), SolveError> {
        if problem_text.trim().is_empty() {
            return Err(SolveError::EmptyProblem);
        }
        let key = if task_id.trim().is_empty() { "default" } else { task_id.trim() };
        let mut log = CallLog::default();
        let text = self.call(&mut log, Stage::Direct, key, prompts::direct(problem_text))?;
        Ok((text.trim().to_string(), log.usage()))
    }
}

fn output(
    artifacts: Arc<PipelineArtifacts>,
    cache: CacheHit,
    log: CallLog,
    sandbox_seconds: f64,
    extractor_run: ExecutionResult,
    solver_run: ExecutionResult,
) -> SolveOutput {
    let mut usage = log.usage();
    usage.wall_seconds += sandbox_seconds;
    SolveOutput {
        answer: solver_run.stdout_text().trim_end().to_string(),
        artifacts,
        calls: log.calls,
        usage,
        cache,
        extractor_run,
        solver_run,
    }
}
