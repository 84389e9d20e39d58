//! Runs generated programs as child processes in a fresh temporary
//! directory, with a wall-clock limit, capped output and an optional
//! address-space limit.
//!
//! This is process isolation only. It keeps runaway programs from hanging or
//! flooding the caller but is not a security boundary.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::os::unix::process::{CommandExt, ExitStatusExt};
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::sync::Semaphore;

/// Fields missing from a config file take the solver defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExecutionLimits {
    pub wall_timeout_seconds: f64,
    pub max_output_bytes: usize,
    pub max_memory_bytes: Option<u64>,
}

impl Default for ExecutionLimits {
    fn default() -> Self {
        Self::solver()
    }
}

impl ExecutionLimits {
    pub const DEFAULT_OUTPUT_BYTES: usize = 8 << 20;

    pub fn extractor() -> Self {
        Self { wall_timeout_seconds: 30.0, max_output_bytes: Self::DEFAULT_OUTPUT_BYTES, max_memory_bytes: None }
    }

    pub fn solver() -> Self {
        Self { wall_timeout_seconds: 60.0, ..Self::extractor() }
    }

    pub fn with_timeout(mut self, seconds: f64) -> Self {
        self.wall_timeout_seconds = seconds;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.wall_timeout_seconds > 0.0 && self.wall_timeout_seconds.is_finite()) {
            return Err(format!("wall timeout {} must be positive", self.wall_timeout_seconds));
        }
        if self.max_output_bytes == 0 {
            return Err("max_output_bytes must be positive".into());
        }
        if self.max_memory_bytes == Some(0) {
            return Err("max_memory_bytes must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ok,
    NonzeroExit,
    Timeout,
    OutputOverflow,
    SpawnFailure,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Ok => "ok",
            Outcome::NonzeroExit => "nonzero_exit",
            Outcome::Timeout => "timeout",
            Outcome::OutputOverflow => "output_overflow",
            Outcome::SpawnFailure => "spawn_failure",
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionResult {
    pub outcome: Outcome,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
    pub exit_code: Option<i32>,
    /// Terminating signal, when the child did not exit normally.
    pub signal: Option<i32>,
    pub wall_seconds: f64,
    pub memory_limit_applied: bool,
    /// Child pid, which is also its process group id.
    pub pid: Option<u32>,
    /// Contents of the requested output files that exist after the run.
    pub files: BTreeMap<String, Vec<u8>>,
}

impl ExecutionResult {
    fn spawn_failure(message: String, started: Instant) -> Self {
        Self {
            outcome: Outcome::SpawnFailure,
            stdout: Vec::new(),
            stderr: message.into_bytes(),
            exit_code: None,
            signal: None,
            wall_seconds: started.elapsed().as_secs_f64(),
            memory_limit_applied: false,
            pid: None,
            files: BTreeMap::new(),
        }
    }

    pub fn stdout_text(&self) -> String {
        String::from_utf8_lossy(&self.stdout).into_owned()
    }

    pub fn stderr_text(&self) -> String {
        String::from_utf8_lossy(&self.stderr).into_owned()
    }
}

/// Command line with a `{program}` placeholder, e.g. `python3 {program}`.
/// Split on whitespace; no shell quoting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct InterpreterCommand {
    pub template: String,
    /// File name the program source is written to.
    pub program_file: String,
}

impl Default for InterpreterCommand {
    fn default() -> Self {
        Self { template: "python3 {program}".into(), program_file: "program.py".into() }
    }
}

impl InterpreterCommand {
    pub fn new(template: impl Into<String>, program_file: impl Into<String>) -> Result<Self, String> {
        let cmd = Self { template: template.into(), program_file: program_file.into() };
        cmd.argv("x")?;
        Ok(cmd)
    }

    fn argv(&self, program: &str) -> Result<Vec<String>, String> {
        let parts: Vec<String> = self.template.split_whitespace().map(|p| p.replace("{program}", program)).collect();
        if parts.is_empty() {
            return Err("interpreter command is empty".into());
        }
        if !self.template.contains("{program}") {
            return Err(format!("interpreter command `{}` has no {{program}} placeholder", self.template));
        }
        Ok(parts)
    }
}

/// One program run.
#[derive(Debug, Clone, Default)]
pub struct ExecutionRequest {
    pub program_source: String,
    pub stdin: String,
    pub args: Vec<String>,
    /// Files written into the working directory before the run.
    pub input_files: Vec<(String, String)>,
    /// Files read back from the working directory afterwards.
    pub output_files: Vec<String>,
}

const ENV_ALLOW: &[&str] = &["PATH", "LANG", "LC_ALL", "LC_CTYPE", "TZ"];

#[derive(Debug)]
pub struct Sandbox {
    interpreter: InterpreterCommand,
    gate: Semaphore,
    temp_root: Option<PathBuf>,
}

impl Default for Sandbox {
    fn default() -> Self {
        Self::new(InterpreterCommand::default(), 4)
    }
}

fn kill_group(pgid: u32) {
    // SAFETY: plain syscall; a negative pid addresses the process group.
    unsafe {
        libc::kill(-(pgid as libc::pid_t), libc::SIGKILL);
    }
}

/// True once the child has terminated; the zombie is left for `wait`.
fn has_exited(pid: u32) -> bool {
    // SAFETY: waitid only writes into the zeroed siginfo we own.
    unsafe {
        let mut info: libc::siginfo_t = std::mem::zeroed();
        let rc = libc::waitid(
            libc::P_PID,
            pid as libc::id_t,
            &mut info,
            libc::WEXITED | libc::WNOHANG | libc::WNOWAIT,
        );
        // Errors (e.g. ECHILD) also mean there is nothing left to wait for.
        rc != 0 || info.si_pid() != 0
    }
}

/// Drains a pipe, keeping at most `limit` bytes and raising `overflow` once
/// more arrive.
fn spawn_reader<R: Read + Send + 'static>(
    mut pipe: R,
    limit: usize,
    overflow: Arc<AtomicBool>,
) -> thread::JoinHandle<Vec<u8>> {
    thread::spawn(move || {
        let mut kept = Vec::new();
        let mut buf = [0u8; 8192];
        loop {
            match pipe.read(&mut buf) {
                Ok(0) | Err(_) => break,
                Ok(k) => {
                    let room = limit.saturating_sub(kept.len());
                    kept.extend_from_slice(&buf[..k.min(room)]);
                    if k > room {
                        overflow.store(true, Ordering::SeqCst);
                    }
                }
            }
        }
        kept
    })
}

impl Sandbox {
    /// `max_parallel` bounds how many children run at once.
    pub fn new(interpreter: InterpreterCommand, max_parallel: usize) -> Self {
        Self { interpreter, gate: Semaphore::new(max_parallel), temp_root: None }
    }

    /// Creates working directories under `root` instead of the system
    /// temporary directory.
    pub fn with_temp_root(mut self, root: impl Into<PathBuf>) -> Self {
        self.temp_root = Some(root.into());
        self
    }

    pub fn interpreter(&self) -> &InterpreterCommand {
        &self.interpreter
    }

    pub fn execute(&self, req: &ExecutionRequest, limits: &ExecutionLimits) -> ExecutionResult {
        let _permit = self.gate.acquire();
        let started = Instant::now();
        if let Err(e) = limits.validate() {
            return ExecutionResult::spawn_failure(e, started);
        }
        let mut builder = tempfile::Builder::new();
        builder.prefix("rtc-run-");
        let workdir = match &self.temp_root {
            Some(root) => builder.tempdir_in(root),
            None => builder.tempdir(),
        };
        let workdir = match workdir {
            Ok(d) => d,
            Err(e) => return ExecutionResult::spawn_failure(format!("temporary directory: {e}"), started),
        };
        let program_path = workdir.path().join(&self.interpreter.program_file);
        let mut writes = vec![(program_path.clone(), req.program_source.as_str())];
        writes.extend(req.input_files.iter().map(|(name, body)| (workdir.path().join(name), body.as_str())));
        for (path, body) in writes {
            if let Err(e) = std::fs::write(&path, body) {
                return ExecutionResult::spawn_failure(format!("writing {}: {e}", path.display()), started);
            }
        }
        let argv = match self.interpreter.argv(&program_path.to_string_lossy()) {
            Ok(a) => a,
            Err(e) => return ExecutionResult::spawn_failure(e, started),
        };

        let mut cmd = Command::new(&argv[0]);
        cmd.args(&argv[1..])
            .args(&req.args)
            .current_dir(workdir.path())
            .env_clear()
            .envs(ENV_ALLOW.iter().filter_map(|k| std::env::var(k).ok().map(|v| (*k, v))))
            .env("HOME", workdir.path())
            .env("TMPDIR", workdir.path())
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .process_group(0);
        let memory_limit_applied = limits.max_memory_bytes.is_some();
        if let Some(bytes) = limits.max_memory_bytes {
            // SAFETY: setrlimit is async-signal-safe and touches no shared state.
            unsafe {
                cmd.pre_exec(move || {
                    let lim = libc::rlimit { rlim_cur: bytes as libc::rlim_t, rlim_max: bytes as libc::rlim_t };
                    if libc::setrlimit(libc::RLIMIT_AS, &lim) != 0 {
                        return Err(std::io::Error::last_os_error());
                    }
                    Ok(())
                });
            }
        }
        let mut child = match cmd.spawn() {
            Ok(c) => c,
            Err(e) => return ExecutionResult::spawn_failure(format!("spawning `{}`: {e}", argv[0]), started),
        };
        let pid = child.id();

        let mut stdin = child.stdin.take().expect("stdin is piped");
        let input = req.stdin.clone();
        let writer = thread::spawn(move || {
            // The child may exit without reading; a broken pipe is fine.
            let _ = stdin.write_all(input.as_bytes());
        });
        let overflow = Arc::new(AtomicBool::new(false));
        let out_reader = spawn_reader(child.stdout.take().unwrap(), limits.max_output_bytes, overflow.clone());
        let err_reader = spawn_reader(child.stderr.take().unwrap(), limits.max_output_bytes, overflow.clone());

        let deadline = started + Duration::from_secs_f64(limits.wall_timeout_seconds);
        let mut timed_out = false;
        // Poll without reaping so the process group id stays reserved until
        // the whole group has been killed.
        loop {
            if has_exited(pid) {
                break;
            }
            if overflow.load(Ordering::SeqCst) {
                break;
            }
            let now = Instant::now();
            if now >= deadline {
                timed_out = true;
                break;
            }
            thread::sleep((deadline - now).min(Duration::from_millis(2)));
        }
        kill_group(pid);
        let status = child.wait().ok();
        let _ = writer.join();
        let stdout = out_reader.join().unwrap_or_default();
        let stderr = err_reader.join().unwrap_or_default();
        let wall_seconds = started.elapsed().as_secs_f64();

        let exit_code = status.and_then(|s| s.code());
        let signal = status.and_then(|s| s.signal());
        let outcome = if timed_out {
            Outcome::Timeout
        } else if overflow.load(Ordering::SeqCst) {
            Outcome::OutputOverflow
        } else if exit_code == Some(0) {
            Outcome::Ok
        } else {
            Outcome::NonzeroExit
        };
        let files = req
            .output_files
            .iter()
            .filter_map(|name| std::fs::read(workdir.path().join(name)).ok().map(|b| (name.clone(), b)))
            .collect();
        ExecutionResult { outcome, stdout, stderr, exit_code, signal, wall_seconds, memory_limit_applied, pid: Some(pid), files }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpreter_template() {
        let cmd = InterpreterCommand::default();
        assert_eq!(cmd.argv("/tmp/p.py").unwrap(), vec!["python3", "/tmp/p.py"]);
        assert!(InterpreterCommand::new("python3", "p.py").is_err());
        assert!(InterpreterCommand::new("  ", "p.py").is_err());
    }

    #[test]
    fn limits_validation() {
        assert!(ExecutionLimits::solver().validate().is_ok());
        assert!(ExecutionLimits::solver().with_timeout(0.0).validate().is_err());
        assert_eq!(ExecutionLimits::solver().wall_timeout_seconds, 60.0);
        assert_eq!(ExecutionLimits::extractor().wall_timeout_seconds, 30.0);
    }

    #[test]
    fn missing_interpreter_is_a_spawn_failure() {
        let sb = Sandbox::new(InterpreterCommand::new("/nonexistent/interp {program}", "p").unwrap(), 1);
        let r = sb.execute(&ExecutionRequest::default(), &ExecutionLimits::solver());
        assert_eq!(r.outcome, Outcome::SpawnFailure);
        assert!(r.stderr_text().contains("/nonexistent/interp"));
    }

    #[test]
    fn shell_echo() {
        let sb = Sandbox::new(InterpreterCommand::new("sh {program}", "p.sh").unwrap(), 1);
        let req = ExecutionRequest { program_source: "cat\n".into(), stdin: "42\n".into(), ..Default::default() };
        let r = sb.execute(&req, &ExecutionLimits::solver());
        assert_eq!(r.outcome, Outcome::Ok);
        assert_eq!(r.stdout, b"42\n");
    }
}
