//! Prompt assembly. Templates are stored verbatim under `templates/` with
//! `{}` marking each slot; slot values are trimmed before insertion.

use crate::graph::ProblemFormulation;
use crate::sandbox::ExecutionResult;

pub const FORMATTING: &str = include_str!("templates/formatting.txt");
pub const PURE_PROBLEM: &str = include_str!("templates/pure_problem.txt");
pub const EXTRACTING: &str = include_str!("templates/extracting.txt");
pub const REASONING: &str = include_str!("templates/reasoning.txt");
pub const CODING: &str = include_str!("templates/coding.txt");
pub const REPAIR: &str = include_str!("templates/repair.txt");
pub const DIRECT: &str = include_str!("templates/direct.txt");

/// Stderr kept in a repair prompt.
const STDERR_TAIL_CHARS: usize = 2000;

/// Substitutes `values` into the `{}` slots of `template`, left to right.
/// Values may themselves contain `{}`.
///
/// # Panics
/// If the slot count and value count differ; templates are fixed at compile
/// time so this is a programming error.
pub fn fill(template: &str, values: &[&str]) -> String {
    let pieces: Vec<&str> = template.split("{}").collect();
    assert_eq!(pieces.len(), values.len() + 1, "slot count mismatch");
    let mut out = String::with_capacity(template.len() + values.iter().map(|v| v.len()).sum::<usize>());
    out.push_str(pieces[0]);
    for (value, piece) in values.iter().zip(&pieces[1..]) {
        out.push_str(value.trim());
        out.push_str(piece);
    }
    out
}

pub fn formatting(problem_text: &str) -> String {
    fill(FORMATTING, &[problem_text])
}

pub fn pure_problem(problem_text: &str, input_description: &str, output_description: &str) -> String {
    fill(PURE_PROBLEM, &[problem_text, input_description, output_description])
}

pub fn extracting(problem_text: &str, input_description: &str) -> String {
    fill(EXTRACTING, &[problem_text, input_description])
}

/// Sees only the data-free formulation.
pub fn reasoning(f: &ProblemFormulation) -> String {
    fill(REASONING, &[&f.render()])
}

pub fn coding(f: &ProblemFormulation, pseudocode: &str) -> String {
    fill(CODING, &[&f.render(), pseudocode])
}

pub fn repair(f: &ProblemFormulation, pseudocode: &str, failed_source: &str, result: &ExecutionResult) -> String {
    let stderr = result.stderr_text();
    let skip = stderr.chars().count().saturating_sub(STDERR_TAIL_CHARS);
    let tail: String = stderr.chars().skip(skip).collect();
    let outcome = match result.exit_code {
        Some(code) => format!("{} (exit code {code})", result.outcome),
        None => result.outcome.to_string(),
    };
    let tail = if tail.trim().is_empty() { "(empty)".to_string() } else { tail };
    fill(REPAIR, &[&coding(f, pseudocode), failed_source, &outcome, &tail])
}

pub fn direct(problem_text: &str) -> String {
    fill(DIRECT, &[problem_text])
}
