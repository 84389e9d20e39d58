//! Plain-table and CSV renderings of an [`EvalReport`].

use std::path::Path;
use std::str::FromStr;

use super::{EvalReport, HarnessError, TaskRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" | "plain" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(HarnessError::Config(format!("unknown report format `{other}` (expected table or csv)"))),
        }
    }
}

const HEADER: [&str; 8] = ["task", "count", "correct", "wrong", "accuracy%", "failures", "time/problem", "cost/problem"];

fn percent(x: f64) -> String {
    format!("{:.1}", x * 100.0)
}

fn failures(row: &TaskRow) -> String {
    if row.failures.is_empty() {
        return "0".into();
    }
    row.failures.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(";")
}

fn rows(report: &EvalReport) -> Vec<[String; 8]> {
    let mut out: Vec<[String; 8]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.task_id.clone(),
                r.count.to_string(),
                r.correct.to_string(),
                r.wrong.to_string(),
                percent(r.accuracy),
                failures(r),
                format!("{:.3}", r.time_per_problem),
                format!("{:.6}", r.cost_per_problem),
            ]
        })
        .collect();
    if report.rows.len() > 1 {
        let wrong: usize = report.rows.iter().map(|r| r.wrong).sum();
        let mut all = TaskRow {
            task_id: String::new(),
            count: report.count,
            correct: report.correct,
            wrong,
            failures: Default::default(),
            accuracy: report.micro_accuracy,
            usage: report.usage,
            time_per_problem: report.time_per_problem,
            cost_per_problem: report.usage.cost / report.count as f64,
        };
        for r in &report.rows {
            for (k, v) in &r.failures {
                *all.failures.entry(k.clone()).or_insert(0) += v;
            }
        }
        out.push([
            "all (micro)".into(),
            all.count.to_string(),
            all.correct.to_string(),
            all.wrong.to_string(),
            percent(all.accuracy),
            failures(&all),
            format!("{:.3}", all.time_per_problem),
            format!("{:.6}", all.cost_per_problem),
        ]);
        let dash = || "-".to_string();
        out.push([
            "all (macro)".into(),
            dash(),
            dash(),
            dash(),
            percent(report.macro_accuracy),
            dash(),
            dash(),
            dash(),
        ]);
    }
    out
}

pub fn render_report(report: &EvalReport, format: ReportFormat) -> String {
    let body = rows(report);
    let mut out = String::new();
    match format {
        ReportFormat::Csv => {
            out.push_str(&HEADER.join(","));
            out.push('\n');
            for row in body {
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        ReportFormat::Table => {
            let mut widths = HEADER.map(str::len);
            for row in &body {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| -> String {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(widths)
                    .enumerate()
                    .map(|(i, (c, w))| if i == 0 { format!("{c:<w$}") } else { format!("{c:>w$}") })
                    .collect();
                format!("{}\n", padded.join("  ").trim_end())
            };
            out.push_str(&line(HEADER.to_vec()));
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&line(rule.iter().map(String::as_str).collect()));
            for row in &body {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
    }
    out
}

pub fn write_report(report: &EvalReport, format: ReportFormat, path: &Path) -> Result<(), HarnessError> {
    std::fs::write(path, render_report(report, format)).map_err(|e| HarnessError::io(path, e))
}
