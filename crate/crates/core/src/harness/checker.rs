//! Answer judges. A prediction that cannot be read is wrong with reason
//! `format`; the judges never panic on model output.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ProblemInstance, TaskKind, TaskSpec};
use crate::graph::parse_graph_text;
use crate::verify;
use crate::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckerKind {
    YesNo,
    ExactInt,
    NumericTol,
    ValidOrder,
    ValidPathOptimal,
    ValidSetOptimal,
    ExactTextMultiline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictReason {
    Ok,
    Format,
    Wrong,
    /// Feasible witness whose cost or size misses the optimum.
    Suboptimal,
    /// Witness that breaks the task's constraints.
    Infeasible,
    /// Missing gold answer or an instance the judge cannot read.
    Ungradable,
}

impl VerdictReason {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictReason::Ok => "ok",
            VerdictReason::Format => "format",
            VerdictReason::Wrong => "wrong",
            VerdictReason::Suboptimal => "suboptimal",
            VerdictReason::Infeasible => "infeasible",
            VerdictReason::Ungradable => "ungradable",
        }
    }
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub correct: bool,
    pub reason: VerdictReason,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    fn ok() -> Self {
        Self { correct: true, reason: VerdictReason::Ok, detail: None }
    }

    fn no(reason: VerdictReason, detail: impl Into<String>) -> Self {
        Self { correct: false, reason, detail: Some(detail.into()) }
    }

    fn equal(same: bool, predicted: &str, gold: &str) -> Self {
        if same {
            Self::ok()
        } else {
            Self::no(VerdictReason::Wrong, format!("expected `{gold}`, got `{predicted}`"))
        }
    }
}

/// Relative tolerance for `numeric_tol`, with the same value as an absolute
/// floor since gold values are printed to six decimals.
pub const NUMERIC_TOLERANCE: f64 = 1e-6;

pub fn check_answer(spec: &TaskSpec, predicted: &str, inst: &ProblemInstance) -> Verdict {
    let Some(gold) = inst.gold_answer.as_deref() else {
        return Verdict::no(VerdictReason::Ungradable, "instance has no gold answer");
    };
    let predicted = predicted.trim();
    match spec.checker {
        CheckerKind::YesNo => {
            let Some(p) = yes_no(predicted) else {
                return Verdict::no(VerdictReason::Format, format!("expected yes or no, got `{predicted}`"));
            };
            Verdict::equal(Some(p) == yes_no(gold), predicted, gold)
        }
        CheckerKind::ExactInt => match (int_token(predicted), int_token(gold)) {
            (None, _) => Verdict::no(VerdictReason::Format, format!("expected an integer, got `{predicted}`")),
            (Some(p), g) => Verdict::equal(Some(p) == g, predicted, gold),
        },
        CheckerKind::NumericTol => match (number(predicted), number(gold)) {
            (None, _) => Verdict::no(VerdictReason::Format, format!("expected a number, got `{predicted}`")),
            (Some(p), Some(g)) => {
                Verdict::equal((p - g).abs() <= NUMERIC_TOLERANCE * g.abs().max(1.0), predicted, gold)
            }
            (Some(_), None) => Verdict::no(VerdictReason::Ungradable, format!("gold `{gold}` is not a number")),
        },
        CheckerKind::ExactTextMultiline => {
            Verdict::equal(normalize_text(predicted) == normalize_text(gold), predicted, gold)
        }
        CheckerKind::ValidOrder | CheckerKind::ValidPathOptimal | CheckerKind::ValidSetOptimal => {
            let Some(kind) = spec.kind else {
                return Verdict::equal(normalize_text(predicted) == normalize_text(gold), predicted, gold);
            };
            let g = match parse_graph_text(&inst.problem_text, kind.directed(), kind.weighted()) {
                Ok(g) => g,
                Err(e) => return Verdict::no(VerdictReason::Ungradable, format!("cannot read the graph: {e}")),
            };
            match spec.checker {
                CheckerKind::ValidOrder => check_order(&g, predicted),
                CheckerKind::ValidSetOptimal => check_set(kind, &g, predicted, gold),
                _ => check_path(kind, &g, predicted, gold, inst),
            }
        }
    }
}

fn yes_no(s: &str) -> Option<bool> {
    match s.trim_matches(|c: char| !c.is_alphanumeric()).to_ascii_lowercase().as_str() {
        "yes" => Some(true),
        "no" => Some(false),
        _ => None,
    }
}

fn int_token(s: &str) -> Option<i64> {
    s.trim().trim_end_matches('.').parse().ok()
}

fn number(s: &str) -> Option<f64> {
    let s = s.trim();
    let s = s.strip_suffix('.').unwrap_or(s);
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn normalize_text(s: &str) -> String {
    s.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

/// Node numbers separated by spaces, commas or arrows, optionally inside
/// brackets.
fn node_list(s: &str) -> Option<Vec<usize>> {
    let cleaned: String = s
        .trim()
        .trim_end_matches('.')
        .chars()
        .map(|c| if matches!(c, ',' | '[' | ']' | '(' | ')' | '-' | '>') { ' ' } else { c })
        .collect();
    let nodes: Option<Vec<usize>> = cleaned.split_whitespace().map(|t| t.parse().ok()).collect();
    nodes.filter(|v| !v.is_empty())
}

fn is_none_answer(s: &str) -> bool {
    let t = s.trim().trim_end_matches('.');
    t == "-1" || yes_no(t) == Some(false)
}

fn check_order(g: &Graph, predicted: &str) -> Verdict {
    let Some(order) = node_list(predicted) else {
        return Verdict::no(VerdictReason::Format, format!("expected node numbers, got `{predicted}`"));
    };
    match verify::check_topological_order(g, &order) {
        Ok(()) => Verdict::ok(),
        Err(e) => Verdict::no(VerdictReason::Infeasible, e.to_string()),
    }
}

fn check_set(kind: TaskKind, g: &Graph, predicted: &str, gold: &str) -> Verdict {
    let Some(gold_set) = node_list(gold) else {
        return Verdict::no(VerdictReason::Ungradable, format!("gold `{gold}` is not a node set"));
    };
    let Some(set) = node_list(predicted) else {
        return Verdict::no(VerdictReason::Format, format!("expected node numbers, got `{predicted}`"));
    };
    let (feasible, maximize) = match kind {
        TaskKind::Mis => (verify::check_independent_set(g, &set), true),
        TaskKind::MaxClique => (verify::check_clique(g, &set), true),
        TaskKind::Mvc => (verify::check_vertex_cover(g, &set), false),
        other => return Verdict::no(VerdictReason::Ungradable, format!("{other} has no set judge")),
    };
    if let Err(e) = feasible {
        return Verdict::no(VerdictReason::Infeasible, e.to_string());
    }
    let worse = if maximize { set.len() < gold_set.len() } else { set.len() > gold_set.len() };
    if worse {
        return Verdict::no(
            VerdictReason::Suboptimal,
            format!("size {} against optimum {}", set.len(), gold_set.len()),
        );
    }
    Verdict::ok()
}

fn check_path(kind: TaskKind, g: &Graph, predicted: &str, gold: &str, inst: &ProblemInstance) -> Verdict {
    let gold_none = is_none_answer(gold);
    if is_none_answer(predicted) {
        return Verdict::equal(gold_none, predicted, gold);
    }
    let Some(walk) = node_list(predicted) else {
        return Verdict::no(VerdictReason::Format, format!("expected node numbers, got `{predicted}`"));
    };
    // Cost of a witness, or the reason it is not one.
    let cost = |nodes: &[usize]| -> Result<i64, String> {
        match kind {
            TaskKind::ShortestPathRoute => {
                let q = inst.meta_nodes("query").filter(|q| q.len() == 2).ok_or("instance has no query pair")?;
                verify::path_cost(g, nodes, q[0], q[1]).map_err(|e| e.to_string())
            }
            TaskKind::HamiltonPath => verify::check_hamilton_path(g, nodes).map(|_| 0).map_err(|e| e.to_string()),
            TaskKind::Tsp => verify::tour_cost(g, nodes).map_err(|e| e.to_string()),
            other => Err(format!("{other} has no path judge")),
        }
    };
    let got = match cost(&walk) {
        Ok(c) => c,
        Err(e) => return Verdict::no(VerdictReason::Infeasible, e),
    };
    if gold_none {
        // The oracle is exhaustive; a witness it could not find is a
        // judge-side inconsistency rather than a model win.
        return Verdict::no(VerdictReason::Ungradable, "valid witness where the gold answer has none");
    }
    let best = match node_list(gold).ok_or_else(|| format!("gold `{gold}` is not a path")).and_then(|p| cost(&p)) {
        Ok(c) => c,
        Err(e) => return Verdict::no(VerdictReason::Ungradable, e),
    };
    if got > best {
        return Verdict::no(VerdictReason::Suboptimal, format!("cost {got} against optimum {best}"));
    }
    Verdict::ok()
}
