//! Pulls stage outputs out of raw completions. Header matching is
//! case-sensitive; a header line may carry markdown decoration (`#`, `*`)
//! and a trailing colon.

use std::sync::LazyLock;

use regex::Regex;

static FENCED: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"(?s)```[^\n`]*\n(.*?)```").unwrap());

fn header_name(line: &str) -> &str {
    line.trim()
        .trim_start_matches(['#', '*', ' '])
        .trim_end_matches(['*', ' '])
        .trim_end_matches(':')
        .trim_end_matches(['*', ' '])
}

fn header_positions<'a>(lines: &'a [&'a str], name: &'a str) -> impl Iterator<Item = usize> + 'a {
    lines.iter().enumerate().filter(move |(_, l)| header_name(l) == name).map(|(i, _)| i)
}

fn join_trimmed(lines: &[&str]) -> String {
    lines.join("\n").trim().to_string()
}

/// Input and output descriptions from a formatting completion: the text
/// between the first `Input` header and the next `Output` header, and the
/// text after that.
pub fn io_descriptions(text: &str) -> Result<(String, String), String> {
    let lines: Vec<&str> = text.lines().collect();
    let input_at = header_positions(&lines, "Input").next().ok_or("no `Input` header")?;
    let output_at = header_positions(&lines, "Output")
        .find(|&i| i > input_at)
        .ok_or("no `Output` header after `Input`")?;
    let input = join_trimmed(&lines[input_at + 1..output_at]);
    let output = join_trimmed(&lines[output_at + 1..]);
    if input.is_empty() || output.is_empty() {
        return Err("empty input or output description".into());
    }
    Ok((input, output))
}

fn after_last_header(text: &str, name: &str) -> Result<String, String> {
    let lines: Vec<&str> = text.lines().collect();
    let at = header_positions(&lines, name).last().ok_or_else(|| format!("no `{name}` header"))?;
    let body = join_trimmed(&lines[at + 1..]);
    if body.is_empty() {
        return Err(format!("nothing after the `{name}` header"));
    }
    Ok(body)
}

pub fn pure_problem(text: &str) -> Result<String, String> {
    after_last_header(text, "Pure Problem")
}

/// Text after the last `Pseudocode` header, plus the reasoning before it.
pub fn pseudocode(text: &str) -> Result<(String, String), String> {
    let body = after_last_header(text, "Pseudocode")?;
    let lines: Vec<&str> = text.lines().collect();
    let at = header_positions(&lines, "Pseudocode").last().unwrap_or(0);
    Ok((body, join_trimmed(&lines[..at])))
}

/// Contents of the last fenced code block.
pub fn last_fenced_block(text: &str) -> Result<String, String> {
    FENCED
        .captures_iter(text)
        .last()
        .map(|c| c[1].to_string())
        .filter(|code| !code.trim().is_empty())
        .ok_or_else(|| "no fenced code block".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_completion() {
        let text = "Sure.\nInput\nThe first line contains n.\n\nOutput\nOutput one integer.\n";
        assert_eq!(
            io_descriptions(text).unwrap(),
            ("The first line contains n.".to_string(), "Output one integer.".to_string())
        );
        let md = "**Input:**\nline\n### Output\nans";
        assert_eq!(io_descriptions(md).unwrap(), ("line".to_string(), "ans".to_string()));
        assert!(io_descriptions("Output\nx").is_err());
        assert!(io_descriptions("input\nx\noutput\ny").is_err());
    }

    #[test]
    fn pure_problem_header() {
        assert_eq!(pure_problem("Pure Problem\nFind the path from s to t.").unwrap(), "Find the path from s to t.");
        assert!(pure_problem("Problem\nx").is_err());
    }

    #[test]
    fn pseudocode_keeps_only_the_tail() {
        let text = "Let me think about pseudocode first.\nUse Dijkstra.\nPseudocode\nread graph\nrun dijkstra\n";
        let (code, reasoning) = pseudocode(text).unwrap();
        assert_eq!(code, "read graph\nrun dijkstra");
        assert_eq!(reasoning, "Let me think about pseudocode first.\nUse Dijkstra.");
        assert!(pseudocode("pseudocode\nx").is_err());
    }

    #[test]
    fn fenced_blocks() {
        let two = "```python\nprint(1)\n```\ntext\n```python\nprint(2)\n```";
        assert_eq!(last_fenced_block(two).unwrap(), "print(2)\n");
        assert_eq!(last_fenced_block("```\nx = 1\n```").unwrap(), "x = 1\n");
        assert!(last_fenced_block("print(1)").is_err());
    }
}
