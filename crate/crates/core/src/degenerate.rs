//! Detector for meaningless summaries: repeated special characters, too few
//! distinct words, or a response that is essentially a code dump.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// A single non-alphanumeric character accounting for more than this
    /// fraction of non-whitespace characters flags `repeated_char`.
    #[serde(default = "default_repeated_char_fraction")]
    pub repeated_char_fraction: f64,
    /// Fewer distinct alphabetic words than this flags `too_few_words`.
    #[serde(default = "default_min_distinct_words")]
    pub min_distinct_words: usize,
    /// Fenced code blocks covering more than this fraction of all characters
    /// flags `code_dump`.
    #[serde(default = "default_code_dump_fraction")]
    pub code_dump_fraction: f64,
}

fn default_repeated_char_fraction() -> f64 {
    0.5
}

fn default_min_distinct_words() -> usize {
    5
}

fn default_code_dump_fraction() -> f64 {
    0.8
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            repeated_char_fraction: default_repeated_char_fraction(),
            min_distinct_words: default_min_distinct_words(),
            code_dump_fraction: default_code_dump_fraction(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    RepeatedChar,
    TooFewWords,
    CodeDump,
}

impl Flag {
    pub fn code(&self) -> &'static str {
        match self {
            Flag::RepeatedChar => "repeated_char",
            Flag::TooFewWords => "too_few_words",
            Flag::CodeDump => "code_dump",
        }
    }
}

/// Flags for `summary`; an empty vector means clean. Flags may combine.
pub fn detect_degenerate(summary: &str, thresholds: &Thresholds) -> Vec<Flag> {
    let mut flags = Vec::new();

    let non_ws: Vec<char> = summary.chars().filter(|c| !c.is_whitespace()).collect();
    if !non_ws.is_empty() {
        let mut counts = std::collections::BTreeMap::new();
        for &c in &non_ws {
            if !c.is_alphanumeric() {
                *counts.entry(c).or_insert(0usize) += 1;
            }
        }
        let max = counts.values().copied().max().unwrap_or(0);
        if (max as f64) > thresholds.repeated_char_fraction * non_ws.len() as f64 {
            flags.push(Flag::RepeatedChar);
        }
    }

    let distinct_words: std::collections::BTreeSet<String> = summary
        .split(|c: char| !c.is_alphabetic())
        .filter(|w| !w.is_empty())
        .map(|w| w.to_lowercase())
        .collect();
    if distinct_words.len() < thresholds.min_distinct_words {
        flags.push(Flag::TooFewWords);
    }

    let total = summary.chars().count();
    if total > 0 {
        let fenced = fenced_chars(summary);
        if fenced as f64 > thresholds.code_dump_fraction * total as f64 {
            flags.push(Flag::CodeDump);
        }
    }

    flags
}

/// Characters inside ``` fences, fences included.
fn fenced_chars(text: &str) -> usize {
    let mut inside = false;
    let mut count = 0usize;
    for line in text.lines() {
        let is_fence = line.trim_start().starts_with("```");
        let line_chars = line.chars().count() + 1; // +1 for the newline
        if is_fence {
            count += line_chars;
            inside = !inside;
        } else if inside {
            count += line_chars;
        }
    }
    count.min(text.chars().count())
}
