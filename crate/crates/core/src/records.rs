//! Persisted outcomes: run records for summarizations and score records for
//! judge evaluations, stored as line-delimited JSON with stable field order.

use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Summary { text: String },
    Skipped { reason: String },
    Degenerate { text: String, flags: Vec<String> },
}

impl Outcome {
    pub fn summary_text(&self) -> Option<&str> {
        match self {
            Outcome::Summary { text } => Some(text),
            _ => None,
        }
    }

    pub fn is_summary(&self) -> bool {
        matches!(self, Outcome::Summary { .. })
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, Outcome::Skipped { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_id: String,
    pub strategy: String,
    pub unit_id: String,
    pub model: String,
    pub prompt_char_count: usize,
    pub estimated_prompt_tokens: usize,
    /// True when the char/4 heuristic estimated the prompt size.
    pub token_estimate_heuristic: bool,
    pub llm_calls: u32,
    pub child_summary_ids: Vec<String>,
    pub outcome: Outcome,
    /// Extra flags, e.g. `fallback_reduced` for HMCS children whose full
    /// text overflowed and were summarized from reduced code instead.
    pub notes: Vec<String>,
    pub wall_time_ms: u64,
    pub timestamp_unix: u64,
}

/// Which context a judge saw: full code, reduced code, or child summaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JudgeKind {
    Full,
    Reduced,
    HierSummaries,
}

impl JudgeKind {
    pub fn code(&self) -> &'static str {
        match self {
            JudgeKind::Full => "full",
            JudgeKind::Reduced => "reduced",
            JudgeKind::HierSummaries => "hier",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub summary_run_id: String,
    pub judge_kind: JudgeKind,
    /// 1..=5.
    pub score: u8,
    pub rationale: String,
    pub judge_model: String,
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for item in items {
        serde_json::to_writer(&mut file, item)?;
        file.write_all(b"\n")?;
    }
    file.flush()
}

pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> std::io::Result<Vec<T>> {
    let file = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in file.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let item = serde_json::from_str(&line).map_err(|e| {
            std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("{}:{}: {e}", path.display(), i + 1),
            )
        })?;
        out.push(item);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_record() -> RunRecord {
        RunRecord {
            run_id: "ffcs:a/A.java".into(),
            strategy: "ffcs".into(),
            unit_id: "a/A.java".into(),
            model: "mock".into(),
            prompt_char_count: 120,
            estimated_prompt_tokens: 30,
            token_estimate_heuristic: true,
            llm_calls: 1,
            child_summary_ids: vec![],
            outcome: Outcome::Summary {
                text: "does things".into(),
            },
            notes: vec![],
            wall_time_ms: 0,
            timestamp_unix: 0,
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("records.jsonl");
        let records = vec![sample_record()];
        write_jsonl(&path, &records).unwrap();
        let back: Vec<RunRecord> = read_jsonl(&path).unwrap();
        assert_eq!(records, back);
    }

    #[test]
    fn field_order_is_stable() {
        let json = serde_json::to_string(&sample_record()).unwrap();
        let run_idx = json.find("run_id").unwrap();
        let strategy_idx = json.find("strategy").unwrap();
        let outcome_idx = json.find("outcome").unwrap();
        assert!(run_idx < strategy_idx && strategy_idx < outcome_idx);
    }

    #[test]
    fn outcome_tags_are_snake_case() {
        let json = serde_json::to_string(&Outcome::Skipped {
            reason: "context_overflow".into(),
        })
        .unwrap();
        assert!(json.contains("\"kind\":\"skipped\""));
    }
}
