//! LLM-as-judge scoring: one prompt per (summary, context) pair, graded on a
//! 1-5 rubric, with a single re-ask when the response has no parsable score.

use crate::error::EvalError;
use crate::gateway::{Gateway, ModelProfile};
use crate::prompt::TemplateSet;
use crate::records::{JudgeKind, Outcome, RunRecord, ScoreRecord};
use crate::tokens::check_budget;
use std::collections::BTreeMap;

/// First standalone integer in 1..=5; digits embedded in longer numbers or
/// identifiers do not count.
pub fn parse_score(response: &str) -> Option<u8> {
    let chars: Vec<char> = response.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        if !('1'..='5').contains(&c) {
            continue;
        }
        // A dot counts as part of a number only when a digit sits on its
        // other side, so "Score: 3." parses but "2.5" does not.
        let prev_decimal =
            i >= 2 && chars[i - 1] == '.' && chars[i - 2].is_ascii_digit();
        let prev_ok = i == 0 || (!chars[i - 1].is_ascii_alphanumeric() && !prev_decimal);
        let next_decimal =
            i + 2 < chars.len() && chars[i + 1] == '.' && chars[i + 2].is_ascii_digit();
        let next_ok = i + 1 == chars.len()
            || (!chars[i + 1].is_ascii_alphanumeric() && !next_decimal);
        if prev_ok && next_ok {
            return Some(c as u8 - b'0');
        }
    }
    None
}

const REASK_SUFFIX: &str = "\n\nReply with only a number 1-5 first.";

/// Score one summary against its context. Returns `(score, rationale)` where
/// the rationale is the judge's full final response.
pub fn judge_one(
    gateway: &Gateway,
    templates: &TemplateSet,
    profile: &ModelProfile,
    context: &str,
    summary: &str,
) -> Result<(u8, String), EvalError> {
    let rubric = &templates.get("rubric").text;
    let mut slots = BTreeMap::new();
    slots.insert("rubric", rubric.as_str());
    slots.insert("context", context);
    slots.insert("summary", summary);
    let prompt = templates
        .get("judge")
        .render(&slots)
        .expect("judge template slots are fixed");
    if !check_budget(gateway, profile, &prompt).fits() {
        return Err(EvalError::OverflowSkip);
    }
    let first = gateway.complete(profile, &prompt)?;
    if let Some(score) = parse_score(&first.text) {
        return Ok((score, first.text));
    }
    // One re-ask with an explicit format instruction.
    let reask = format!("{prompt}{REASK_SUFFIX}");
    if !check_budget(gateway, profile, &reask).fits() {
        return Err(EvalError::OverflowSkip);
    }
    let second = gateway.complete(profile, &reask)?;
    match parse_score(&second.text) {
        Some(score) => Ok((score, second.text)),
        None => Err(EvalError::ParseFailure {
            response: second.text,
        }),
    }
}

/// Judge context for the hierarchical-summaries kind: the run's child
/// summaries as bullets, resolved from the full record set.
pub fn hier_context(records: &[RunRecord], run: &RunRecord) -> Option<String> {
    let by_id: BTreeMap<&str, &RunRecord> =
        records.iter().map(|r| (r.run_id.as_str(), r)).collect();
    let mut bullets = Vec::new();
    for id in &run.child_summary_ids {
        let child = by_id.get(id.as_str())?;
        let text = child.outcome.summary_text()?;
        bullets.push(format!("- {text}"));
    }
    if bullets.is_empty() {
        return None;
    }
    Some(bullets.join("\n\n"))
}

/// Score every record with a usable summary; records without one (skipped,
/// degenerate) are ignored, as are hier-context runs with no children when
/// `kind` is [`JudgeKind::HierSummaries`]. Errors on individual records are
/// reported back as `(run_id, error)` pairs rather than aborting the batch.
#[allow(clippy::too_many_arguments)]
pub fn judge_records(
    gateway: &Gateway,
    templates: &TemplateSet,
    profile: &ModelProfile,
    records: &[RunRecord],
    kind: JudgeKind,
    context_of: impl Fn(&RunRecord) -> Option<String>,
) -> (Vec<ScoreRecord>, Vec<(String, EvalError)>) {
    let mut scores = Vec::new();
    let mut failures = Vec::new();
    for record in records {
        let Outcome::Summary { text } = &record.outcome else {
            continue;
        };
        let context = match kind {
            JudgeKind::HierSummaries => hier_context(records, record),
            _ => context_of(record),
        };
        let Some(context) = context else { continue };
        match judge_one(gateway, templates, profile, &context, text) {
            Ok((score, rationale)) => scores.push(ScoreRecord {
                summary_run_id: record.run_id.clone(),
                judge_kind: kind,
                score,
                rationale,
                judge_model: profile.name.clone(),
            }),
            Err(e) => failures.push((record.run_id.clone(), e)),
        }
    }
    (scores, failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::{MockAction, MockRule};

    #[test]
    fn parse_plain_digit() {
        assert_eq!(parse_score("4"), Some(4));
    }

    #[test]
    fn parse_digit_with_prose() {
        assert_eq!(parse_score("Score: 3. The summary is adequate."), Some(3));
    }

    #[test]
    fn parse_skips_embedded_digits() {
        assert_eq!(parse_score("v2.5 improves on v14"), None);
        assert_eq!(parse_score("list4you says 2"), Some(2));
    }

    #[test]
    fn parse_rejects_out_of_range() {
        assert_eq!(parse_score("I give it a 7 out of 10"), None);
        assert_eq!(parse_score("rating 0"), None);
    }

    #[test]
    fn judge_parses_first_response() {
        let gw = Gateway::mock(vec![MockRule {
            contains: "Summary to rate".to_string(),
            action: MockAction::Respond("5 - complete and accurate.".to_string()),
        }]);
        let templates = TemplateSet::builtin();
        let profile = ModelProfile::mock("judge", 100_000);
        let (score, rationale) =
            judge_one(&gw, &templates, &profile, "class A {}", "does nothing").unwrap();
        assert_eq!(score, 5);
        assert!(rationale.contains("complete"));
    }

    #[test]
    fn judge_reasks_once_then_succeeds() {
        let gw = Gateway::mock(vec![
            MockRule {
                contains: "only a number 1-5".to_string(),
                action: MockAction::Respond("4".to_string()),
            },
            MockRule {
                contains: "Summary to rate".to_string(),
                action: MockAction::Respond("The summary looks fine to me.".to_string()),
            },
        ]);
        let templates = TemplateSet::builtin();
        let profile = ModelProfile::mock("judge", 100_000);
        let (score, _) =
            judge_one(&gw, &templates, &profile, "class A {}", "does nothing").unwrap();
        assert_eq!(score, 4);
    }

    #[test]
    fn judge_fails_after_two_unparsable_responses() {
        let gw = Gateway::mock(vec![MockRule {
            contains: "".to_string(),
            action: MockAction::Respond("I cannot rate this.".to_string()),
        }]);
        let templates = TemplateSet::builtin();
        let profile = ModelProfile::mock("judge", 100_000);
        let err = judge_one(&gw, &templates, &profile, "class A {}", "x").unwrap_err();
        assert!(matches!(err, EvalError::ParseFailure { .. }));
    }

    #[test]
    fn oversized_context_is_skipped() {
        let gw = Gateway::mock(vec![]);
        let templates = TemplateSet::builtin();
        let profile = ModelProfile::mock("judge", 200);
        let context = "x".repeat(10_000);
        let err = judge_one(&gw, &templates, &profile, &context, "summary").unwrap_err();
        assert!(matches!(err, EvalError::OverflowSkip));
    }
}
