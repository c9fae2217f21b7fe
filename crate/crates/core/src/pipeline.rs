//! Strategy execution: turns a parsed file or module into run records.
//!
//! Single-shot strategies (full/reduced) make exactly one LLM call. The
//! hierarchical strategies summarize each leaf unit, then roll the child
//! summaries up with one more call, so a run over `n` leaves makes `n + 1`
//! calls. Overflow is never an error here: a prompt that cannot fit yields a
//! `Skipped` outcome (with `llm_calls` 0 on the skipped record), except that
//! hierarchical-module children fall back to reduced file text first.

use crate::degenerate::{detect_degenerate, Thresholds};
use crate::error::PipelineError;
use crate::gateway::{Gateway, ModelProfile};
use crate::model::{FileModel, ModuleModel};
use crate::prompt::TemplateSet;
use crate::records::{Outcome, RunRecord};
use crate::reduction::{reduce_file, reduce_module};
use crate::slicing::{communities_for_file, slice_methods};
use crate::strategy::{Level, StrategyKind};
use crate::tokens::check_budget;
use std::collections::BTreeMap;
use std::sync::Mutex;

pub struct Runner<'a> {
    gateway: &'a Gateway,
    templates: &'a TemplateSet,
    workers: usize,
    /// Zeroes wall time and timestamps so repeated runs are byte-identical.
    deterministic: bool,
    thresholds: Thresholds,
}

impl<'a> Runner<'a> {
    pub fn new(gateway: &'a Gateway, templates: &'a TemplateSet) -> Self {
        Runner {
            gateway,
            templates,
            workers: 1,
            deterministic: false,
            thresholds: Thresholds::default(),
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn deterministic(mut self, on: bool) -> Self {
        self.deterministic = on;
        self
    }

    pub fn with_thresholds(mut self, thresholds: Thresholds) -> Self {
        self.thresholds = thresholds;
        self
    }

    fn now_unix(&self) -> u64 {
        if self.deterministic {
            return 0;
        }
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    }

    fn render(&self, template: &str, slots: &BTreeMap<&str, &str>) -> Result<String, PipelineError> {
        self.templates
            .get(template)
            .render(slots)
            .map_err(PipelineError::RecordIo)
    }

    /// One budget-checked call producing a complete record. `final_summary`
    /// controls whether the degenerate detector runs on the response.
    fn call(
        &self,
        strategy: StrategyKind,
        unit_id: &str,
        profile: &ModelProfile,
        prompt: &str,
        final_summary: bool,
        notes: Vec<String>,
    ) -> RunRecord {
        let started = std::time::Instant::now();
        let (tokens, heuristic) = self.gateway.estimate_tokens(profile, prompt);
        let mut record = RunRecord {
            run_id: format!("{}:{}", strategy.code(), unit_id),
            strategy: strategy.code().to_string(),
            unit_id: unit_id.to_string(),
            model: profile.name.clone(),
            prompt_char_count: prompt.chars().count(),
            estimated_prompt_tokens: tokens,
            token_estimate_heuristic: heuristic,
            llm_calls: 0,
            child_summary_ids: vec![],
            outcome: Outcome::Skipped {
                reason: "context_overflow".to_string(),
            },
            notes,
            wall_time_ms: 0,
            timestamp_unix: self.now_unix(),
        };
        if !check_budget(self.gateway, profile, prompt).fits() {
            return record;
        }
        match self.gateway.complete(profile, prompt) {
            Ok(completion) => {
                record.llm_calls = 1;
                let flags = if final_summary {
                    detect_degenerate(&completion.text, &self.thresholds)
                } else {
                    vec![]
                };
                record.outcome = if flags.is_empty() {
                    Outcome::Summary {
                        text: completion.text,
                    }
                } else {
                    Outcome::Degenerate {
                        text: completion.text,
                        flags: flags.iter().map(|f| f.code().to_string()).collect(),
                    }
                };
            }
            Err(e) => {
                record.outcome = Outcome::Skipped {
                    reason: format!("gateway_failure: {e}"),
                };
            }
        }
        if !self.deterministic {
            record.wall_time_ms = started.elapsed().as_millis() as u64;
        }
        record
    }

    /// Children first (declaration order), roll-up record last. On any child
    /// that did not produce a summary, the roll-up is skipped with reason
    /// `child_failure` and zero calls.
    fn hierarchical(
        &self,
        strategy: StrategyKind,
        unit_id: &str,
        profile: &ModelProfile,
        leaf_prompts: Vec<(String, String, Vec<String>)>, // (child unit id, prompt, notes)
        rollup_template: &str,
        rollup_extra: &BTreeMap<&str, &str>,
    ) -> Result<Vec<RunRecord>, PipelineError> {
        let children = self.run_leaves(strategy, profile, &leaf_prompts);

        let summaries: Vec<&str> = children
            .iter()
            .filter_map(|r| r.outcome.summary_text())
            .collect();
        let child_ids: Vec<String> = children
            .iter()
            .filter(|r| r.outcome.is_summary())
            .map(|r| r.run_id.clone())
            .collect();

        let mut rollup = if summaries.len() < children.len() {
            let mut record = self.skipped(strategy, unit_id, profile, "child_failure");
            record.child_summary_ids = child_ids;
            record
        } else {
            let bullets: Vec<String> = summaries.iter().map(|s| format!("- {s}")).collect();
            let joined = bullets.join("\n\n");
            let mut slots = rollup_extra.clone();
            slots.insert("child_summaries", &joined);
            let prompt = self.render(rollup_template, &slots)?;
            let mut record = self.call(strategy, unit_id, profile, &prompt, true, vec![]);
            record.child_summary_ids = child_ids;
            if record.llm_calls == 1 {
                // Total calls for the run: one per leaf plus the roll-up.
                record.llm_calls = children.len() as u32 + 1;
            }
            record
        };
        if rollup.outcome.is_skipped() {
            rollup.llm_calls = 0;
        }

        let mut records = children;
        records.push(rollup);
        Ok(records)
    }

    /// Execute leaf calls with `workers` threads, results in input order.
    fn run_leaves(
        &self,
        strategy: StrategyKind,
        profile: &ModelProfile,
        leaves: &[(String, String, Vec<String>)],
    ) -> Vec<RunRecord> {
        let n = leaves.len();
        let workers = self.workers.min(n.max(1));
        if workers <= 1 {
            return leaves
                .iter()
                .map(|(id, prompt, notes)| {
                    self.call(strategy, id, profile, prompt, false, notes.clone())
                })
                .collect();
        }
        let slots: Vec<Mutex<Option<RunRecord>>> = (0..n).map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for t in 0..workers {
                let slots = &slots;
                let runner = &*self;
                scope.spawn(move || {
                    let mut i = t;
                    while i < n {
                        let (id, prompt, notes) = &leaves[i];
                        let record =
                            runner.call(strategy, id, profile, prompt, false, notes.clone());
                        *slots[i].lock().unwrap() = Some(record);
                        i += workers;
                    }
                });
            }
        });
        slots
            .into_iter()
            .map(|s| s.into_inner().unwrap().expect("leaf worker completed"))
            .collect()
    }

    fn skipped(
        &self,
        strategy: StrategyKind,
        unit_id: &str,
        profile: &ModelProfile,
        reason: &str,
    ) -> RunRecord {
        RunRecord {
            run_id: format!("{}:{}", strategy.code(), unit_id),
            strategy: strategy.code().to_string(),
            unit_id: unit_id.to_string(),
            model: profile.name.clone(),
            prompt_char_count: 0,
            estimated_prompt_tokens: 0,
            token_estimate_heuristic: true,
            llm_calls: 0,
            child_summary_ids: vec![],
            outcome: Outcome::Skipped {
                reason: reason.to_string(),
            },
            notes: vec![],
            wall_time_ms: 0,
            timestamp_unix: self.now_unix(),
        }
    }

    /// Run one file-level strategy. Hierarchical strategies return child
    /// records followed by the roll-up; the others return a single record.
    pub fn summarize_file(
        &self,
        file: &FileModel,
        strategy: StrategyKind,
        profile: &ModelProfile,
    ) -> Result<Vec<RunRecord>, PipelineError> {
        if strategy.level() != Level::File {
            return Err(PipelineError::LevelMismatch);
        }
        match strategy {
            StrategyKind::Ffcs => {
                let mut slots = BTreeMap::new();
                slots.insert("code", file.raw_text.as_str());
                let prompt = self.render("file_full", &slots)?;
                Ok(vec![self.call(strategy, &file.path, profile, &prompt, true, vec![])])
            }
            StrategyKind::Rfcs => {
                let reduced = reduce_file(file);
                let mut slots = BTreeMap::new();
                slots.insert("code", reduced.text.as_str());
                let prompt = self.render("file_reduced", &slots)?;
                Ok(vec![self.call(strategy, &file.path, profile, &prompt, true, vec![])])
            }
            StrategyKind::HfcsM => {
                let units = match slice_methods(file) {
                    Ok(units) => units,
                    Err(_) => {
                        return Ok(vec![self.skipped(strategy, &file.path, profile, "no_leaf_units")])
                    }
                };
                let mut leaves = Vec::new();
                for unit in &units {
                    let code = unit.render();
                    let mut slots = BTreeMap::new();
                    slots.insert("class_name", file.class_name.as_str());
                    slots.insert("code", code.as_str());
                    let prompt = self.render("method", &slots)?;
                    let child_id = format!("{}#m:{}", file.path, unit.method.name);
                    leaves.push((child_id, prompt, vec![]));
                }
                let mut extra = BTreeMap::new();
                extra.insert("class_name", file.class_name.as_str());
                self.hierarchical(strategy, &file.path, profile, leaves, "file_rollup", &extra)
            }
            StrategyKind::HfcsMc => {
                let units = communities_for_file(file);
                if units.is_empty() {
                    return Ok(vec![self.skipped(strategy, &file.path, profile, "no_leaf_units")]);
                }
                let mut leaves = Vec::new();
                for (i, unit) in units.iter().enumerate() {
                    let code = unit.render();
                    let mut slots = BTreeMap::new();
                    slots.insert("class_name", file.class_name.as_str());
                    slots.insert("code", code.as_str());
                    let prompt = self.render("community", &slots)?;
                    let child_id = format!("{}#c{}", file.path, i);
                    leaves.push((child_id, prompt, vec![]));
                }
                let mut extra = BTreeMap::new();
                extra.insert("class_name", file.class_name.as_str());
                self.hierarchical(
                    strategy,
                    &file.path,
                    profile,
                    leaves,
                    "community_rollup",
                    &extra,
                )
            }
            _ => unreachable!("level checked above"),
        }
    }

    /// Run one module-level strategy.
    pub fn summarize_module(
        &self,
        module: &ModuleModel,
        strategy: StrategyKind,
        profile: &ModelProfile,
    ) -> Result<Vec<RunRecord>, PipelineError> {
        if strategy.level() != Level::Module {
            return Err(PipelineError::LevelMismatch);
        }
        match strategy {
            StrategyKind::Fmcs => {
                let code = concat_files(module, |f| f.raw_text.clone());
                let mut slots = BTreeMap::new();
                slots.insert("code", code.as_str());
                let prompt = self.render("module_full", &slots)?;
                Ok(vec![self.call(
                    strategy,
                    &module.module_name,
                    profile,
                    &prompt,
                    true,
                    vec![],
                )])
            }
            StrategyKind::Rmcs => {
                let code = reduce_module(module).render();
                let mut slots = BTreeMap::new();
                slots.insert("code", code.as_str());
                let prompt = self.render("module_reduced", &slots)?;
                Ok(vec![self.call(
                    strategy,
                    &module.module_name,
                    profile,
                    &prompt,
                    true,
                    vec![],
                )])
            }
            StrategyKind::Hmcs => {
                let mut leaves = Vec::new();
                for file in &module.files {
                    let mut slots = BTreeMap::new();
                    slots.insert("code", file.raw_text.as_str());
                    let prompt = self.render("file_full", &slots)?;
                    // Full file text first; if it cannot fit, fall back to the
                    // reduced text so the run still covers the file.
                    if check_budget(self.gateway, profile, &prompt).fits() {
                        leaves.push((file.path.clone(), prompt, vec![]));
                    } else {
                        let reduced = reduce_file(file);
                        let mut slots = BTreeMap::new();
                        slots.insert("code", reduced.text.as_str());
                        let prompt = self.render("file_reduced", &slots)?;
                        leaves.push((
                            file.path.clone(),
                            prompt,
                            vec!["fallback_reduced".to_string()],
                        ));
                    }
                }
                self.hierarchical(
                    strategy,
                    &module.module_name,
                    profile,
                    leaves,
                    "module_rollup",
                    &BTreeMap::new(),
                )
            }
            _ => unreachable!("level checked above"),
        }
    }
}

fn concat_files(module: &ModuleModel, body: impl Fn(&FileModel) -> String) -> String {
    let mut out = String::new();
    for file in &module.files {
        out.push_str(&format!("// File: {}\n{}\n", file.path, body(file)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gateway::{MockAction, MockRule};
    use crate::parser::parse_source;

    fn prose_gateway() -> Gateway {
        Gateway::mock(vec![MockRule {
            contains: "".to_string(),
            action: MockAction::RespondProse,
        }])
    }

    fn file(src: &str) -> FileModel {
        parse_source("pkg/A.java", src).unwrap()
    }

    const THREE_METHODS: &str =
        "class A { int x; void f(){ x++; } void g(){ f(); } void h(){ g(); } }";

    #[test]
    fn ffcs_is_one_call_one_record() {
        let gw = prose_gateway();
        let templates = TemplateSet::builtin();
        let runner = Runner::new(&gw, &templates).deterministic(true);
        let profile = ModelProfile::mock("mock", 100_000);
        let records = runner
            .summarize_file(&file(THREE_METHODS), StrategyKind::Ffcs, &profile)
            .unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].llm_calls, 1);
        assert!(records[0].outcome.is_summary());
        assert_eq!(records[0].run_id, "ffcs:pkg/A.java");
    }

    #[test]
    fn hfcs_m_calls_are_leaf_count_plus_one() {
        let gw = prose_gateway();
        let templates = TemplateSet::builtin();
        let runner = Runner::new(&gw, &templates).deterministic(true);
        let profile = ModelProfile::mock("mock", 100_000);
        let records = runner
            .summarize_file(&file(THREE_METHODS), StrategyKind::HfcsM, &profile)
            .unwrap();
        assert_eq!(records.len(), 4); // 3 leaves + roll-up
        let rollup = records.last().unwrap();
        assert_eq!(rollup.llm_calls, 4);
        assert_eq!(rollup.child_summary_ids.len(), 3);
        for child in &records[..3] {
            assert!(rollup.child_summary_ids.contains(&child.run_id));
            assert!(child.outcome.is_summary());
        }
    }

    #[test]
    fn overflow_yields_skipped_not_error() {
        let gw = prose_gateway();
        let templates = TemplateSet::builtin();
        let runner = Runner::new(&gw, &templates).deterministic(true);
        let profile = ModelProfile::mock("mock", 50); // reserved 512 never fits
        let records = runner
            .summarize_file(&file(THREE_METHODS), StrategyKind::Ffcs, &profile)
            .unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(
            records[0].outcome,
            Outcome::Skipped {
                reason: "context_overflow".to_string()
            }
        );
        assert_eq!(records[0].llm_calls, 0);
    }

    #[test]
    fn degenerate_final_summary_is_flagged() {
        let gw = Gateway::mock(vec![MockRule {
            contains: "".to_string(),
            action: MockAction::Respond("}}}}}}}}}}}}}}".to_string()),
        }]);
        let templates = TemplateSet::builtin();
        let runner = Runner::new(&gw, &templates).deterministic(true);
        let profile = ModelProfile::mock("mock", 100_000);
        let records = runner
            .summarize_file(&file(THREE_METHODS), StrategyKind::Ffcs, &profile)
            .unwrap();
        match &records[0].outcome {
            Outcome::Degenerate { flags, .. } => {
                assert!(flags.contains(&"repeated_char".to_string()))
            }
            other => panic!("expected degenerate outcome, got {other:?}"),
        }
    }

    #[test]
    fn level_mismatch_is_an_error() {
        let gw = prose_gateway();
        let templates = TemplateSet::builtin();
        let runner = Runner::new(&gw, &templates);
        let profile = ModelProfile::mock("mock", 100_000);
        assert!(matches!(
            runner.summarize_file(&file(THREE_METHODS), StrategyKind::Hmcs, &profile),
            Err(PipelineError::LevelMismatch)
        ));
    }

    #[test]
    fn hmcs_falls_back_to_reduced_when_full_overflows() {
        let big_body: String = (0..400)
            .map(|i| format!("        int v{i} = {i} * 3 + 1;\n"))
            .collect();
        let big = format!("class Big {{ void run() {{\n{big_body}    }} }}");
        let small = "class Small { void tick(){ int t = 1; } }";
        let module = ModuleModel::new(
            "pkg".to_string(),
            vec![
                parse_source("pkg/Big.java", &big).unwrap(),
                parse_source("pkg/Small.java", small).unwrap(),
            ],
        );
        let gw = prose_gateway();
        let templates = TemplateSet::builtin();
        let runner = Runner::new(&gw, &templates).deterministic(true);
        // Window fits the reduced Big file and the small file, not full Big.
        let profile = ModelProfile::mock("mock", 1_200);
        let records = runner
            .summarize_module(&module, StrategyKind::Hmcs, &profile)
            .unwrap();
        assert_eq!(records.len(), 3);
        let big_child = records
            .iter()
            .find(|r| r.unit_id == "pkg/Big.java")
            .unwrap();
        assert!(big_child.notes.contains(&"fallback_reduced".to_string()));
        assert!(big_child.outcome.is_summary());
        let rollup = records.last().unwrap();
        assert_eq!(rollup.llm_calls, 3);
        assert!(rollup.outcome.is_summary());
    }

    #[test]
    fn child_failure_skips_rollup_with_zero_calls() {
        // Tiny window: every leaf prompt overflows, so children are skipped.
        let gw = prose_gateway();
        let templates = TemplateSet::builtin();
        let runner = Runner::new(&gw, &templates).deterministic(true);
        let profile = ModelProfile::mock("mock", 50);
        let records = runner
            .summarize_file(&file(THREE_METHODS), StrategyKind::HfcsM, &profile)
            .unwrap();
        let rollup = records.last().unwrap();
        assert_eq!(
            rollup.outcome,
            Outcome::Skipped {
                reason: "child_failure".to_string()
            }
        );
        assert_eq!(rollup.llm_calls, 0);
    }

    #[test]
    fn workers_do_not_change_record_order_or_content() {
        let templates = TemplateSet::builtin();
        let profile = ModelProfile::mock("mock", 100_000);
        let fm = file(THREE_METHODS);
        let gw1 = prose_gateway();
        let serial = Runner::new(&gw1, &templates)
            .deterministic(true)
            .summarize_file(&fm, StrategyKind::HfcsM, &profile)
            .unwrap();
        let gw4 = prose_gateway();
        let parallel = Runner::new(&gw4, &templates)
            .deterministic(true)
            .with_workers(4)
            .summarize_file(&fm, StrategyKind::HfcsM, &profile)
            .unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn deterministic_runs_are_identical() {
        let templates = TemplateSet::builtin();
        let profile = ModelProfile::mock("mock", 100_000);
        let fm = file(THREE_METHODS);
        let run = || {
            let gw = prose_gateway();
            let records = Runner::new(&gw, &templates)
                .deterministic(true)
                .summarize_file(&fm, StrategyKind::HfcsMc, &profile)
                .unwrap();
            serde_json::to_string(&records).unwrap()
        };
        assert_eq!(run(), run());
    }
}
