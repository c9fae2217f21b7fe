//! `hiersum` — summarize Java files and modules with LLMs and evaluate the
//! summaries with an LLM judge.
//!
//! Exit codes: 0 success, 1 user error (bad flags, missing or malformed
//! files), 2 gateway or internal error.

use clap::{Parser, Subcommand, ValueEnum};
use hiersum_core::corpus::{discover_modules, exclude_tests, sample_units, ManifestRecord};
use hiersum_core::gateway::{Gateway, MockAction, MockBackend, MockRule, ThreadSleeper};
use hiersum_core::gateway::{Backend, HttpBackend};
use hiersum_core::judge::judge_records;
use hiersum_core::records::{read_jsonl, write_jsonl, JudgeKind, RunRecord, ScoreRecord};
use hiersum_core::stats::{agreement, summarize_scores};
use hiersum_core::{
    build_graph, communities_for_file, reduce_file, slice_methods, Config, FileModel, Level,
    ModuleModel, Runner, StrategyKind, TemplateSet, Variant,
};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EMBEDDED_CONFIG: &str = include_str!("../../../config/default.toml");

#[derive(Parser)]
#[command(name = "hiersum", version, about = "Hierarchical code summarization for Java files and modules")]
struct Cli {
    /// Config file (default: $HIERSUM_CONFIG, then ./config/default.toml,
    /// then built-in defaults)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    File,
    Module,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Full,
    Reduced,
    HierMethod,
    HierCommunity,
    HierFile,
}

#[derive(Clone, Copy, ValueEnum)]
enum JudgeKindArg {
    Full,
    Reduced,
    Hier,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a directory tree and emit a corpus manifest (one JSON record
    /// per file)
    Scan {
        /// Directory to scan for .java files
        #[arg(long)]
        root: PathBuf,
        /// Drop files whose class name or path contains "test"
        #[arg(long)]
        exclude_tests: bool,
        /// Manifest destination (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit reduced code (method bodies stripped) to stdout or a mirror tree
    Reduce {
        #[arg(long)]
        root: PathBuf,
        /// Mirror directory for reduced files (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print per-file original/reduced character counts as TSV
        #[arg(long)]
        stats: bool,
    },
    /// Emit method and community leaf units for every file
    Slice {
        #[arg(long)]
        root: PathBuf,
        /// Unit destination (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also dump dependency-graph nodes and edges as TSV rows
        #[arg(long)]
        emit_graph: bool,
    },
    /// Run one summarization strategy over a corpus and persist run records
    Summarize {
        #[arg(long, value_enum)]
        level: LevelArg,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Model profile name from the config
        #[arg(long)]
        model: String,
        #[arg(long)]
        root: PathBuf,
        /// Run-records destination (JSON lines)
        #[arg(long)]
        out: PathBuf,
        /// Sampling seed (default from config)
        #[arg(long)]
        seed: Option<u64>,
        /// Summarize only a random sample of this many units
        #[arg(long)]
        sample: Option<usize>,
        /// Worker threads for leaf calls (default from config)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Judge persisted summaries against code context and persist scores
    Evaluate {
        /// Run-records file produced by `summarize`
        #[arg(long)]
        records: PathBuf,
        /// Context shown to the judge: full code, reduced code, or child
        /// summaries
        #[arg(long, value_enum)]
        judge_kind: JudgeKindArg,
        /// Judge model profile name from the config
        #[arg(long)]
        judge_model: String,
        /// Corpus root the records were generated from
        #[arg(long)]
        root: PathBuf,
        /// Scores destination (JSON lines)
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare judge scores with human ratings (agreement report)
    Stats {
        /// Scores file produced by `evaluate`
        #[arg(long)]
        scores: PathBuf,
        /// Human ratings TSV: summary_run_id <TAB> evaluator_id <TAB> score
        #[arg(long)]
        human: PathBuf,
        /// Report destination (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// End-to-end run on the bundled corpus with the mock gateway
    Demo {
        /// Output directory for corpus, records, scores, and report
        #[arg(long, default_value = "demo_out")]
        out: PathBuf,
    },
}

enum CliError {
    /// Bad flags or input files; exit 1.
    User(String),
    /// Gateway or internal failure; exit 2.
    Internal(String),
}

impl CliError {
    fn user(e: impl std::fmt::Display) -> Self {
        CliError::User(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::User(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_config(flag: Option<&Path>) -> Result<Config, hiersum_core::ConfigError> {
    if let Some(path) = flag {
        return Config::load(path);
    }
    if let Ok(path) = std::env::var("HIERSUM_CONFIG") {
        return Config::load(Path::new(&path));
    }
    let local = Path::new("config/default.toml");
    if local.is_file() {
        return Config::load(local);
    }
    Config::from_toml_str(EMBEDDED_CONFIG, "<built-in>")
}

fn run(command: Command, config: &Config) -> CliResult {
    match command {
        Command::Scan {
            root,
            exclude_tests: drop_tests,
            out,
        } => cmd_scan(&root, drop_tests, out.as_deref()),
        Command::Reduce { root, out, stats } => cmd_reduce(&root, out.as_deref(), stats),
        Command::Slice {
            root,
            out,
            emit_graph,
        } => cmd_slice(&root, out.as_deref(), emit_graph),
        Command::Summarize {
            level,
            strategy,
            model,
            root,
            out,
            seed,
            sample,
            workers,
        } => cmd_summarize(
            config, level, strategy, &model, &root, &out, seed, sample, workers,
        ),
        Command::Evaluate {
            records,
            judge_kind,
            judge_model,
            root,
            out,
        } => cmd_evaluate(config, &records, judge_kind, &judge_model, &root, &out),
        Command::Stats { scores, human, out } => cmd_stats(&scores, &human, out.as_deref()),
        Command::Demo { out } => cmd_demo(config, &out),
    }
}

/// Parsed corpus with deterministic file order; unparseable files reported
/// on stderr.
fn load_corpus(root: &Path) -> Result<Vec<ModuleModel>, CliError> {
    let report = discover_modules(root).map_err(CliError::user)?;
    for skipped in &report.skipped {
        eprintln!("skipping {}: {}", skipped.path, skipped.reason);
    }
    Ok(report.modules)
}

fn all_files(modules: &[ModuleModel]) -> Vec<&FileModel> {
    let mut files: Vec<&FileModel> = modules.iter().flat_map(|m| m.files.iter()).collect();
    files.sort_by(|a, b| a.path.cmp(&b.path));
    files
}

fn open_sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent).map_err(CliError::user)?;
            }
            Ok(Box::new(std::fs::File::create(path).map_err(CliError::user)?))
        }
        None => Ok(Box::new(std::io::stdout())),
    }
}

fn cmd_scan(root: &Path, drop_tests: bool, out: Option<&Path>) -> CliResult {
    let modules = load_corpus(root)?;
    let mut files: Vec<FileModel> = all_files(&modules).into_iter().cloned().collect();
    if drop_tests {
        files = exclude_tests(files);
    }
    let mut sink = open_sink(out)?;
    for file in &files {
        let record = ManifestRecord::from_model(file);
        let line = serde_json::to_string(&record).map_err(CliError::user)?;
        writeln!(sink, "{line}").map_err(CliError::user)?;
    }
    Ok(())
}

fn cmd_reduce(root: &Path, out: Option<&Path>, stats: bool) -> CliResult {
    let modules = load_corpus(root)?;
    let files = all_files(&modules);
    if stats {
        println!("path\toriginal_chars\treduced_chars");
    }
    for file in files {
        let reduced = reduce_file(file);
        if stats {
            println!("{}\t{}\t{}", file.path, file.char_count, reduced.char_count);
            continue;
        }
        match out {
            Some(dir) => {
                let dest = dir.join(&file.path);
                if let Some(parent) = dest.parent() {
                    std::fs::create_dir_all(parent).map_err(CliError::user)?;
                }
                std::fs::write(&dest, &reduced.text).map_err(CliError::user)?;
            }
            None => {
                println!("// File: {}", file.path);
                println!("{}", reduced.text);
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct UnitRecord {
    file: String,
    unit_kind: &'static str,
    unit_id: String,
    method_names: Vec<String>,
    field_names: Vec<String>,
    text_char_count: usize,
}

fn cmd_slice(root: &Path, out: Option<&Path>, emit_graph: bool) -> CliResult {
    let modules = load_corpus(root)?;
    let mut sink = open_sink(out)?;
    for file in all_files(&modules) {
        if emit_graph {
            let graph = build_graph(file);
            for node in &graph.nodes {
                let kind = if node.is_method() { "method" } else { "field" };
                println!("node\t{}\t{}\t{}", file.path, kind, node.name());
            }
            for &(u, v, w) in &graph.edges {
                println!(
                    "edge\t{}\t{}\t{}\t{}",
                    file.path,
                    graph.nodes[u].name(),
                    graph.nodes[v].name(),
                    w
                );
            }
        }
        let methods = match slice_methods(file) {
            Ok(units) => units,
            Err(e) => {
                eprintln!("skipping {}: {}", file.path, e);
                continue;
            }
        };
        let mut records = Vec::new();
        for unit in &methods {
            records.push(UnitRecord {
                file: file.path.clone(),
                unit_kind: "method",
                unit_id: format!("{}#m:{}", file.path, unit.method.name),
                method_names: vec![unit.method.name.clone()],
                field_names: unit.retained_fields.iter().map(|f| f.name.clone()).collect(),
                text_char_count: unit.render().chars().count(),
            });
        }
        for (i, unit) in communities_for_file(file).iter().enumerate() {
            records.push(UnitRecord {
                file: file.path.clone(),
                unit_kind: "community",
                unit_id: format!("{}#c{}", file.path, i),
                method_names: unit.method_names(),
                field_names: unit.retained_fields.iter().map(|f| f.name.clone()).collect(),
                text_char_count: unit.render().chars().count(),
            });
        }
        for record in records {
            let line = serde_json::to_string(&record).map_err(CliError::user)?;
            writeln!(sink, "{line}").map_err(CliError::user)?;
        }
    }
    Ok(())
}

/// Gateway for a profile: scripted deterministic mock, or HTTP.
fn gateway_for(profile: &hiersum_core::ModelProfile) -> Gateway {
    if profile.is_mock() {
        let backend = MockBackend::new(vec![
            MockRule {
                contains: "rate the quality".to_string(),
                action: MockAction::RespondScore,
            },
            MockRule {
                contains: String::new(),
                action: MockAction::RespondProse,
            },
        ]);
        Gateway::new(Box::new(backend), Box::new(ThreadSleeper))
    } else {
        let backend: Box<dyn Backend> = Box::new(HttpBackend::new());
        Gateway::new(backend, Box::new(ThreadSleeper))
    }
}

fn templates_for(config: &Config) -> Result<TemplateSet, CliError> {
    match &config.template_dir {
        Some(dir) => TemplateSet::with_overrides(Path::new(dir)).map_err(CliError::user),
        None => Ok(TemplateSet::builtin()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_summarize(
    config: &Config,
    level: LevelArg,
    strategy: StrategyArg,
    model: &str,
    root: &Path,
    out: &Path,
    seed: Option<u64>,
    sample: Option<usize>,
    workers: Option<usize>,
) -> CliResult {
    let level = match level {
        LevelArg::File => Level::File,
        LevelArg::Module => Level::Module,
    };
    let variant = match strategy {
        StrategyArg::Full => Variant::Full,
        StrategyArg::Reduced => Variant::Reduced,
        StrategyArg::HierMethod => Variant::HierMethod,
        StrategyArg::HierCommunity => Variant::HierCommunity,
        StrategyArg::HierFile => Variant::HierFile,
    };
    let Some(kind) = StrategyKind::from_level_and_variant(level, variant) else {
        return Err(CliError::User(format!(
            "strategy is not defined at {} level",
            match level {
                Level::File => "file",
                Level::Module => "module",
            }
        )));
    };
    let profile = config
        .profile(model)
        .ok_or_else(|| CliError::User(format!("unknown model profile {model:?}")))?;
    let templates = templates_for(config)?;
    let gateway = gateway_for(profile);
    let runner = Runner::new(&gateway, &templates)
        .with_workers(workers.unwrap_or(config.workers))
        .deterministic(profile.is_mock())
        .with_thresholds(config.degenerate);
    let modules = load_corpus(root)?;
    let seed = seed.unwrap_or(config.default_seed);

    let mut records: Vec<RunRecord> = Vec::new();
    match level {
        Level::File => {
            let mut files: Vec<FileModel> = all_files(&modules).into_iter().cloned().collect();
            if let Some(n) = sample {
                files = sample_units(&files, n, seed).map_err(CliError::user)?;
                files.sort_by(|a, b| a.path.cmp(&b.path));
            }
            for file in &files {
                let batch = runner
                    .summarize_file(file, kind, profile)
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                records.extend(batch);
            }
        }
        Level::Module => {
            let mut modules = modules;
            if let Some(n) = sample {
                modules = sample_units(&modules, n, seed).map_err(CliError::user)?;
                modules.sort_by(|a, b| a.module_name.cmp(&b.module_name));
            }
            for module in &modules {
                let batch = runner
                    .summarize_module(module, kind, profile)
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                records.extend(batch);
            }
        }
    }
    write_jsonl(out, &records).map_err(CliError::user)?;
    eprintln!("wrote {} run records to {}", records.len(), out.display());
    Ok(())
}

/// Full or reduced code context for a final run record; `None` for leaf
/// records (their unit ids name a slice, not a file or module).
fn code_context(
    record: &RunRecord,
    files: &BTreeMap<String, FileModel>,
    modules: &BTreeMap<String, ModuleModel>,
    reduced: bool,
) -> Option<String> {
    if let Some(file) = files.get(&record.unit_id) {
        return Some(if reduced {
            reduce_file(file).text
        } else {
            file.raw_text.clone()
        });
    }
    let module = modules.get(&record.unit_id)?;
    Some(if reduced {
        hiersum_core::reduce_module(module).render()
    } else {
        module
            .files
            .iter()
            .map(|f| format!("// File: {}\n{}\n", f.path, f.raw_text))
            .collect()
    })
}

fn cmd_evaluate(
    config: &Config,
    records_path: &Path,
    judge_kind: JudgeKindArg,
    judge_model: &str,
    root: &Path,
    out: &Path,
) -> CliResult {
    let profile = config
        .profile(judge_model)
        .ok_or_else(|| CliError::User(format!("unknown model profile {judge_model:?}")))?;
    let records: Vec<RunRecord> = read_jsonl(records_path).map_err(CliError::user)?;
    let modules = load_corpus(root)?;
    let files: BTreeMap<String, FileModel> = all_files(&modules)
        .into_iter()
        .map(|f| (f.path.clone(), f.clone()))
        .collect();
    let modules: BTreeMap<String, ModuleModel> = modules
        .into_iter()
        .map(|m| (m.module_name.clone(), m))
        .collect();
    let kind = match judge_kind {
        JudgeKindArg::Full => JudgeKind::Full,
        JudgeKindArg::Reduced => JudgeKind::Reduced,
        JudgeKindArg::Hier => JudgeKind::HierSummaries,
    };
    let templates = templates_for(config)?;
    let gateway = gateway_for(profile);
    let (scores, failures) = judge_records(&gateway, &templates, profile, &records, kind, |r| {
        code_context(r, &files, &modules, kind == JudgeKind::Reduced)
    });
    for (run_id, e) in &failures {
        eprintln!("could not judge {run_id}: {e}");
    }
    write_jsonl(out, &scores).map_err(CliError::user)?;
    eprintln!("wrote {} scores to {}", scores.len(), out.display());
    Ok(())
}

fn read_human_tsv(path: &Path) -> Result<BTreeMap<String, f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(CliError::user)?;
    let mut per_summary: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split('\t').collect();
        if parts.len() != 3 {
            return Err(CliError::User(format!(
                "{}:{}: expected 3 tab-separated columns",
                path.display(),
                i + 1
            )));
        }
        let score: f64 = parts[2].trim().parse().map_err(|_| {
            CliError::User(format!("{}:{}: bad score {:?}", path.display(), i + 1, parts[2]))
        })?;
        per_summary.entry(parts[0].to_string()).or_default().push(score);
    }
    // Per-summary human score = mean over evaluators.
    Ok(per_summary
        .into_iter()
        .map(|(id, scores)| {
            let mean = scores.iter().sum::<f64>() / scores.len() as f64;
            (id, mean)
        })
        .collect())
}

fn cmd_stats(scores_path: &Path, human_path: &Path, out: Option<&Path>) -> CliResult {
    let scores: Vec<ScoreRecord> = read_jsonl(scores_path).map_err(CliError::user)?;
    let human = read_human_tsv(human_path)?;
    let mut judge_vec = Vec::new();
    let mut human_vec = Vec::new();
    let mut matched = Vec::new();
    for record in &scores {
        if let Some(&h) = human.get(&record.summary_run_id) {
            judge_vec.push(record.score as f64);
            human_vec.push(h);
            matched.push(record.summary_run_id.clone());
        }
    }
    if judge_vec.len() < 3 {
        return Err(CliError::User(format!(
            "only {} score(s) matched between judge and human files; need at least 3",
            judge_vec.len()
        )));
    }
    let report = agreement(&judge_vec, &human_vec).map_err(CliError::user)?;
    let mut sink = open_sink(out)?;
    let json = serde_json::to_string(&report).map_err(CliError::user)?;
    writeln!(sink, "{json}").map_err(CliError::user)?;
    writeln!(sink).map_err(CliError::user)?;
    writeln!(sink, "matched summaries: {}", report.n).map_err(CliError::user)?;
    writeln!(sink, "spearman rho:      {:.4}", report.spearman).map_err(CliError::user)?;
    writeln!(sink, "judge score:       {}", report.judge_summary.display())
        .map_err(CliError::user)?;
    writeln!(sink, "human score:       {}", report.human_summary.display())
        .map_err(CliError::user)?;
    Ok(())
}

/// The bundled corpus, embedded so `demo` works from any directory.
const DEMO_CORPUS: &[(&str, &str)] = &[
    (
        "com/acme/alpha/AllocationSolver.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/AllocationSolver.java"),
    ),
    (
        "com/acme/alpha/DemandForecaster.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/DemandForecaster.java"),
    ),
    (
        "com/acme/alpha/InventoryLedger.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/InventoryLedger.java"),
    ),
    (
        "com/acme/alpha/OrderRouter.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/OrderRouter.java"),
    ),
    (
        "com/acme/alpha/PricingEngine.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/PricingEngine.java"),
    ),
    (
        "com/acme/alpha/ReorderPlanner.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/ReorderPlanner.java"),
    ),
    (
        "com/acme/alpha/ShipmentTracker.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/ShipmentTracker.java"),
    ),
    (
        "com/acme/alpha/StockAuditor.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/StockAuditor.java"),
    ),
    (
        "com/acme/alpha/SupplierRegistry.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/SupplierRegistry.java"),
    ),
    (
        "com/acme/alpha/WarehouseMap.java",
        include_str!("../../../fixtures/corpus/com/acme/alpha/WarehouseMap.java"),
    ),
    (
        "com/acme/beta/CredentialCache.java",
        include_str!("../../../fixtures/corpus/com/acme/beta/CredentialCache.java"),
    ),
    (
        "com/acme/beta/LoginThrottle.java",
        include_str!("../../../fixtures/corpus/com/acme/beta/LoginThrottle.java"),
    ),
    (
        "com/acme/beta/SessionBroker.java",
        include_str!("../../../fixtures/corpus/com/acme/beta/SessionBroker.java"),
    ),
    (
        "com/acme/beta/TokenVault.java",
        include_str!("../../../fixtures/corpus/com/acme/beta/TokenVault.java"),
    ),
    (
        "com/acme/gamma/ChartRenderer.java",
        include_str!("../../../fixtures/corpus/com/acme/gamma/ChartRenderer.java"),
    ),
    (
        "com/acme/gamma/ExportQueue.java",
        include_str!("../../../fixtures/corpus/com/acme/gamma/ExportQueue.java"),
    ),
    (
        "com/acme/gamma/ReportComposer.java",
        include_str!("../../../fixtures/corpus/com/acme/gamma/ReportComposer.java"),
    ),
    (
        "com/acme/util/BackoffPolicy.java",
        include_str!("../../../fixtures/corpus/com/acme/util/BackoffPolicy.java"),
    ),
    (
        "com/acme/util/PathNormalizer.java",
        include_str!("../../../fixtures/corpus/com/acme/util/PathNormalizer.java"),
    ),
    (
        "com/acme/util/TextTable.java",
        include_str!("../../../fixtures/corpus/com/acme/util/TextTable.java"),
    ),
];

fn cmd_demo(config: &Config, out: &Path) -> CliResult {
    // Materialize the embedded corpus.
    let corpus_root = out.join("corpus");
    for (path, source) in DEMO_CORPUS {
        let dest = corpus_root.join(path);
        if let Some(parent) = dest.parent() {
            std::fs::create_dir_all(parent).map_err(CliError::user)?;
        }
        std::fs::write(&dest, source).map_err(CliError::user)?;
    }

    let profile = config
        .profile("mock")
        .ok_or_else(|| CliError::User("config has no mock profile".to_string()))?;
    let templates = templates_for(config)?;
    let gateway = gateway_for(profile);
    let runner = Runner::new(&gateway, &templates)
        .with_workers(config.workers)
        .deterministic(true)
        .with_thresholds(config.degenerate);

    let modules = load_corpus(&corpus_root)?;
    let files: Vec<FileModel> = all_files(&modules).into_iter().cloned().collect();
    let mut sampled = sample_units(&files, 5.min(files.len()), config.default_seed)
        .map_err(CliError::user)?;
    sampled.sort_by(|a, b| a.path.cmp(&b.path));

    let mut records: Vec<RunRecord> = Vec::new();
    // The last record of each batch summarizes the whole unit; leaf records
    // precede it. The report table covers only these final records.
    let mut final_ids: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
    for kind in [
        StrategyKind::Ffcs,
        StrategyKind::Rfcs,
        StrategyKind::HfcsM,
        StrategyKind::HfcsMc,
    ] {
        for file in &sampled {
            let batch = runner
                .summarize_file(file, kind, profile)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            if let Some(last) = batch.last() {
                final_ids.insert(last.run_id.clone());
            }
            records.extend(batch);
        }
    }
    for kind in [StrategyKind::Fmcs, StrategyKind::Rmcs, StrategyKind::Hmcs] {
        for module in &modules {
            let batch = runner
                .summarize_module(module, kind, profile)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            if let Some(last) = batch.last() {
                final_ids.insert(last.run_id.clone());
            }
            records.extend(batch);
        }
    }
    let records_path = out.join("run_records.jsonl");
    write_jsonl(&records_path, &records).map_err(CliError::user)?;

    // Judge with full-code context and with child-summary context.
    let file_map: BTreeMap<String, FileModel> =
        files.iter().map(|f| (f.path.clone(), f.clone())).collect();
    let module_map: BTreeMap<String, ModuleModel> = modules
        .iter()
        .map(|m| (m.module_name.clone(), m.clone()))
        .collect();
    let mut scores = Vec::new();
    for kind in [JudgeKind::Full, JudgeKind::HierSummaries] {
        let (batch, failures) =
            judge_records(&gateway, &templates, profile, &records, kind, |r| {
                code_context(r, &file_map, &module_map, false)
            });
        for (run_id, e) in &failures {
            eprintln!("could not judge {run_id}: {e}");
        }
        scores.extend(batch);
    }
    let scores_path = out.join("scores.jsonl");
    write_jsonl(&scores_path, &scores).map_err(CliError::user)?;

    // Report: per-strategy judged quality, full-context judge.
    let mut report = String::new();
    report.push_str("strategy  n      mean (±se)\n");
    let by_strategy: BTreeMap<String, &RunRecord> =
        records.iter().map(|r| (r.run_id.clone(), r)).collect();
    let mut per_strategy: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for s in scores
        .iter()
        .filter(|s| s.judge_kind == JudgeKind::Full && final_ids.contains(&s.summary_run_id))
    {
        if let Some(record) = by_strategy.get(&s.summary_run_id) {
            per_strategy
                .entry(record.strategy.as_str())
                .or_default()
                .push(s.score as f64);
        }
    }
    for kind in StrategyKind::all() {
        let code = kind.code();
        match per_strategy.get(code) {
            Some(values) => {
                let summary = summarize_scores(values).map_err(CliError::user)?;
                report.push_str(&format!(
                    "{code:<9} {:<6} {}\n",
                    summary.n,
                    summary.display()
                ));
            }
            None => report.push_str(&format!("{code:<9} 0      n/a\n")),
        }
    }
    // Agreement between the two judge contexts over shared summaries.
    let full: BTreeMap<&str, f64> = scores
        .iter()
        .filter(|s| s.judge_kind == JudgeKind::Full)
        .map(|s| (s.summary_run_id.as_str(), s.score as f64))
        .collect();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for s in scores.iter().filter(|s| s.judge_kind == JudgeKind::HierSummaries) {
        if let Some(&f) = full.get(s.summary_run_id.as_str()) {
            xs.push(f);
            ys.push(s.score as f64);
        }
    }
    report.push('\n');
    match hiersum_core::spearman(&xs, &ys) {
        Ok(rho) => report.push_str(&format!(
            "full-context vs summary-context judge agreement over {} summaries: rho = {rho:.4}\n",
            xs.len()
        )),
        Err(e) => report.push_str(&format!("judge agreement: n/a ({e})\n")),
    }
    let report_path = out.join("report.txt");
    std::fs::write(&report_path, &report).map_err(CliError::user)?;
    print!("{report}");
    eprintln!(
        "demo artifacts: {}, {}, {}",
        records_path.display(),
        scores_path.display(),
        report_path.display()
    );
    Ok(())
}
