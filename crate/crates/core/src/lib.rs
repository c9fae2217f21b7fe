//! Library for summarizing Java files and modules with LLMs under seven
//! strategies — full, reduced, and hierarchical variants at file and module
//! level — plus an LLM-as-judge evaluation harness with agreement statistics.

pub mod community;
pub mod config;
pub mod corpus;
pub mod degenerate;
pub mod error;
pub mod gateway;
pub mod graph;
pub mod judge;
pub mod model;
pub mod parser;
pub mod pipeline;
pub mod prompt;
pub mod records;
pub mod reduction;
pub mod slicing;
pub mod stats;
pub mod strategy;
pub mod tokens;

pub use community::{detect_communities, detect_communities_traced, modularity, Partition};
pub use config::Config;
pub use degenerate::{detect_degenerate, Thresholds};
pub use error::{
    ConfigError, CorpusError, EvalError, GatewayError, GraphError, ParseError, PipelineError,
    StatsError,
};
pub use gateway::{Gateway, ModelProfile};
pub use graph::{build_graph, DependencyGraph, NodeRef};
pub use model::{FileModel, ModuleModel, Span};
pub use parser::parse_source;
pub use pipeline::Runner;
pub use prompt::TemplateSet;
pub use records::{read_jsonl, write_jsonl, JudgeKind, Outcome, RunRecord, ScoreRecord};
pub use reduction::{reduce_file, reduce_module, ReducedFile, ReducedModule};
pub use slicing::{communities_for_file, slice_methods, CommunityUnit, MethodUnit};
pub use stats::{spearman, summarize_scores, wmw_one_sided, AgreementReport, ScoreSummary};
pub use strategy::{Level, StrategyKind, Variant};
