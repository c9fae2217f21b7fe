//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("braces cannot be balanced after masking comments and literals")]
    UnbalancedBraces,
    #[error("no type declaration found")]
    NoTypeDeclaration,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot sample {requested} units from a pool of {available}")]
    Sample { requested: usize, available: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no edges; modularity is undefined")]
    DegenerateGraph,
    #[error("file has no methods with bodies")]
    EmptyFile,
}

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("authentication failed after {attempts} attempt(s): {message}")]
    Auth { attempts: u32, message: String },
    #[error("transport failure after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },
    #[error("prompt of {prompt_tokens} tokens exceeds window of {window} tokens (gateway hard assert; pipeline bug)")]
    Overflow {
        attempts: u32,
        prompt_tokens: usize,
        window: usize,
    },
    #[error("provider error after {attempts} attempt(s): {message}")]
    Provider { attempts: u32, message: String },
}

impl GatewayError {
    pub fn attempts(&self) -> u32 {
        match self {
            GatewayError::Auth { attempts, .. }
            | GatewayError::Transport { attempts, .. }
            | GatewayError::Overflow { attempts, .. }
            | GatewayError::Provider { attempts, .. } => *attempts,
        }
    }

    /// Transient errors are retried; the rest fail fast.
    pub fn is_transient(&self) -> bool {
        matches!(self, GatewayError::Transport { .. })
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("judge response contained no integer 1-5 after one re-ask: {response:?}")]
    ParseFailure { response: String },
    #[error("judge context does not fit the judge profile window even reduced")]
    OverflowSkip,
    #[error(transparent)]
    Gateway(#[from] GatewayError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StatsError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Gateway(#[from] GatewayError),
    #[error("strategy level does not match the unit level")]
    LevelMismatch,
    #[error("record i/o: {0}")]
    RecordIo(String),
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {message}")]
    Invalid { path: String, message: String },
}
