//! The seven summarization strategies.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Level {
    File,
    Module,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    Full,
    Reduced,
    HierMethod,
    HierCommunity,
    HierFile,
}

/// A valid (level, variant) combination. Hierarchical-by-method and
/// hierarchical-by-community exist only at file level; hierarchical-by-file
/// only at module level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    /// Full file code summarization.
    Ffcs,
    /// Reduced file code summarization.
    Rfcs,
    /// Hierarchical file summarization over single methods.
    HfcsM,
    /// Hierarchical file summarization over method communities.
    HfcsMc,
    /// Full module code summarization.
    Fmcs,
    /// Reduced module code summarization.
    Rmcs,
    /// Hierarchical module summarization over files.
    Hmcs,
}

impl StrategyKind {
    pub fn level(&self) -> Level {
        match self {
            StrategyKind::Ffcs | StrategyKind::Rfcs | StrategyKind::HfcsM | StrategyKind::HfcsMc => {
                Level::File
            }
            StrategyKind::Fmcs | StrategyKind::Rmcs | StrategyKind::Hmcs => Level::Module,
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            StrategyKind::Ffcs | StrategyKind::Fmcs => Variant::Full,
            StrategyKind::Rfcs | StrategyKind::Rmcs => Variant::Reduced,
            StrategyKind::HfcsM => Variant::HierMethod,
            StrategyKind::HfcsMc => Variant::HierCommunity,
            StrategyKind::Hmcs => Variant::HierFile,
        }
    }

    pub fn is_hierarchical(&self) -> bool {
        matches!(
            self.variant(),
            Variant::HierMethod | Variant::HierCommunity | Variant::HierFile
        )
    }

    pub fn code(&self) -> &'static str {
        match self {
            StrategyKind::Ffcs => "ffcs",
            StrategyKind::Rfcs => "rfcs",
            StrategyKind::HfcsM => "hfcs_m",
            StrategyKind::HfcsMc => "hfcs_mc",
            StrategyKind::Fmcs => "fmcs",
            StrategyKind::Rmcs => "rmcs",
            StrategyKind::Hmcs => "hmcs",
        }
    }

    /// Resolve a CLI `--level`/`--strategy` pair; `None` for invalid
    /// combinations such as hier-file at file level.
    pub fn from_level_and_variant(level: Level, variant: Variant) -> Option<Self> {
        match (level, variant) {
            (Level::File, Variant::Full) => Some(StrategyKind::Ffcs),
            (Level::File, Variant::Reduced) => Some(StrategyKind::Rfcs),
            (Level::File, Variant::HierMethod) => Some(StrategyKind::HfcsM),
            (Level::File, Variant::HierCommunity) => Some(StrategyKind::HfcsMc),
            (Level::Module, Variant::Full) => Some(StrategyKind::Fmcs),
            (Level::Module, Variant::Reduced) => Some(StrategyKind::Rmcs),
            (Level::Module, Variant::HierFile) => Some(StrategyKind::Hmcs),
            _ => None,
        }
    }

    pub fn all() -> [StrategyKind; 7] {
        [
            StrategyKind::Ffcs,
            StrategyKind::Rfcs,
            StrategyKind::HfcsM,
            StrategyKind::HfcsMc,
            StrategyKind::Fmcs,
            StrategyKind::Rmcs,
            StrategyKind::Hmcs,
        ]
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_combinations_rejected() {
        assert!(StrategyKind::from_level_and_variant(Level::File, Variant::HierFile).is_none());
        assert!(StrategyKind::from_level_and_variant(Level::Module, Variant::HierMethod).is_none());
        assert!(
            StrategyKind::from_level_and_variant(Level::Module, Variant::HierCommunity).is_none()
        );
    }

    #[test]
    fn hierarchical_classification() {
        assert!(StrategyKind::HfcsM.is_hierarchical());
        assert!(StrategyKind::Hmcs.is_hierarchical());
        assert!(!StrategyKind::Ffcs.is_hierarchical());
    }
}
