//! Prompt templates: embedded defaults, overridable from a template
//! directory so users can substitute their own wording.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    pub id: String,
    pub text: String,
}

impl PromptTemplate {
    /// Fill every `{slot}` placeholder. Panics are avoided; an unfilled slot
    /// is a caller bug surfaced as an error string.
    pub fn render(&self, slots: &BTreeMap<&str, &str>) -> Result<String, String> {
        let mut out = self.text.clone();
        for (key, value) in slots {
            out = out.replace(&format!("{{{key}}}"), value);
        }
        if let Some(start) = out.find('{') {
            if let Some(end) = out[start..].find('}') {
                let slot = &out[start + 1..start + end];
                if slot
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_')
                    && !slot.is_empty()
                {
                    return Err(format!("template {}: unfilled slot {{{slot}}}", self.id));
                }
            }
        }
        Ok(out)
    }
}

macro_rules! builtin {
    ($id:literal) => {
        (
            $id,
            include_str!(concat!("../../../assets/templates/", $id, ".txt")),
        )
    };
}

const BUILTINS: &[(&str, &str)] = &[
    builtin!("file_full"),
    builtin!("file_reduced"),
    builtin!("method"),
    builtin!("community"),
    builtin!("file_rollup"),
    builtin!("community_rollup"),
    builtin!("module_full"),
    builtin!("module_reduced"),
    builtin!("module_rollup"),
    builtin!("judge"),
    builtin!("rubric"),
];

/// All templates used by the pipeline and the judge.
#[derive(Debug, Clone)]
pub struct TemplateSet {
    templates: BTreeMap<String, PromptTemplate>,
}

impl TemplateSet {
    pub fn builtin() -> Self {
        let templates = BUILTINS
            .iter()
            .map(|(id, text)| {
                (
                    id.to_string(),
                    PromptTemplate {
                        id: id.to_string(),
                        text: text.to_string(),
                    },
                )
            })
            .collect();
        TemplateSet { templates }
    }

    /// Builtin templates with any `<id>.txt` files in `dir` overriding them.
    pub fn with_overrides(dir: &Path) -> std::io::Result<Self> {
        let mut set = Self::builtin();
        if dir.is_dir() {
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().map(|e| e == "txt").unwrap_or(false) {
                    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                        let text = std::fs::read_to_string(&path)?;
                        set.templates.insert(
                            stem.to_string(),
                            PromptTemplate {
                                id: stem.to_string(),
                                text,
                            },
                        );
                    }
                }
            }
        }
        Ok(set)
    }

    pub fn get(&self, id: &str) -> &PromptTemplate {
        self.templates
            .get(id)
            .unwrap_or_else(|| panic!("unknown template id {id}"))
    }
}
