//! Corpus discovery, test-file exclusion, and deterministic sampling.

use crate::error::CorpusError;
use crate::model::{FileModel, ModuleModel};
use crate::parser::parse_source;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use walkdir::WalkDir;

/// One line of the corpus manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub path: String,
    pub package: Option<String>,
    pub class_name: String,
    pub method_count: usize,
    pub char_count: usize,
}

impl ManifestRecord {
    pub fn from_model(fm: &FileModel) -> Self {
        ManifestRecord {
            path: fm.path.clone(),
            package: fm.package_name.clone(),
            class_name: fm.class_name.clone(),
            method_count: fm.methods.len(),
            char_count: fm.char_count,
        }
    }
}

/// A file that failed to parse during discovery; reported, not fatal.
#[derive(Debug, Clone)]
pub struct SkippedFile {
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Default)]
pub struct DiscoveryReport {
    pub modules: Vec<ModuleModel>,
    pub skipped: Vec<SkippedFile>,
}

/// Walk `root` for `.java` files, parse each, and group by declared package.
/// Files without a package declaration group under the empty package "".
pub fn discover_modules(root: &Path) -> Result<DiscoveryReport, CorpusError> {
    if !root.exists() {
        return Err(CorpusError::Io {
            path: root.display().to_string(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "root does not exist"),
        });
    }
    let mut by_package: BTreeMap<String, Vec<FileModel>> = BTreeMap::new();
    let mut skipped = Vec::new();
    let mut entries: Vec<_> = WalkDir::new(root)
        .into_iter()
        .filter_map(|e| e.ok())
        .filter(|e| {
            e.file_type().is_file() && e.path().extension().map(|x| x == "java").unwrap_or(false)
        })
        .map(|e| e.into_path())
        .collect();
    entries.sort();
    for path in entries {
        let rel = path
            .strip_prefix(root)
            .unwrap_or(&path)
            .to_string_lossy()
            .replace('\\', "/");
        let source = match std::fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) => {
                skipped.push(SkippedFile {
                    path: rel,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        match parse_source(&rel, &source) {
            Ok(fm) => {
                let pkg = fm.package_name.clone().unwrap_or_default();
                by_package.entry(pkg).or_default().push(fm);
            }
            Err(e) => skipped.push(SkippedFile {
                path: rel,
                reason: e.to_string(),
            }),
        }
    }
    let modules = by_package
        .into_iter()
        .map(|(pkg, files)| ModuleModel::new(pkg, files))
        .collect();
    Ok(DiscoveryReport { modules, skipped })
}

/// Drop every file whose class name or path contains "test", case-insensitive
/// substring match. This intentionally also removes names like `Latest.java`;
/// the rule is a plain substring check, not word-boundary.
pub fn exclude_tests(files: Vec<FileModel>) -> Vec<FileModel> {
    files
        .into_iter()
        .filter(|f| {
            !f.class_name.to_lowercase().contains("test") && !f.path.to_lowercase().contains("test")
        })
        .collect()
}

/// Portable deterministic PRNG: splitmix64 seeding feeding an xorshift64*
/// stream. Chosen so sampling is bit-reproducible across platforms and
/// reimplementable in a few lines in any language.
#[derive(Debug, Clone)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub fn new(seed: u64) -> Self {
        // splitmix64 finalizer turns any seed (including 0) into a
        // well-mixed non-zero state.
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Prng {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    /// xorshift64* step.
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform index in `0..bound` by modulo reduction (documented bias is
    /// negligible for the pool sizes involved and keeps the generator
    /// trivially portable).
    pub fn next_below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

/// Uniform sample of `n` items without replacement via a Fisher-Yates prefix.
/// Deterministic for a fixed seed; order is the order of selection.
pub fn sample_units<T: Clone>(pool: &[T], n: usize, seed: u64) -> Result<Vec<T>, CorpusError> {
    if n > pool.len() {
        return Err(CorpusError::Sample {
            requested: n,
            available: pool.len(),
        });
    }
    let mut rng = Prng::new(seed);
    let mut indices: Vec<usize> = (0..pool.len()).collect();
    for i in 0..n {
        let j = i + rng.next_below(indices.len() - i);
        indices.swap(i, j);
    }
    Ok(indices[..n].iter().map(|&i| pool[i].clone()).collect())
}
