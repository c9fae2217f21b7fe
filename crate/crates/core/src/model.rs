//! Structural models of Java source files and package-level modules.
//!
//! A [`FileModel`] is a span-indexed view over the original source text:
//! every extracted part (package statement, imports, class signature, field
//! and method declarations) carries character offsets into `raw_text`, so the
//! original file can always be reconstructed byte-for-byte from the parts
//! plus the interstitial text between them.

use serde::{Deserialize, Serialize};

/// Half-open character range `[start, end)` into a file's `raw_text`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start >= self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// A field declaration inside a class body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDecl {
    pub name: String,
    /// Full declaration text, including any attached doc comment and the
    /// trailing `;`.
    pub declaration_text: String,
    pub span: Span,
}

/// A method (or constructor) declaration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodDecl {
    /// Simple name, qualified as `Outer.Inner.f` for members of nested types.
    pub name: String,
    /// Declaration text up to (not including) the opening body brace.
    pub signature_text: String,
    /// `{ ... }` body, or `None` for abstract/interface methods.
    pub body_text: Option<String>,
    /// Covers signature plus body (or the terminating `;`).
    pub span: Span,
    /// Identifiers lexically used in the body, keywords and literals excluded.
    pub referenced_identifiers: Vec<String>,
}

impl MethodDecl {
    /// Simple (unqualified) name, used for call-site matching.
    pub fn simple_name(&self) -> &str {
        self.name.rsplit('.').next().unwrap_or(&self.name)
    }
}

/// Structural model of one `.java` file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileModel {
    pub path: String,
    pub package_name: Option<String>,
    pub imports: Vec<String>,
    /// Modifiers + `class`/`interface`/`enum` + name + extends/implements.
    pub class_signature: String,
    pub class_name: String,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodDecl>,
    pub raw_text: String,
    pub char_count: usize,

    // Spans of the non-member parts, kept for reconstruction and reduction.
    pub package_span: Option<Span>,
    pub import_spans: Vec<Span>,
    pub class_signature_span: Span,
    /// Span of the top-level class body including both braces.
    pub class_body_span: Span,
}

impl FileModel {
    /// All recorded part spans in ascending order.
    pub fn part_spans(&self) -> Vec<Span> {
        let mut spans = Vec::new();
        if let Some(s) = self.package_span {
            spans.push(s);
        }
        spans.extend(self.import_spans.iter().copied());
        spans.push(self.class_signature_span);
        spans.extend(self.fields.iter().map(|f| f.span));
        spans.extend(self.methods.iter().map(|m| m.span));
        spans.sort();
        spans
    }

    /// Reassemble the original source from the parts plus the interstitial
    /// text between them. Equal to `raw_text` for any well-formed model.
    pub fn reconstruct(&self) -> String {
        let mut out = String::with_capacity(self.raw_text.len());
        let mut cursor = 0usize;
        let chars: Vec<char> = self.raw_text.chars().collect();
        for span in self.part_spans() {
            if span.start > cursor {
                out.extend(&chars[cursor..span.start]);
            }
            out.extend(&chars[span.start..span.end]);
            cursor = span.end;
        }
        if cursor < chars.len() {
            out.extend(&chars[cursor..]);
        }
        out
    }

    /// Substring of `raw_text` covered by `span` (character offsets).
    pub fn slice(&self, span: Span) -> String {
        self.raw_text
            .chars()
            .skip(span.start)
            .take(span.len())
            .collect()
    }
}

/// A module is a Java package: every parsed file declaring the same package.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleModel {
    pub module_name: String,
    /// Ordered by path.
    pub files: Vec<FileModel>,
    pub char_count: usize,
}

impl ModuleModel {
    pub fn new(module_name: String, mut files: Vec<FileModel>) -> Self {
        files.sort_by(|a, b| a.path.cmp(&b.path));
        let char_count = files.iter().map(|f| f.char_count).sum();
        ModuleModel {
            module_name,
            files,
            char_count,
        }
    }
}
