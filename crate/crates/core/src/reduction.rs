//! Code reduction: strip method bodies (and, at file level, package and
//! import statements) while keeping class signature, fields, and method
//! signatures.
//!
//! File-level reduction drops package/import lines; module-level reduction
//! keeps them inside each section, since at module scope only method bodies
//! are removed.

use crate::model::{FileModel, ModuleModel};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedFile {
    pub origin_path: String,
    pub text: String,
    pub char_count: usize,
    pub removed_char_count: usize,
    /// Characters the reduction added structurally (braces, indents, `;`),
    /// i.e. `char_count + removed_char_count - origin_char_count`.
    pub whitespace_delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedModule {
    pub module_name: String,
    /// `(file path, section text)` in module file order.
    pub sections: Vec<(String, String)>,
    pub char_count: usize,
}

impl ReducedModule {
    /// Concatenated sections, each prefixed with a `// File:` header line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (path, text) in &self.sections {
            out.push_str(&format!("// File: {}\n{}\n", path, text));
        }
        out
    }
}

enum Member<'a> {
    Field(&'a crate::model::FieldDecl),
    Method(&'a crate::model::MethodDecl),
}

fn members_in_order(file: &FileModel) -> Vec<Member<'_>> {
    let mut members: Vec<(usize, Member)> = file
        .fields
        .iter()
        .map(|f| (f.span.start, Member::Field(f)))
        .chain(file.methods.iter().map(|m| (m.span.start, Member::Method(m))))
        .collect();
    members.sort_by_key(|(s, _)| *s);
    members.into_iter().map(|(_, m)| m).collect()
}

fn reduced_class_text(file: &FileModel) -> (String, usize) {
    let mut out = String::new();
    let mut retained = file.class_signature.chars().count();
    out.push_str(&file.class_signature);
    out.push_str(" {\n");
    for member in members_in_order(file) {
        match member {
            Member::Field(f) => {
                retained += f.declaration_text.chars().count();
                out.push_str("    ");
                out.push_str(&f.declaration_text);
                out.push('\n');
            }
            Member::Method(m) => {
                retained += m.signature_text.chars().count();
                out.push_str("    ");
                out.push_str(&m.signature_text);
                out.push_str(";\n");
            }
        }
    }
    out.push_str("}\n");
    (out, retained)
}

/// RFCS reduction: no package/imports, every method body replaced by `;`.
pub fn reduce_file(file: &FileModel) -> ReducedFile {
    let (text, retained) = reduced_class_text(file);
    let char_count = text.chars().count();
    let removed_char_count = file.char_count.saturating_sub(retained);
    ReducedFile {
        origin_path: file.path.clone(),
        whitespace_delta: char_count as i64 + removed_char_count as i64 - file.char_count as i64,
        text,
        char_count,
        removed_char_count,
    }
}

/// RMCS reduction: per-file sections in module file order, each keeping its
/// package and import lines.
pub fn reduce_module(module: &ModuleModel) -> ReducedModule {
    let mut sections = Vec::new();
    let mut char_count = 0usize;
    for file in &module.files {
        let mut text = String::new();
        if let Some(span) = file.package_span {
            text.push_str(&file.slice(span));
            text.push('\n');
        }
        for import in &file.imports {
            text.push_str(import);
            text.push('\n');
        }
        if !text.is_empty() {
            text.push('\n');
        }
        let (body, _) = reduced_class_text(file);
        text.push_str(&body);
        char_count += text.chars().count();
        sections.push((file.path.clone(), text));
    }
    ReducedModule {
        module_name: module.module_name.clone(),
        sections,
        char_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;

    #[test]
    fn strips_package_imports_and_bodies() {
        let src = "package p; import x.Y; class A { int n; void f(){n++;} }";
        let fm = parse_source("A.java", src).unwrap();
        let reduced = reduce_file(&fm);
        assert!(!reduced.text.contains("package"));
        assert!(!reduced.text.contains("import"));
        assert!(!reduced.text.contains("n++"));
        assert!(reduced.text.contains("class A"));
        assert!(reduced.text.contains("int n;"));
        assert!(reduced.text.contains("void f();"));
    }

    #[test]
    fn empty_class_reduces_to_signature_and_braces() {
        let fm = parse_source("A.java", "class A { }").unwrap();
        let reduced = reduce_file(&fm);
        assert_eq!(reduced.text, "class A {\n}\n");
    }

    #[test]
    fn abstract_methods_unchanged() {
        let fm = parse_source("I.java", "interface I { int f(); }").unwrap();
        let reduced = reduce_file(&fm);
        assert!(reduced.text.contains("int f();"));
    }

    #[test]
    fn attached_javadoc_is_kept() {
        let src = "class A {\n    /** Does things. */\n    void f(){ int hidden = 1; }\n}";
        let fm = parse_source("A.java", src).unwrap();
        let reduced = reduce_file(&fm);
        assert!(reduced.text.contains("Does things."));
        assert!(!reduced.text.contains("hidden"));
    }

    #[test]
    fn reduction_is_idempotent() {
        let src = "package p; class A { int n; void f(){n++;} void g(){f();} }";
        let fm = parse_source("A.java", src).unwrap();
        let once = reduce_file(&fm);
        let reparsed = parse_source("A.java", &once.text).unwrap();
        let twice = reduce_file(&reparsed);
        assert_eq!(once.text, twice.text);
    }

    #[test]
    fn char_accounting_balances() {
        let src = "package p; class A { int n; void f(){n++;} }";
        let fm = parse_source("A.java", src).unwrap();
        let r = reduce_file(&fm);
        assert_eq!(
            r.char_count as i64 + r.removed_char_count as i64,
            fm.char_count as i64 + r.whitespace_delta
        );
    }

    #[test]
    fn module_sections_keep_imports_and_follow_file_order() {
        let a = parse_source("p/A.java", "package p; import q.Z; class A { void f(){} }").unwrap();
        let b = parse_source("p/B.java", "package p; class B { void g(){} }").unwrap();
        let module = crate::model::ModuleModel::new("p".into(), vec![b, a]);
        let rm = reduce_module(&module);
        assert_eq!(rm.sections.len(), 2);
        assert_eq!(rm.sections[0].0, "p/A.java");
        assert!(rm.sections[0].1.contains("import q.Z;"));
        assert!(rm.sections[0].1.contains("package p;"));
        let rendered = rm.render();
        assert!(rendered.starts_with("// File: p/A.java\n"));
        assert!(rendered.contains("// File: p/B.java\n"));
    }
}
