//! Lexical-structural Java parser.
//!
//! This is deliberately not a full Java grammar. A lexer first masks comments
//! and string/char literals (replacing them with spaces of equal length), then
//! brace balancing on the masked text delimits the class body and method
//! bodies. Methods are recognized by the heuristic "identifier followed by `(`
//! at class-body depth, not preceded by a control keyword and with no `=`
//! earlier in the statement". Every strategy downstream needs only signatures,
//! bodies, and fields, so this is as deep as the analysis goes.
//!
//! All offsets are character offsets into the source; the masked buffer has
//! the same length as the original, so spans computed on the mask apply to
//! the original text directly.

use crate::error::ParseError;
use crate::model::{FieldDecl, FileModel, MethodDecl, Span};
use std::collections::BTreeSet;

const JAVA_KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "final", "finally", "float",
    "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "package", "private", "protected", "public", "return", "short", "static",
    "strictfp", "super", "switch", "synchronized", "this", "throw", "throws", "transient", "try",
    "void", "volatile", "while", "true", "false", "null", "var", "record",
];

/// Keywords that can precede `(` without introducing a method declaration.
const CALLISH_KEYWORDS: &[&str] = &[
    "new", "if", "while", "for", "switch", "catch", "synchronized", "return", "throw", "assert",
    "super", "this", "do", "else", "try",
];

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Replace comments and string/char literal contents (including delimiters)
/// with spaces, preserving length.
pub fn mask_source(chars: &[char]) -> Vec<char> {
    mask_source_full(chars).0
}

/// Like [`mask_source`], also returning the spans of masked comments.
pub fn mask_source_full(chars: &[char]) -> (Vec<char>, Vec<Span>) {
    let mut out = chars.to_vec();
    let mut comments = Vec::new();
    let n = chars.len();
    let mut i = 0;
    while i < n {
        match chars[i] {
            '/' if i + 1 < n && chars[i + 1] == '/' => {
                let start = i;
                while i < n && chars[i] != '\n' {
                    out[i] = ' ';
                    i += 1;
                }
                comments.push(Span::new(start, i));
            }
            '/' if i + 1 < n && chars[i + 1] == '*' => {
                let start = i;
                out[i] = ' ';
                out[i + 1] = ' ';
                i += 2;
                while i < n {
                    if chars[i] == '*' && i + 1 < n && chars[i + 1] == '/' {
                        out[i] = ' ';
                        out[i + 1] = ' ';
                        i += 2;
                        break;
                    }
                    out[i] = ' ';
                    i += 1;
                }
                comments.push(Span::new(start, i));
            }
            q @ ('"' | '\'') => {
                out[i] = ' ';
                i += 1;
                while i < n {
                    if chars[i] == '\\' && i + 1 < n {
                        out[i] = ' ';
                        out[i + 1] = ' ';
                        i += 2;
                        continue;
                    }
                    let c = chars[i];
                    out[i] = ' ';
                    i += 1;
                    if c == q {
                        break;
                    }
                }
            }
            _ => i += 1,
        }
    }
    (out, comments)
}

/// Index of the `}` matching the `{` at `open`, on masked text.
fn matching_brace(mask: &[char], open: usize) -> Option<usize> {
    debug_assert_eq!(mask[open], '{');
    let mut depth = 0usize;
    for (i, &c) in mask.iter().enumerate().skip(open) {
        match c {
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn matching_paren(mask: &[char], open: usize) -> Option<usize> {
    debug_assert_eq!(mask[open], '(');
    let mut depth = 0usize;
    for (i, &c) in mask.iter().enumerate().skip(open) {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn skip_ws(mask: &[char], mut i: usize, end: usize) -> usize {
    while i < end && mask[i].is_whitespace() {
        i += 1;
    }
    i
}

fn read_ident(mask: &[char], i: usize, end: usize) -> Option<(String, usize)> {
    if i >= end || !is_ident_start(mask[i]) {
        return None;
    }
    let mut j = i;
    while j < end && is_ident_part(mask[j]) {
        j += 1;
    }
    Some((mask[i..j].iter().collect(), j))
}

/// Identifiers lexically present in `mask[span]`, keywords excluded.
pub fn lex_identifiers(mask: &[char], span: Span) -> Vec<String> {
    let mut set = BTreeSet::new();
    let mut i = span.start;
    while i < span.end {
        if is_ident_start(mask[i]) {
            let (word, j) = read_ident(mask, i, span.end).unwrap();
            if !JAVA_KEYWORDS.contains(&word.as_str()) {
                set.insert(word);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    set.into_iter().collect()
}

struct Scanner<'a> {
    chars: &'a [char],
    mask: &'a [char],
    fields: Vec<FieldDecl>,
    methods: Vec<MethodDecl>,
}

impl<'a> Scanner<'a> {
    fn text(&self, span: Span) -> String {
        self.chars[span.start..span.end].iter().collect()
    }

    /// Scan one type body (`open` is the `{`); members of nested types are
    /// flattened into the same lists with qualified method names.
    fn scan_type_body(&mut self, open: usize, close: usize, type_path: &[String]) -> Result<(), ParseError> {
        let mut i = skip_ws(self.mask, open + 1, close);
        let mut stmt_start = i;
        let mut saw_eq = false;
        let mut last_ident: Option<(String, usize)> = None;
        while i < close {
            let c = self.mask[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if is_ident_start(c) {
                let (word, j) = read_ident(self.mask, i, close).unwrap();
                if word == "class" || word == "interface" || word == "enum" {
                    // Nested type: members flatten in with qualified names;
                    // its signature and braces stay interstitial.
                    let ni = skip_ws(self.mask, j, close);
                    if let Some((nested_name, _)) = read_ident(self.mask, ni, close) {
                        if let Some(body_open) = self.find_brace(ni, close) {
                            let body_close = matching_brace(self.mask, body_open)
                                .ok_or(ParseError::UnbalancedBraces)?;
                            let mut path = type_path.to_vec();
                            path.push(nested_name);
                            self.scan_type_body(body_open, body_close, &path)?;
                            i = skip_ws(self.mask, body_close + 1, close);
                            stmt_start = i;
                            saw_eq = false;
                            last_ident = None;
                            continue;
                        }
                    }
                }
                last_ident = Some((word, i));
                i = j;
                continue;
            }
            match c {
                '@' => {
                    // Annotation: identifier plus optional argument list.
                    let ni = skip_ws(self.mask, i + 1, close);
                    if let Some((_, j)) = read_ident(self.mask, ni, close) {
                        let k = skip_ws(self.mask, j, close);
                        if k < close && self.mask[k] == '(' {
                            let p = matching_paren(self.mask, k)
                                .ok_or(ParseError::UnbalancedBraces)?;
                            i = p + 1;
                        } else {
                            i = j;
                        }
                    } else {
                        i += 1;
                    }
                    last_ident = None;
                    continue;
                }
                '=' => {
                    saw_eq = true;
                    i += 1;
                    last_ident = None;
                }
                '(' => {
                    let method_candidate = !saw_eq
                        && last_ident
                            .as_ref()
                            .map(|(w, _)| !CALLISH_KEYWORDS.contains(&w.as_str()))
                            .unwrap_or(false);
                    let p = matching_paren(self.mask, i).ok_or(ParseError::UnbalancedBraces)?;
                    if !method_candidate {
                        i = p + 1;
                        continue;
                    }
                    let name = last_ident.take().unwrap().0;
                    // Skip throws clause and whitespace after the parameter list.
                    let mut k = skip_ws(self.mask, p + 1, close);
                    loop {
                        if let Some((w, j)) = read_ident(self.mask, k, close) {
                            if w == "throws" || w == "," {
                                k = skip_ws(self.mask, j, close);
                                continue;
                            }
                            // throws-clause exception names (and dots/commas)
                            let mut j2 = j;
                            while j2 < close
                                && (self.mask[j2] == '.'
                                    || self.mask[j2] == ','
                                    || self.mask[j2].is_whitespace()
                                    || is_ident_part(self.mask[j2]))
                            {
                                j2 += 1;
                            }
                            k = j2;
                            continue;
                        }
                        break;
                    }
                    k = skip_ws(self.mask, k, close);
                    let qualified = if type_path.len() > 1 {
                        format!("{}.{}", type_path.join("."), name)
                    } else {
                        name.clone()
                    };
                    if k < close && self.mask[k] == '{' {
                        let body_close =
                            matching_brace(self.mask, k).ok_or(ParseError::UnbalancedBraces)?;
                        let span = Span::new(stmt_start, body_close + 1);
                        let sig_span = Span::new(stmt_start, k);
                        let body_span = Span::new(k, body_close + 1);
                        let refs = lex_identifiers(self.mask, Span::new(k + 1, body_close));
                        self.methods.push(MethodDecl {
                            name: qualified,
                            signature_text: self.text(sig_span).trim_end().to_string(),
                            body_text: Some(self.text(body_span)),
                            span,
                            referenced_identifiers: refs,
                        });
                        i = skip_ws(self.mask, body_close + 1, close);
                        stmt_start = i;
                        saw_eq = false;
                        continue;
                    } else if k < close && self.mask[k] == ';' {
                        // Abstract or interface method.
                        let span = Span::new(stmt_start, k + 1);
                        self.methods.push(MethodDecl {
                            name: qualified,
                            signature_text: self.text(Span::new(stmt_start, k)).trim_end().to_string(),
                            body_text: None,
                            span,
                            referenced_identifiers: Vec::new(),
                        });
                        i = skip_ws(self.mask, k + 1, close);
                        stmt_start = i;
                        saw_eq = false;
                        continue;
                    } else {
                        // Something else (e.g. a cast in a field initializer).
                        i = p + 1;
                        continue;
                    }
                }
                ';' => {
                    let stmt = Span::new(stmt_start, i + 1);
                    if let Some(field) = self.extract_field(stmt) {
                        self.fields.push(field);
                    }
                    i = skip_ws(self.mask, i + 1, close);
                    stmt_start = i;
                    saw_eq = false;
                    last_ident = None;
                }
                '{' => {
                    // Static or instance initializer block; left interstitial.
                    let body_close =
                        matching_brace(self.mask, i).ok_or(ParseError::UnbalancedBraces)?;
                    i = skip_ws(self.mask, body_close + 1, close);
                    stmt_start = i;
                    saw_eq = false;
                    last_ident = None;
                }
                _ => {
                    i += 1;
                    last_ident = None;
                }
            }
        }
        Ok(())
    }

    fn find_brace(&self, from: usize, end: usize) -> Option<usize> {
        (from..end).find(|&i| self.mask[i] == '{')
    }

    /// Field statement: name is the identifier before the first top-level `=`,
    /// or the last identifier of the declarator otherwise.
    fn extract_field(&self, stmt: Span) -> Option<FieldDecl> {
        let mut idents: Vec<(String, usize)> = Vec::new();
        let mut name: Option<String> = None;
        let mut i = stmt.start;
        let mut paren_depth = 0usize;
        while i < stmt.end {
            let c = self.mask[i];
            if is_ident_start(c) {
                let (w, j) = read_ident(self.mask, i, stmt.end).unwrap();
                if !JAVA_KEYWORDS.contains(&w.as_str()) {
                    idents.push((w, i));
                }
                i = j;
                continue;
            }
            match c {
                '(' | '[' | '<' => paren_depth += 1,
                ')' | ']' | '>' => paren_depth = paren_depth.saturating_sub(1),
                '=' if paren_depth == 0 && name.is_none() => {
                    name = idents.last().map(|(w, _)| w.clone());
                }
                _ => {}
            }
            i += 1;
        }
        let name = name.or_else(|| idents.last().map(|(w, _)| w.clone()))?;
        Some(FieldDecl {
            name,
            declaration_text: self.text(stmt),
            span: stmt,
        })
    }
}

/// Parse one Java source file into its structural model.
pub fn parse_source(path: &str, source: &str) -> Result<FileModel, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let (mask, comment_spans) = mask_source_full(&chars);
    let n = chars.len();

    let open_braces = mask.iter().filter(|&&c| c == '{').count();
    let close_braces = mask.iter().filter(|&&c| c == '}').count();
    if open_braces != close_braces {
        return Err(ParseError::UnbalancedBraces);
    }

    // Top-level statements: package, imports, then the first type declaration.
    let mut package_name = None;
    let mut package_span = None;
    let mut imports = Vec::new();
    let mut import_spans = Vec::new();
    let mut type_decl: Option<(usize, String, String)> = None; // (sig_start, keyword_ident_name, _)
    let mut i = 0usize;
    let mut decl_start: Option<usize> = None;
    while i < n {
        let c = mask[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if is_ident_start(c) {
            let (word, j) = read_ident(&mask, i, n).unwrap();
            match word.as_str() {
                "package" => {
                    let semi = (j..n).find(|&k| mask[k] == ';').ok_or(ParseError::NoTypeDeclaration)?;
                    let name: String = chars[j..semi].iter().collect();
                    package_name = Some(name.trim().to_string());
                    package_span = Some(Span::new(i, semi + 1));
                    i = semi + 1;
                    decl_start = None;
                    continue;
                }
                "import" => {
                    let semi = (j..n).find(|&k| mask[k] == ';').ok_or(ParseError::NoTypeDeclaration)?;
                    imports.push(chars[i..=semi].iter().collect::<String>());
                    import_spans.push(Span::new(i, semi + 1));
                    i = semi + 1;
                    decl_start = None;
                    continue;
                }
                "class" | "interface" | "enum" => {
                    let ni = skip_ws(&mask, j, n);
                    let (name, _) = read_ident(&mask, ni, n).ok_or(ParseError::NoTypeDeclaration)?;
                    type_decl = Some((decl_start.unwrap_or(i), name, word));
                    break;
                }
                _ => {
                    if decl_start.is_none() {
                        decl_start = Some(i);
                    }
                    i = j;
                    continue;
                }
            }
        }
        if c == '@' {
            if decl_start.is_none() {
                decl_start = Some(i);
            }
            i += 1;
            continue;
        }
        if decl_start.is_none() {
            decl_start = Some(i);
        }
        i += 1;
    }

    let (sig_start, class_name, _) = type_decl.ok_or(ParseError::NoTypeDeclaration)?;
    let body_open = (sig_start..n)
        .find(|&k| mask[k] == '{')
        .ok_or(ParseError::NoTypeDeclaration)?;
    let body_close = matching_brace(&mask, body_open).ok_or(ParseError::UnbalancedBraces)?;

    let class_signature_span = Span::new(sig_start, body_open);
    let class_signature: String = chars[sig_start..body_open]
        .iter()
        .collect::<String>()
        .trim_end()
        .to_string();
    let class_signature_span = Span::new(
        class_signature_span.start,
        class_signature_span.start + class_signature.chars().count(),
    );

    let mut scanner = Scanner {
        chars: &chars,
        mask: &mask,
        fields: Vec::new(),
        methods: Vec::new(),
    };
    scanner.scan_type_body(body_open, body_close, std::slice::from_ref(&class_name))?;
    let mut fields = scanner.fields;
    let mut methods = scanner.methods;
    fields.sort_by_key(|f| f.span.start);
    methods.sort_by_key(|m| m.span.start);

    let mut model = FileModel {
        path: path.to_string(),
        package_name,
        imports,
        class_signature,
        class_name,
        fields,
        methods,
        raw_text: source.to_string(),
        char_count: n,
        package_span,
        import_spans,
        class_signature_span,
        class_body_span: Span::new(body_open, body_close + 1),
    };
    attach_leading_comments(&mut model, &chars, &comment_spans);
    Ok(model)
}

/// Extend class-signature, field, and method spans backwards over directly
/// preceding comments, so attached Javadoc travels with the declaration it
/// documents. Package and import spans are left alone.
fn attach_leading_comments(model: &mut FileModel, chars: &[char], comments: &[Span]) {
    // Previous part end for each extendable part, in ascending span order.
    let mut boundaries: Vec<usize> = Vec::new();
    if let Some(s) = model.package_span {
        boundaries.push(s.end);
    }
    boundaries.extend(model.import_spans.iter().map(|s| s.end));
    boundaries.push(model.class_signature_span.end);
    boundaries.extend(model.fields.iter().map(|f| f.span.end));
    boundaries.extend(model.methods.iter().map(|m| m.span.end));

    let extend = |span: Span| -> Span {
        let prev_end = boundaries
            .iter()
            .copied()
            .filter(|&e| e <= span.start)
            .max()
            .unwrap_or(0);
        let mut start = span.start;
        loop {
            let mut k = start;
            while k > prev_end && chars[k - 1].is_whitespace() {
                k -= 1;
            }
            match comments.iter().find(|c| c.end == k && c.start >= prev_end) {
                Some(c) => start = c.start,
                None => break,
            }
        }
        Span::new(start, span.end)
    };

    let sig = extend(model.class_signature_span);
    if sig.start != model.class_signature_span.start {
        model.class_signature_span = sig;
        model.class_signature = chars[sig.start..sig.end].iter().collect();
    }
    for f in &mut model.fields {
        let s = extend(f.span);
        if s.start != f.span.start {
            f.span = s;
            f.declaration_text = chars[s.start..s.end].iter().collect();
        }
    }
    for m in &mut model.methods {
        let s = extend(m.span);
        if s.start != m.span.start {
            let delta: String = chars[s.start..m.span.start].iter().collect();
            m.signature_text = format!("{}{}", delta, m.signature_text);
            m.span = s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_class() {
        let fm = parse_source("A.java", "class A { }").unwrap();
        assert_eq!(fm.class_name, "A");
        assert_eq!(fm.class_signature, "class A");
        assert!(fm.fields.is_empty());
        assert!(fm.methods.is_empty());
    }

    #[test]
    fn one_field_one_method() {
        let src = "package p; class A { int x; void f(){x=1;} }";
        let fm = parse_source("A.java", src).unwrap();
        assert_eq!(fm.package_name.as_deref(), Some("p"));
        assert_eq!(fm.fields.len(), 1);
        assert_eq!(fm.fields[0].name, "x");
        assert_eq!(fm.methods.len(), 1);
        assert_eq!(fm.methods[0].name, "f");
        assert_eq!(fm.methods[0].body_text.as_deref(), Some("{x=1;}"));
        assert_eq!(fm.reconstruct(), src);
    }

    #[test]
    fn braces_in_string_literal() {
        let src = "class A { String s = \"}{\"; void f(){ s = \"{\"; } }";
        let fm = parse_source("A.java", src).unwrap();
        assert_eq!(fm.methods.len(), 1);
        assert_eq!(fm.fields.len(), 1);
        assert_eq!(fm.reconstruct(), src);
    }

    #[test]
    fn braces_in_comment() {
        let src = "class A { /* { */ void f(){} // }\n }";
        let fm = parse_source("A.java", src).unwrap();
        assert_eq!(fm.methods.len(), 1);
        assert_eq!(fm.reconstruct(), src);
    }

    #[test]
    fn nested_class_methods_qualified() {
        let src = "class Outer { void f(){} class Inner { void g(){} } }";
        let fm = parse_source("O.java", src).unwrap();
        let names: Vec<_> = fm.methods.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, vec!["f", "Outer.Inner.g"]);
        assert_eq!(fm.reconstruct(), src);
    }

    #[test]
    fn abstract_method_has_no_body() {
        let src = "interface I { int f(); }";
        let fm = parse_source("I.java", src).unwrap();
        assert_eq!(fm.methods.len(), 1);
        assert!(fm.methods[0].body_text.is_none());
    }

    #[test]
    fn field_with_call_initializer_is_not_a_method() {
        let src = "class A { int x = make(); int make(){ return 1; } }";
        let fm = parse_source("A.java", src).unwrap();
        assert_eq!(fm.fields.len(), 1);
        assert_eq!(fm.fields[0].name, "x");
        assert_eq!(fm.methods.len(), 1);
        assert_eq!(fm.methods[0].name, "make");
    }

    #[test]
    fn unbalanced_braces_error() {
        assert!(matches!(
            parse_source("A.java", "class A { void f(){ }"),
            Err(ParseError::UnbalancedBraces)
        ));
    }

    #[test]
    fn no_type_declaration_error() {
        assert!(matches!(
            parse_source("A.java", "package p;"),
            Err(ParseError::NoTypeDeclaration)
        ));
    }

    #[test]
    fn referenced_identifiers_exclude_keywords_and_literals() {
        let src = "class A { int x; void f(){ if (x > 0) { g(\"hello\"); } } void g(String s){} }";
        let fm = parse_source("A.java", src).unwrap();
        let refs = &fm.methods[0].referenced_identifiers;
        assert!(refs.contains(&"x".to_string()));
        assert!(refs.contains(&"g".to_string()));
        assert!(!refs.contains(&"if".to_string()));
        assert!(!refs.contains(&"hello".to_string()));
    }
}
