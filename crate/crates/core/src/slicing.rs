//! Leaf units for hierarchical file summarization: single method slices and
//! method communities, each carrying the global fields they reference.

use crate::community::Partition;
use crate::error::GraphError;
use crate::graph::{build_graph, DependencyGraph, NodeRef};
use crate::model::{FieldDecl, FileModel, MethodDecl};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodUnit {
    pub file_path: String,
    pub class_name: String,
    pub method: MethodDecl,
    pub retained_fields: Vec<FieldDecl>,
}

impl MethodUnit {
    /// Code text fed to the LLM: retained fields, then the method.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for f in &self.retained_fields {
            out.push_str(&f.declaration_text);
            out.push('\n');
        }
        out.push_str(&self.method.signature_text);
        match &self.method.body_text {
            Some(body) => {
                out.push(' ');
                out.push_str(body);
            }
            None => out.push(';'),
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommunityUnit {
    pub file_path: String,
    pub class_name: String,
    /// Declaration order.
    pub methods: Vec<MethodDecl>,
    pub retained_fields: Vec<FieldDecl>,
}

impl CommunityUnit {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for f in &self.retained_fields {
            out.push_str(&f.declaration_text);
            out.push('\n');
        }
        for m in &self.methods {
            out.push_str(&m.signature_text);
            match &m.body_text {
                Some(body) => {
                    out.push(' ');
                    out.push_str(body);
                }
                None => out.push(';'),
            }
            out.push('\n');
        }
        out
    }

    pub fn method_names(&self) -> Vec<String> {
        self.methods.iter().map(|m| m.name.clone()).collect()
    }
}

/// One unit per method with a body, in declaration order, each retaining the
/// fields its body references.
pub fn slice_methods(file: &FileModel) -> Result<Vec<MethodUnit>, GraphError> {
    let units: Vec<MethodUnit> = file
        .methods
        .iter()
        .filter(|m| m.body_text.is_some())
        .map(|m| MethodUnit {
            file_path: file.path.clone(),
            class_name: file.class_name.clone(),
            method: m.clone(),
            retained_fields: file
                .fields
                .iter()
                .filter(|f| m.referenced_identifiers.contains(&f.name))
                .cloned()
                .collect(),
        })
        .collect();
    if units.is_empty() {
        return Err(GraphError::EmptyFile);
    }
    Ok(units)
}

/// Group the file's methods by the partition's communities. Field nodes join
/// the community they were assigned to; a field in a methodless community is
/// attached to the community of its highest-weight method neighbor. Units are
/// ordered by their first method's declaration position.
pub fn assemble_communities(
    file: &FileModel,
    graph: &DependencyGraph,
    partition: &Partition,
) -> Vec<CommunityUnit> {
    let method_of: BTreeMap<&str, &MethodDecl> =
        file.methods.iter().map(|m| (m.name.as_str(), m)).collect();
    let field_of: BTreeMap<&str, &FieldDecl> =
        file.fields.iter().map(|f| (f.name.as_str(), f)).collect();

    // Communities that contain at least one method node.
    let mut method_communities: BTreeMap<usize, Vec<&MethodDecl>> = BTreeMap::new();
    for (i, node) in graph.nodes.iter().enumerate() {
        if let NodeRef::Method(name) = node {
            if let Some(m) = method_of.get(name.as_str()) {
                method_communities
                    .entry(partition.assignment[i])
                    .or_default()
                    .push(m);
            }
        }
    }

    // Place each field: its own community if that community has methods,
    // otherwise its strongest method neighbor's community.
    let adjacency = graph.adjacency();
    let mut community_fields: BTreeMap<usize, Vec<&FieldDecl>> = BTreeMap::new();
    for (i, node) in graph.nodes.iter().enumerate() {
        let NodeRef::Field(name) = node else { continue };
        let Some(f) = field_of.get(name.as_str()) else { continue };
        let own = partition.assignment[i];
        let target = if method_communities.contains_key(&own) {
            Some(own)
        } else {
            adjacency[i]
                .iter()
                .filter(|(&j, _)| graph.nodes[j].is_method())
                .max_by(|(ja, wa), (jb, wb)| {
                    wa.partial_cmp(wb)
                        .unwrap()
                        .then(jb.cmp(ja)) // on ties prefer the earlier-declared method
                })
                .map(|(&j, _)| partition.assignment[j])
        };
        if let Some(c) = target {
            community_fields.entry(c).or_default().push(f);
        }
    }

    let mut units: Vec<CommunityUnit> = method_communities
        .into_iter()
        .map(|(c, mut methods)| {
            methods.sort_by_key(|m| m.span.start);
            let mut fields: Vec<&FieldDecl> =
                community_fields.remove(&c).unwrap_or_default();
            fields.sort_by_key(|f| f.span.start);
            fields.dedup_by_key(|f| f.span.start);
            // Keep only fields referenced by at least one member method.
            let fields = fields
                .into_iter()
                .filter(|f| {
                    methods
                        .iter()
                        .any(|m| m.referenced_identifiers.contains(&f.name))
                })
                .cloned()
                .collect();
            CommunityUnit {
                file_path: file.path.clone(),
                class_name: file.class_name.clone(),
                methods: methods.into_iter().cloned().collect(),
                retained_fields: fields,
            }
        })
        .collect();
    units.sort_by_key(|u| {
        u.methods
            .first()
            .map(|m| m.span.start)
            .unwrap_or(usize::MAX)
    });
    units
}

/// Convenience wrapper: graph, partition, and units for one file.
pub fn communities_for_file(file: &FileModel) -> Vec<CommunityUnit> {
    let graph = build_graph(file);
    let partition = crate::community::detect_communities(&graph);
    assemble_communities(file, &graph, &partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::detect_communities;
    use crate::parser::parse_source;

    #[test]
    fn slice_methods_declaration_order() {
        let src = "class A { void a(){} void b(){} void c(){} }";
        let fm = parse_source("A.java", src).unwrap();
        let units = slice_methods(&fm).unwrap();
        let names: Vec<_> = units.iter().map(|u| u.method.name.as_str()).collect();
        assert_eq!(names, vec!["a", "b", "c"]);
    }

    #[test]
    fn slice_methods_retains_referenced_fields_only() {
        let src = "class A { int x; int y; void f(){ x++; } }";
        let fm = parse_source("A.java", src).unwrap();
        let units = slice_methods(&fm).unwrap();
        assert_eq!(units.len(), 1);
        let fields: Vec<_> = units[0].retained_fields.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(fields, vec!["x"]);
    }

    #[test]
    fn slice_methods_empty_file_errors() {
        let fm = parse_source("A.java", "class A { int x; }").unwrap();
        assert!(matches!(slice_methods(&fm), Err(GraphError::EmptyFile)));
    }

    #[test]
    fn abstract_methods_are_not_units() {
        let src = "class A { abstract void a(); void b(){} }";
        let fm = parse_source("A.java", src).unwrap();
        let units = slice_methods(&fm).unwrap();
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].method.name, "b");
    }

    #[test]
    fn single_community_holds_all_methods() {
        let src = "class A { void f(){ g(); } void g(){ h(); } void h(){} }";
        let fm = parse_source("A.java", src).unwrap();
        let graph = build_graph(&fm);
        let partition = detect_communities(&graph);
        let units = assemble_communities(&fm, &graph, &partition);
        let total: usize = units.iter().map(|u| u.methods.len()).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn every_body_method_in_exactly_one_unit() {
        let src = "class A { int x; void f(){ x++; } void g(){ f(); } void h(){} }";
        let fm = parse_source("A.java", src).unwrap();
        let units = communities_for_file(&fm);
        let mut seen = std::collections::BTreeSet::new();
        for u in &units {
            for m in &u.methods {
                assert!(seen.insert(m.name.clone()), "method {} duplicated", m.name);
            }
        }
        let with_body: usize = fm.methods.iter().filter(|m| m.body_text.is_some()).count();
        assert_eq!(seen.len(), with_body);
    }

    #[test]
    fn render_contains_class_fields_and_bodies() {
        let src = "class A { int x; void f(){ x++; } }";
        let fm = parse_source("A.java", src).unwrap();
        let units = slice_methods(&fm).unwrap();
        let text = units[0].render();
        assert!(text.contains("int x;"));
        assert!(text.contains("void f"));
        assert!(text.contains("x++"));
    }
}
