//! Method/field dependency graph of a single file.
//!
//! Methods and global fields are nodes; lexical use of a method name in call
//! position (name followed by `(`) or of a field name anywhere in a method
//! body contributes edge weight. The graph is undirected; weights from both
//! call directions sum onto the same edge. Fields never connect to fields.

use crate::model::FileModel;
use crate::parser::mask_source;
use crate::model::Span;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeRef {
    Method(String),
    Field(String),
}

impl NodeRef {
    pub fn name(&self) -> &str {
        match self {
            NodeRef::Method(n) | NodeRef::Field(n) => n,
        }
    }

    pub fn is_method(&self) -> bool {
        matches!(self, NodeRef::Method(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DependencyGraph {
    /// Declaration order: methods and fields as they appear in the file.
    pub nodes: Vec<NodeRef>,
    /// Each unordered pair stored once with `u < v`; weights >= 1.
    pub edges: Vec<(usize, usize, f64)>,
}

impl DependencyGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total edge weight m.
    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|(_, _, w)| w).sum()
    }

    /// Symmetric adjacency lookup.
    pub fn adjacency(&self) -> Vec<BTreeMap<usize, f64>> {
        let mut adj = vec![BTreeMap::new(); self.nodes.len()];
        for &(u, v, w) in &self.edges {
            *adj[u].entry(v).or_insert(0.0) += w;
            *adj[v].entry(u).or_insert(0.0) += w;
        }
        adj
    }

    /// Weighted degree of each node.
    pub fn degrees(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.nodes.len()];
        for &(u, v, w) in &self.edges {
            deg[u] += w;
            deg[v] += w;
        }
        deg
    }
}

/// Count occurrences of `name` in call position (followed by `(`) within the
/// masked body text.
fn count_calls(mask: &[char], body: Span, name: &str) -> usize {
    count_occurrences(mask, body, name, true)
}

/// Count plain identifier occurrences of `name` within the masked body text.
fn count_uses(mask: &[char], body: Span, name: &str) -> usize {
    count_occurrences(mask, body, name, false)
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn count_occurrences(mask: &[char], body: Span, name: &str, call_position: bool) -> usize {
    let target: Vec<char> = name.chars().collect();
    let mut count = 0usize;
    let mut i = body.start;
    while i + target.len() <= body.end {
        if mask[i..i + target.len()] == target[..] {
            let before_ok = i == body.start || !is_ident_part(mask[i - 1]);
            let after = i + target.len();
            let after_ok = after >= body.end || !is_ident_part(mask[after]);
            if before_ok && after_ok {
                if call_position {
                    let mut k = after;
                    while k < body.end && mask[k].is_whitespace() {
                        k += 1;
                    }
                    if k < body.end && mask[k] == '(' {
                        count += 1;
                    }
                } else {
                    count += 1;
                }
                i = after;
                continue;
            }
        }
        i += 1;
    }
    count
}

/// Build the dependency graph for one file. Nodes are methods (with bodies
/// or abstract) and fields, in declaration order.
pub fn build_graph(file: &FileModel) -> DependencyGraph {
    let chars: Vec<char> = file.raw_text.chars().collect();
    let mask = mask_source(&chars);

    let mut nodes: Vec<(usize, NodeRef)> = Vec::new();
    for m in &file.methods {
        nodes.push((m.span.start, NodeRef::Method(m.name.clone())));
    }
    for f in &file.fields {
        nodes.push((f.span.start, NodeRef::Field(f.name.clone())));
    }
    nodes.sort_by_key(|(s, _)| *s);
    // Overloaded methods share one node, keyed by name; the first
    // declaration fixes the node position.
    let mut deduped: Vec<NodeRef> = Vec::new();
    for (_, n) in nodes {
        if !deduped.contains(&n) {
            deduped.push(n);
        }
    }
    let nodes = deduped;
    let index_of: BTreeMap<(bool, &str), usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| ((n.is_method(), n.name()), i))
        .collect();

    let mut weights: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for method in &file.methods {
        let caller = index_of[&(true, method.name.as_str())];
        let body = match method.body_text {
            Some(_) => {
                let body_end = method.span.end;
                // Body starts at the opening brace; locate it as span end of
                // the signature within the method span.
                let sig_len = method.span.len()
                    - method.body_text.as_ref().unwrap().chars().count();
                Span::new(method.span.start + sig_len, body_end)
            }
            None => continue,
        };
        let mut seen_callees = std::collections::BTreeSet::new();
        for other in &file.methods {
            if other.name == method.name || !seen_callees.insert(other.name.as_str()) {
                continue;
            }
            let callee = index_of[&(true, other.name.as_str())];
            let w = count_calls(&mask, body, other.simple_name());
            if w > 0 {
                let key = (caller.min(callee), caller.max(callee));
                *weights.entry(key).or_insert(0.0) += w as f64;
            }
        }
        let mut seen_fields = std::collections::BTreeSet::new();
        for field in &file.fields {
            if !seen_fields.insert(field.name.as_str()) {
                continue;
            }
            let fnode = index_of[&(false, field.name.as_str())];
            let w = count_uses(&mask, body, &field.name);
            if w > 0 {
                let key = (caller.min(fnode), caller.max(fnode));
                *weights.entry(key).or_insert(0.0) += w as f64;
            }
        }
    }

    let edges = weights
        .into_iter()
        .filter(|&((u, v), _)| u != v)
        .map(|((u, v), w)| (u, v, w))
        .collect();
    DependencyGraph { nodes, edges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_source;

    #[test]
    fn single_call_single_edge() {
        let src = "class A { void f(){ g(); } void g(){} }";
        let fm = parse_source("A.java", src).unwrap();
        let g = build_graph(&fm);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edges, vec![(0, 1, 1.0)]);
    }

    #[test]
    fn field_read_twice_weight_two() {
        let src = "class A { int x; void f(){ int y = x + x; } }";
        let fm = parse_source("A.java", src).unwrap();
        let g = build_graph(&fm);
        assert_eq!(g.node_count(), 2);
        // Node 0 is field x (declared first), node 1 is method f.
        assert_eq!(g.edges, vec![(0, 1, 2.0)]);
    }

    #[test]
    fn mutual_calls_sum_onto_one_edge() {
        let src = "class A { void f(){ g(); } void g(){ f(); f(); } }";
        let fm = parse_source("A.java", src).unwrap();
        let g = build_graph(&fm);
        assert_eq!(g.edges, vec![(0, 1, 3.0)]);
    }

    #[test]
    fn isolated_nodes_remain() {
        let src = "class A { int lonely; void f(){ g(); } void g(){} }";
        let fm = parse_source("A.java", src).unwrap();
        let g = build_graph(&fm);
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn name_in_string_literal_does_not_count() {
        let src = "class A { void f(){ log(\"g()\"); } void g(){} void log(String s){} }";
        let fm = parse_source("A.java", src).unwrap();
        let g = build_graph(&fm);
        // f-log edge only; the "g()" inside the literal is masked.
        assert_eq!(g.edges.len(), 1);
        let (u, v, _) = g.edges[0];
        let names: Vec<&str> = vec![g.nodes[u].name(), g.nodes[v].name()];
        assert!(names.contains(&"f") && names.contains(&"log"));
    }

    #[test]
    fn adjacency_is_symmetric() {
        let src = "class A { int x; void f(){ x++; g(); } void g(){ x--; } }";
        let fm = parse_source("A.java", src).unwrap();
        let g = build_graph(&fm);
        let adj = g.adjacency();
        for u in 0..g.node_count() {
            for (&v, &w) in &adj[u] {
                assert_eq!(adj[v][&u], w);
            }
        }
    }
}
