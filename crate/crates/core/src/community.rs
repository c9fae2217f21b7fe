//! Modularity-maximizing community detection over the method/field
//! dependency graph, following the two-phase local-move / aggregate scheme.
//!
//! Determinism: nodes are scanned in declaration order; on equal gain the
//! current community wins, otherwise the lowest community id. Convergence
//! requires a gain above `GAIN_TOLERANCE`; `MAX_PASSES` bounds the outer loop.

use crate::error::GraphError;
use crate::graph::DependencyGraph;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const GAIN_TOLERANCE: f64 = 1e-9;
pub const MAX_PASSES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    /// Node index -> community id; ids are `0..community_count` with no gaps,
    /// numbered by first appearance in node order.
    pub assignment: Vec<usize>,
    pub community_count: usize,
    /// Modularity of `assignment`; 0.0 for edgeless graphs by definition.
    pub modularity: f64,
}

impl Partition {
    /// Renumber communities by first appearance so ids are gapless.
    pub fn normalized(assignment: &[usize], modularity: f64) -> Self {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut normalized = Vec::with_capacity(assignment.len());
        for &c in assignment {
            let next = remap.len();
            let id = *remap.entry(c).or_insert(next);
            normalized.push(id);
        }
        Partition {
            community_count: remap.len(),
            assignment: normalized,
            modularity,
        }
    }

    pub fn members(&self, community: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == community)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Newman modularity Q of `assignment` over `graph`, resolution 1.
pub fn modularity(graph: &DependencyGraph, assignment: &[usize]) -> Result<f64, GraphError> {
    let m = graph.total_weight();
    if m <= 0.0 {
        return Err(GraphError::DegenerateGraph);
    }
    let degrees = graph.degrees();
    let mut intra = 0.0; // sum of weights of edges inside communities
    for &(u, v, w) in &graph.edges {
        if assignment[u] == assignment[v] {
            intra += w;
        }
    }
    let mut community_degree: BTreeMap<usize, f64> = BTreeMap::new();
    for (node, &c) in assignment.iter().enumerate() {
        *community_degree.entry(c).or_insert(0.0) += degrees[node];
    }
    let two_m = 2.0 * m;
    let q = intra / m
        - community_degree
            .values()
            .map(|d| (d / two_m) * (d / two_m))
            .sum::<f64>();
    Ok(q)
}

/// Working graph for the aggregation phase: community-level multigraph with
/// self-loops holding intra-community weight.
struct WorkGraph {
    adj: Vec<BTreeMap<usize, f64>>,
    self_loops: Vec<f64>,
    two_m: f64,
}

impl WorkGraph {
    fn from_dependency(graph: &DependencyGraph) -> Self {
        let n = graph.node_count();
        let mut adj = vec![BTreeMap::new(); n];
        for &(u, v, w) in &graph.edges {
            *adj[u].entry(v).or_insert(0.0) += w;
            *adj[v].entry(u).or_insert(0.0) += w;
        }
        let two_m = 2.0 * graph.total_weight();
        WorkGraph {
            adj,
            self_loops: vec![0.0; n],
            two_m,
        }
    }

    fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Weighted degree including twice the self-loop weight.
    fn degree(&self, u: usize) -> f64 {
        self.adj[u].values().sum::<f64>() + 2.0 * self.self_loops[u]
    }

    /// One pass of local moves. Returns (assignment, moved_any). The
    /// modularity gain of every accepted move is appended to `gains`.
    fn local_moves(&self, gains: &mut Vec<f64>) -> (Vec<usize>, bool) {
        let n = self.node_count();
        let mut assignment: Vec<usize> = (0..n).collect();
        let mut community_degree: Vec<f64> = (0..n).map(|u| self.degree(u)).collect();
        let degrees: Vec<f64> = (0..n).map(|u| self.degree(u)).collect();
        let mut moved_any = false;
        loop {
            let mut moved_this_round = false;
            for u in 0..n {
                let current = assignment[u];
                // Weight from u to each neighboring community.
                let mut to_community: BTreeMap<usize, f64> = BTreeMap::new();
                for (&v, &w) in &self.adj[u] {
                    if v != u {
                        *to_community.entry(assignment[v]).or_insert(0.0) += w;
                    }
                }
                let k_u = degrees[u];
                community_degree[current] -= k_u;
                let w_current = to_community.get(&current).copied().unwrap_or(0.0);
                let gain_of = |target: usize, w_to: f64| -> f64 {
                    (w_to - w_current) / (self.two_m / 2.0)
                        - k_u * (community_degree[target] - community_degree[current])
                            / (self.two_m * self.two_m / 2.0)
                };
                let mut best = current;
                let mut best_gain = 0.0;
                for (&target, &w_to) in &to_community {
                    if target == current {
                        continue;
                    }
                    let gain = gain_of(target, w_to);
                    if gain > best_gain + GAIN_TOLERANCE
                        || (gain > GAIN_TOLERANCE
                            && (gain - best_gain).abs() <= GAIN_TOLERANCE
                            && best != current
                            && target < best)
                    {
                        best = target;
                        best_gain = gain;
                    }
                }
                community_degree[best] += k_u;
                if best != current {
                    assignment[u] = best;
                    gains.push(best_gain);
                    moved_this_round = true;
                    moved_any = true;
                }
            }
            if !moved_this_round {
                break;
            }
        }
        (assignment, moved_any)
    }

    /// Aggregate communities into super-nodes. `mapping` renumbers the
    /// communities by first appearance.
    fn aggregate(&self, assignment: &[usize]) -> (WorkGraph, Vec<usize>) {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut mapped = Vec::with_capacity(assignment.len());
        for &c in assignment {
            let next = remap.len();
            mapped.push(*remap.entry(c).or_insert(next));
        }
        let k = remap.len();
        let mut adj = vec![BTreeMap::new(); k];
        let mut self_loops = vec![0.0; k];
        for u in 0..self.node_count() {
            self_loops[mapped[u]] += self.self_loops[u];
            for (&v, &w) in &self.adj[u] {
                if v < u {
                    continue; // visit each undirected pair once
                }
                let (cu, cv) = (mapped[u], mapped[v]);
                if cu == cv {
                    self_loops[cu] += w;
                } else {
                    *adj[cu].entry(cv).or_insert(0.0) += w;
                    *adj[cv].entry(cu).or_insert(0.0) += w;
                }
            }
        }
        (
            WorkGraph {
                adj,
                self_loops,
                two_m: self.two_m,
            },
            mapped,
        )
    }
}

/// Two-phase iterative modularity optimization. Edgeless graphs yield the
/// all-singleton partition with modularity defined as 0.
pub fn detect_communities(graph: &DependencyGraph) -> Partition {
    detect_communities_traced(graph).0
}

/// Like [`detect_communities`], also returning the modularity gain of every
/// accepted local move, in acceptance order across all passes.
pub fn detect_communities_traced(graph: &DependencyGraph) -> (Partition, Vec<f64>) {
    let n = graph.node_count();
    if graph.edge_count() == 0 || n == 0 {
        return (
            Partition {
                assignment: (0..n).collect(),
                community_count: n,
                modularity: 0.0,
            },
            Vec::new(),
        );
    }

    let mut work = WorkGraph::from_dependency(graph);
    // node -> community of the original graph, refined each pass
    let mut membership: Vec<usize> = (0..n).collect();
    let mut gains = Vec::new();
    for _pass in 0..MAX_PASSES {
        let (assignment, moved) = work.local_moves(&mut gains);
        if !moved {
            break;
        }
        let (aggregated, mapped) = work.aggregate(&assignment);
        // `mapped[w]` is the super-node that work node `w` landed in.
        for slot in membership.iter_mut() {
            *slot = mapped[*slot];
        }
        work = aggregated;
    }

    let q = modularity(graph, &membership).unwrap_or(0.0);
    (Partition::normalized(&membership, q), gains)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeRef;

    fn graph(n: usize, edges: &[(usize, usize, f64)]) -> DependencyGraph {
        DependencyGraph {
            nodes: (0..n).map(|i| NodeRef::Method(format!("m{i}"))).collect(),
            edges: edges.to_vec(),
        }
    }

    #[test]
    fn modularity_single_community_is_zero() {
        let g = graph(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]);
        let q = modularity(&g, &[0, 0, 0, 0]).unwrap();
        assert!(q.abs() < 1e-12);
    }

    #[test]
    fn modularity_two_disjoint_edges() {
        let g = graph(4, &[(0, 1, 1.0), (2, 3, 1.0)]);
        let q = modularity(&g, &[0, 0, 1, 1]).unwrap();
        assert!((q - 0.5).abs() < 1e-12);
    }

    #[test]
    fn modularity_triangle_singletons() {
        let g = graph(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]);
        let q = modularity(&g, &[0, 1, 2]).unwrap();
        assert!((q - (-1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn modularity_edgeless_errors() {
        let g = graph(3, &[]);
        assert_eq!(
            modularity(&g, &[0, 1, 2]),
            Err(crate::error::GraphError::DegenerateGraph)
        );
    }

    #[test]
    fn detect_single_edge_merges_pair() {
        let g = graph(2, &[(0, 1, 1.0)]);
        let p = detect_communities(&g);
        assert_eq!(p.community_count, 1);
        assert!(p.modularity.abs() < 1e-12);
    }

    #[test]
    fn detect_edgeless_yields_singletons() {
        let g = graph(3, &[]);
        let p = detect_communities(&g);
        assert_eq!(p.community_count, 3);
        assert_eq!(p.assignment, vec![0, 1, 2]);
        assert_eq!(p.modularity, 0.0);
    }

    #[test]
    fn detect_two_triangles_with_bridge() {
        let g = graph(
            6,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
                (2, 3, 1.0),
            ],
        );
        let p = detect_communities(&g);
        assert_eq!(p.community_count, 2);
        assert_eq!(p.assignment[0], p.assignment[1]);
        assert_eq!(p.assignment[1], p.assignment[2]);
        assert_eq!(p.assignment[3], p.assignment[4]);
        assert_eq!(p.assignment[4], p.assignment[5]);
        assert_ne!(p.assignment[0], p.assignment[3]);
    }

    #[test]
    fn detection_never_below_singleton_modularity() {
        let g = graph(
            5,
            &[(0, 1, 2.0), (1, 2, 1.0), (2, 3, 3.0), (3, 4, 1.0), (0, 4, 1.0)],
        );
        let p = detect_communities(&g);
        let singletons: Vec<usize> = (0..5).collect();
        let q_singletons = modularity(&g, &singletons).unwrap();
        assert!(p.modularity >= q_singletons - 1e-12);
    }

    #[test]
    fn stored_modularity_matches_recomputation() {
        let g = graph(
            6,
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (0, 2, 1.0),
                (3, 4, 1.0),
                (4, 5, 1.0),
                (3, 5, 1.0),
                (2, 3, 1.0),
            ],
        );
        let p = detect_communities(&g);
        let q = modularity(&g, &p.assignment).unwrap();
        assert!((p.modularity - q).abs() < 1e-12);
    }
}
