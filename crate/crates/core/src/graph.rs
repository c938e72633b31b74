//! Directed multigraphs whose edge shift is the dynamical system.

use std::collections::HashSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A validated directed multigraph with at least one directed cycle.
///
/// Edges are addressed by their position `0..edge_count()`; the string id is
/// kept for file formats and reports. Self-loops and parallel edges are
/// allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
}

/// Validates the edge list and confirms that some directed cycle exists.
pub fn build_graph<S: Into<String>>(
    node_count: usize,
    edges: impl IntoIterator<Item = (S, usize, usize)>,
) -> Result<Graph> {
    let mut seen = HashSet::new();
    let mut list = Vec::new();
    for (id, source, target) in edges {
        let id = id.into();
        if source >= node_count || target >= node_count {
            return Err(Error::MalformedEdge(format!(
                "edge {id:?} joins {source} -> {target} but there are {node_count} nodes"
            )));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::MalformedEdge(format!("duplicate edge id {id:?}")));
        }
        list.push(Edge { id, source, target });
    }
    let graph = Graph { node_count, edges: list };
    if graph.cyclic_components().is_empty() {
        return Err(Error::NoCycle);
    }
    Ok(graph)
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Outgoing edge indices per node, restricted to `mask` when given.
    pub fn out_edges(&self, mask: Option<&[bool]>) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.node_count];
        for (i, e) in self.edges.iter().enumerate() {
            if mask.is_none_or(|m| m[i]) {
                out[e.source].push(i);
            }
        }
        out
    }

    /// Strongly connected components that carry at least one cycle (two or
    /// more nodes, or a single node with a self-loop), as sorted node lists.
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        self.cyclic_components_of(None)
    }

    /// As [`Graph::cyclic_components`], for the subgraph of edges in `mask`.
    pub fn cyclic_components_of(&self, mask: Option<&[bool]>) -> Vec<Vec<usize>> {
        let mut pg = DiGraph::<(), ()>::with_capacity(self.node_count, self.edges.len());
        for _ in 0..self.node_count {
            pg.add_node(());
        }
        let mut has_loop = vec![false; self.node_count];
        for (i, e) in self.edges.iter().enumerate() {
            if mask.is_some_and(|m| !m[i]) {
                continue;
            }
            if e.source == e.target {
                has_loop[e.source] = true;
            }
            pg.add_edge(NodeIndex::new(e.source), NodeIndex::new(e.target), ());
        }
        let mut comps: Vec<Vec<usize>> = tarjan_scc(&pg)
            .into_iter()
            .map(|c| {
                let mut nodes: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                nodes.sort_unstable();
                nodes
            })
            .filter(|c| c.len() > 1 || has_loop[c[0]])
            .collect();
        comps.sort();
        comps
    }

    /// Component label per node (`None` outside cyclic components) for the
    /// subgraph of edges in `mask`.
    pub fn component_labels(&self, mask: Option<&[bool]>) -> (Vec<Vec<usize>>, Vec<Option<usize>>) {
        let comps = self.cyclic_components_of(mask);
        let mut label = vec![None; self.node_count];
        for (c, nodes) in comps.iter().enumerate() {
            for &v in nodes {
                label[v] = Some(c);
            }
        }
        (comps, label)
    }

    /// Edges lying on at least one directed cycle, i.e. edges inside a
    /// strongly connected component of the `mask` subgraph.
    pub fn cycle_edges(&self, mask: Option<&[bool]>) -> Vec<bool> {
        let (_, label) = self.component_labels(mask);
        self.edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                mask.is_none_or(|m| m[i])
                    && label[e.source].is_some()
                    && label[e.source] == label[e.target]
            })
            .collect()
    }
}
