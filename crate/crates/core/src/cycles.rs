//! Simple-cycle enumeration (Johnson's algorithm) on directed multigraphs.
//!
//! Cycles are edge-index sequences. Parallel edges give distinct cycles.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::canonical_rotation;

/// Default cap on the number of simple cycles any enumeration may produce.
pub const DEFAULT_CYCLE_BUDGET: usize = 1_000_000;

/// Visits every simple cycle of the `mask` subgraph once, in Johnson's
/// order. The visitor sees the edges starting at the cycle's smallest node
/// and may stop early with `ControlFlow::Break`.
///
/// Returns the number of cycles visited, or `CycleBudgetExceeded` as soon as
/// more than `budget` cycles exist.
pub fn for_each_simple_cycle<F>(
    graph: &Graph,
    mask: Option<&[bool]>,
    budget: usize,
    visit: F,
) -> Result<usize>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = graph.node_count();
    let mut search = Johnson {
        graph,
        adj: vec![Vec::new(); n],
        blocked: vec![false; n],
        blocked_by: vec![Vec::new(); n],
        stack: Vec::new(),
        start: 0,
        count: 0,
        budget,
        halt: None,
        visit,
    };
    let allowed = |e: usize| mask.is_none_or(|m| m[e]);
    for s in 0..n {
        let sub: Vec<bool> = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| allowed(i) && e.source >= s && e.target >= s)
            .collect();
        let (_, label) = graph.component_labels(Some(&sub));
        let Some(comp) = label[s] else { continue };
        for adj in &mut search.adj {
            adj.clear();
        }
        for (i, e) in graph.edges().iter().enumerate() {
            if sub[i] && label[e.source] == Some(comp) && label[e.target] == Some(comp) {
                search.adj[e.source].push(i);
            }
        }
        for v in s..n {
            if label[v] == Some(comp) {
                search.blocked[v] = false;
                search.blocked_by[v].clear();
            }
        }
        search.start = s;
        search.circuit(s);
        if let Some(halt) = search.halt {
            return match halt {
                Halt::Budget => Err(Error::CycleBudgetExceeded { cap: budget }),
                Halt::Visitor => Ok(search.count),
            };
        }
    }
    Ok(search.count)
}

/// All simple cycles in canonical rotation, sorted lexicographically.
pub fn enumerate_simple_cycles(graph: &Graph) -> Result<Vec<Vec<usize>>> {
    enumerate_simple_cycles_in(graph, None, DEFAULT_CYCLE_BUDGET)
}

pub fn enumerate_simple_cycles_in(
    graph: &Graph,
    mask: Option<&[bool]>,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    for_each_simple_cycle(graph, mask, budget, |c| {
        cycles.push(canonical_rotation(c));
        ControlFlow::Continue(())
    })?;
    cycles.sort();
    Ok(cycles)
}

#[derive(Clone, Copy)]
enum Halt {
    Budget,
    Visitor,
}

struct Johnson<'g, F> {
    graph: &'g Graph,
    adj: Vec<Vec<usize>>,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
    count: usize,
    budget: usize,
    halt: Option<Halt>,
    visit: F,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Johnson<'_, F> {
    fn circuit(&mut self, v: usize) -> bool {
        let mut found = false;
        self.blocked[v] = true;
        for k in 0..self.adj[v].len() {
            if self.halt.is_some() {
                return found;
            }
            let e = self.adj[v][k];
            let w = self.graph.edge(e).target;
            if w == self.start {
                found = true;
                self.count += 1;
                if self.count > self.budget {
                    self.halt = Some(Halt::Budget);
                    return found;
                }
                self.stack.push(e);
                if (self.visit)(&self.stack).is_break() {
                    self.halt = Some(Halt::Visitor);
                }
                self.stack.pop();
            } else if !self.blocked[w] {
                self.stack.push(e);
                if self.circuit(w) {
                    found = true;
                }
                self.stack.pop();
            }
        }
        if found {
            self.unblock(v);
        } else {
            for k in 0..self.adj[v].len() {
                let w = self.graph.edge(self.adj[v][k]).target;
                if !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        found
    }

    fn unblock(&mut self, u: usize) {
        self.blocked[u] = false;
        while let Some(w) = self.blocked_by[u].pop() {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::graph::fixtures::*;

    /// Brute force: extend simple paths from each edge and close them at the
    /// start node, keeping canonical rotations.
    fn brute_force(graph: &Graph) -> Vec<Vec<usize>> {
        fn extend(g: &Graph, path: &mut Vec<usize>, visited: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            let start = g.edge(path[0]).source;
            let at = g.edge(*path.last().unwrap()).target;
            if at == start {
                out.push(canonical_rotation(path));
                return;
            }
            if visited[at] {
                return;
            }
            visited[at] = true;
            for (i, e) in g.edges().iter().enumerate() {
                if e.source == at {
                    path.push(i);
                    extend(g, path, visited, out);
                    path.pop();
                }
            }
            visited[at] = false;
        }
        let mut out = Vec::new();
        for i in 0..graph.edge_count() {
            let mut visited = vec![false; graph.node_count()];
            visited[graph.edge(i).source] = true;
            extend(graph, &mut vec![i], &mut visited, &mut out);
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn reference_graphs() {
        assert_eq!(enumerate_simple_cycles(&g3()).unwrap(), vec![vec![0], vec![1, 2]]);
        assert_eq!(enumerate_simple_cycles(&g2()).unwrap(), vec![vec![0], vec![1]]);
        assert_eq!(enumerate_simple_cycles(&g1()).unwrap(), vec![vec![0]]);
    }

    #[test]
    fn complete_digraph_on_four_nodes() {
        // 6 two-cycles + 8 three-cycles + 6 four-cycles
        let k4 = complete(4);
        let cycles = enumerate_simple_cycles(&k4).unwrap();
        assert_eq!(brute_force(&k4).len(), 20);
        assert_eq!(cycles.len(), 20);
        let by_len = |l| cycles.iter().filter(|c| c.len() == l).count();
        assert_eq!((by_len(2), by_len(3), by_len(4)), (6, 8, 6));
    }

    #[test]
    fn budget_is_enforced() {
        let k4 = complete(4);
        assert_eq!(
            enumerate_simple_cycles_in(&k4, None, 19),
            Err(Error::CycleBudgetExceeded { cap: 19 })
        );
        assert_eq!(enumerate_simple_cycles_in(&k4, None, 20).unwrap().len(), 20);
    }

    #[test]
    fn visitor_can_stop() {
        let mut seen = 0;
        let n = for_each_simple_cycle(&complete(4), None, 100, |_| {
            seen += 1;
            if seen == 2 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
        })
        .unwrap();
        assert_eq!(n, 2);
    }

    #[test]
    fn matches_brute_force_on_multigraphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=5);
            let m = rng.random_range(1..=10);
            let edges: Vec<_> = (0..m)
                .map(|i| (format!("e{i}"), rng.random_range(0..n), rng.random_range(0..n)))
                .collect();
            let Ok(g) = build_graph(n, edges) else { continue };
            assert_eq!(enumerate_simple_cycles(&g).unwrap(), brute_force(&g));
        }
    }

    #[test]
    fn mask_restricts_edges() {
        let mask = [true, false, true, true, true];
        assert_eq!(
            enumerate_simple_cycles_in(&g4(), Some(&mask), 10).unwrap(),
            vec![vec![0], vec![3, 4]]
        );
    }
}
