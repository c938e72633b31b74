use std::ops::ControlFlow;

use crate::cycles::{for_each_simple_cycle, DEFAULT_CYCLE_BUDGET};
use crate::error::Result;
use crate::graph::Graph;
use crate::measure::{canonical_rotation, Potential};
use crate::rational::Rational;

/// Brute-force answer: the best simple-cycle mean and every cycle attaining
/// it (canonical rotation, sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub beta: Rational,
    pub cycles: Vec<Vec<usize>>,
}

impl OracleOutcome {
    /// Union of the edges of the maximizing cycles, ascending.
    pub fn edge_union(&self) -> Vec<usize> {
        let mut edges: Vec<usize> = self.cycles.iter().flatten().copied().collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }
}

/// Counts simple cycles without doing any other work, failing fast when
/// the budget is exceeded.
pub fn count_simple_cycles(graph: &Graph, mask: Option<&[bool]>, budget: usize) -> Result<usize> {
    for_each_simple_cycle(graph, mask, budget, |_| ControlFlow::Continue(()))
}

pub fn beta_oracle(graph: &Graph, f: &Potential) -> Result<OracleOutcome> {
    beta_oracle_with_budget(graph, f, DEFAULT_CYCLE_BUDGET)
}

/// Exhaustive maximum over all simple cycles.
pub fn beta_oracle_with_budget(graph: &Graph, f: &Potential, budget: usize) -> Result<OracleOutcome> {
    f.check_len(graph)?;
    count_simple_cycles(graph, None, budget)?;
    let mut best: Option<Rational> = None;
    let mut cycles = Vec::new();
    for_each_simple_cycle(graph, None, budget, |cycle| {
        let total: Rational = cycle.iter().map(|&e| &f[e]).sum();
        let mean = total / Rational::from_integer((cycle.len() as i64).into());
        match best.as_ref().map(|b| mean.cmp(b)) {
            Some(std::cmp::Ordering::Less) => {}
            Some(std::cmp::Ordering::Equal) => cycles.push(canonical_rotation(cycle)),
            _ => {
                best = Some(mean);
                cycles.clear();
                cycles.push(canonical_rotation(cycle));
            }
        }
        ControlFlow::Continue(())
    })?;
    cycles.sort();
    Ok(OracleOutcome { beta: best.expect("validated graph has a cycle"), cycles })
}
