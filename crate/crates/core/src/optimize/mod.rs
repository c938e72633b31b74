//! Maximum ergodic average, maximizing sets, uniqueness and the spectral gap.
//!
//! On an edge shift the supremum of `integral f dmu` over invariant measures
//! is the maximum cycle mean of `f`, and the maximizing measures are exactly
//! the measures supported on the critical graph. The fast path is Karp's
//! recurrence per strongly connected component; [`beta_oracle`] is an
//! independent brute force over simple cycles.

mod howard;
mod karp;
mod oracle;

use std::ops::ControlFlow;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cycles::{for_each_simple_cycle, DEFAULT_CYCLE_BUDGET};
use crate::error::Result;
use crate::graph::Graph;
use crate::measure::Potential;
use crate::rational::{max_abs, to_scaled_integers, Rational};

pub use howard::beta_policy_iteration;
pub use oracle::{beta_oracle, beta_oracle_with_budget, count_simple_cycles, OracleOutcome};

use karp::{fits_i128, ExactInt};

/// Edge set carrying every maximizing measure of a potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalGraph {
    mask: Vec<bool>,
    beta: Rational,
}

impl CriticalGraph {
    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// Critical edge indices, ascending.
    pub fn edge_set(&self) -> Vec<usize> {
        self.mask.iter().enumerate().filter(|(_, &c)| c).map(|(i, _)| i).collect()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.mask[edge]
    }

    pub fn is_subset_of(&self, other: &CriticalGraph) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    /// True when the critical edges form a single simple cycle, i.e. the
    /// maximizing set is one cycle measure.
    pub fn is_single_cycle(&self, graph: &Graph) -> bool {
        let comps = graph.cyclic_components_of(Some(&self.mask));
        let edges = self.mask.iter().filter(|&&c| c).count();
        comps.len() == 1 && comps[0].len() == edges
    }
}

/// Maximum ergodic average of `f`.
pub fn beta(graph: &Graph, f: &Potential) -> Result<Rational> {
    f.check_len(graph)?;
    Ok(max_cycle_mean(graph, f.weights(), None).expect("validated graph has a cycle"))
}

/// Maximum mean over simple cycles of the `mask` subgraph, `None` if the
/// subgraph is acyclic.
pub fn max_cycle_mean(graph: &Graph, weights: &[Rational], mask: Option<&[bool]>) -> Option<Rational> {
    let (ints, scale) = to_scaled_integers(weights);
    let comps = graph.cyclic_components_of(mask);
    if comps.is_empty() {
        return None;
    }
    let big = max_abs(&ints);
    let small = fits_i128(&big, graph.node_count());
    comps
        .par_iter()
        .map(|nodes| {
            if small {
                component_mean::<i128>(graph, nodes, &ints, mask)
            } else {
                component_mean::<BigInt>(graph, nodes, &ints, mask)
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .max()
        .map(|m| m / Rational::from_integer(scale))
}

fn local_edges<T: ExactInt>(
    graph: &Graph,
    nodes: &[usize],
    weights: &[BigInt],
    mask: Option<&[bool]>,
) -> Vec<(usize, usize, T)> {
    let mut local = vec![usize::MAX; graph.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        local[v] = i;
    }
    graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, e)| {
            mask.is_none_or(|m| m[*i]) && local[e.source] != usize::MAX && local[e.target] != usize::MAX
        })
        .map(|(i, e)| (local[e.source], local[e.target], T::from_big(&weights[i])))
        .collect()
}

fn component_mean<T: ExactInt>(
    graph: &Graph,
    nodes: &[usize],
    weights: &[BigInt],
    mask: Option<&[bool]>,
) -> Rational {
    let edges = local_edges::<T>(graph, nodes, weights, mask);
    let (num, den) = karp::max_cycle_mean(nodes.len(), &edges);
    Rational::new(num.into_big(), BigInt::from(den))
}

/// Critical graph of `f`: edges where the weights shifted by `-beta` are
/// tight for longest-path node potentials, restricted to edges that lie on
/// cycles within the tight subgraph.
pub fn critical_graph(graph: &Graph, f: &Potential) -> Result<CriticalGraph> {
    let beta = beta(graph, f)?;
    let (ints, scale) = to_scaled_integers(f.weights());
    // beta * scale = a / c
    let scaled_beta = &beta * Rational::from_integer(scale);
    let (a, c) = (scaled_beta.numer().clone(), scaled_beta.denom().clone());
    let shifted: Vec<BigInt> = ints.iter().map(|w| &c * w - &a).collect();
    let tight = if fits_i128(&max_abs(&shifted), graph.node_count()) {
        tight_edges::<i128>(graph, &shifted)?
    } else {
        tight_edges::<BigInt>(graph, &shifted)?
    };
    let mask = graph.cycle_edges(Some(&tight));
    Ok(CriticalGraph { mask, beta })
}

fn tight_edges<T: ExactInt>(graph: &Graph, shifted: &[BigInt]) -> Result<Vec<bool>> {
    let on_cycle = graph.cycle_edges(None);
    let edges: Vec<(usize, usize, T)> = graph
        .edges()
        .iter()
        .zip(shifted)
        .zip(&on_cycle)
        .filter(|(_, &c)| c)
        .map(|((e, w), _)| (e.source, e.target, T::from_big(w)))
        .collect();
    let x = karp::longest_path_potentials(graph.node_count(), &edges)?;
    Ok(graph
        .edges()
        .iter()
        .zip(shifted)
        .zip(&on_cycle)
        .map(|((e, w), &c)| c && x[e.source].clone() + T::from_big(w) == x[e.target])
        .collect())
}

/// Whether `f` has exactly one maximizing measure.
pub fn is_unique(graph: &Graph, f: &Potential) -> Result<bool> {
    Ok(critical_graph(graph, f)?.is_single_cycle(graph))
}

/// `beta(f)` minus the best mean of a simple cycle leaving the critical
/// graph; `None` when every simple cycle is critical.
pub fn second_gap(graph: &Graph, f: &Potential) -> Result<Option<Rational>> {
    second_gap_with_budget(graph, f, DEFAULT_CYCLE_BUDGET)
}

pub fn second_gap_with_budget(graph: &Graph, f: &Potential, budget: usize) -> Result<Option<Rational>> {
    let critical = critical_graph(graph, f)?;
    second_gap_of(graph, f, &critical, budget)
}

pub(crate) fn second_gap_of(
    graph: &Graph,
    f: &Potential,
    critical: &CriticalGraph,
    budget: usize,
) -> Result<Option<Rational>> {
    count_simple_cycles(graph, None, budget)?;
    let mut best: Option<Rational> = None;
    for_each_simple_cycle(graph, None, budget, |cycle| {
        if cycle.iter().any(|&e| !critical.contains(e)) {
            let mean = f.cycle_mean(cycle);
            if best.as_ref().is_none_or(|b| mean > *b) {
                best = Some(mean);
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(best.map(|b| critical.beta() - b))
}
