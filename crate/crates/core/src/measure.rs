//! Potentials, invariant edge-frequency measures, and cycle measures.

use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{format_rational, int, Rational};

/// An edge-indexed potential: a locally constant function of the current
/// edge. The sup norm is the largest absolute weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Potential(Vec<Rational>);

impl Potential {
    pub fn new(weights: Vec<Rational>) -> Self {
        Potential(weights)
    }

    pub fn from_integers(weights: &[i64]) -> Self {
        Potential(weights.iter().map(|&w| int(w)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        Potential(vec![Rational::zero(); len])
    }

    pub fn constant(len: usize, value: Rational) -> Self {
        Potential(vec![value; len])
    }

    /// Indicator of one edge.
    pub fn axis(len: usize, index: usize) -> Self {
        let mut w = vec![Rational::zero(); len];
        w[index] = int(1);
        Potential(w)
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_weights(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, factor: &Rational) -> Potential {
        Potential(self.0.iter().map(|w| w * factor).collect())
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &Rational, other: &Potential) -> Potential {
        assert_eq!(self.len(), other.len(), "potential length mismatch");
        Potential(self.0.iter().zip(&other.0).map(|(a, b)| a + factor * b).collect())
    }

    /// Mean weight along a cycle given as edge indices.
    pub fn cycle_mean(&self, cycle: &[usize]) -> Rational {
        let total: Rational = cycle.iter().map(|&e| &self.0[e]).sum();
        total / int(cycle.len() as i64)
    }

    pub fn check_len(&self, graph: &Graph) -> Result<()> {
        if self.len() != graph.edge_count() {
            return Err(Error::DimensionMismatch { expected: graph.edge_count(), found: self.len() });
        }
        Ok(())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl Index<usize> for Potential {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &Potential {
    type Output = Potential;
    fn add(self, rhs: &Potential) -> Potential {
        assert_eq!(self.len(), rhs.len(), "potential length mismatch");
        Potential(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Potential {
    type Output = Potential;
    fn sub(self, rhs: &Potential) -> Potential {
        assert_eq!(self.len(), rhs.len(), "potential length mismatch");
        Potential(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Potential {
    type Output = Potential;
    fn neg(self) -> Potential {
        Potential(self.0.iter().map(|w| -w).collect())
    }
}

/// Edge-frequency vector of an invariant probability measure: nonnegative,
/// total mass one, and balanced (inflow equals outflow) at every node.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Measure(Vec<Rational>);

impl Measure {
    pub fn frequencies(&self) -> &[Rational] {
        &self.0
    }

    /// Support as an edge mask.
    pub fn support(&self) -> Vec<bool> {
        self.0.iter().map(|p| !p.is_zero()).collect()
    }

    /// The frequency vector read as a potential (used for separating
    /// directions such as `mu1 - mu2`).
    pub fn as_potential(&self) -> Potential {
        Potential(self.0.clone())
    }
}

pub fn validate_measure(graph: &Graph, frequencies: Vec<Rational>) -> Result<Measure> {
    if frequencies.len() != graph.edge_count() {
        return Err(Error::DimensionMismatch { expected: graph.edge_count(), found: frequencies.len() });
    }
    if let Some(i) = frequencies.iter().position(|p| p.is_negative()) {
        return Err(Error::NotAMeasure(format!(
            "negative frequency on edge {:?}",
            graph.edge(i).id
        )));
    }
    let total: Rational = frequencies.iter().sum();
    if total != int(1) {
        return Err(Error::NotAMeasure(format!(
            "total mass is {}, not 1",
            format_rational(&total)
        )));
    }
    let mut balance = vec![Rational::zero(); graph.node_count()];
    for (e, p) in graph.edges().iter().zip(&frequencies) {
        balance[e.source] -= p;
        balance[e.target] += p;
    }
    if let Some(v) = balance.iter().position(|b| !b.is_zero()) {
        return Err(Error::NotAMeasure(format!("node balance fails at node {v}")));
    }
    Ok(Measure(frequencies))
}

/// Equidistributed measure on a periodic orbit. The cycle is stored in
/// canonical rotation (smallest edge index first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleMeasure {
    pub cycle: Vec<usize>,
    pub measure: Measure,
}

/// Rotates a cycle so that its smallest edge index comes first.
pub fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    let Some(start) = cycle.iter().enumerate().min_by_key(|(_, &e)| e).map(|(i, _)| i) else {
        return Vec::new();
    };
    cycle[start..].iter().chain(&cycle[..start]).copied().collect()
}

pub fn cycle_to_measure(graph: &Graph, cycle: &[usize]) -> Result<CycleMeasure> {
    if cycle.is_empty() {
        return Err(Error::NotASimpleCycle("empty edge list".into()));
    }
    if let Some(&bad) = cycle.iter().find(|&&e| e >= graph.edge_count()) {
        return Err(Error::NotASimpleCycle(format!("edge index {bad} out of range")));
    }
    let mut visited = vec![false; graph.node_count()];
    for (k, &e) in cycle.iter().enumerate() {
        let edge = graph.edge(e);
        let next = graph.edge(cycle[(k + 1) % cycle.len()]);
        if edge.target != next.source {
            return Err(Error::NotASimpleCycle(format!(
                "edge {:?} ends at node {} but {:?} starts at node {}",
                edge.id, edge.target, next.id, next.source
            )));
        }
        if std::mem::replace(&mut visited[edge.source], true) {
            return Err(Error::NotASimpleCycle(format!("node {} visited twice", edge.source)));
        }
    }
    let weight = Rational::new(1.into(), (cycle.len() as i64).into());
    let mut freq = vec![Rational::zero(); graph.edge_count()];
    for &e in cycle {
        freq[e] = weight.clone();
    }
    Ok(CycleMeasure { cycle: canonical_rotation(cycle), measure: Measure(freq) })
}

/// Exact integral of a potential against a measure.
pub fn integrate(f: &Potential, mu: &Measure) -> Result<Rational> {
    if f.len() != mu.0.len() {
        return Err(Error::DimensionMismatch { expected: mu.0.len(), found: f.len() });
    }
    Ok(f.0.iter().zip(&mu.0).filter(|(_, p)| !p.is_zero()).map(|(w, p)| w * p).sum())
}

pub fn sup_norm(f: &Potential) -> Rational {
    f.0.iter().map(|w| w.abs()).max().unwrap_or_else(Rational::zero)
}
