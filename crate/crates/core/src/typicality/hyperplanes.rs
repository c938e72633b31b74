use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::cycles::{enumerate_simple_cycles_in, DEFAULT_CYCLE_BUDGET};
use crate::error::Result;
use crate::graph::Graph;
use crate::measure::{cycle_to_measure, integrate, CycleMeasure, Potential};
use crate::optimize::{critical_graph, CriticalGraph};
use crate::rational::{common_denominator, Rational};

/// Kernel of `f -> integral f dmu - integral f dnu` for distinct cycle
/// measures. The normal is the primitive integer multiple of `mu - nu` whose
/// first nonzero entry is positive; every cycle pair with that normal is
/// listed in `sources` (indices into the arrangement's cycle list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub sources: Vec<(usize, usize)>,
}

impl Hyperplane {
    pub fn contains(&self, f: &Potential) -> bool {
        let dot: Rational = self.normal.iter().zip(f.weights()).map(|(a, b)| a * b).sum();
        dot.is_zero()
    }
}

fn canonical_normal(diff: &[Rational]) -> Vec<Rational> {
    let scale = Rational::from_integer(common_denominator(diff));
    let ints: Vec<BigInt> = diff.iter().map(|v| (v * &scale).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    let sign = match ints.iter().find(|v| !v.is_zero()) {
        Some(v) if v.is_negative() => -BigInt::from(1),
        _ => BigInt::from(1),
    };
    ints.into_iter().map(|v| Rational::from_integer(v / &gcd * &sign)).collect()
}

/// One cycle measure per simple cycle, ordered by canonical cycle.
pub fn enumerate_cycle_measures(graph: &Graph) -> Result<Vec<CycleMeasure>> {
    enumerate_simple_cycles_in(graph, None, DEFAULT_CYCLE_BUDGET)?
        .iter()
        .map(|c| cycle_to_measure(graph, c))
        .collect()
}

/// Cycle measures together with the deduplicated hyperplanes of all their
/// pairs.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub cycles: Vec<CycleMeasure>,
    pub planes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(graph: &Graph) -> Result<Self> {
        let cycles = enumerate_cycle_measures(graph)?;
        let mut planes: Vec<Hyperplane> = Vec::new();
        let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                let diff: Vec<Rational> = cycles[i]
                    .measure
                    .frequencies()
                    .iter()
                    .zip(cycles[j].measure.frequencies())
                    .map(|(a, b)| a - b)
                    .collect();
                let normal = canonical_normal(&diff);
                match index.get(&normal) {
                    Some(&k) => planes[k].sources.push((i, j)),
                    None => {
                        index.insert(normal.clone(), planes.len());
                        planes.push(Hyperplane { normal, sources: vec![(i, j)] });
                    }
                }
            }
        }
        Ok(Arrangement { cycles, planes })
    }

    /// Hyperplanes through `f`.
    pub fn planes_through<'a>(&'a self, f: &'a Potential) -> impl Iterator<Item = &'a Hyperplane> + 'a {
        self.planes.iter().filter(move |p| p.contains(f))
    }

    /// True when `f` is unique, or lies on a hyperplane whose two source
    /// cycle measures both attain beta(f).
    pub fn covers(&self, graph: &Graph, f: &Potential) -> Result<bool> {
        let critical = critical_graph(graph, f)?;
        self.covers_with(graph, f, &critical)
    }

    pub(crate) fn covers_with(&self, graph: &Graph, f: &Potential, critical: &CriticalGraph) -> Result<bool> {
        if critical.is_single_cycle(graph) {
            return Ok(true);
        }
        let means = self
            .cycles
            .iter()
            .map(|c| integrate(f, &c.measure))
            .collect::<Result<Vec<_>>>()?;
        let beta = critical.beta();
        Ok(self
            .planes_through(f)
            .any(|p| p.sources.iter().any(|&(i, j)| means[i] == *beta && means[j] == *beta)))
    }
}

pub fn build_hyperplanes(graph: &Graph) -> Result<Vec<Hyperplane>> {
    Ok(Arrangement::new(graph)?.planes)
}

pub fn covering_check(graph: &Graph, f: &Potential) -> Result<bool> {
    Arrangement::new(graph)?.covers(graph, f)
}
