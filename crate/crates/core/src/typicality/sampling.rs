use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hyperplanes::Arrangement;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::{sup_norm, Potential};
use crate::optimize::{critical_graph, second_gap, CriticalGraph};
use crate::rational::{format_rational, int, Rational};

/// Draws for [`perturb_to_unique`] before giving up.
pub const PERTURB_RETRY_BUDGET: usize = 64;

/// Grid resolution of perturbation draws: offsets are multiples of
/// `radius / PERTURB_GRID`.
const PERTURB_GRID: i64 = 1 << 20;

/// Independent stream per (seed, index), so trials can run in any order.
fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Potential of trial `trial`: each weight uniform on `{-bound..=bound} / bound`.
pub fn sample_potential(edge_count: usize, seed: u64, trial: u64, bound: u64) -> Potential {
    let mut rng = stream(seed, trial);
    let b = bound as i64;
    let denom = BigInt::from(b);
    Potential::new(
        (0..edge_count)
            .map(|_| Rational::new(BigInt::from(rng.random_range(-b..=b)), denom.clone()))
            .collect(),
    )
}

/// Offsets uniform on the grid `{-N..=N} * radius / N`.
pub fn uniform_perturbation(rng: &mut impl Rng, edge_count: usize, radius: &Rational) -> Potential {
    let step = radius / int(PERTURB_GRID);
    Potential::new(
        (0..edge_count)
            .map(|_| &step * int(rng.random_range(-PERTURB_GRID..=PERTURB_GRID)))
            .collect(),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub trials: u64,
    pub nonunique_count: u64,
    pub seed: u64,
    pub bound: u64,
    pub covering_violations: u64,
    #[serde(skip)]
    pub distribution: String,
    /// Trial indices whose potential had several maximizing measures.
    #[serde(skip)]
    pub nonunique_trials: Vec<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Equality ignores the wall-clock time.
impl PartialEq for MonteCarloReport {
    fn eq(&self, other: &Self) -> bool {
        (self.trials, self.nonunique_count, self.seed, self.bound, self.covering_violations)
            == (other.trials, other.nonunique_count, other.seed, other.bound, other.covering_violations)
            && self.distribution == other.distribution
            && self.nonunique_trials == other.nonunique_trials
    }
}

impl Eq for MonteCarloReport {}

/// Samples `trials` potentials (see [`sample_potential`]), counts the ones
/// with several maximizing measures and checks the hyperplane covering on
/// each. Trials run in parallel; the report does not depend on scheduling.
pub fn monte_carlo(graph: &Graph, trials: u64, seed: u64, bound: u64) -> Result<MonteCarloReport> {
    if trials == 0 {
        return Err(Error::NonPositive("trials"));
    }
    if bound == 0 {
        return Err(Error::NonPositive("bound"));
    }
    let started = Instant::now();
    let arrangement = Arrangement::new(graph)?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let f = sample_potential(graph.edge_count(), seed, t, bound);
            let critical = critical_graph(graph, &f)?;
            let unique = critical.is_single_cycle(graph);
            let covered = arrangement.covers_with(graph, &f, &critical)?;
            Ok((unique, covered))
        })
        .collect::<Result<Vec<_>>>()?;
    let nonunique_trials: Vec<u64> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, (unique, _))| !unique)
        .map(|(t, _)| t as u64)
        .collect();
    Ok(MonteCarloReport {
        trials,
        nonunique_count: nonunique_trials.len() as u64,
        seed,
        bound,
        covering_violations: outcomes.iter().filter(|(_, covered)| !covered).count() as u64,
        distribution: format!("iid uniform on {{-{bound}..={bound}}}/{bound} per edge"),
        nonunique_trials,
        elapsed: started.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub potential: Potential,
    /// Random draws used; 0 when the input was already unique.
    pub draws: usize,
}

/// A potential within sup distance `eps` of `f` with a unique maximizing
/// measure, found by adding uniform grid perturbations of radius `eps`.
pub fn perturb_to_unique(graph: &Graph, f: &Potential, eps: &Rational, seed: u64) -> Result<Perturbation> {
    if *eps <= Rational::zero() {
        return Err(Error::NonPositive("eps"));
    }
    if critical_graph(graph, f)?.is_single_cycle(graph) {
        return Ok(Perturbation { potential: f.clone(), draws: 0 });
    }
    for draw in 1..=PERTURB_RETRY_BUDGET {
        let mut rng = stream(seed, draw as u64);
        let candidate = f + &uniform_perturbation(&mut rng, graph.edge_count(), eps);
        if critical_graph(graph, &candidate)?.is_single_cycle(graph) {
            return Ok(Perturbation { potential: candidate, draws: draw });
        }
    }
    Err(Error::RetryBudgetExceeded { draws: PERTURB_RETRY_BUDGET })
}

fn gap_for(graph: &Graph, f: &Potential, delta: &Rational) -> Result<CriticalGraph> {
    if *delta <= Rational::zero() {
        return Err(Error::NonPositive("delta"));
    }
    let gap = second_gap(graph, f)?.ok_or(Error::GapUndefined)?;
    if delta * int(2) >= gap {
        return Err(Error::GapViolation { delta: format_rational(delta), gap: format_rational(&gap) });
    }
    critical_graph(graph, f)
}

/// Checks `critical(f') ⊆ critical(f)` for each candidate `f'` within sup
/// distance `delta` of `f`, where `delta` is below half the gap.
pub fn usc_inclusion_for(graph: &Graph, f: &Potential, delta: &Rational, candidates: &[Potential]) -> Result<bool> {
    let base = gap_for(graph, f, delta)?;
    for candidate in candidates {
        if sup_norm(&(candidate - f)) > *delta {
            return Err(Error::Internal("candidate lies outside the delta ball".into()));
        }
        if !critical_graph(graph, candidate)?.is_subset_of(&base) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`usc_inclusion_for`] on `samples` uniform perturbations of radius
/// `delta`.
pub fn usc_inclusion_check(graph: &Graph, f: &Potential, delta: &Rational, samples: usize, seed: u64) -> Result<bool> {
    let base = gap_for(graph, f, delta)?;
    let holds = (0..samples as u64)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream(seed, s);
            let candidate = f + &uniform_perturbation(&mut rng, graph.edge_count(), delta);
            Ok(critical_graph(graph, &candidate)?.is_subset_of(&base))
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(holds.into_iter().all(|h| h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::optimize::is_unique;
    use crate::rational::ratio;

    #[test]
    fn samples_are_reproducible_and_on_the_grid() {
        let a = sample_potential(5, 7, 3, 16);
        assert_eq!(a, sample_potential(5, 7, 3, 16));
        assert_ne!(a, sample_potential(5, 7, 4, 16));
        assert!(sup_norm(&a) <= int(1));
        assert!(a.weights().iter().all(|w| (w * int(16)).is_integer()));
    }

    #[test]
    fn single_loop_never_ties() {
        let r = monte_carlo(&g1(), 50, 1, 3).unwrap();
        assert_eq!((r.nonunique_count, r.covering_violations), (0, 0));
    }

    #[test]
    fn coarse_grid_ties_on_two_loops() {
        let r = monte_carlo(&g2(), 100, 7, 1).unwrap();
        assert!(r.nonunique_count > 0);
        assert_eq!(r.covering_violations, 0);
        assert_eq!(r, monte_carlo(&g2(), 100, 7, 1).unwrap());
        let json = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["bound", "covering_violations", "nonunique_count", "seed", "trials"]);
    }

    #[test]
    fn perturbation_examples() {
        let p = perturb_to_unique(&g2(), &Potential::zeros(2), &ratio(1, 100), 3).unwrap();
        assert_ne!(p.potential[0], p.potential[1]);
        assert!(sup_norm(&p.potential) <= ratio(1, 100));
        let f = Potential::new(vec![ratio(3, 2), int(0), int(3)]);
        let p = perturb_to_unique(&g3(), &f, &ratio(1, 10), 3).unwrap();
        assert!(is_unique(&g3(), &p.potential).unwrap());
        assert!(sup_norm(&(&p.potential - &f)) <= ratio(1, 10));
        let f = Potential::from_integers(&[1, 0, 3]);
        assert_eq!(perturb_to_unique(&g3(), &f, &ratio(1, 10), 3).unwrap(), Perturbation { potential: f, draws: 0 });
    }

    #[test]
    fn usc_examples() {
        let f = Potential::from_integers(&[1, 0, 3]);
        let moved = Potential::new(vec![ratio(6, 5), int(0), int(3)]);
        assert!(usc_inclusion_for(&g3(), &f, &ratio(1, 5), &[moved]).unwrap());
        assert!(usc_inclusion_check(&g3(), &f, &ratio(1, 5), 100, 9).unwrap());
        assert!(matches!(
            usc_inclusion_check(&g3(), &f, &ratio(1, 4), 10, 9),
            Err(Error::GapViolation { .. })
        ));
        let tie = Potential::new(vec![ratio(3, 2), int(0), int(3)]);
        assert_eq!(usc_inclusion_check(&g3(), &tie, &ratio(1, 100), 10, 9), Err(Error::GapUndefined));
    }
}
