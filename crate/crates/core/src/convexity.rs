//! The maximum ergodic average as a convex piecewise-linear function of the
//! potential: one-sided directional derivatives, the differentiability test,
//! the difference-quotient sandwich and the discontinuity witness for the
//! maximizing-set map.

use std::ops::ControlFlow;

use num_traits::{One, Zero};

use crate::cycles::for_each_simple_cycle;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::{canonical_rotation, cycle_to_measure, integrate, CycleMeasure, Potential};
use crate::optimize::{beta, critical_graph, max_cycle_mean, CriticalGraph};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Sup of `integral g dmu` over the maximizing measures of `f`: the best
/// `g`-mean of a cycle inside the critical graph of `f`.
pub fn max_face_integral(graph: &Graph, f: &Potential, g: &Potential) -> Result<Rational> {
    let critical = critical_graph(graph, f)?;
    face_integral(graph, &critical, g)
}

fn face_integral(graph: &Graph, critical: &CriticalGraph, g: &Potential) -> Result<Rational> {
    g.check_len(graph)?;
    max_cycle_mean(graph, g.weights(), Some(critical.mask()))
        .ok_or_else(|| Error::Internal("critical graph has no cycle".into()))
}

/// Smallest step tried by the difference-quotient check.
const STEP_FLOOR_LOG2: u32 = 40;

/// One-sided derivative of beta at `f` in direction `g`.
///
/// The face formula gives the value; it is then confirmed against exact
/// difference quotients `(beta(f + t g) - beta(f)) / t`, halving `t` from 1
/// until two successive quotients agree (convexity makes the quotient
/// constant on an interval once two halvings agree).
pub fn directional_derivative(graph: &Graph, f: &Potential, g: &Potential, side: Side) -> Result<Rational> {
    let critical = critical_graph(graph, f)?;
    let face = match side {
        Side::Right => face_integral(graph, &critical, g)?,
        Side::Left => -face_integral(graph, &critical, &-g)?,
    };
    let quotient = limiting_quotient(graph, f, critical.beta(), g, side)?;
    if quotient != face {
        return Err(Error::Internal(format!(
            "difference quotient {quotient} disagrees with face value {face}"
        )));
    }
    Ok(face)
}

fn limiting_quotient(graph: &Graph, f: &Potential, beta_f: &Rational, g: &Potential, side: Side) -> Result<Rational> {
    let sign = match side {
        Side::Right => int(1),
        Side::Left => int(-1),
    };
    let quotient = |t: &Rational| -> Result<Rational> {
        let step = &sign * t;
        Ok((beta(graph, &f.add_scaled(&step, g))? - beta_f) / step)
    };
    let mut t = Rational::one();
    let mut prev = quotient(&t)?;
    let half = Rational::new(1.into(), 2.into());
    for _ in 0..STEP_FLOOR_LOG2 {
        t *= &half;
        let next = quotient(&t)?;
        if next == prev {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Internal("difference quotient did not stabilise above 2^-40".into()))
}

/// Whether beta is differentiable at `f`: left and right derivatives agree
/// along every coordinate direction.
pub fn is_gateaux(graph: &Graph, f: &Potential) -> Result<bool> {
    f.check_len(graph)?;
    for e in 0..graph.edge_count() {
        let axis = Potential::axis(graph.edge_count(), e);
        let left = directional_derivative(graph, f, &axis, Side::Left)?;
        let right = directional_derivative(graph, f, &axis, Side::Right)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three terms of the difference-quotient sandwich at step `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sandwich {
    pub lower: Rational,
    pub quotient: Rational,
    pub upper: Rational,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower <= self.quotient && self.quotient <= self.upper
    }
}

/// `sup over M_max(f) of g <= (beta(f + tau g) - beta(f)) / tau <= sup over
/// M_max(f + tau g) of g`.
pub fn sandwich(graph: &Graph, f: &Potential, g: &Potential, tau: &Rational) -> Result<Sandwich> {
    if *tau <= Rational::zero() {
        return Err(Error::NonPositive("tau"));
    }
    let moved = f.add_scaled(tau, g);
    let here = critical_graph(graph, f)?;
    let there = critical_graph(graph, &moved)?;
    Ok(Sandwich {
        lower: face_integral(graph, &here, g)?,
        quotient: (there.beta() - here.beta()) / tau,
        upper: face_integral(graph, &there, g)?,
    })
}

pub fn sandwich_check(graph: &Graph, f: &Potential, g: &Potential, tau: &Rational) -> Result<bool> {
    Ok(sandwich(graph, f, g, tau)?.holds())
}

/// Steps `1, 1/2, ..., 2^-10` along which a witness is confirmed.
pub fn witness_epsilons() -> Vec<Rational> {
    (0..=10).map(|k| Rational::new(1.into(), num_bigint::BigInt::from(1u64 << k))).collect()
}

/// A direction `g` along which the maximizing set jumps: `excluded` is
/// maximizing for `f` but not for `f + eps g` at any `eps > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscontinuityWitness {
    pub direction: Potential,
    pub retained: CycleMeasure,
    pub excluded: CycleMeasure,
}

/// Builds `g = mu1 - mu2` from two distinct maximizing cycle measures
/// (the first two critical cycles Johnson's search meets, in lexicographic
/// order) and confirms the jump on [`witness_epsilons`].
pub fn witness_discontinuity(graph: &Graph, f: &Potential) -> Result<DiscontinuityWitness> {
    let critical = critical_graph(graph, f)?;
    if critical.is_single_cycle(graph) {
        return Err(Error::UniqueInput);
    }
    let mut found = Vec::with_capacity(2);
    for_each_simple_cycle(graph, Some(critical.mask()), usize::MAX, |c| {
        found.push(canonical_rotation(c));
        if found.len() == 2 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
    })?;
    found.sort();
    let [first, second] = <[Vec<usize>; 2]>::try_from(found)
        .map_err(|_| Error::Internal("non-unique critical graph with fewer than two cycles".into()))?;
    let retained = cycle_to_measure(graph, &first)?;
    let excluded = cycle_to_measure(graph, &second)?;
    let direction = &retained.measure.as_potential() - &excluded.measure.as_potential();
    let witness = DiscontinuityWitness { direction, retained, excluded };
    check_witness(graph, f, &witness)?;
    Ok(witness)
}

/// Confirms: `excluded` maximizing for `f`, not maximizing for
/// `f + eps g` on every sampled `eps`.
pub fn check_witness(graph: &Graph, f: &Potential, w: &DiscontinuityWitness) -> Result<()> {
    let beta_f = beta(graph, f)?;
    if integrate(f, &w.excluded.measure)? != beta_f || integrate(f, &w.retained.measure)? != beta_f {
        return Err(Error::Internal("witness measures are not maximizing for f".into()));
    }
    for eps in witness_epsilons() {
        let moved = f.add_scaled(&eps, &w.direction);
        if integrate(&moved, &w.excluded.measure)? >= beta(graph, &moved)? {
            return Err(Error::Internal(format!("excluded measure still maximizing at eps = {eps}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::measure::validate_measure;
    use crate::rational::ratio;

    fn tie() -> Potential {
        Potential::new(vec![ratio(3, 2), int(0), int(3)])
    }

    #[test]
    fn face_integrals() {
        let g = Potential::axis(3, 0);
        assert_eq!(max_face_integral(&g3(), &tie(), &g).unwrap(), int(1));
        let f = Potential::from_integers(&[1, 0, 3]);
        let dir = Potential::from_integers(&[5, -2, 7]);
        let mu = validate_measure(&g3(), vec![int(0), ratio(1, 2), ratio(1, 2)]).unwrap();
        assert_eq!(max_face_integral(&g3(), &f, &dir).unwrap(), integrate(&dir, &mu).unwrap());
        assert_eq!(max_face_integral(&g3(), &tie(), &Potential::zeros(3)).unwrap(), int(0));
    }

    #[test]
    fn one_sided_derivatives() {
        let g = Potential::axis(3, 0);
        assert_eq!(directional_derivative(&g3(), &tie(), &g, Side::Right).unwrap(), int(1));
        assert_eq!(directional_derivative(&g3(), &tie(), &g, Side::Left).unwrap(), int(0));
        let ones = Potential::constant(3, int(1));
        let f = Potential::from_integers(&[4, -1, 2]);
        assert_eq!(directional_derivative(&g3(), &f, &ones, Side::Right).unwrap(), int(1));
        assert_eq!(directional_derivative(&g3(), &f, &ones, Side::Left).unwrap(), int(1));
    }

    #[test]
    fn gateaux_examples() {
        assert!(is_gateaux(&g3(), &Potential::from_integers(&[1, 0, 3])).unwrap());
        assert!(!is_gateaux(&g3(), &tie()).unwrap());
        assert!(is_gateaux(&g1(), &Potential::new(vec![ratio(-3, 8)])).unwrap());
        assert!(!is_gateaux(&g2(), &Potential::zeros(2)).unwrap());
    }

    #[test]
    fn sandwich_examples() {
        let s = sandwich(&g3(), &tie(), &Potential::axis(3, 0), &int(1)).unwrap();
        assert_eq!((s.lower.clone(), s.quotient.clone(), s.upper.clone()), (int(1), int(1), int(1)));
        assert!(s.holds());
        assert!(sandwich_check(&g3(), &tie(), &Potential::zeros(3), &ratio(2, 7)).unwrap());
        let s = sandwich(&g2(), &Potential::zeros(2), &Potential::axis(2, 0), &ratio(1, 2)).unwrap();
        assert_eq!((s.lower, s.quotient, s.upper), (int(1), int(1), int(1)));
        assert_eq!(
            sandwich_check(&g2(), &Potential::zeros(2), &Potential::zeros(2), &int(0)),
            Err(Error::NonPositive("tau"))
        );
    }

    #[test]
    fn witness_on_g3_tie() {
        let w = witness_discontinuity(&g3(), &tie()).unwrap();
        assert_eq!(w.direction, Potential::new(vec![int(1), ratio(-1, 2), ratio(-1, 2)]));
        assert_eq!(w.excluded.cycle, vec![1, 2]);
        let moved = &tie() + &w.direction;
        assert_eq!(moved, Potential::new(vec![ratio(5, 2), ratio(-1, 2), ratio(5, 2)]));
        assert_eq!(critical_graph(&g3(), &moved).unwrap().edge_set(), vec![0]);
    }

    #[test]
    fn witness_on_g2_zero() {
        let w = witness_discontinuity(&g2(), &Potential::zeros(2)).unwrap();
        assert_eq!(w.direction, Potential::from_integers(&[1, -1]));
        assert_eq!(w.excluded.cycle, vec![1]);
        for eps in witness_epsilons() {
            let moved = Potential::zeros(2).add_scaled(&eps, &w.direction);
            assert_eq!(critical_graph(&g2(), &moved).unwrap().edge_set(), vec![0]);
        }
    }

    #[test]
    fn witness_rejects_unique_input() {
        assert_eq!(
            witness_discontinuity(&g3(), &Potential::from_integers(&[1, 0, 3])),
            Err(Error::UniqueInput)
        );
    }
}
