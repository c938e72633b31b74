//! The invariant suite behind `verify`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::instance::Instance;
use crate::convexity::{check_witness, is_gateaux, sandwich_check, witness_discontinuity};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::{integrate, sup_norm, Potential};
use crate::optimize::{beta, beta_oracle, beta_policy_iteration, critical_graph, second_gap};
use crate::rational::{int, ratio, Rational};
use crate::recode::{admissible_blocks, higher_block_recode, periodic_block_beta};
use crate::typicality::{
    enumerate_cycle_measures, perturb_to_unique, sample_potential, usc_inclusion_check, Arrangement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

struct Suite {
    prefix: String,
    checks: Vec<Check>,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: Result<bool>) {
        let (status, detail) = match outcome {
            Ok(true) => (Status::Pass, None),
            Ok(false) => (Status::Fail, None),
            Err(Error::CycleBudgetExceeded { cap }) => (Status::Skip, Some(format!("more than {cap} cycles"))),
            Err(e) => (Status::Fail, Some(e.to_string())),
        };
        self.checks.push(Check { name: format!("{}{name}", self.prefix), status, detail });
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.checks.push(Check {
            name: format!("{}{name}", self.prefix),
            status: Status::Skip,
            detail: Some(why.to_string()),
        });
    }
}

/// Largest number of recoded states for which the periodic-block oracle
/// runs.
pub(crate) const ORACLE_STATE_LIMIT: usize = 16;

/// Runs every property on the instance (and on its recoding when a block
/// table is present).
pub fn verify_instance(inst: &Instance, seed: u64) -> Vec<Check> {
    let mut suite = Suite { prefix: String::new(), checks: Vec::new() };
    verify_potential(&mut suite, &inst.graph, &inst.potential, seed);
    if let Some(table) = &inst.blocks {
        let k = table.keys().next().map(Vec::len).unwrap_or(0);
        match higher_block_recode(&inst.graph, table, k) {
            Ok((graph, f)) => {
                let states = admissible_blocks(&inst.graph, k - 1).len();
                if states <= ORACLE_STATE_LIMIT {
                    suite.record(
                        "recode_preserves_beta",
                        beta(&graph, &f).and_then(|b| Ok(b == periodic_block_beta(&inst.graph, table, k, states)?)),
                    );
                } else {
                    suite.skip("recode_preserves_beta", "too many block states for the periodic oracle");
                }
                suite.prefix = "recoded.".into();
                verify_potential(&mut suite, &graph, &f, seed);
            }
            Err(e) => suite.record("recode", Err(e)),
        }
    }
    suite.checks
}

fn verify_potential(suite: &mut Suite, graph: &Graph, f: &Potential, seed: u64) {
    let n = graph.edge_count();
    let critical = match critical_graph(graph, f) {
        Ok(c) => c,
        Err(e) => return suite.record("critical_graph", Err(e)),
    };
    let b = critical.beta().clone();
    let unique = critical.is_single_cycle(graph);

    suite.record("oracle_beta", beta_oracle(graph, f).map(|o| o.beta == b));
    suite.record("oracle_critical", beta_oracle(graph, f).map(|o| o.edge_union() == critical.edge_set()));
    suite.record("policy_iteration", beta_policy_iteration(graph, f).map(|h| h == b));
    suite.record("gateaux_iff_unique", is_gateaux(graph, f).map(|g| g == unique));
    suite.record(
        "constant_shift",
        [ratio(1, 3), int(-5)].iter().try_fold(true, |ok, c| {
            Ok(ok && beta(graph, &(f + &Potential::constant(n, c.clone())))? == &b + c)
        }),
    );
    suite.record(
        "measure_bound",
        enumerate_cycle_measures(graph).and_then(|cms| {
            cms.iter().try_fold(true, |ok, cm| {
                let value = integrate(f, &cm.measure)?;
                let supported = cm.cycle.iter().all(|&e| critical.contains(e));
                Ok(ok && value <= b && (value == b) == supported)
            })
        }),
    );

    let directions: Vec<Potential> = (0..n)
        .map(|e| Potential::axis(n, e))
        .chain((0..8).map(|t| sample_potential(n, seed, 1000 + t, 12)))
        .collect();
    let taus = [int(1), ratio(1, 2), ratio(1, 16), int(3)];
    suite.record(
        "sandwich",
        directions.iter().try_fold(true, |ok, g| {
            taus.iter().try_fold(ok, |ok, tau| Ok(ok && sandwich_check(graph, f, g, tau)?))
        }),
    );
    let weights = [int(0), ratio(1, 3), ratio(1, 2), ratio(5, 7), int(1)];
    suite.record(
        "convex_lipschitz",
        directions.iter().try_fold(true, |ok, g| {
            let bg = beta(graph, g)?;
            let lipschitz = (&b - &bg).abs() <= sup_norm(&(f - g));
            weights.iter().try_fold(ok && lipschitz, |ok, a| {
                let mix = &f.scaled(a) + &g.scaled(&(int(1) - a));
                Ok(ok && beta(graph, &mix)? <= a * &b + (int(1) - a) * &bg)
            })
        }),
    );
    suite.record("covering", Arrangement::new(graph).and_then(|arr| arr.covers(graph, f)));

    if unique {
        suite.skip("witness", "unique maximizing measure");
        suite.skip("perturb_to_unique", "unique maximizing measure");
    } else {
        suite.record(
            "witness",
            witness_discontinuity(graph, f).and_then(|w| check_witness(graph, f, &w).map(|_| true)),
        );
        suite.record(
            "perturb_to_unique",
            [ratio(1, 10), ratio(1, 1000)].iter().try_fold(true, |ok, eps| {
                let p = perturb_to_unique(graph, f, eps, seed)?;
                Ok(ok && sup_norm(&(&p.potential - f)) <= *eps && critical_graph(graph, &p.potential)?.is_single_cycle(graph))
            }),
        );
    }

    match second_gap(graph, f) {
        Ok(Some(gap)) => {
            suite.record("gap_positive", Ok(gap > Rational::zero()));
            suite.record(
                "usc_inclusion",
                [int(4), int(8)].iter().try_fold(true, |ok, d| Ok(ok && usc_inclusion_check(graph, f, &(&gap / d), 100, seed)?)),
            );
            suite.record(
                "usc_gap_violation",
                Ok(matches!(
                    usc_inclusion_check(graph, f, &(&gap / int(2)), 1, seed),
                    Err(Error::GapViolation { .. })
                )),
            );
        }
        Ok(None) => {
            suite.record("gap_defined_when_unique", Ok(!unique || enumerate_cycle_measures(graph).map(|c| c.len() < 2).unwrap_or(false)));
            suite.skip("usc_inclusion", "every simple cycle is critical");
        }
        Err(e) => suite.record("gap", Err(e)),
    }
}
