//! Howard policy iteration for the maximum cycle mean, over exact rationals.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measure::Potential;
use crate::rational::{int, Rational};

/// Maximum ergodic average by policy iteration, per strongly connected
/// component. An independent fast path next to Karp's recurrence.
pub fn beta_policy_iteration(graph: &Graph, f: &Potential) -> Result<Rational> {
    f.check_len(graph)?;
    let mut best: Option<Rational> = None;
    for nodes in graph.cyclic_components() {
        let mut local = vec![usize::MAX; graph.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let mut out: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nodes.len()];
        for (i, e) in graph.edges().iter().enumerate() {
            if local[e.source] != usize::MAX && local[e.target] != usize::MAX {
                out[local[e.source]].push((local[e.target], f[i].clone()));
            }
        }
        let value = component(&out)?;
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    Ok(best.expect("validated graph has a cycle"))
}

/// Cycle mean reached by each node under the policy, and bias values.
fn evaluate(out: &[Vec<(usize, Rational)>], policy: &[usize]) -> (Vec<Rational>, Vec<Rational>) {
    let n = out.len();
    let mut eta = vec![Rational::zero(); n];
    let mut bias = vec![Rational::zero(); n];
    // 0 = unseen, 1 = on the current walk, 2 = done
    let mut state = vec![0u8; n];
    for root in 0..n {
        if state[root] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = root;
        while state[v] == 0 {
            state[v] = 1;
            walk.push(v);
            v = out[v][policy[v]].0;
        }
        let mut tail = walk.len();
        if state[v] == 1 {
            // closed a new policy cycle at v
            let start = walk.iter().position(|&u| u == v).unwrap();
            let cycle = &walk[start..];
            let total: Rational = cycle.iter().map(|&u| &out[u][policy[u]].1).sum();
            let mean = total / int(cycle.len() as i64);
            // reference node: smallest index on the cycle, bias zero there
            let r = cycle.iter().position(|&u| u == *cycle.iter().min().unwrap()).unwrap();
            let len = cycle.len();
            for step in 1..len {
                let u = cycle[(r + len - step) % len];
                let (next, w) = &out[u][policy[u]];
                bias[u] = w - &mean + &bias[*next];
            }
            for &u in cycle {
                eta[u] = mean.clone();
                state[u] = 2;
            }
            tail = start;
        }
        for &u in walk[..tail].iter().rev() {
            let (next, w) = &out[u][policy[u]];
            eta[u] = eta[*next].clone();
            bias[u] = w - &eta[u] + &bias[*next];
            state[u] = 2;
        }
    }
    (eta, bias)
}

fn component(out: &[Vec<(usize, Rational)>]) -> Result<Rational> {
    let n = out.len();
    let mut policy: Vec<usize> = out
        .iter()
        .map(|edges| {
            (0..edges.len()).fold(0, |best, k| if edges[k].1 > edges[best].1 { k } else { best })
        })
        .collect();
    let cap = 10_000 + n * out.iter().map(Vec::len).sum::<usize>();
    for _ in 0..cap {
        let (eta, bias) = evaluate(out, &policy);
        let mut changed = false;
        for v in 0..n {
            let mut pick = policy[v];
            for (k, (w, _)) in out[v].iter().enumerate() {
                if eta[*w] > eta[out[v][pick].0] {
                    pick = k;
                }
            }
            if eta[out[v][pick].0] > eta[v] {
                policy[v] = pick;
                changed = true;
            }
        }
        if !changed {
            for v in 0..n {
                let value = |k: usize| {
                    let (w, weight) = &out[v][k];
                    weight - &eta[v] + &bias[*w]
                };
                let mut pick = policy[v];
                let mut pick_value = value(pick);
                for k in 0..out[v].len() {
                    if eta[out[v][k].0] != eta[v] {
                        continue;
                    }
                    let val = value(k);
                    if val > pick_value {
                        pick = k;
                        pick_value = val;
                    }
                }
                if pick_value > bias[v] {
                    policy[v] = pick;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(eta.into_iter().max().expect("non-empty component"));
        }
    }
    Err(Error::Internal("policy iteration did not terminate".into()))
}
