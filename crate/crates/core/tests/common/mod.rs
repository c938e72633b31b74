#![allow(dead_code)]

use std::path::PathBuf;

use ergodic_opt::cli::{parse_instance, Instance};
use ergodic_opt::cycles::enumerate_simple_cycles_in;
use ergodic_opt::rational::{int, ratio, Rational};
use ergodic_opt::{build_graph, Graph, Potential};
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every committed corpus instance, by file stem, in name order.
pub fn corpus() -> Vec<(String, Instance)> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), parse_instance(&p).unwrap()))
        .collect()
}

/// Corpus instances as (name, graph, potential), with block instances
/// replaced by their recoding.
pub fn corpus_potentials() -> Vec<(String, Graph, Potential)> {
    corpus()
        .into_iter()
        .map(|(name, inst)| match &inst.blocks {
            Some(table) => {
                let k = table.keys().next().unwrap().len();
                let (g, f) = ergodic_opt::recode::higher_block_recode(&inst.graph, table, k).unwrap();
                (name, g, f)
            }
            None => (name, inst.graph, inst.potential),
        })
        .collect()
}

/// Distinct graphs of the corpus (block instances recoded), by first name.
pub fn corpus_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for (name, g, _) in corpus_potentials() {
        if !out.iter().any(|(_, h)| *h == g) {
            out.push((name, g));
        }
    }
    out
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    ratio(rng.random_range(-20..=20), rng.random_range(1..=6))
}

pub fn random_potential(rng: &mut impl Rng, len: usize) -> Potential {
    Potential::new((0..len).map(|_| small_rational(rng)).collect())
}

/// Random multigraph with at most `max_nodes` nodes and `max_edges` edges
/// that has a cycle and at most `cycle_cap` simple cycles.
pub fn random_graph(rng: &mut impl Rng, max_nodes: usize, max_edges: usize, cycle_cap: usize) -> Graph {
    loop {
        let n = rng.random_range(1..=max_nodes);
        let m = rng.random_range(1..=max_edges);
        let edges: Vec<_> = (0..m)
            .map(|i| (format!("e{i}"), rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        let Ok(g) = build_graph(n, edges) else { continue };
        if enumerate_simple_cycles_in(&g, None, cycle_cap).is_ok() {
            return g;
        }
    }
}

/// Strongly connected graph: a Hamiltonian cycle plus random chords.
pub fn strongly_connected(rng: &mut impl Rng, nodes: usize, edges: usize) -> Graph {
    let mut list: Vec<(String, usize, usize)> = (0..nodes).map(|v| (format!("h{v}"), v, (v + 1) % nodes)).collect();
    while list.len() < edges {
        let (u, v) = (rng.random_range(0..nodes), rng.random_range(0..nodes));
        list.push((format!("c{}", list.len()), u, v));
    }
    build_graph(nodes, list).unwrap()
}

/// Raises one edge off a maximizing cycle until a second cycle ties with
/// it at the top. Uses only brute-force cycle means. `None` when the graph
/// has a single simple cycle.
pub fn constructed_tie(rng: &mut impl Rng, graph: &Graph, f: &Potential) -> Option<Potential> {
    let cycles = enumerate_simple_cycles_in(graph, None, 1_000_000).unwrap();
    if cycles.len() < 2 {
        return None;
    }
    let means: Vec<Rational> = cycles.iter().map(|c| f.cycle_mean(c)).collect();
    let best = means.iter().max().unwrap().clone();
    let top = &cycles[means.iter().position(|m| *m == best).unwrap()];
    let off: Vec<usize> = (0..graph.edge_count())
        .filter(|e| !top.contains(e) && cycles.iter().any(|c| c.contains(e)))
        .collect();
    let e = off[rng.random_range(0..off.len())];
    let raise = cycles
        .iter()
        .zip(&means)
        .filter(|(c, _)| c.contains(&e))
        .map(|(c, m)| (&best - m) * int(c.len() as i64))
        .min()
        .unwrap();
    Some(f.add_scaled(&raise, &Potential::axis(graph.edge_count(), e)))
}

/// Number of brute-force maximizing cycles.
pub fn maximizing_cycle_count(graph: &Graph, f: &Potential) -> usize {
    ergodic_opt::optimize::beta_oracle(graph, f).unwrap().cycles.len()
}
