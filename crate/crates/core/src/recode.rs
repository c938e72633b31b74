//! Higher-block presentation: a potential depending on `k` consecutive
//! symbols of a vertex shift becomes an edge potential on the graph of
//! admissible `(k-1)`-blocks.
//!
//! The alphabet graph is read as a vertex shift: symbols are its nodes and
//! `u -> v` is allowed when at least one edge joins them (parallel edges
//! collapse).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Graph};
use crate::measure::Potential;
use crate::rational::{int, Rational};

/// Weights of the admissible `k`-blocks, keyed by symbol sequence.
pub type BlockTable = BTreeMap<Vec<usize>, Rational>;

fn transitions(alphabet: &Graph) -> Vec<Vec<bool>> {
    let n = alphabet.node_count();
    let mut allowed = vec![vec![false; n]; n];
    for e in alphabet.edges() {
        allowed[e.source][e.target] = true;
    }
    allowed
}

/// Admissible blocks of `len` symbols, in lexicographic order.
pub fn admissible_blocks(alphabet: &Graph, len: usize) -> Vec<Vec<usize>> {
    let allowed = transitions(alphabet);
    let mut blocks: Vec<Vec<usize>> = (0..alphabet.node_count()).map(|s| vec![s]).collect();
    for _ in 1..len {
        blocks = blocks
            .into_iter()
            .flat_map(|b| {
                let last = *b.last().unwrap();
                let allowed = &allowed;
                (0..allowed.len()).filter(move |&s| allowed[last][s]).map(move |s| {
                    let mut next = b.clone();
                    next.push(s);
                    next
                })
            })
            .collect();
    }
    blocks
}

/// `"0.1.1"` style label of a block.
pub fn block_key(block: &[usize]) -> String {
    block.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
}

pub fn parse_block_key(key: &str) -> Option<Vec<usize>> {
    key.split('.').map(|s| s.parse().ok()).collect()
}

/// Recodes a `k`-block potential as an edge potential. Nodes of the result
/// are admissible `(k-1)`-blocks, edges are admissible `k`-blocks, both in
/// lexicographic order; edge ids are [`block_key`] labels.
pub fn higher_block_recode(alphabet: &Graph, table: &BlockTable, k: usize) -> Result<(Graph, Potential)> {
    if k < 2 {
        return Err(Error::InvalidBlockTable(format!("block length {k} is below 2")));
    }
    let allowed = transitions(alphabet);
    for block in table.keys() {
        let admissible = block.len() == k
            && block.iter().all(|&s| s < alphabet.node_count())
            && block.windows(2).all(|w| allowed[w[0]][w[1]]);
        if !admissible {
            return Err(Error::InvalidBlockTable(format!(
                "{} is not an admissible {k}-block",
                block_key(block)
            )));
        }
    }
    let states = admissible_blocks(alphabet, k - 1);
    let index: BTreeMap<&[usize], usize> = states.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
    let blocks = admissible_blocks(alphabet, k);
    let mut edges = Vec::with_capacity(blocks.len());
    let mut weights = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let weight = table.get(block).ok_or_else(|| {
            Error::InvalidBlockTable(format!("no weight for admissible block {}", block_key(block)))
        })?;
        edges.push((block_key(block), index[&block[..k - 1]], index[&block[1..]]));
        weights.push(weight.clone());
    }
    let graph = build_graph(states.len(), edges)?;
    Ok((graph, Potential::new(weights)))
}

/// Brute-force maximum ergodic average of a block potential: the best mean
/// of `table` over the cyclic `k`-windows of every periodic admissible
/// sequence with period at most `max_period`.
///
/// With `max_period` at least the number of admissible `(k-1)`-blocks this
/// covers every simple cycle of the recoded graph.
pub fn periodic_block_beta(alphabet: &Graph, table: &BlockTable, k: usize, max_period: usize) -> Result<Rational> {
    let allowed = transitions(alphabet);
    let n = alphabet.node_count();
    let mut best: Option<Rational> = None;
    let mut word = Vec::with_capacity(max_period);
    fn grow(
        word: &mut Vec<usize>,
        allowed: &[Vec<bool>],
        table: &BlockTable,
        k: usize,
        max_period: usize,
        best: &mut Option<Rational>,
    ) -> Result<()> {
        let p = word.len();
        if allowed[word[p - 1]][word[0]] {
            let mut total = Rational::from_integer(0.into());
            let mut window = Vec::with_capacity(k);
            for i in 0..p {
                window.clear();
                window.extend((0..k).map(|j| word[(i + j) % p]));
                let w = table.get(&window).ok_or_else(|| {
                    Error::InvalidBlockTable(format!("no weight for admissible block {}", block_key(&window)))
                })?;
                total += w;
            }
            let mean = total / int(p as i64);
            if best.as_ref().is_none_or(|b| mean > *b) {
                *best = Some(mean);
            }
        }
        if p < max_period {
            for s in 0..allowed.len() {
                if allowed[word[p - 1]][s] {
                    word.push(s);
                    grow(word, allowed, table, k, max_period, best)?;
                    word.pop();
                }
            }
        }
        Ok(())
    }
    for s in 0..n {
        word.push(s);
        grow(&mut word, &allowed, table, k, max_period, &mut best)?;
        word.pop();
    }
    best.ok_or(Error::NoCycle)
}
