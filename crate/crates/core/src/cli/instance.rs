//! Instance files:
//!
//! ```json
//! {"nodes": 2,
//!  "edges": [{"id": "e0", "from": 0, "to": 0}, {"id": "e1", "from": 0, "to": 1}, {"id": "e2", "from": 1, "to": 0}],
//!  "potential": {"e0": "1", "e1": "0", "e2": "3"}}
//! ```
//!
//! Rationals are `"p/q"` strings. An optional `"blocks"` map gives a
//! block potential for recoding, keyed by dotted symbol sequences such as
//! `"0.1.1"`; when it is present `"potential"` may be omitted (zero).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graph::{build_graph, Graph};
use crate::measure::Potential;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::recode::{block_key, parse_block_key, BlockTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub potential: Potential,
    pub blocks: Option<BlockTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeRecord {
    id: String,
    from: usize,
    to: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    nodes: usize,
    edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    potential: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<BTreeMap<String, String>>,
}

fn read(path: &Path) -> Result<String, InstanceError> {
    std::fs::read_to_string(path)
        .map_err(|e| InstanceError::Io { path: path.display().to_string(), reason: e.to_string() })
}

fn rational(text: &str) -> Result<Rational, InstanceError> {
    parse_rational(text).map_err(|e| InstanceError::Parse(e.to_string()))
}

pub fn parse_instance(path: &Path) -> Result<Instance, InstanceError> {
    parse_instance_str(&read(path)?)
}

pub fn parse_instance_str(text: &str) -> Result<Instance, InstanceError> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| InstanceError::Parse(e.to_string()))?;
    let graph = build_graph(file.nodes, file.edges.into_iter().map(|e| (e.id, e.from, e.to)))
        .map_err(|e| InstanceError::Validation(e.to_string()))?;
    let blocks = file.blocks.map(|raw| parse_blocks(&raw)).transpose()?;
    let potential = match (file.potential, &blocks) {
        (Some(map), _) => potential_from_map(&graph, &map)?,
        (None, Some(_)) => Potential::zeros(graph.edge_count()),
        (None, None) => return Err(InstanceError::Validation("missing \"potential\"".into())),
    };
    Ok(Instance { graph, potential, blocks })
}

fn parse_blocks(raw: &BTreeMap<String, String>) -> Result<BlockTable, InstanceError> {
    let mut table = BlockTable::new();
    for (key, value) in raw {
        let block = parse_block_key(key)
            .ok_or_else(|| InstanceError::Parse(format!("bad block key {key:?}")))?;
        table.insert(block, rational(value)?);
    }
    let mut lens = table.keys().map(Vec::len);
    if let Some(first) = lens.next() {
        if lens.any(|l| l != first) {
            return Err(InstanceError::Validation("blocks have different lengths".into()));
        }
    }
    Ok(table)
}

fn potential_from_map(graph: &Graph, map: &BTreeMap<String, String>) -> Result<Potential, InstanceError> {
    if let Some(unknown) = map.keys().find(|k| graph.edge_index(k).is_none()) {
        return Err(InstanceError::Validation(format!("weight given for unknown edge {unknown:?}")));
    }
    let weights = graph
        .edges()
        .iter()
        .map(|e| match map.get(&e.id) {
            Some(text) => rational(text),
            None => Err(InstanceError::Validation(format!("missing weight for edge {:?}", e.id))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Potential::new(weights))
}

/// Reads a direction potential: either an instance-style object with a
/// `"potential"` key, or a bare `{edge_id: "p/q"}` map.
pub fn parse_direction(path: &Path, graph: &Graph) -> Result<Potential, InstanceError> {
    let value: Value = serde_json::from_str(&read(path)?).map_err(|e| InstanceError::Parse(e.to_string()))?;
    let map = value.get("potential").cloned().unwrap_or(value);
    let map: BTreeMap<String, String> =
        serde_json::from_value(map).map_err(|e| InstanceError::Parse(e.to_string()))?;
    potential_from_map(graph, &map)
}

pub fn potential_map(graph: &Graph, f: &Potential) -> BTreeMap<String, String> {
    graph.edges().iter().zip(f.weights()).map(|(e, w)| (e.id.clone(), format_rational(w))).collect()
}

pub fn instance_value(instance: &Instance) -> Value {
    let file = InstanceFile {
        nodes: instance.graph.node_count(),
        edges: instance
            .graph
            .edges()
            .iter()
            .map(|e| EdgeRecord { id: e.id.clone(), from: e.source, to: e.target })
            .collect(),
        potential: Some(potential_map(&instance.graph, &instance.potential)),
        blocks: instance
            .blocks
            .as_ref()
            .map(|t| t.iter().map(|(b, w)| (block_key(b), format_rational(w))).collect()),
    };
    serde_json::to_value(file).expect("instance serializes")
}

pub fn serialize_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(&instance_value(instance)).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    const G3: &str = r#"{"nodes": 2,
        "edges": [{"id": "e0", "from": 0, "to": 0}, {"id": "e1", "from": 0, "to": 1}, {"id": "e2", "from": 1, "to": 0}],
        "potential": {"e0": "1", "e1": "0", "e2": "3"}}"#;

    #[test]
    fn parses_g3() {
        let inst = parse_instance_str(G3).unwrap();
        assert_eq!(inst.graph.edge_count(), 3);
        assert_eq!(inst.potential, Potential::from_integers(&[1, 0, 3]));
        assert!(inst.blocks.is_none());
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let text = G3.replace(r#""e0": "1""#, r#""e0": "1/0""#);
        assert!(matches!(parse_instance_str(&text), Err(InstanceError::Parse(_))));
    }

    #[test]
    fn missing_weight_is_a_validation_error() {
        let text = G3.replace(r#", "e2": "3""#, "");
        assert!(matches!(parse_instance_str(&text), Err(InstanceError::Validation(_))));
        let acyclic = r#"{"nodes": 2, "edges": [{"id": "a", "from": 0, "to": 1}], "potential": {"a": "1"}}"#;
        assert!(matches!(parse_instance_str(acyclic), Err(InstanceError::Validation(_))));
        let unknown = G3.replace(r#""e2": "3""#, r#""e2": "3", "e9": "1""#);
        assert!(matches!(parse_instance_str(&unknown), Err(InstanceError::Validation(_))));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(parse_instance_str("{\"nodes\": 1,"), Err(InstanceError::Parse(_))));
    }

    #[test]
    fn blocks_without_potential() {
        let text = r#"{"nodes": 2,
            "edges": [{"id": "a", "from": 0, "to": 0}, {"id": "b", "from": 0, "to": 1}, {"id": "c", "from": 1, "to": 0}],
            "blocks": {"0.0": "0", "0.1": "1/2", "1.0": "-1"}}"#;
        let inst = parse_instance_str(text).unwrap();
        assert_eq!(inst.potential, Potential::zeros(3));
        assert_eq!(inst.blocks.unwrap()[&vec![0, 1]], ratio(1, 2));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(w in proptest::collection::vec(arb_rational(), 3), b in arb_rational()) {
            let mut inst = parse_instance_str(G3).unwrap();
            inst.potential = Potential::new(w);
            let mut blocks = BlockTable::new();
            blocks.insert(vec![0, 1, 0], b);
            blocks.insert(vec![1, 0, 0], int(3));
            inst.blocks = Some(blocks);
            let again = parse_instance_str(&serialize_instance(&inst)).unwrap();
            prop_assert_eq!(again, inst);
        }
    }
}
