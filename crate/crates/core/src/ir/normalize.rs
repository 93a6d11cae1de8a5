use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{ConnectorRole, ConnectorType, Node, NodeId, NodeKind, Notation, ProcessGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("WRONG_NOTATION: routing normalization applies to Petri nets, not {0}")]
    WrongNotation(Notation),
}

impl NormalizeError {
    pub fn code(&self) -> &'static str {
        "WRONG_NOTATION"
    }
}

/// Makes the implicit routing of a Petri net explicit.
///
/// A place with several outgoing arcs fans out through a synthetic XOR split
/// and a transition through a synthetic AND split; fan-in gets the matching
/// join. A node with both fan-in and fan-out gets the join before it and the
/// split after it. Existing connectors are left alone, so the operation is
/// idempotent.
pub fn normalize_petri(graph: &ProcessGraph) -> Result<ProcessGraph, NormalizeError> {
    if graph.notation != Notation::PetriNet {
        return Err(NormalizeError::WrongNotation(graph.notation));
    }

    let distinct: BTreeSet<&(NodeId, NodeId)> = graph
        .edges()
        .iter()
        .filter(|(s, t)| graph.contains(s) && graph.contains(t))
        .collect();
    let mut out_degree: BTreeMap<&NodeId, usize> = BTreeMap::new();
    let mut in_degree: BTreeMap<&NodeId, usize> = BTreeMap::new();
    for (s, t) in &distinct {
        *out_degree.entry(s).or_default() += 1;
        *in_degree.entry(t).or_default() += 1;
    }

    let mut result = graph.clone();
    let mut splits: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    let mut joins: BTreeMap<NodeId, NodeId> = BTreeMap::new();

    for node in graph.nodes() {
        if node.kind == NodeKind::Connector {
            continue;
        }
        let ty = match node.kind {
            NodeKind::Activity => ConnectorType::And,
            _ => ConnectorType::Xor,
        };
        if in_degree.get(&node.id).copied().unwrap_or(0) >= 2 {
            let id = fresh_id(&result, &node.id, "join");
            let mut join = Node::connector(id.clone(), ty, ConnectorRole::Join);
            join.synthetic = true;
            result.insert_node(join);
            joins.insert(node.id.clone(), id);
        }
        if out_degree.get(&node.id).copied().unwrap_or(0) >= 2 {
            let id = fresh_id(&result, &node.id, "split");
            let mut split = Node::connector(id.clone(), ty, ConnectorRole::Split);
            split.synthetic = true;
            result.insert_node(split);
            splits.insert(node.id.clone(), id);
        }
    }

    if splits.is_empty() && joins.is_empty() {
        return Ok(result);
    }

    let mut edges = Vec::with_capacity(graph.edges().len() + splits.len() + joins.len());
    for (s, t) in graph.edges() {
        let source = splits.get(s).unwrap_or(s).clone();
        let target = joins.get(t).unwrap_or(t).clone();
        edges.push((source, target));
    }
    for (origin, split) in &splits {
        edges.push((origin.clone(), split.clone()));
    }
    for (origin, join) in &joins {
        edges.push((join.clone(), origin.clone()));
    }
    edges.sort();
    edges.dedup();
    result.replace_edges(edges);
    Ok(result)
}

fn fresh_id(graph: &ProcessGraph, origin: &NodeId, suffix: &str) -> NodeId {
    let base = format!("{origin}#{suffix}");
    let mut candidate = NodeId::new(base.clone());
    let mut n = 1;
    while graph.contains(&candidate) {
        candidate = NodeId::new(format!("{base}~{n}"));
        n += 1;
    }
    candidate
}
