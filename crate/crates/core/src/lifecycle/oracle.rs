//! Exhaustive simple-path enumeration for small graphs.
//!
//! Exponential in the worst case; used to cross-check the reachability-based
//! precedence computation.

use std::collections::{BTreeMap, BTreeSet};

use super::{Lifecycle, LifecycleError, PrecedencePair};
use crate::ir::{NodeId, ProcessGraph};

pub const ORACLE_NODE_LIMIT: usize = 16;

/// Precedence pairs of `lifecycle` derived from every simple path in `graph`.
pub fn brute_force_precedence(
    graph: &ProcessGraph,
    lifecycle: &Lifecycle,
) -> Result<Vec<PrecedencePair>, LifecycleError> {
    if graph.node_count() > ORACLE_NODE_LIMIT {
        return Err(LifecycleError::GraphTooLarge {
            nodes: graph.node_count(),
            limit: ORACLE_NODE_LIMIT,
        });
    }
    if lifecycle.is_degenerate() {
        return Ok(Vec::new());
    }

    let ids: Vec<&NodeId> = graph.nodes().map(|n| &n.id).collect();
    let position: BTreeMap<&NodeId, usize> =
        ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let mut successors = vec![BTreeSet::new(); ids.len()];
    let mut has_pred = vec![false; ids.len()];
    for (s, t) in graph.edges() {
        if let (Some(&a), Some(&b)) = (position.get(s), position.get(t)) {
            successors[a].insert(b);
            has_pred[b] = true;
        }
    }

    let states: Vec<&String> = lifecycle.producers.keys().collect();
    let produces: Vec<Vec<bool>> = states
        .iter()
        .map(|state| {
            let mut mask = vec![false; ids.len()];
            for id in &lifecycle.producers[*state] {
                if let Some(&i) = position.get(id) {
                    mask[i] = true;
                }
            }
            mask
        })
        .collect();

    // violated[y][x]: some start-to-x-producer path has no earlier y-producer.
    let mut violated = vec![vec![false; states.len()]; states.len()];
    // returns[x][y]: some path runs from an x-producer to a y-producer.
    let mut returns = vec![vec![false; states.len()]; states.len()];

    let mut paths = Vec::new();
    for start in (0..ids.len()).filter(|&i| !has_pred[i]) {
        enumerate_simple_paths(start, &successors, &mut vec![start], &mut paths);
    }
    for path in &paths {
        let (&end, before) = path.split_last().expect("paths are non-empty");
        for x in 0..states.len() {
            if !produces[x][end] {
                continue;
            }
            for y in 0..states.len() {
                if !before.iter().any(|&n| produces[y][n]) {
                    violated[y][x] = true;
                }
            }
        }
    }

    let mut from_anywhere = Vec::new();
    for origin in 0..ids.len() {
        enumerate_simple_paths(origin, &successors, &mut vec![origin], &mut from_anywhere);
    }
    for path in &from_anywhere {
        let (first, last) = (path[0], path[path.len() - 1]);
        for x in 0..states.len() {
            for y in 0..states.len() {
                if produces[x][first] && produces[y][last] {
                    returns[x][y] = true;
                }
            }
        }
    }

    let mut pairs = Vec::new();
    for y in 0..states.len() {
        for x in 0..states.len() {
            if x != y && !violated[y][x] {
                pairs.push(PrecedencePair {
                    object_name: lifecycle.object_name.clone(),
                    earlier_state: states[y].clone(),
                    later_state: states[x].clone(),
                    irreversible: !returns[x][y],
                });
            }
        }
    }
    Ok(pairs)
}

/// Pushes every simple path that extends `path` (including `path` itself).
fn enumerate_simple_paths(
    last: usize,
    successors: &[BTreeSet<usize>],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(path.clone());
    for &next in &successors[last] {
        if path.contains(&next) {
            continue;
        }
        path.push(next);
        enumerate_simple_paths(next, successors, path, out);
        path.pop();
    }
}
