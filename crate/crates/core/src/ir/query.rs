use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use super::{Node, NodeId, ProcessGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("UNKNOWN_NODE: no node with id {0:?}")]
    UnknownNode(NodeId),
}

impl QueryError {
    pub fn code(&self) -> &'static str {
        match self {
            QueryError::UnknownNode(_) => "UNKNOWN_NODE",
        }
    }
}

/// Index-based adjacency over a graph's nodes.
///
/// Node indices follow id order, so every adjacency list is sorted by
/// `NodeId` lexicographically. Edges with a missing endpoint are dropped.
#[derive(Debug)]
pub struct Adjacency<'g> {
    nodes: Vec<&'g Node>,
    index: HashMap<&'g NodeId, usize>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
}

impl<'g> Adjacency<'g> {
    pub fn build(graph: &'g ProcessGraph) -> Self {
        let nodes: Vec<&Node> = graph.nodes().collect();
        let index: HashMap<&NodeId, usize> =
            nodes.iter().enumerate().map(|(i, n)| (&n.id, i)).collect();
        let mut succ = vec![BTreeSet::new(); nodes.len()];
        let mut pred = vec![BTreeSet::new(); nodes.len()];
        for (source, target) in graph.edges() {
            if let (Some(&s), Some(&t)) = (index.get(source), index.get(target)) {
                succ[s].insert(t);
                pred[t].insert(s);
            }
        }
        let flatten = |sets: Vec<BTreeSet<usize>>| -> Vec<Vec<usize>> {
            sets.into_iter().map(|s| s.into_iter().collect()).collect()
        };
        Adjacency {
            nodes,
            index,
            succ: flatten(succ),
            pred: flatten(pred),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, id: &NodeId) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &NodeId) -> Result<usize, QueryError> {
        self.index_of(id)
            .ok_or_else(|| QueryError::UnknownNode(id.clone()))
    }

    pub fn node(&self, index: usize) -> &'g Node {
        self.nodes[index]
    }

    pub fn id(&self, index: usize) -> &'g NodeId {
        &self.nodes[index].id
    }

    pub fn successors(&self, index: usize) -> &[usize] {
        &self.succ[index]
    }

    pub fn predecessors(&self, index: usize) -> &[usize] {
        &self.pred[index]
    }

    pub fn adjacent(&self, index: usize, direction: Direction) -> &[usize] {
        match direction {
            Direction::Forward => &self.succ[index],
            Direction::Backward => &self.pred[index],
        }
    }

    pub fn in_degree(&self, index: usize) -> usize {
        self.pred[index].len()
    }

    pub fn out_degree(&self, index: usize) -> usize {
        self.succ[index].len()
    }

    /// Nodes with in-degree 0.
    pub fn starts(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.in_degree(i) == 0)
            .collect()
    }

    /// Marks every node reachable from `sources` along forward edges without
    /// entering an excluded node. Excluded sources are not expanded.
    pub fn reachable_avoiding(&self, sources: &[usize], excluded: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if !excluded[s] && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(n) = queue.pop_front() {
            for &m in &self.succ[n] {
                if !excluded[m] && !seen[m] {
                    seen[m] = true;
                    queue.push_back(m);
                }
            }
        }
        seen
    }

    /// Breadth-first search from `from` (exclusive) in `direction`, returning
    /// the nodes matching `wanted` at the smallest depth where any match.
    ///
    /// Each node is visited once, so cycles terminate. The returned list is in
    /// id order; more than one entry means the nearest match is ambiguous.
    pub fn nearest(
        &self,
        from: usize,
        direction: Direction,
        wanted: impl Fn(&Node) -> bool,
    ) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut frontier = vec![from];
        while !frontier.is_empty() {
            let mut next = BTreeSet::new();
            for &n in &frontier {
                for &m in self.adjacent(n, direction) {
                    if !seen[m] {
                        seen[m] = true;
                        next.insert(m);
                    }
                }
            }
            let hits: Vec<usize> = next
                .iter()
                .copied()
                .filter(|&m| wanted(self.nodes[m]))
                .collect();
            if !hits.is_empty() {
                return hits;
            }
            frontier = next.into_iter().collect();
        }
        Vec::new()
    }
}

/// Adjacent nodes of `node` in the given direction, ordered by id.
pub fn neighbors(
    graph: &ProcessGraph,
    node: &NodeId,
    direction: Direction,
) -> Result<Vec<NodeId>, QueryError> {
    let adj = Adjacency::build(graph);
    let i = adj.require(node)?;
    Ok(adj
        .adjacent(i, direction)
        .iter()
        .map(|&j| adj.id(j).clone())
        .collect())
}

/// Whether a directed path leads from `from` to `to` without visiting any
/// node of `excluding`. An excluded endpoint always yields `false`; the empty
/// path makes `path_exists(n, n, ∅)` true.
pub fn path_exists(
    graph: &ProcessGraph,
    from: &NodeId,
    to: &NodeId,
    excluding: &BTreeSet<NodeId>,
) -> Result<bool, QueryError> {
    let adj = Adjacency::build(graph);
    let s = adj.require(from)?;
    let t = adj.require(to)?;
    let mut excluded = vec![false; adj.len()];
    for id in excluding {
        if let Some(i) = adj.index_of(id) {
            excluded[i] = true;
        }
    }
    if excluded[t] {
        return Ok(false);
    }
    Ok(adj.reachable_avoiding(&[s], &excluded)[t])
}
