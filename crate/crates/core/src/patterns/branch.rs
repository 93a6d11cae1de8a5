use crate::ir::{Adjacency, Direction, Node, NodeKind};

/// The linear stretch of a split's branch starting at `head`.
///
/// The walk follows single successors and stops before any connector (a join
/// closes the branch, a nested split opens new ones), at a fork, or when it
/// comes back to a node already seen.
pub(crate) fn walk(adj: &Adjacency<'_>, split: usize, head: usize) -> Vec<usize> {
    let mut nodes = Vec::new();
    let mut current = head;
    loop {
        let node = adj.node(current);
        if node.kind == NodeKind::Connector || current == split || nodes.contains(&current) {
            break;
        }
        nodes.push(current);
        match adj.successors(current) {
            [next] => current = *next,
            _ => break,
        }
    }
    nodes
}

/// What a single branch of a split offers the detectors.
pub(crate) struct Branch {
    /// First condition node before any activity.
    pub guard: Option<usize>,
    /// Last condition node of the uninterrupted condition run starting at the guard.
    pub outcome: Option<usize>,
    /// First activity on the branch.
    pub activity: Option<usize>,
}

impl Branch {
    pub fn scan(adj: &Adjacency<'_>, split: usize, head: usize) -> Branch {
        let nodes = walk(adj, split, head);
        let activity_at = nodes
            .iter()
            .position(|&n| adj.node(n).kind == NodeKind::Activity);
        let before_activity = &nodes[..activity_at.unwrap_or(nodes.len())];
        let guard_at = before_activity
            .iter()
            .position(|&n| adj.node(n).is_condition());
        let outcome = guard_at.map(|g| {
            let run = before_activity[g..]
                .iter()
                .take_while(|&&n| adj.node(n).is_condition())
                .count();
            before_activity[g + run - 1]
        });
        Branch {
            guard: guard_at.map(|g| before_activity[g]),
            outcome,
            activity: activity_at.map(|a| nodes[a]),
        }
    }
}

/// Nearest node before `from` satisfying `wanted`, with a note when the
/// choice between equally near candidates was made by id order.
pub(crate) fn nearest_before(
    adj: &Adjacency<'_>,
    from: usize,
    what: &str,
    wanted: impl Fn(&Node) -> bool,
    notes: &mut Vec<String>,
) -> Option<usize> {
    let hits = adj.nearest(from, Direction::Backward, wanted);
    if hits.len() > 1 {
        let ids: Vec<&str> = hits.iter().map(|&h| adj.id(h).as_str()).collect();
        notes.push(format!(
            "nearest {what} before {} is ambiguous ({}); using {}",
            adj.id(from),
            ids.join(", "),
            ids[0]
        ));
    }
    hits.first().copied()
}
