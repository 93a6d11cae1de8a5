//! Data-object lifecycles and the state-order rules derived from them.
//!
//! A state `y` must precede a state `x` of the same object when every path
//! from a start node to a producer of `x` passes a producer of `y` before
//! reaching it. Producers of one state are alternatives: passing any of them
//! satisfies the obligation. The precedence is irreversible when no producer
//! of `x` can reach a producer of `y`.

mod oracle;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ir::{Adjacency, NodeId, NodeKind, ProcessGraph};
use crate::rules::BusinessRule;

pub use oracle::{brute_force_precedence, ORACLE_NODE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LifecycleError {
    #[error("UNKNOWN_STATE: {object} has no state {state:?}")]
    UnknownState { object: String, state: String },
    #[error("UNKNOWN_STATE: precedence needs two distinct states, got {0:?} twice")]
    SameState(String),
    #[error("GRAPH_TOO_LARGE: {nodes} nodes exceed the oracle limit of {limit}")]
    GraphTooLarge { nodes: usize, limit: usize },
}

impl LifecycleError {
    pub fn code(&self) -> &'static str {
        match self {
            LifecycleError::UnknownState { .. } | LifecycleError::SameState(_) => "UNKNOWN_STATE",
            LifecycleError::GraphTooLarge { .. } => "GRAPH_TOO_LARGE",
        }
    }
}

/// The states one business object passes through, with the activities that
/// produce each state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifecycle {
    pub object_name: String,
    pub producers: BTreeMap<String, BTreeSet<NodeId>>,
}

impl Lifecycle {
    pub fn states(&self) -> impl Iterator<Item = &str> {
        self.producers.keys().map(String::as_str)
    }

    pub fn producers_of(&self, state: &str) -> Result<&BTreeSet<NodeId>, LifecycleError> {
        self.producers
            .get(state)
            .ok_or_else(|| LifecycleError::UnknownState {
                object: self.object_name.clone(),
                state: state.to_owned(),
            })
    }

    /// Every state is written by exactly the same activities, so no order
    /// between states can be observed.
    pub fn is_degenerate(&self) -> bool {
        let mut sets = self.producers.values();
        match sets.next() {
            Some(first) => self.producers.len() >= 2 && sets.all(|s| s == first),
            None => false,
        }
    }
}

/// `earlier` must precede `later` for `object_name`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrecedencePair {
    pub object_name: String,
    pub earlier_state: String,
    pub later_state: String,
    pub irreversible: bool,
}

/// One lifecycle per object written with a state by some activity.
///
/// Stateful `Output` data references are the primary source. An event whose
/// label reads exactly `"<object> is <state>"` for an object named by any data
/// reference also counts as a state write by each activity directly
/// preceding it.
pub fn collect_lifecycles(graph: &ProcessGraph) -> Vec<Lifecycle> {
    let mut table: BTreeMap<String, BTreeMap<String, BTreeSet<NodeId>>> = BTreeMap::new();
    let mut known_objects = BTreeSet::new();
    for node in graph.nodes() {
        if node.kind != NodeKind::Activity {
            continue;
        }
        for data_ref in &node.data_refs {
            known_objects.insert(data_ref.object_name.as_str());
        }
        for output in node.outputs() {
            if let Some(state) = &output.state {
                table
                    .entry(output.object_name.clone())
                    .or_default()
                    .entry(state.clone())
                    .or_default()
                    .insert(node.id.clone());
            }
        }
    }

    let adj = Adjacency::build(graph);
    for i in 0..adj.len() {
        let event = adj.node(i);
        if event.kind != NodeKind::Event {
            continue;
        }
        let Some((object, state)) = split_state_label(&event.label, &known_objects) else {
            continue;
        };
        for &p in adj.predecessors(i) {
            let producer = adj.node(p);
            if producer.kind == NodeKind::Activity {
                table
                    .entry(object.to_owned())
                    .or_default()
                    .entry(state.to_owned())
                    .or_default()
                    .insert(producer.id.clone());
            }
        }
    }

    table
        .into_iter()
        .map(|(object_name, producers)| Lifecycle {
            object_name,
            producers,
        })
        .collect()
}

fn split_state_label<'a>(label: &'a str, objects: &BTreeSet<&str>) -> Option<(&'a str, &'a str)> {
    objects.iter().find_map(|object| {
        let state = label.strip_prefix(object)?.strip_prefix(" is ")?;
        (!state.is_empty()).then(|| (&label[..object.len()], state))
    })
}

/// Does every path from a start node to each producer of `later` pass a
/// producer of `earlier` first?
pub fn must_precede(
    graph: &ProcessGraph,
    lifecycle: &Lifecycle,
    earlier: &str,
    later: &str,
) -> Result<bool, LifecycleError> {
    let adj = Adjacency::build(graph);
    let mut notes = Vec::new();
    Precedence::new(&adj, lifecycle).must_precede(earlier, later, &mut notes)
}

struct Precedence<'a, 'g> {
    adj: &'a Adjacency<'g>,
    lifecycle: &'a Lifecycle,
    starts: Vec<usize>,
}

impl<'a, 'g> Precedence<'a, 'g> {
    fn new(adj: &'a Adjacency<'g>, lifecycle: &'a Lifecycle) -> Self {
        Precedence {
            adj,
            lifecycle,
            starts: adj.starts(),
        }
    }

    fn indices(&self, state: &str) -> Result<Vec<usize>, LifecycleError> {
        Ok(self
            .lifecycle
            .producers_of(state)?
            .iter()
            .filter_map(|id| self.adj.index_of(id))
            .collect())
    }

    fn must_precede(
        &self,
        earlier: &str,
        later: &str,
        notes: &mut Vec<String>,
    ) -> Result<bool, LifecycleError> {
        if earlier == later {
            return Err(LifecycleError::SameState(earlier.to_owned()));
        }
        let guards = self.indices(earlier)?;
        let targets = self.indices(later)?;
        let no_exclusion = vec![false; self.adj.len()];
        let reachable = self.adj.reachable_avoiding(&self.starts, &no_exclusion);
        for &p in &targets {
            if !reachable[p] {
                notes.push(format!(
                    "pattern 3: producer {} of {}[{}] is unreachable from every start node; treated as guarded",
                    self.adj.id(p),
                    self.lifecycle.object_name,
                    later
                ));
                continue;
            }
            let mut excluded = vec![false; self.adj.len()];
            for &g in &guards {
                excluded[g] = g != p;
            }
            if self.adj.reachable_avoiding(&self.starts, &excluded)[p] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Can some producer of `from` reach a producer of `to`?
    fn can_return(&self, from: &str, to: &str) -> Result<bool, LifecycleError> {
        let sources = self.indices(from)?;
        let targets = self.indices(to)?;
        let reach = self
            .adj
            .reachable_avoiding(&sources, &vec![false; self.adj.len()]);
        Ok(targets.iter().any(|&t| reach[t]))
    }
}

/// Precedence pairs of one lifecycle computed by reachability.
pub fn precedence_pairs(graph: &ProcessGraph, lifecycle: &Lifecycle) -> Vec<PrecedencePair> {
    let adj = Adjacency::build(graph);
    pairs_with_notes(&adj, lifecycle, &mut Vec::new())
}

fn pairs_with_notes(
    adj: &Adjacency<'_>,
    lifecycle: &Lifecycle,
    notes: &mut Vec<String>,
) -> Vec<PrecedencePair> {
    if lifecycle.is_degenerate() {
        notes.push(format!(
            "pattern 3: all states of {} share one producer set; no order derived",
            lifecycle.object_name
        ));
        return Vec::new();
    }
    let analysis = Precedence::new(adj, lifecycle);
    let mut pairs = Vec::new();
    for earlier in lifecycle.states() {
        for later in lifecycle.states() {
            if earlier == later {
                continue;
            }
            // States come from the lifecycle itself, so lookups cannot fail.
            if !analysis
                .must_precede(earlier, later, notes)
                .unwrap_or(false)
            {
                continue;
            }
            let returns = analysis.can_return(later, earlier).unwrap_or(true);
            if returns {
                notes.push(format!(
                    "pattern 3: {} can return from {} to {}; irreversibility rule suppressed",
                    lifecycle.object_name, later, earlier
                ));
            }
            pairs.push(PrecedencePair {
                object_name: lifecycle.object_name.clone(),
                earlier_state: earlier.to_owned(),
                later_state: later.to_owned(),
                irreversible: !returns,
            });
        }
    }
    pairs
}

/// Pattern 3: one state-order rule per precedence pair, plus a prohibition
/// rule when the order is irreversible.
pub fn detect_state_order_rules(graph: &ProcessGraph) -> Vec<BusinessRule> {
    detect_state_order_rules_noted(graph, &mut Vec::new())
}

pub(crate) fn detect_state_order_rules_noted(
    graph: &ProcessGraph,
    notes: &mut Vec<String>,
) -> Vec<BusinessRule> {
    let adj = Adjacency::build(graph);
    let mut rules = Vec::new();
    for lifecycle in collect_lifecycles(graph) {
        for pair in pairs_with_notes(&adj, &lifecycle, notes) {
            let mut provenance: Vec<NodeId> = lifecycle.producers[&pair.later_state]
                .iter()
                .cloned()
                .collect();
            for id in &lifecycle.producers[&pair.earlier_state] {
                if !provenance.contains(id) {
                    provenance.push(id.clone());
                }
            }
            let (object, earlier, later) =
                (&pair.object_name, &pair.earlier_state, &pair.later_state);
            rules.push(BusinessRule::state_order(
                object,
                earlier,
                later,
                provenance.clone(),
            ));
            if pair.irreversible {
                rules.push(BusinessRule::state_prohibition(
                    object, earlier, later, provenance,
                ));
            }
        }
    }
    rules
}
