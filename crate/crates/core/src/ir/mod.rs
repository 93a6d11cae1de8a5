//! Unified directed-graph representation of a process model.
//!
//! Petri nets and EPCs are both lowered into a [`ProcessGraph`]: a set of
//! typed nodes keyed by [`NodeId`] plus a list of directed edges. The graph
//! container is permissive; [`validate`] reports every structural problem
//! instead of refusing to build the graph.

mod normalize;
mod query;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use normalize::{normalize_petri, NormalizeError};
pub use query::{neighbors, path_exists, Adjacency, Direction, QueryError};
pub use validate::{validate, Issue, IssueCode, Locus, ValidationReport};

/// Opaque node identifier, unique within one graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(value: impl Into<String>) -> Self {
        NodeId(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(value: &str) -> Self {
        NodeId(value.to_owned())
    }
}

impl From<String> for NodeId {
    fn from(value: String) -> Self {
        NodeId(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Notation {
    PetriNet,
    #[serde(rename = "EPC")]
    Epc,
    Native,
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notation::PetriNet => "PetriNet",
            Notation::Epc => "EPC",
            Notation::Native => "Native",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    Activity,
    Event,
    Place,
    Connector,
    Start,
    End,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConnectorType {
    #[serde(rename = "AND")]
    And,
    #[serde(rename = "XOR")]
    Xor,
    #[serde(rename = "OR")]
    Or,
}

impl fmt::Display for ConnectorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConnectorType::And => "AND",
            ConnectorType::Xor => "XOR",
            ConnectorType::Or => "OR",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConnectorRole {
    Split,
    Join,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DataDirection {
    Input,
    Output,
}

/// A business object read or written by an activity, optionally in a named state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DataObjectRef {
    pub object_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    pub direction: DataDirection,
}

impl DataObjectRef {
    pub fn output(object_name: impl Into<String>, state: Option<&str>) -> Self {
        DataObjectRef {
            object_name: object_name.into(),
            state: state.map(str::to_owned),
            direction: DataDirection::Output,
        }
    }

    pub fn input(object_name: impl Into<String>, state: Option<&str>) -> Self {
        DataObjectRef {
            object_name: object_name.into(),
            state: state.map(str::to_owned),
            direction: DataDirection::Input,
        }
    }

    /// The `"<object> is <state>"` reading of a stateful reference.
    pub fn state_reading(&self) -> Option<String> {
        self.state
            .as_ref()
            .map(|state| format!("{} is {}", self.object_name, state))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub label: String,
    pub connector_type: Option<ConnectorType>,
    pub connector_role: Option<ConnectorRole>,
    pub data_refs: Vec<DataObjectRef>,
    pub roles: Vec<String>,
    pub synthetic: bool,
}

impl Node {
    fn bare(id: impl Into<NodeId>, kind: NodeKind, label: &str) -> Self {
        Node {
            id: id.into(),
            kind,
            label: label.to_owned(),
            connector_type: None,
            connector_role: None,
            data_refs: Vec::new(),
            roles: Vec::new(),
            synthetic: false,
        }
    }

    pub fn activity(id: impl Into<NodeId>, label: &str) -> Self {
        Node::bare(id, NodeKind::Activity, label)
    }

    pub fn event(id: impl Into<NodeId>, label: &str) -> Self {
        Node::bare(id, NodeKind::Event, label)
    }

    pub fn place(id: impl Into<NodeId>, label: &str) -> Self {
        Node::bare(id, NodeKind::Place, label)
    }

    pub fn connector(id: impl Into<NodeId>, ty: ConnectorType, role: ConnectorRole) -> Self {
        let mut node = Node::bare(id, NodeKind::Connector, "");
        node.connector_type = Some(ty);
        node.connector_role = Some(role);
        node
    }

    pub fn with_data(mut self, data_ref: DataObjectRef) -> Self {
        self.data_refs.push(data_ref);
        self
    }

    pub fn with_role(mut self, role: &str) -> Self {
        self.roles.push(role.to_owned());
        self
    }

    pub fn is_connector(&self, ty: ConnectorType, role: ConnectorRole) -> bool {
        self.connector_type == Some(ty) && self.connector_role == Some(role)
    }

    pub fn is_join(&self) -> bool {
        self.kind == NodeKind::Connector && self.connector_role == Some(ConnectorRole::Join)
    }

    /// Labeled events and places carry conditions; unlabeled places are pure routing.
    pub fn is_condition(&self) -> bool {
        matches!(self.kind, NodeKind::Event | NodeKind::Place) && !self.label.is_empty()
    }

    /// The label, or the id when the label is empty.
    pub fn display_name(&self) -> &str {
        if self.label.is_empty() {
            self.id.as_str()
        } else {
            &self.label
        }
    }

    pub fn outputs(&self) -> impl Iterator<Item = &DataObjectRef> {
        self.data_refs
            .iter()
            .filter(|r| r.direction == DataDirection::Output)
    }
}

/// A process model as a directed graph.
///
/// Nodes are kept ordered by id, which fixes iteration order everywhere
/// downstream. Edge order is insignificant: equality compares edge multisets.
#[derive(Debug, Clone)]
pub struct ProcessGraph {
    pub name: String,
    pub notation: Notation,
    nodes: BTreeMap<NodeId, Node>,
    edges: Vec<(NodeId, NodeId)>,
}

impl ProcessGraph {
    pub fn new(name: impl Into<String>, notation: Notation) -> Self {
        ProcessGraph {
            name: name.into(),
            notation,
            nodes: BTreeMap::new(),
            edges: Vec::new(),
        }
    }

    /// Inserts a node, returning the node it replaced if the id was taken.
    pub fn insert_node(&mut self, node: Node) -> Option<Node> {
        self.nodes.insert(node.id.clone(), node)
    }

    /// Appends an edge. Endpoints are not checked here; see [`validate`].
    pub fn add_edge(&mut self, source: impl Into<NodeId>, target: impl Into<NodeId>) {
        self.edges.push((source.into(), target.into()));
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    pub fn node_mut(&mut self, id: &NodeId) -> Option<&mut Node> {
        self.nodes.get_mut(id)
    }

    pub fn contains(&self, id: &NodeId) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.nodes.values()
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    pub(crate) fn replace_edges(&mut self, edges: Vec<(NodeId, NodeId)>) {
        self.edges = edges;
    }

    pub(crate) fn sorted_edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut edges = self.edges.clone();
        edges.sort();
        edges
    }
}

impl PartialEq for ProcessGraph {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.notation == other.notation
            && self.nodes == other.nodes
            && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for ProcessGraph {}
