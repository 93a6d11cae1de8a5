use std::collections::BTreeSet;
use std::fmt;

use super::{Adjacency, ConnectorRole, NodeId, NodeKind, Notation, ProcessGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IssueCode {
    EmptyId,
    DanglingEdge,
    DuplicateEdge,
    ConnectorFields,
    MisplacedAttributes,
    EmptyObjectName,
    EmptyState,
    ConnectorArity,
    AdjacentFunctions,
}

impl IssueCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            IssueCode::EmptyId => "EMPTY_ID",
            IssueCode::DanglingEdge => "DANGLING_EDGE",
            IssueCode::DuplicateEdge => "DUPLICATE_EDGE",
            IssueCode::ConnectorFields => "CONNECTOR_FIELDS",
            IssueCode::MisplacedAttributes => "MISPLACED_ATTRIBUTES",
            IssueCode::EmptyObjectName => "EMPTY_OBJECT_NAME",
            IssueCode::EmptyState => "EMPTY_STATE",
            IssueCode::ConnectorArity => "CONNECTOR_ARITY",
            IssueCode::AdjacentFunctions => "ADJACENT_FUNCTIONS",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Locus {
    Node(NodeId),
    Edge(NodeId, NodeId),
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Node(id) => write!(f, "{id}"),
            Locus::Edge(s, t) => write!(f, "{s} -> {t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Issue {
    pub code: IssueCode,
    pub locus: Locus,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: {}", self.code, self.locus, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    fn error(&mut self, code: IssueCode, locus: Locus, message: String) {
        self.errors.push(Issue {
            code,
            locus,
            message,
        });
    }

    fn warning(&mut self, code: IssueCode, locus: Locus, message: String) {
        self.warnings.push(Issue {
            code,
            locus,
            message,
        });
    }
}

/// Checks every node, edge and connector-arity invariant of `graph`.
///
/// Problems are collected, never raised. EPC graphs additionally get a
/// warning for each pair of directly connected functions.
pub fn validate(graph: &ProcessGraph) -> ValidationReport {
    let mut report = ValidationReport::default();

    for node in graph.nodes() {
        let locus = || Locus::Node(node.id.clone());
        if node.id.as_str().is_empty() {
            report.error(IssueCode::EmptyId, locus(), "node id is empty".into());
        }
        let is_connector = node.kind == NodeKind::Connector;
        if is_connector != node.connector_type.is_some()
            || is_connector != node.connector_role.is_some()
        {
            report.error(
                IssueCode::ConnectorFields,
                locus(),
                format!(
                    "connector type and role must be set exactly on connectors (kind {})",
                    node.kind
                ),
            );
        }
        if node.kind != NodeKind::Activity && (!node.data_refs.is_empty() || !node.roles.is_empty())
        {
            report.error(
                IssueCode::MisplacedAttributes,
                locus(),
                format!(
                    "data objects and roles are only allowed on activities (kind {})",
                    node.kind
                ),
            );
        }
        for data_ref in &node.data_refs {
            if data_ref.object_name.is_empty() {
                report.error(
                    IssueCode::EmptyObjectName,
                    locus(),
                    "data object name is empty".into(),
                );
            }
            if data_ref.state.as_deref() == Some("") {
                report.error(
                    IssueCode::EmptyState,
                    locus(),
                    format!("data object {:?} has an empty state", data_ref.object_name),
                );
            }
        }
    }

    let mut seen = BTreeSet::new();
    for (source, target) in graph.edges() {
        let locus = || Locus::Edge(source.clone(), target.clone());
        for end in [source, target] {
            if !graph.contains(end) {
                report.error(
                    IssueCode::DanglingEdge,
                    locus(),
                    format!("edge endpoint {:?} does not exist", end.as_str()),
                );
            }
        }
        if !seen.insert((source, target)) {
            report.error(
                IssueCode::DuplicateEdge,
                locus(),
                "edge appears more than once".into(),
            );
        }
    }

    let adj = Adjacency::build(graph);
    for i in 0..adj.len() {
        let node = adj.node(i);
        let (indeg, outdeg) = (adj.in_degree(i), adj.out_degree(i));
        match (node.kind, node.connector_role) {
            (NodeKind::Connector, Some(ConnectorRole::Split)) if outdeg < 2 || indeg != 1 => {
                report.error(
                    IssueCode::ConnectorArity,
                    Locus::Node(node.id.clone()),
                    format!("split needs in-degree 1 and out-degree >= 2 (has {indeg} in, {outdeg} out)"),
                );
            }
            (NodeKind::Connector, Some(ConnectorRole::Join)) if indeg < 2 || outdeg != 1 => {
                report.error(
                    IssueCode::ConnectorArity,
                    Locus::Node(node.id.clone()),
                    format!(
                        "join needs in-degree >= 2 and out-degree 1 (has {indeg} in, {outdeg} out)"
                    ),
                );
            }
            _ => {}
        }
        if graph.notation == Notation::Epc && node.kind == NodeKind::Activity {
            for &j in adj.successors(i) {
                let next = adj.node(j);
                if next.kind == NodeKind::Activity {
                    report.warning(
                        IssueCode::AdjacentFunctions,
                        Locus::Edge(node.id.clone(), next.id.clone()),
                        format!(
                            "functions {:?} and {:?} are directly connected without an intervening event",
                            node.label, next.label
                        ),
                    );
                }
            }
        }
    }

    report.errors.sort();
    report.warnings.sort();
    report
}
