//! The native JSON graph format.
//!
//! ```json
//! {"process_graph": {"version": "1", "name": "...", "notation": "EPC",
//!   "nodes": [{"id": "f1", "kind": "Activity", "label": "...",
//!              "data_refs": [{"object_name": "Booking", "state": "confirmed", "direction": "Output"}],
//!              "roles": ["clerk"]},
//!             {"id": "x1", "kind": "Connector", "label": "",
//!              "connector_type": "XOR", "connector_role": "Split", "synthetic": true}],
//!   "edges": [["f1", "x1"]]}}
//! ```
//!
//! Export sorts keys, nodes by id and edges by (source, target). Optional node
//! members are written only when set.

use serde::de::DeserializeOwned;
use serde_json::{json, Map, Value};

use super::ModelError;
use crate::ir::{DataObjectRef, Node, NodeId, NodeKind, Notation, ProcessGraph};

pub const GRAPH_SCHEMA_VERSION: &str = "1";

pub fn export_native(graph: &ProcessGraph) -> Vec<u8> {
    let nodes: Vec<Value> = graph.nodes().map(node_value).collect();
    let edges: Vec<Value> = graph
        .sorted_edges()
        .into_iter()
        .map(|(s, t)| json!([s, t]))
        .collect();
    let document = json!({
        "process_graph": {
            "version": GRAPH_SCHEMA_VERSION,
            "name": graph.name,
            "notation": graph.notation,
            "nodes": nodes,
            "edges": edges,
        }
    });
    serde_json::to_vec(&document).expect("JSON values serialize")
}

fn node_value(node: &Node) -> Value {
    let mut object = Map::new();
    object.insert("id".into(), json!(node.id));
    object.insert("kind".into(), json!(node.kind));
    object.insert("label".into(), json!(node.label));
    if let Some(ty) = node.connector_type {
        object.insert("connector_type".into(), json!(ty));
    }
    if let Some(role) = node.connector_role {
        object.insert("connector_role".into(), json!(role));
    }
    if !node.data_refs.is_empty() {
        object.insert("data_refs".into(), json!(node.data_refs));
    }
    if !node.roles.is_empty() {
        object.insert("roles".into(), json!(node.roles));
    }
    if node.synthetic {
        object.insert("synthetic".into(), json!(true));
    }
    Value::Object(object)
}

/// Reads a native document as-is; no normalization is applied.
pub fn parse_native(document: &[u8]) -> Result<ProcessGraph, ModelError> {
    let root: Value =
        serde_json::from_slice(document).map_err(|e| ModelError::MalformedJson(e.to_string()))?;
    let top = Cursor::root(&root).object()?;
    let body = top.field("process_graph")?.object()?;

    let version: String = body.field("version")?.decode()?;
    if version != GRAPH_SCHEMA_VERSION {
        return Err(body.field("version")?.violation(format!(
            "unsupported version {version:?}, expected {GRAPH_SCHEMA_VERSION:?}"
        )));
    }
    let name: String = body.field("name")?.decode()?;
    let notation: Notation = body.field("notation")?.decode()?;
    let mut graph = ProcessGraph::new(name, notation);

    for entry in body.field("nodes")?.array()? {
        let node = entry.object()?;
        let id: String = node.field("id")?.decode()?;
        let kind: NodeKind = node.field("kind")?.decode()?;
        let parsed = Node {
            id: NodeId::new(id.clone()),
            kind,
            label: node.field("label")?.decode()?,
            connector_type: node.optional("connector_type")?,
            connector_role: node.optional("connector_role")?,
            data_refs: node
                .optional::<Vec<DataObjectRef>>("data_refs")?
                .unwrap_or_default(),
            roles: node.optional::<Vec<String>>("roles")?.unwrap_or_default(),
            synthetic: node.optional("synthetic")?.unwrap_or(false),
        };
        if graph.insert_node(parsed).is_some() {
            return Err(node
                .field("id")?
                .violation(format!("duplicate node id {id:?}")));
        }
    }

    for entry in body.field("edges")?.array()? {
        let (source, target): (String, String) = entry.decode()?;
        graph.add_edge(source, target);
    }
    Ok(graph)
}

/// A JSON value together with its path from the document root.
struct Cursor<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Cursor<'a> {
    fn root(value: &'a Value) -> Cursor<'a> {
        Cursor {
            value,
            path: "$".into(),
        }
    }

    fn violation(&self, message: String) -> ModelError {
        ModelError::SchemaViolation {
            path: self.path.clone(),
            message,
        }
    }

    fn object(self) -> Result<Object<'a>, ModelError> {
        match self.value {
            Value::Object(map) => Ok(Object {
                map,
                path: self.path,
            }),
            _ => Err(self.violation("expected an object".into())),
        }
    }

    fn array(self) -> Result<Vec<Cursor<'a>>, ModelError> {
        match self.value {
            Value::Array(items) => Ok(items
                .iter()
                .enumerate()
                .map(|(i, value)| Cursor {
                    value,
                    path: format!("{}[{i}]", self.path),
                })
                .collect()),
            _ => Err(self.violation("expected an array".into())),
        }
    }

    fn decode<T: DeserializeOwned>(&self) -> Result<T, ModelError> {
        T::deserialize(self.value).map_err(|e| self.violation(e.to_string()))
    }
}

struct Object<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Object<'a> {
    fn field(&self, key: &str) -> Result<Cursor<'a>, ModelError> {
        let path = format!("{}.{key}", self.path);
        match self.map.get(key) {
            Some(value) => Ok(Cursor { value, path }),
            None => Err(ModelError::SchemaViolation {
                path,
                message: format!("missing required key {key:?}"),
            }),
        }
    }

    fn optional<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>, ModelError> {
        match self.map.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(_) => self.field(key)?.decode().map(Some),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{ConnectorRole, ConnectorType};

    #[test]
    fn empty_graph_export() {
        let g = ProcessGraph::new("", Notation::Native);
        assert_eq!(
            String::from_utf8(export_native(&g)).unwrap(),
            r#"{"process_graph":{"edges":[],"name":"","nodes":[],"notation":"Native","version":"1"}}"#
        );
    }

    #[test]
    fn round_trip_keeps_everything() {
        let mut g = ProcessGraph::new("m", Notation::Epc);
        g.insert_node(
            Node::activity("f", "Confirm")
                .with_data(DataObjectRef::output("Booking", Some("confirmed")))
                .with_data(DataObjectRef::input("Request", None))
                .with_role("clerk"),
        );
        let mut c = Node::connector("c", ConnectorType::Or, ConnectorRole::Split);
        c.synthetic = true;
        g.insert_node(c);
        g.add_edge("f", "c");
        g.add_edge("c", "ghost");
        let bytes = export_native(&g);
        let back = parse_native(&bytes).unwrap();
        assert_eq!(back, g);
        assert_eq!(export_native(&back), bytes);
    }

    #[test]
    fn schema_paths() {
        let missing = br#"{"process_graph":{"version":"1","name":"","notation":"EPC","edges":[]}}"#;
        match parse_native(missing).unwrap_err() {
            ModelError::SchemaViolation { path, .. } => assert_eq!(path, "$.process_graph.nodes"),
            other => panic!("unexpected {other:?}"),
        }
        let bad_kind = br#"{"process_graph":{"version":"1","name":"","notation":"EPC","edges":[],
            "nodes":[{"id":"a","kind":"Activity","label":""},{"id":"b","kind":"Gateway","label":""}]}}"#;
        match parse_native(bad_kind).unwrap_err() {
            ModelError::SchemaViolation { path, .. } => {
                assert_eq!(path, "$.process_graph.nodes[1].kind")
            }
            other => panic!("unexpected {other:?}"),
        }
        let dup = br#"{"process_graph":{"version":"1","name":"","notation":"EPC","edges":[],
            "nodes":[{"id":"a","kind":"Event","label":""},{"id":"a","kind":"Event","label":""}]}}"#;
        assert_eq!(parse_native(dup).unwrap_err().code(), "SCHEMA_VIOLATION");
        let bad_edge = br#"{"process_graph":{"version":"1","name":"","notation":"EPC","nodes":[],"edges":[["a"]]}}"#;
        match parse_native(bad_edge).unwrap_err() {
            ModelError::SchemaViolation { path, .. } => {
                assert_eq!(path, "$.process_graph.edges[0]")
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_native(b"{").unwrap_err().code(), "MALFORMED_JSON");
    }
}
