//! Event-driven process chains in EPML.
//!
//! Supported: `epml > [directory >]* epc` containing `event`, `function`,
//! `and`, `or`, `xor` and `arc > flow[source, target]`. Data objects and
//! roles use two extension elements placed inside the `epc`:
//!
//! ```xml
//! <dataObject name="Booking" state="confirmed" direction="out" function="f1"/>
//! <role name="the system" function="f2"/>
//! ```
//!
//! Connector split/join roles are inferred from arc degrees.

use std::collections::{BTreeMap, BTreeSet};

use roxmltree::Node as XmlNode;

use super::xml::{child, children, parse_document, required_attr, text_of};
use super::{ModelError, Parsed, Skipped};
use crate::ir::{
    ConnectorRole, ConnectorType, DataDirection, DataObjectRef, Node, NodeId, NodeKind, Notation,
    ProcessGraph,
};

pub fn parse_epml(document: &[u8]) -> Result<Parsed, ModelError> {
    let doc = parse_document(document)?;
    let root = doc.root_element();
    if root.tag_name().name() != "epml" {
        return Err(ModelError::MalformedXml(format!(
            "expected root element <epml>, found <{}>",
            root.tag_name().name()
        )));
    }

    let mut skipped = Skipped::default();
    let mut epcs = Vec::new();
    collect_epcs(root, &mut epcs, &mut skipped);

    let mut graph = ProcessGraph::new("", Notation::Epc);
    let mut warnings = Vec::new();
    if let Some(&epc) = epcs.first() {
        graph.name = epc
            .attribute("name")
            .map(|n| n.trim().to_owned())
            .or_else(|| child(epc, "name").map(text_of))
            .unwrap_or_default();
        read_epc(epc, &mut graph, &mut skipped)?;
    }
    warnings.extend(skipped.into_warnings());
    if epcs.len() > 1 {
        warnings.push(format!(
            "only the first <epc> is read; {} more ignored",
            epcs.len() - 1
        ));
    }
    Ok(Parsed { graph, warnings })
}

fn collect_epcs<'a, 'i>(
    parent: XmlNode<'a, 'i>,
    out: &mut Vec<XmlNode<'a, 'i>>,
    skipped: &mut Skipped,
) {
    for c in children(parent) {
        match c.tag_name().name() {
            "epc" => out.push(c),
            "directory" => collect_epcs(c, out, skipped),
            other => skipped.note(other),
        }
    }
}

fn read_epc(
    epc: XmlNode<'_, '_>,
    graph: &mut ProcessGraph,
    skipped: &mut Skipped,
) -> Result<(), ModelError> {
    let mut arcs = Vec::new();
    let mut attachments = Vec::new();
    let mut arc_ids = BTreeSet::new();

    for element in children(epc) {
        let tag = element.tag_name().name();
        let node = match tag {
            "event" | "function" => {
                let id = required_attr(element, "id")?;
                let label = element_label(element);
                Some(if tag == "event" {
                    Node::event(id, &label)
                } else {
                    Node::activity(id, &label)
                })
            }
            "and" | "or" | "xor" => {
                let ty = match tag {
                    "and" => ConnectorType::And,
                    "or" => ConnectorType::Or,
                    _ => ConnectorType::Xor,
                };
                // Role is fixed once the arcs are known.
                Some(Node::connector(
                    required_attr(element, "id")?,
                    ty,
                    ConnectorRole::Join,
                ))
            }
            "arc" => {
                let id = element.attribute("id").unwrap_or("").to_owned();
                if !id.is_empty() && !arc_ids.insert(id.clone()) {
                    return Err(ModelError::DuplicateId(id));
                }
                let flow = child(element, "flow").ok_or_else(|| {
                    ModelError::InvalidElement(format!("arc {id:?} has no <flow> child"))
                })?;
                arcs.push((
                    id,
                    required_attr(flow, "source")?.to_owned(),
                    required_attr(flow, "target")?.to_owned(),
                ));
                None
            }
            "dataObject" | "role" => {
                attachments.push(element);
                None
            }
            "name" => None,
            other => {
                skipped.note(other);
                None
            }
        };
        if let Some(node) = node {
            let id = node.id.clone();
            if graph.insert_node(node).is_some() {
                return Err(ModelError::DuplicateId(id.to_string()));
            }
        }
    }

    let mut degrees: BTreeMap<NodeId, (usize, usize)> = BTreeMap::new();
    let mut seen_edges = BTreeSet::new();
    for (arc, source, target) in arcs {
        for endpoint in [&source, &target] {
            if !graph.contains(&endpoint.as_str().into()) {
                return Err(ModelError::DanglingArc {
                    arc,
                    endpoint: endpoint.clone(),
                });
            }
        }
        if seen_edges.insert((source.clone(), target.clone())) {
            degrees.entry(source.as_str().into()).or_default().1 += 1;
            degrees.entry(target.as_str().into()).or_default().0 += 1;
        }
        graph.add_edge(source, target);
    }

    let connectors: Vec<NodeId> = graph
        .nodes()
        .filter(|n| n.kind == NodeKind::Connector)
        .map(|n| n.id.clone())
        .collect();
    for id in connectors {
        let (indeg, outdeg) = degrees.get(&id).copied().unwrap_or_default();
        if indeg >= 2 && outdeg >= 2 {
            return Err(ModelError::ConnectorDegree(id.to_string()));
        }
        let role = if outdeg >= 2 {
            ConnectorRole::Split
        } else {
            ConnectorRole::Join
        };
        if let Some(node) = graph.node_mut(&id) {
            node.connector_role = Some(role);
        }
    }

    for element in attachments {
        attach(element, graph)?;
    }
    Ok(())
}

fn attach(element: XmlNode<'_, '_>, graph: &mut ProcessGraph) -> Result<(), ModelError> {
    let tag = element.tag_name().name();
    let name = required_attr(element, "name")?.trim();
    let parent: NodeId = required_attr(element, "function")?.into();
    if name.is_empty() {
        return Err(ModelError::InvalidElement(format!(
            "<{tag}> for {parent} has an empty name"
        )));
    }
    let activity = graph
        .node_mut(&parent)
        .filter(|n| n.kind == NodeKind::Activity)
        .ok_or_else(|| {
            ModelError::InvalidElement(format!(
                "<{tag} name={name:?}> refers to unknown function {parent:?}"
            ))
        })?;
    if tag == "role" {
        activity.roles.push(name.to_owned());
        return Ok(());
    }
    let direction = match element.attribute("direction").unwrap_or("out") {
        "in" => DataDirection::Input,
        "out" => DataDirection::Output,
        other => {
            return Err(ModelError::InvalidElement(format!(
                "dataObject {name:?} has direction {other:?}; expected \"in\" or \"out\""
            )))
        }
    };
    let state = element
        .attribute("state")
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned);
    activity.data_refs.push(DataObjectRef {
        object_name: name.to_owned(),
        state,
        direction,
    });
    Ok(())
}

fn element_label(element: XmlNode<'_, '_>) -> String {
    child(element, "name")
        .map(text_of)
        .or_else(|| element.attribute("name").map(|n| n.trim().to_owned()))
        .unwrap_or_default()
}
