//! Basic place/transition nets in PNML.
//!
//! Supported: `pnml > net > [page >]* {place, transition, arc}` with
//! `name > text` labels. Everything else is skipped with a warning.

use std::collections::BTreeSet;

use roxmltree::Node as XmlNode;

use super::xml::{child, children, parse_document, required_attr, text_of};
use super::{ModelError, Parsed, Skipped};
use crate::ir::{normalize_petri, Node, Notation, ProcessGraph};

/// Parses a PNML document and normalizes its routing.
pub fn parse_pnml(document: &[u8]) -> Result<Parsed, ModelError> {
    let doc = parse_document(document)?;
    let root = doc.root_element();
    if root.tag_name().name() != "pnml" {
        return Err(ModelError::MalformedXml(format!(
            "expected root element <pnml>, found <{}>",
            root.tag_name().name()
        )));
    }

    let mut skipped = Skipped::default();
    let mut nets = children(root).filter(|c| {
        let is_net = c.tag_name().name() == "net";
        if !is_net {
            skipped.note(c.tag_name().name());
        }
        is_net
    });
    let net = nets.next();
    let extra_nets = nets.count();

    let mut reader = NetReader {
        graph: ProcessGraph::new("", Notation::PetriNet),
        arcs: Vec::new(),
        skipped,
    };
    if let Some(net) = net {
        reader.graph.name =
            label(net).unwrap_or_else(|| net.attribute("id").unwrap_or("").to_owned());
        reader.read_container(net)?;
    }

    let NetReader {
        mut graph,
        arcs,
        skipped,
    } = reader;
    for (arc, source, target) in arcs {
        for endpoint in [&source, &target] {
            if !graph.contains(&endpoint.as_str().into()) {
                return Err(ModelError::DanglingArc {
                    arc: arc.clone(),
                    endpoint: endpoint.clone(),
                });
            }
        }
        graph.add_edge(source, target);
    }

    let mut warnings = skipped.into_warnings();
    if extra_nets > 0 {
        warnings.push(format!(
            "only the first <net> is read; {extra_nets} more ignored"
        ));
    }
    let graph = normalize_petri(&graph).expect("graph is a Petri net");
    Ok(Parsed { graph, warnings })
}

struct NetReader {
    graph: ProcessGraph,
    arcs: Vec<(String, String, String)>,
    skipped: Skipped,
}

impl NetReader {
    fn read_container(&mut self, container: XmlNode<'_, '_>) -> Result<(), ModelError> {
        let mut seen_arcs = BTreeSet::new();
        for element in children(container) {
            match element.tag_name().name() {
                "name" => {}
                "page" => self.read_container(element)?,
                kind @ ("place" | "transition") => {
                    let id = required_attr(element, "id")?;
                    let text = label(element).unwrap_or_default();
                    let node = if kind == "place" {
                        Node::place(id, &text)
                    } else {
                        Node::activity(id, &text)
                    };
                    if self.graph.insert_node(node).is_some() {
                        return Err(ModelError::DuplicateId(id.to_owned()));
                    }
                    self.skip_unknown_children(element);
                }
                "arc" => {
                    let id = element.attribute("id").unwrap_or("").to_owned();
                    if !id.is_empty() && !seen_arcs.insert(id.clone()) {
                        return Err(ModelError::DuplicateId(id));
                    }
                    let source = required_attr(element, "source")?.to_owned();
                    let target = required_attr(element, "target")?.to_owned();
                    self.arcs.push((id, source, target));
                    self.skip_unknown_children(element);
                }
                other => self.skipped.note(other),
            }
        }
        Ok(())
    }

    fn skip_unknown_children(&mut self, element: XmlNode<'_, '_>) {
        for c in children(element) {
            if c.tag_name().name() != "name" {
                self.skipped.note(c.tag_name().name());
            }
        }
    }
}

fn label(element: XmlNode<'_, '_>) -> Option<String> {
    let name = child(element, "name")?;
    Some(
        child(name, "text")
            .map(text_of)
            .unwrap_or_else(|| text_of(name)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{ConnectorRole, ConnectorType, NodeKind};

    const MINIMAL: &str = r#"<pnml><net id="n1">
        <place id="p1"><name><text> Ready </text></name></place>
        <transition id="t1"><name><text>Go</text></name></transition>
        <arc id="a1" source="p1" target="t1"/>
    </net></pnml>"#;

    #[test]
    fn minimal_net() {
        let parsed = parse_pnml(MINIMAL.as_bytes()).unwrap();
        let g = parsed.graph;
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.node(&"p1".into()).unwrap().label, "Ready");
        assert_eq!(g.node(&"t1".into()).unwrap().kind, NodeKind::Activity);
        assert!(g.nodes().all(|n| n.kind != NodeKind::Connector));
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn dangling_arc() {
        let doc = r#"<pnml><net id="n"><place id="p"/><arc id="a" source="missing" target="p"/></net></pnml>"#;
        assert_eq!(
            parse_pnml(doc.as_bytes()).unwrap_err().code(),
            "DANGLING_ARC"
        );
    }

    #[test]
    fn duplicate_id() {
        let doc = r#"<pnml><net id="n"><place id="p"/><transition id="p"/></net></pnml>"#;
        assert_eq!(
            parse_pnml(doc.as_bytes()).unwrap_err().code(),
            "DUPLICATE_ID"
        );
    }

    #[test]
    fn malformed() {
        assert_eq!(
            parse_pnml(b"<pnml><net>").unwrap_err().code(),
            "MALFORMED_XML"
        );
    }

    #[test]
    fn pages_are_flattened_and_unknowns_reported() {
        let doc = r#"<pnml xmlns="http://www.pnml.org/version-2009/grammar/pnml">
          <net id="n" type="ptnet"><name><text>Net</text></name>
            <page id="pg">
              <place id="p"><initialMarking><text>1</text></initialMarking></place>
              <transition id="t1"/><transition id="t2"/>
              <arc id="a1" source="p" target="t1"/><arc id="a2" source="p" target="t2"/>
              <toolspecific tool="x" version="1"/>
            </page>
          </net></pnml>"#;
        let parsed = parse_pnml(doc.as_bytes()).unwrap();
        assert_eq!(parsed.graph.name, "Net");
        let split = parsed.graph.node(&"p#split".into()).unwrap();
        assert!(split.is_connector(ConnectorType::Xor, ConnectorRole::Split));
        assert_eq!(
            parsed.warnings,
            [
                "skipped unsupported element <initialMarking>",
                "skipped unsupported element <toolspecific>"
            ]
        );
    }
}
