//! Make the implicit routing of a Petri net explicit.
//!
//! A place with two outgoing arcs is an exclusive choice; a transition with
//! two outgoing arcs forks. Normalization inserts the matching connectors.

use bp_rules::ir::{normalize_petri, Node, NodeKind, Notation, ProcessGraph};

fn main() {
    let mut net = ProcessGraph::new("fork and choice", Notation::PetriNet);
    net.insert_node(Node::place("p_in", "Order received"));
    net.insert_node(Node::activity("t_split", "Register order"));
    net.insert_node(Node::place("p_stock", "Awaiting stock check"));
    net.insert_node(Node::place("p_credit", "Awaiting credit check"));
    net.insert_node(Node::activity("t_ok", "Accept credit"));
    net.insert_node(Node::activity("t_reject", "Reject credit"));
    for (s, t) in [
        ("p_in", "t_split"),
        ("t_split", "p_stock"),
        ("t_split", "p_credit"),
        ("p_credit", "t_ok"),
        ("p_credit", "t_reject"),
    ] {
        net.add_edge(s, t);
    }

    let normalized = normalize_petri(&net).expect("a Petri net");
    for node in normalized.nodes().filter(|n| n.kind == NodeKind::Connector) {
        println!(
            "{}: {:?} {:?}",
            node.id,
            node.connector_type.unwrap(),
            node.connector_role.unwrap()
        );
    }
    let mut edges: Vec<_> = normalized.edges().to_vec();
    edges.sort();
    for (s, t) in edges {
        println!("  {s} -> {t}");
    }

    let again = normalize_petri(&normalized).expect("still a Petri net");
    println!("idempotent: {}", again == normalized);
}
