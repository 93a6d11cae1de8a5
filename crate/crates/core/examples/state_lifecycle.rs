//! Derive the state order of data objects and cross-check it against the
//! exhaustive path oracle.
//!
//! The oracle enumerates simple paths and refuses graphs above 16 nodes, so
//! the 17-node hotel model is only checked by the fast analysis; a small
//! model with a re-opening loop is checked by both.

use std::error::Error;

use bp_rules::io::parse_auto;
use bp_rules::ir::{DataObjectRef, Node, Notation, ProcessGraph};
use bp_rules::lifecycle::precedence_pairs;
use bp_rules::{brute_force_precedence, collect_lifecycles, detect_state_order_rules};

fn report(graph: &ProcessGraph) -> Result<(), Box<dyn Error>> {
    println!("== {} ({} nodes)", graph.name, graph.node_count());
    for lifecycle in collect_lifecycles(graph) {
        println!("{}", lifecycle.object_name);
        for state in lifecycle.states() {
            let producers: Vec<_> = lifecycle
                .producers_of(state)?
                .iter()
                .map(|id| id.as_str())
                .collect();
            println!("  {state}: produced by {}", producers.join(", "));
        }
        let pairs = precedence_pairs(graph, &lifecycle);
        for pair in &pairs {
            println!(
                "  {} before {}{}",
                pair.earlier_state,
                pair.later_state,
                if pair.irreversible {
                    ", never back"
                } else {
                    ", can return"
                }
            );
        }
        match brute_force_precedence(graph, &lifecycle) {
            Ok(oracle) => println!("  oracle agrees: {}", oracle == pairs),
            Err(e) => println!("  oracle skipped: {e}"),
        }
    }
    for rule in detect_state_order_rules(graph) {
        println!("  {}", rule.render_text()?);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let bytes = std::fs::read(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/hotel_booking.epml"
    ))?;
    report(&parse_auto(&bytes)?.graph)?;

    // A claim can be re-opened after it was closed.
    let mut claims = ProcessGraph::new("claims", Notation::Epc);
    claims.insert_node(Node::event("e_filed", "Claim filed"));
    claims.insert_node(
        Node::activity("f_open", "Open claim")
            .with_data(DataObjectRef::output("Claim", Some("open"))),
    );
    claims.insert_node(
        Node::activity("f_close", "Close claim")
            .with_data(DataObjectRef::output("Claim", Some("closed"))),
    );
    claims.insert_node(Node::event("e_appeal", "Appeal lodged"));
    for (s, t) in [
        ("e_filed", "f_open"),
        ("f_open", "f_close"),
        ("f_close", "e_appeal"),
        ("e_appeal", "f_open"),
    ] {
        claims.add_edge(s, t);
    }
    report(&claims)
}
