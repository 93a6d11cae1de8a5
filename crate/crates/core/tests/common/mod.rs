//! Random model generators and naive oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use bp_rules::ir::{
    ConnectorRole, ConnectorType, DataDirection, DataObjectRef, Node, NodeKind, Notation,
    ProcessGraph,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const OBJECTS: [&str; 3] = ["Booking", "Invoice", "Parcel"];
pub const STATES: [&str; 3] = ["confirmed", "paid", "shipped"];
pub const ROLES: [&str; 3] = ["the clerk", "the manager", "the system"];

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn golden(name: &str) -> String {
    let path = fixture("golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn id(i: usize) -> String {
    format!("n{i:02}")
}

/// Random edges among `n` nodes; forward-only when `acyclic`.
fn random_edges(rng: &mut StdRng, graph: &mut ProcessGraph, n: usize, density: f64, acyclic: bool) {
    for i in 0..n {
        for j in 0..n {
            let allowed = if acyclic { i < j } else { i != j };
            if allowed && rng.gen_bool(density) {
                graph.add_edge(id(i), id(j));
            }
        }
    }
}

/// EPC-style graph of activities and events with stateful outputs, for the
/// lifecycle analyses. Events sometimes read `"<object> is <state>"`.
pub fn random_lifecycle_graph(rng: &mut StdRng, max_nodes: usize) -> ProcessGraph {
    let n = rng.gen_range(1..=max_nodes);
    let objects = rng.gen_range(1..=OBJECTS.len());
    let states = rng.gen_range(1..=STATES.len());
    let mut graph = ProcessGraph::new("random", Notation::Epc);
    for i in 0..n {
        if rng.gen_bool(0.6) {
            let mut node = Node::activity(id(i), &format!("activity {i}"));
            for _ in 0..rng.gen_range(0..=2) {
                let object = OBJECTS[rng.gen_range(0..objects)];
                let state = STATES[rng.gen_range(0..states)];
                node = node.with_data(DataObjectRef::output(object, Some(state)));
            }
            if rng.gen_bool(0.1) {
                node = node.with_data(DataObjectRef::input(OBJECTS[0], Some(STATES[0])));
            }
            graph.insert_node(node);
        } else if rng.gen_bool(0.3) {
            let object = OBJECTS[rng.gen_range(0..objects)];
            let state = STATES[rng.gen_range(0..states)];
            graph.insert_node(Node::event(id(i), &format!("{object} is {state}")));
        } else {
            graph.insert_node(Node::event(id(i), &format!("event {i}")));
        }
    }
    let acyclic = rng.gen_bool(0.5);
    random_edges(rng, &mut graph, n, 0.25, acyclic);
    graph
}

/// Petri net of places and transitions with arbitrary arcs. Some places are
/// unlabeled, some transitions carry roles.
pub fn random_net(rng: &mut StdRng, max_nodes: usize) -> ProcessGraph {
    let n = rng.gen_range(1..=max_nodes);
    let mut graph = ProcessGraph::new("net", Notation::PetriNet);
    for i in 0..n {
        if rng.gen_bool(0.5) {
            let label = if rng.gen_bool(0.8) {
                format!("place {i}")
            } else {
                String::new()
            };
            graph.insert_node(Node::place(id(i), &label));
        } else {
            let mut node = Node::activity(id(i), &format!("Task {i}"));
            let mut roles: Vec<&str> = ROLES.to_vec();
            for _ in 0..rng.gen_range(0..=2) {
                let pick = rng.gen_range(0..roles.len());
                node = node.with_role(roles.remove(pick));
            }
            graph.insert_node(node);
        }
    }
    let acyclic = rng.gen_bool(0.5);
    random_edges(rng, &mut graph, n, 0.22, acyclic);
    graph
}

/// Arbitrary graph with every node kind, for serialization round trips.
pub fn random_any_graph(rng: &mut StdRng, max_nodes: usize) -> ProcessGraph {
    let notation = [Notation::PetriNet, Notation::Epc, Notation::Native][rng.gen_range(0..3)];
    let n = rng.gen_range(0..=max_nodes);
    let mut graph = ProcessGraph::new(format!("model \"{}\" ü", rng.gen::<u16>()), notation);
    for i in 0..n {
        let label = [
            "",
            "Check order",
            "Order is paid",
            "Ünïcode ✓",
            "a \"quoted\" <label>",
        ][rng.gen_range(0..5)];
        let mut node = match rng.gen_range(0..6) {
            0 => Node::activity(id(i), label),
            1 => Node::event(id(i), label),
            2 => Node::place(id(i), label),
            3 => {
                let ty = [ConnectorType::And, ConnectorType::Xor, ConnectorType::Or]
                    [rng.gen_range(0..3)];
                let role = if rng.gen_bool(0.5) {
                    ConnectorRole::Split
                } else {
                    ConnectorRole::Join
                };
                Node::connector(id(i), ty, role)
            }
            4 => Node {
                kind: NodeKind::Start,
                ..Node::event(id(i), label)
            },
            _ => Node {
                kind: NodeKind::End,
                ..Node::event(id(i), label)
            },
        };
        if rng.gen_bool(0.3) {
            node.synthetic = true;
        }
        if node.kind == NodeKind::Activity {
            for _ in 0..rng.gen_range(0..=2) {
                let state = rng.gen_bool(0.5).then(|| STATES[rng.gen_range(0..3)]);
                let mut data = DataObjectRef::output(OBJECTS[rng.gen_range(0..3)], state);
                if rng.gen_bool(0.5) {
                    data.direction = DataDirection::Input;
                }
                node = node.with_data(data);
            }
            if rng.gen_bool(0.3) {
                node = node.with_role(ROLES[rng.gen_range(0..3)]);
            }
        }
        graph.insert_node(node);
    }
    random_edges(rng, &mut graph, n, 0.2, false);
    if n > 0 && rng.gen_bool(0.2) {
        graph.add_edge(id(0), "ghost");
    }
    graph
}

/// Successor lists straight from the edge list, deduplicated and sorted.
pub fn successor_map(graph: &ProcessGraph) -> BTreeMap<String, Vec<String>> {
    let mut map: BTreeMap<String, BTreeSet<String>> = graph
        .nodes()
        .map(|n| (n.id.to_string(), BTreeSet::new()))
        .collect();
    for (s, t) in graph.edges() {
        if graph.contains(s) && graph.contains(t) {
            map.get_mut(s.as_str()).unwrap().insert(t.to_string());
        }
    }
    map.into_iter()
        .map(|(k, v)| (k, v.into_iter().collect()))
        .collect()
}

/// Expected pattern-1 counts: per XOR split, the number of guarded branches
/// and of branches reaching an activity before the next connector.
pub fn pattern1_expected(graph: &ProcessGraph) -> (usize, usize) {
    let succ = successor_map(graph);
    let node = |id: &str| graph.node(&id.into()).unwrap();
    let mut guarded = 0;
    let mut with_activity = 0;
    for split in graph.nodes() {
        if !split.is_connector(ConnectorType::Xor, ConnectorRole::Split) {
            continue;
        }
        for head in &succ[split.id.as_str()] {
            // The branch: a run of non-connector nodes, each the only successor
            // of the previous one, without repeats.
            let mut branch: Vec<&str> = Vec::new();
            let mut current = head.as_str();
            while node(current).kind != NodeKind::Connector && !branch.contains(&current) {
                branch.push(current);
                match succ[current].as_slice() {
                    [only] => current = only,
                    _ => break,
                }
            }
            let first_activity = branch
                .iter()
                .position(|n| node(n).kind == NodeKind::Activity);
            let before = &branch[..first_activity.unwrap_or(branch.len())];
            let has_guard = before.iter().any(|n| {
                let n = node(n);
                matches!(n.kind, NodeKind::Event | NodeKind::Place) && !n.label.is_empty()
            });
            guarded += usize::from(has_guard);
            with_activity += usize::from(first_activity.is_some());
        }
    }
    (guarded, with_activity)
}

/// Synthetic EPC of `segments` repeated blocks, each with an XOR decision, an
/// AND fork, data states and roles. Every block has 21 nodes.
pub fn large_epc(segments: usize) -> ProcessGraph {
    let mut g = ProcessGraph::new("large", Notation::Epc);
    let mut previous: Option<String> = None;
    for s in 0..segments {
        let p = |name: &str| format!("s{s:03}_{name}");
        let object = format!("Order {}", s % 7);
        let nodes = vec![
            Node::event(p("e_in").as_str(), &format!("Segment {s} started")),
            Node::activity(p("f_register").as_str(), "Register order")
                .with_data(DataObjectRef::output(object.clone(), Some("registered")))
                .with_role("the clerk"),
            Node::event(
                p("e_registered").as_str(),
                &format!("{object} is registered"),
            ),
            Node::activity(p("f_check").as_str(), "Check order"),
            Node::connector(
                p("x_split").as_str(),
                ConnectorType::Xor,
                ConnectorRole::Split,
            ),
            Node::event(p("e_small").as_str(), "Amount is below the limit"),
            Node::event(p("e_fast").as_str(), "Fast track"),
            Node::event(p("e_big").as_str(), "Amount is above the limit"),
            Node::activity(p("f_review").as_str(), "Review order").with_role("the manager"),
            Node::connector(
                p("x_join").as_str(),
                ConnectorType::Xor,
                ConnectorRole::Join,
            ),
            Node::activity(p("f_approve").as_str(), "Approve order")
                .with_data(DataObjectRef::output(object.clone(), Some("approved"))),
            Node::event(p("e_approved").as_str(), &format!("{object} is approved")),
            Node::connector(
                p("a_split").as_str(),
                ConnectorType::And,
                ConnectorRole::Split,
            ),
            Node::activity(p("f_bill").as_str(), "Send invoice")
                .with_data(DataObjectRef::output("Invoice", None))
                .with_role("the system"),
            Node::activity(p("f_ship").as_str(), "Ship goods")
                .with_data(DataObjectRef::output(object.clone(), Some("shipped"))),
            Node::connector(
                p("a_join").as_str(),
                ConnectorType::And,
                ConnectorRole::Join,
            ),
            Node::event(p("e_done").as_str(), "Order handled"),
            Node::activity(p("f_archive").as_str(), "Archive order")
                .with_data(DataObjectRef::output(object.clone(), Some("archived"))),
            Node::event(p("e_archived").as_str(), "Archived"),
            Node::activity(p("f_notify").as_str(), "Notify customer").with_role("the system"),
            Node::event(p("e_out").as_str(), "Customer notified"),
        ];
        for node in nodes {
            g.insert_node(node);
        }
        for (a, b) in [
            ("e_in", "f_register"),
            ("f_register", "e_registered"),
            ("e_registered", "f_check"),
            ("f_check", "x_split"),
            ("x_split", "e_small"),
            ("e_small", "e_fast"),
            ("e_fast", "x_join"),
            ("x_split", "e_big"),
            ("e_big", "f_review"),
            ("f_review", "x_join"),
            ("x_join", "f_approve"),
            ("f_approve", "e_approved"),
            ("e_approved", "a_split"),
            ("a_split", "f_bill"),
            ("a_split", "f_ship"),
            ("f_bill", "a_join"),
            ("f_ship", "a_join"),
            ("a_join", "e_done"),
            ("e_done", "f_archive"),
            ("f_archive", "e_archived"),
            ("e_archived", "f_notify"),
            ("f_notify", "e_out"),
        ] {
            g.add_edge(p(a), p(b));
        }
        if let Some(prev) = previous {
            g.add_edge(prev, p("e_in"));
        }
        previous = Some(p("e_out"));
    }
    g
}
