use super::branch::{nearest_before, Branch};
use crate::ir::{Adjacency, ConnectorRole, ConnectorType, NodeKind, ProcessGraph};
use crate::rules::BusinessRule;

pub const UNGUARDED: &str = "(unguarded)";

/// Pattern 1: rules behind programmed decisions at XOR splits.
///
/// Every guarded branch yields a derivation (`If <guard> Then <outcome is
/// produced>`); every branch reaching an activity before the next connector
/// yields an action assertion for that activity.
pub fn detect_decision_rules(graph: &ProcessGraph) -> Vec<BusinessRule> {
    detect_decision_rules_noted(graph, &mut Vec::new())
}

pub(crate) fn detect_decision_rules_noted(
    graph: &ProcessGraph,
    notes: &mut Vec<String>,
) -> Vec<BusinessRule> {
    let adj = Adjacency::build(graph);
    let mut rules = Vec::new();
    let mut any_split = false;

    for split in 0..adj.len() {
        if !adj
            .node(split)
            .is_connector(ConnectorType::Xor, ConnectorRole::Split)
        {
            continue;
        }
        any_split = true;
        let decision = nearest_before(
            &adj,
            split,
            "activity",
            |n| n.kind == NodeKind::Activity,
            notes,
        );
        let on_event = decision
            .and_then(|d| nearest_before(&adj, d, "event", |n| n.is_condition(), notes))
            .map(|e| adj.node(e).label.as_str());

        let mut anchor = vec![adj.id(split).clone()];
        anchor.extend(decision.map(|d| adj.id(d).clone()));

        let (mut derivations, mut actions) = (0, 0);
        for &head in adj.successors(split) {
            let branch = Branch::scan(&adj, split, head);
            if let Some(guard) = branch.guard {
                let outcome = branch.outcome.unwrap_or(guard);
                let mut provenance = anchor.clone();
                provenance.push(adj.id(guard).clone());
                if outcome != guard {
                    provenance.push(adj.id(outcome).clone());
                }
                rules.push(BusinessRule::derivation(
                    &adj.node(guard).label,
                    &adj.node(outcome).label,
                    provenance,
                ));
                derivations += 1;
            }
            if let Some(activity) = branch.activity {
                let mut provenance = anchor.clone();
                provenance.extend(branch.guard.map(|g| adj.id(g).clone()));
                provenance.push(adj.id(activity).clone());
                let condition = branch
                    .guard
                    .map(|g| adj.node(g).label.as_str())
                    .unwrap_or(UNGUARDED);
                rules.push(BusinessRule::action_assertion(
                    on_event,
                    condition,
                    adj.node(activity).display_name(),
                    provenance,
                ));
                actions += 1;
            }
        }
        if derivations > 0 && actions > 0 {
            notes.push(format!(
                "pattern 1: decision point {} yields both derivation and action rules",
                adj.id(split)
            ));
        }
    }

    if any_split {
        notes.push(
            "pattern 1: every XOR split is treated as a programmed decision; manual decisions are not distinguished"
                .to_owned(),
        );
    }
    rules
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::NodeId;
    use crate::ir::{Node, Notation};
    use crate::rules::RuleForm;

    fn ids(rule: &BusinessRule) -> Vec<&str> {
        rule.provenance.iter().map(NodeId::as_str).collect()
    }

    /// Cancellation check with a two-way decision. Each branch carries the
    /// condition event followed by the produced-status event.
    fn cancellation(with_actions: bool) -> ProcessGraph {
        let mut g = ProcessGraph::new("cancellation", Notation::Epc);
        g.insert_node(Node::event("e0", "Cancellation request received"));
        g.insert_node(Node::activity("f_check", "Check Cancellation request"));
        g.insert_node(Node::connector(
            "x1",
            ConnectorType::Xor,
            ConnectorRole::Split,
        ));
        g.insert_node(Node::event(
            "e_less",
            "Received Cancel request date-time is less than 24 hours to check-in date",
        ));
        g.insert_node(Node::event("e_late", "Late cancellation"));
        g.insert_node(Node::event(
            "e_more",
            "Received Cancel request date-time is more than 24 hours to check-in date",
        ));
        g.insert_node(Node::event("e_not_late", "Not Late cancellation"));
        for (s, t) in [
            ("e0", "f_check"),
            ("f_check", "x1"),
            ("x1", "e_less"),
            ("e_less", "e_late"),
            ("x1", "e_more"),
            ("e_more", "e_not_late"),
        ] {
            g.add_edge(s, t);
        }
        if with_actions {
            g.insert_node(Node::activity("f_charge", "Charge first night fee"));
            g.add_edge("e_late", "f_charge");
        }
        g
    }

    #[test]
    fn cancellation_derivations() {
        let rules = detect_decision_rules(&cancellation(false));
        let text: Vec<String> = rules.iter().map(|r| r.render_text().unwrap()).collect();
        assert_eq!(
            text,
            [
                "If <Received Cancel request date-time is less than 24 hours to check-in date> Then <Late cancellation is produced>",
                "If <Received Cancel request date-time is more than 24 hours to check-in date> Then <Not Late cancellation is produced>",
            ]
        );
        assert_eq!(ids(&rules[0]), ["x1", "f_check", "e_less", "e_late"]);
    }

    #[test]
    fn action_sub_case() {
        let mut notes = Vec::new();
        let rules = detect_decision_rules_noted(&cancellation(true), &mut notes);
        let actions: Vec<&BusinessRule> = rules
            .iter()
            .filter(|r| r.form == RuleForm::ActionAssertion)
            .collect();
        assert_eq!(actions.len(), 1);
        assert_eq!(
            actions[0].render_text().unwrap(),
            "On <Cancellation request received> If <Received Cancel request date-time is less than 24 hours to check-in date> Then Do <Charge first night fee>"
        );
        assert!(notes
            .iter()
            .any(|n| n.contains("both derivation and action")));
        assert!(notes.iter().any(|n| n.contains("programmed decision")));
    }

    #[test]
    fn unguarded_branch() {
        let mut g = ProcessGraph::new("", Notation::Epc);
        g.insert_node(Node::activity("a", "Decide"));
        g.insert_node(Node::connector(
            "x",
            ConnectorType::Xor,
            ConnectorRole::Split,
        ));
        g.insert_node(Node::activity("b", "Left"));
        g.insert_node(Node::event("c", "right chosen"));
        g.add_edge("a", "x");
        g.add_edge("x", "b");
        g.add_edge("x", "c");
        let rules = detect_decision_rules(&g);
        assert_eq!(rules.len(), 2);
        let action = rules
            .iter()
            .find(|r| r.form == RuleForm::ActionAssertion)
            .unwrap();
        assert_eq!(
            action.render_text().unwrap(),
            "If <(unguarded)> Then Do <Left>"
        );
    }

    #[test]
    fn no_xor_no_rules() {
        let mut g = ProcessGraph::new("", Notation::Epc);
        g.insert_node(Node::activity("a", "A"));
        let mut notes = Vec::new();
        assert!(detect_decision_rules_noted(&g, &mut notes).is_empty());
        assert!(notes.is_empty());
    }
}
