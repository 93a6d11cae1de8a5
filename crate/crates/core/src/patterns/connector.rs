use super::branch::{nearest_before, Branch};
use super::decision::UNGUARDED;
use crate::ir::{Adjacency, ConnectorRole, ConnectorType, NodeKind, ProcessGraph};
use crate::rules::{BusinessRule, Conjunction, DataState};

/// Pattern 2: rules at AND and OR splits.
///
/// The nearest condition before the split both triggers and guards the
/// branch activities, which become the actions of one connector rule. When
/// that condition is the `"<object> is <state>"` reading of an upstream
/// output and every branch activity writes data, a data correlation between
/// the upstream state and the branch outputs is emitted too.
pub fn detect_connector_rules(graph: &ProcessGraph) -> Vec<BusinessRule> {
    detect_connector_rules_noted(graph, &mut Vec::new())
}

pub(crate) fn detect_connector_rules_noted(
    graph: &ProcessGraph,
    notes: &mut Vec<String>,
) -> Vec<BusinessRule> {
    let adj = Adjacency::build(graph);
    let mut rules = Vec::new();

    for split in 0..adj.len() {
        let node = adj.node(split);
        if node.connector_role != Some(ConnectorRole::Split) {
            continue;
        }
        let conjunction = match node.connector_type {
            Some(ConnectorType::And) => Conjunction::And,
            Some(ConnectorType::Or) => Conjunction::Or,
            _ => continue,
        };

        let activities: Vec<usize> = adj
            .successors(split)
            .iter()
            .filter_map(|&head| Branch::scan(&adj, split, head).activity)
            .collect();
        if activities.is_empty() {
            continue;
        }

        let condition = nearest_before(&adj, split, "condition", |n| n.is_condition(), notes);
        let condition_label = condition
            .map(|c| adj.node(c).label.as_str())
            .unwrap_or(UNGUARDED);

        let mut provenance = vec![adj.id(split).clone()];
        provenance.extend(condition.map(|c| adj.id(c).clone()));
        provenance.extend(activities.iter().map(|&a| adj.id(a).clone()));
        let actions = activities
            .iter()
            .map(|&a| adj.node(a).display_name().to_owned())
            .collect();
        // The condition node is the triggering event as well; it is kept in
        // the condition slot only.
        rules.push(BusinessRule::connector_action(
            None,
            condition_label,
            actions,
            conjunction,
            provenance,
        ));

        if condition.is_none() {
            continue;
        }
        let writes_data = activities
            .iter()
            .all(|&a| adj.node(a).outputs().next().is_some());
        if !writes_data {
            continue;
        }
        let reads_condition = |n: &crate::ir::Node| {
            n.kind == NodeKind::Activity
                && n.outputs()
                    .any(|r| r.state_reading().as_deref() == Some(condition_label))
        };
        let Some(producer) = nearest_before(&adj, split, "state producer", reads_condition, notes)
        else {
            continue;
        };
        let antecedent = adj
            .node(producer)
            .outputs()
            .find(|r| r.state_reading().as_deref() == Some(condition_label))
            .expect("producer matched on this reading");
        let consequents = activities
            .iter()
            .flat_map(|&a| adj.node(a).outputs())
            .map(|r| DataState {
                object: r.object_name.clone(),
                state: r.state.clone(),
            })
            .collect();
        let mut provenance = vec![adj.id(split).clone(), adj.id(producer).clone()];
        provenance.extend(activities.iter().map(|&a| adj.id(a).clone()));
        rules.push(BusinessRule::data_correlation(
            &antecedent.object_name,
            antecedent.state.as_deref().unwrap_or_default(),
            consequents,
            provenance,
        ));
    }
    rules
}
