use crate::ir::{NodeKind, ProcessGraph};
use crate::rules::BusinessRule;

/// Pattern 4: one `<role> must <activity>` rule per role assignment.
pub fn detect_authorization_rules(graph: &ProcessGraph) -> Vec<BusinessRule> {
    graph
        .nodes()
        .filter(|n| n.kind == NodeKind::Activity)
        .flat_map(|activity| {
            let constraint = lowercase_initial(activity.display_name());
            activity.roles.iter().map(move |role| {
                BusinessRule::authorization(role, &constraint, vec![activity.id.clone()])
            })
        })
        .collect()
}

/// Lowercases a leading capital so an activity name reads as a verb phrase,
/// leaving acronyms such as `"SAP update"` alone.
fn lowercase_initial(label: &str) -> String {
    let mut chars = label.chars();
    match (chars.next(), chars.next()) {
        (Some(first), second)
            if first.is_uppercase() && !second.is_some_and(char::is_uppercase) =>
        {
            first
                .to_lowercase()
                .chain(label[first.len_utf8()..].chars())
                .collect()
        }
        _ => label.to_owned(),
    }
}
