//! The four rule-detection patterns and their orchestration.

mod authorization;
mod branch;
mod connector;
mod decision;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ir::{validate, Notation, ProcessGraph, ValidationReport};
use crate::lifecycle::detect_state_order_rules_noted;
use crate::rules::RuleSet;

pub use crate::lifecycle::detect_state_order_rules;
pub use authorization::detect_authorization_rules;
pub use connector::detect_connector_rules;
pub use decision::{detect_decision_rules, UNGUARDED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    /// XOR decision points (forms 1.1, 1.2).
    Decision = 1,
    /// AND/OR connector logic (forms 2.1, 2.2).
    Connector = 2,
    /// Data object states (forms 3.1, 3.2).
    DataState = 3,
    /// Organizational roles (form 4.1).
    Authorization = 4,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [
        Pattern::Decision,
        Pattern::Connector,
        Pattern::DataState,
        Pattern::Authorization,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Pattern> {
        Pattern::ALL.into_iter().find(|p| p.number() == n)
    }

    /// Row heading of the coverage table.
    pub fn template(self) -> &'static str {
        match self {
            Pattern::Decision => "Rules concerning programmed decision (XOR connector)",
            Pattern::Connector => "Rules concerning other connector logics",
            Pattern::DataState => "Rules concerning data object state",
            Pattern::Authorization => "Authorization rules",
        }
    }

    /// Whether models in `notation` can carry this pattern at all.
    ///
    /// Petri nets describe neither data objects nor organizational units.
    /// The native format carries everything an EPC does.
    pub fn expressible_in(self, notation: Notation) -> bool {
        match notation {
            Notation::PetriNet => matches!(self, Pattern::Decision | Pattern::Connector),
            Notation::Epc | Notation::Native => true,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid pattern list {0:?}: expected comma-separated numbers 1-4")]
pub struct PatternParseError(pub String);

/// A selection of patterns, e.g. parsed from `"1,2,3,4"`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PatternSet(BTreeSet<Pattern>);

impl PatternSet {
    pub fn all() -> Self {
        PatternSet(Pattern::ALL.into_iter().collect())
    }

    pub fn none() -> Self {
        PatternSet::default()
    }

    pub fn contains(&self, pattern: Pattern) -> bool {
        self.0.contains(&pattern)
    }

    pub fn iter(&self) -> impl Iterator<Item = Pattern> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<Pattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Pattern>>(iter: I) -> Self {
        PatternSet(iter.into_iter().collect())
    }
}

impl FromStr for PatternSet {
    type Err = PatternParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Ok(PatternSet::none());
        }
        trimmed
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u8>()
                    .ok()
                    .and_then(Pattern::from_number)
                    .ok_or_else(|| PatternParseError(s.to_owned()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("VALIDATION_FAILED: model has {} validation error(s)", .0.errors.len())]
    ValidationFailed(ValidationReport),
}

impl ExtractError {
    pub fn code(&self) -> &'static str {
        "VALIDATION_FAILED"
    }
}

/// Runs the selected detectors over a valid, normalized graph.
///
/// Patterns the graph's notation cannot express are skipped with a note. The
/// result is deduplicated and canonically ordered.
pub fn extract_all(graph: &ProcessGraph, patterns: &PatternSet) -> Result<RuleSet, ExtractError> {
    let report = validate(graph);
    if !report.is_ok() {
        return Err(ExtractError::ValidationFailed(report));
    }
    let mut rules = Vec::new();
    let mut notes = Vec::new();
    for pattern in patterns.iter() {
        if !pattern.expressible_in(graph.notation) {
            notes.push(format!(
                "pattern {pattern} not expressible in {} notation",
                graph.notation
            ));
            continue;
        }
        let found = match pattern {
            Pattern::Decision => decision::detect_decision_rules_noted(graph, &mut notes),
            Pattern::Connector => connector::detect_connector_rules_noted(graph, &mut notes),
            Pattern::DataState => detect_state_order_rules_noted(graph, &mut notes),
            Pattern::Authorization => detect_authorization_rules(graph),
        };
        rules.extend(found);
    }
    Ok(RuleSet::new(
        graph.name.clone(),
        graph.notation,
        rules,
        notes,
    ))
}
