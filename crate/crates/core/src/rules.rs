//! Business-rule values for the seven rule forms, their categories, canonical
//! text and JSON encoding.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ir::{NodeId, Notation};

/// Version of the rule JSON document.
pub const RULE_SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleForm {
    #[serde(rename = "Derivation_1_1")]
    Derivation,
    #[serde(rename = "ActionAssertion_1_2")]
    ActionAssertion,
    #[serde(rename = "ConnectorAction_2_1")]
    ConnectorAction,
    #[serde(rename = "DataCorrelation_2_2")]
    DataCorrelation,
    #[serde(rename = "StateOrder_3_1")]
    StateOrder,
    #[serde(rename = "StateProhibition_3_2")]
    StateProhibition,
    #[serde(rename = "Authorization_4_1")]
    Authorization,
}

impl RuleForm {
    pub const ALL: [RuleForm; 7] = [
        RuleForm::Derivation,
        RuleForm::ActionAssertion,
        RuleForm::ConnectorAction,
        RuleForm::DataCorrelation,
        RuleForm::StateOrder,
        RuleForm::StateProhibition,
        RuleForm::Authorization,
    ];

    /// Short numbering of the form, e.g. `"2.1"`.
    pub fn number(self) -> &'static str {
        match self {
            RuleForm::Derivation => "1.1",
            RuleForm::ActionAssertion => "1.2",
            RuleForm::ConnectorAction => "2.1",
            RuleForm::DataCorrelation => "2.2",
            RuleForm::StateOrder => "3.1",
            RuleForm::StateProhibition => "3.2",
            RuleForm::Authorization => "4.1",
        }
    }

    /// The detection pattern (1-4) that yields this form.
    pub fn pattern(self) -> u8 {
        match self {
            RuleForm::Derivation | RuleForm::ActionAssertion => 1,
            RuleForm::ConnectorAction | RuleForm::DataCorrelation => 2,
            RuleForm::StateOrder | RuleForm::StateProhibition => 3,
            RuleForm::Authorization => 4,
        }
    }
}

impl fmt::Display for RuleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.number())
    }
}

/// Business Rules Group category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    Structural,
    Action,
    Derivation,
}

pub fn categorize(form: RuleForm) -> Category {
    match form {
        RuleForm::Derivation => Category::Derivation,
        RuleForm::ActionAssertion | RuleForm::ConnectorAction | RuleForm::Authorization => {
            Category::Action
        }
        RuleForm::DataCorrelation | RuleForm::StateOrder | RuleForm::StateProhibition => {
            Category::Structural
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Conjunction {
    #[serde(rename = "AND")]
    And,
    #[serde(rename = "OR")]
    Or,
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conjunction::And => "AND",
            Conjunction::Or => "OR",
        })
    }
}

/// An object, optionally in a state; the consequent side of a data correlation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DataState {
    pub object: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
}

/// One extracted rule.
///
/// Which fields are populated depends on `form`:
///
/// | form | required | optional |
/// |------|----------|----------|
/// | 1.1  | `condition`, `produced_data` | |
/// | 1.2  | `condition`, one `actions` entry | `on_event` |
/// | 2.1  | `condition`, `actions`, `conjunction` | `on_event` |
/// | 2.2  | `antecedent_object`, `antecedent_state`, `consequents` | |
/// | 3.1, 3.2 | `antecedent_object`/`_state` (later state), `consequent_object`/`_state` (earlier state), same object | |
/// | 4.1  | `subject`, `constraint` | |
///
/// All other fields stay empty. `provenance` is never empty and starts with
/// the node anchoring the match.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BusinessRule {
    pub form: RuleForm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_event: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub produced_data: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub actions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjunction: Option<Conjunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antecedent_object: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antecedent_state: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consequent_object: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consequent_state: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub consequents: Vec<DataState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraint: Option<String>,
    pub category: Category,
    pub provenance: Vec<NodeId>,
    pub source_pattern: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("INVALID_FIELDS: rule {form}: {reason}")]
    InvalidFields { form: RuleForm, reason: String },
    #[error("MALFORMED_JSON: {0}")]
    MalformedJson(String),
}

impl RuleError {
    pub fn code(&self) -> &'static str {
        match self {
            RuleError::InvalidFields { .. } => "INVALID_FIELDS",
            RuleError::MalformedJson(_) => "MALFORMED_JSON",
        }
    }
}

impl BusinessRule {
    fn empty(form: RuleForm, provenance: Vec<NodeId>) -> Self {
        BusinessRule {
            form,
            on_event: None,
            condition: None,
            produced_data: None,
            actions: Vec::new(),
            conjunction: None,
            antecedent_object: None,
            antecedent_state: None,
            consequent_object: None,
            consequent_state: None,
            consequents: Vec::new(),
            subject: None,
            constraint: None,
            category: categorize(form),
            provenance,
            source_pattern: form.pattern(),
        }
    }

    pub fn derivation(condition: &str, produced: &str, provenance: Vec<NodeId>) -> Self {
        BusinessRule {
            condition: Some(condition.to_owned()),
            produced_data: Some(produced.to_owned()),
            ..BusinessRule::empty(RuleForm::Derivation, provenance)
        }
    }

    pub fn action_assertion(
        on_event: Option<&str>,
        condition: &str,
        action: &str,
        provenance: Vec<NodeId>,
    ) -> Self {
        BusinessRule {
            on_event: on_event.map(str::to_owned),
            condition: Some(condition.to_owned()),
            actions: vec![action.to_owned()],
            ..BusinessRule::empty(RuleForm::ActionAssertion, provenance)
        }
    }

    pub fn connector_action(
        on_event: Option<&str>,
        condition: &str,
        actions: Vec<String>,
        conjunction: Conjunction,
        provenance: Vec<NodeId>,
    ) -> Self {
        BusinessRule {
            on_event: on_event.map(str::to_owned),
            condition: Some(condition.to_owned()),
            actions,
            conjunction: Some(conjunction),
            ..BusinessRule::empty(RuleForm::ConnectorAction, provenance)
        }
    }

    pub fn data_correlation(
        object: &str,
        state: &str,
        consequents: Vec<DataState>,
        provenance: Vec<NodeId>,
    ) -> Self {
        BusinessRule {
            antecedent_object: Some(object.to_owned()),
            antecedent_state: Some(state.to_owned()),
            consequents,
            ..BusinessRule::empty(RuleForm::DataCorrelation, provenance)
        }
    }

    /// `earlier` must have been passed before `object` reaches `later`.
    pub fn state_order(object: &str, earlier: &str, later: &str, provenance: Vec<NodeId>) -> Self {
        BusinessRule::state_rule(RuleForm::StateOrder, object, earlier, later, provenance)
    }

    /// `object` cannot return to `earlier` once in `later`.
    pub fn state_prohibition(
        object: &str,
        earlier: &str,
        later: &str,
        provenance: Vec<NodeId>,
    ) -> Self {
        BusinessRule::state_rule(
            RuleForm::StateProhibition,
            object,
            earlier,
            later,
            provenance,
        )
    }

    fn state_rule(
        form: RuleForm,
        object: &str,
        earlier: &str,
        later: &str,
        provenance: Vec<NodeId>,
    ) -> Self {
        BusinessRule {
            antecedent_object: Some(object.to_owned()),
            antecedent_state: Some(later.to_owned()),
            consequent_object: Some(object.to_owned()),
            consequent_state: Some(earlier.to_owned()),
            ..BusinessRule::empty(form, provenance)
        }
    }

    pub fn authorization(subject: &str, constraint: &str, provenance: Vec<NodeId>) -> Self {
        BusinessRule {
            subject: Some(subject.to_owned()),
            constraint: Some(constraint.to_owned()),
            ..BusinessRule::empty(RuleForm::Authorization, provenance)
        }
    }

    /// Verifies the per-form field population table.
    pub fn check_fields(&self) -> Result<(), RuleError> {
        let fail = |reason: &str| {
            Err(RuleError::InvalidFields {
                form: self.form,
                reason: reason.to_owned(),
            })
        };
        if self.provenance.is_empty() {
            return fail("provenance is empty");
        }
        if self.category != categorize(self.form) {
            return fail("category does not match form");
        }
        if self.source_pattern != self.form.pattern() {
            return fail("source pattern does not match form");
        }

        use RuleForm::*;
        let form = self.form;
        let present = |slot: &Option<String>| slot.as_deref().is_some_and(|s| !s.is_empty());
        let may_have_event = matches!(form, ActionAssertion | ConnectorAction);
        let slots: [(&str, bool, bool); 11] = [
            ("on_event", self.on_event.is_some(), may_have_event),
            (
                "condition",
                self.condition.is_some(),
                matches!(form, Derivation | ActionAssertion | ConnectorAction),
            ),
            (
                "produced_data",
                self.produced_data.is_some(),
                form == Derivation,
            ),
            (
                "actions",
                !self.actions.is_empty(),
                matches!(form, ActionAssertion | ConnectorAction),
            ),
            (
                "conjunction",
                self.conjunction.is_some(),
                form == ConnectorAction,
            ),
            (
                "antecedent_object",
                self.antecedent_object.is_some(),
                matches!(form, DataCorrelation | StateOrder | StateProhibition),
            ),
            (
                "antecedent_state",
                self.antecedent_state.is_some(),
                matches!(form, DataCorrelation | StateOrder | StateProhibition),
            ),
            (
                "consequent_object",
                self.consequent_object.is_some(),
                matches!(form, StateOrder | StateProhibition),
            ),
            (
                "consequent_state",
                self.consequent_state.is_some(),
                matches!(form, StateOrder | StateProhibition),
            ),
            (
                "consequents",
                !self.consequents.is_empty(),
                form == DataCorrelation,
            ),
            (
                "subject/constraint",
                self.subject.is_some() || self.constraint.is_some(),
                form == Authorization,
            ),
        ];
        for (name, populated, allowed) in slots {
            if populated && !allowed {
                return fail(&format!("{name} must be empty"));
            }
            if !populated && allowed && name != "on_event" {
                return fail(&format!("{name} is required"));
            }
        }
        if let Some(event) = &self.on_event {
            if event.is_empty() {
                return fail("on_event is empty");
            }
        }

        let required: Vec<&Option<String>> = match form {
            Derivation => vec![&self.condition, &self.produced_data],
            ActionAssertion | ConnectorAction => vec![&self.condition],
            DataCorrelation => vec![&self.antecedent_object, &self.antecedent_state],
            StateOrder | StateProhibition => vec![
                &self.antecedent_object,
                &self.antecedent_state,
                &self.consequent_object,
                &self.consequent_state,
            ],
            Authorization => vec![&self.subject, &self.constraint],
        };
        if !required.into_iter().all(present) {
            return fail("a required text field is missing or empty");
        }
        if form == ActionAssertion && self.actions.len() != 1 {
            return fail("exactly one action is required");
        }
        if self.actions.iter().any(String::is_empty) {
            return fail("actions must be non-empty");
        }
        if self
            .consequents
            .iter()
            .any(|c| c.object.is_empty() || c.state.as_deref() == Some(""))
        {
            return fail("consequents need an object name and a non-empty state");
        }
        if matches!(form, StateOrder | StateProhibition) {
            if self.antecedent_object != self.consequent_object {
                return fail("state rules relate two states of one object");
            }
            if self.antecedent_state == self.consequent_state {
                return fail("state rules relate two distinct states");
            }
        }
        Ok(())
    }

    /// Canonical English rendering; angle brackets are part of the output.
    pub fn render_text(&self) -> Result<String, RuleError> {
        self.check_fields()?;
        let text = |slot: &Option<String>| slot.clone().unwrap_or_default();
        let event_prefix = match &self.on_event {
            Some(event) => format!("On <{event}> "),
            None => String::new(),
        };
        let rendered = match self.form {
            RuleForm::Derivation => format!(
                "If <{}> Then <{} is produced>",
                text(&self.condition),
                text(&self.produced_data)
            ),
            RuleForm::ActionAssertion => format!(
                "{event_prefix}If <{}> Then Do <{}>",
                text(&self.condition),
                self.actions[0]
            ),
            RuleForm::ConnectorAction => {
                let joiner = format!(" {} ", self.conjunction.unwrap_or(Conjunction::And));
                let actions: Vec<String> = self.actions.iter().map(|a| format!("<{a}>")).collect();
                format!(
                    "{event_prefix}If <{}> Then {}",
                    text(&self.condition),
                    actions.join(&joiner)
                )
            }
            RuleForm::DataCorrelation => {
                let consequents: Vec<String> = self
                    .consequents
                    .iter()
                    .map(|c| match &c.state {
                        Some(state) => format!("<{} is in {} status>", c.object, state),
                        None => format!("<{} exists>", c.object),
                    })
                    .collect();
                format!(
                    "If <{} is in {} status> then {}",
                    text(&self.antecedent_object),
                    text(&self.antecedent_state),
                    consequents.join(" AND ")
                )
            }
            RuleForm::StateOrder => format!(
                "If <{} is in status {}> then <it must have already passed status {}>",
                text(&self.antecedent_object),
                text(&self.antecedent_state),
                text(&self.consequent_state)
            ),
            RuleForm::StateProhibition => format!(
                "<{}> cannot obtain status <{}> from status <{}>",
                text(&self.antecedent_object),
                text(&self.consequent_state),
                text(&self.antecedent_state)
            ),
            RuleForm::Authorization => {
                format!("{} must {}", text(&self.subject), text(&self.constraint))
            }
        };
        Ok(rendered)
    }

    /// Total order used for rule sets: pattern, form, provenance, then fields.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.source_pattern
            .cmp(&other.source_pattern)
            .then(self.form.cmp(&other.form))
            .then_with(|| self.provenance.cmp(&other.provenance))
            .then_with(|| self.field_key().cmp(&other.field_key()))
    }

    #[allow(clippy::type_complexity)]
    fn field_key(
        &self,
    ) -> (
        [&Option<String>; 9],
        &Vec<String>,
        &Option<Conjunction>,
        &Vec<DataState>,
        Category,
    ) {
        (
            [
                &self.on_event,
                &self.condition,
                &self.produced_data,
                &self.antecedent_object,
                &self.antecedent_state,
                &self.consequent_object,
                &self.consequent_state,
                &self.subject,
                &self.constraint,
            ],
            &self.actions,
            &self.conjunction,
            &self.consequents,
            self.category,
        )
    }
}

/// The rules extracted from one model, in canonical order, plus notes about
/// skipped patterns and analysis assumptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub model_name: String,
    pub notation: Notation,
    rules: Vec<BusinessRule>,
    notes: Vec<String>,
}

impl RuleSet {
    /// Sorts and deduplicates `rules` and `notes`.
    pub fn new(
        model_name: impl Into<String>,
        notation: Notation,
        mut rules: Vec<BusinessRule>,
        mut notes: Vec<String>,
    ) -> Self {
        rules.sort_by(BusinessRule::canonical_cmp);
        rules.dedup();
        notes.sort();
        notes.dedup();
        RuleSet {
            model_name: model_name.into(),
            notation,
            rules,
            notes,
        }
    }

    pub fn rules(&self) -> &[BusinessRule] {
        &self.rules
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn count_pattern(&self, pattern: u8) -> usize {
        self.rules
            .iter()
            .filter(|r| r.source_pattern == pattern)
            .count()
    }

    pub fn count_form(&self, form: RuleForm) -> usize {
        self.rules.iter().filter(|r| r.form == form).count()
    }

    /// Deterministic JSON encoding with sorted keys.
    pub fn to_json(&self) -> Result<Vec<u8>, RuleError> {
        let rules = self
            .rules
            .iter()
            .map(|rule| {
                Ok(RuleRecord {
                    rule: rule.clone(),
                    rendered: rule.render_text()?,
                })
            })
            .collect::<Result<Vec<_>, RuleError>>()?;
        let document = RuleSetDocument {
            model: self.model_name.clone(),
            notation: self.notation,
            rules,
            notes: self.notes.clone(),
            version: RULE_SCHEMA_VERSION.to_owned(),
        };
        // Round-tripping through `Value` sorts object keys.
        let value = serde_json::to_value(&document).expect("rule documents serialize");
        Ok(serde_json::to_vec(&value).expect("values serialize"))
    }

    pub fn from_json(bytes: &[u8]) -> Result<RuleSet, RuleError> {
        let document: RuleSetDocument =
            serde_json::from_slice(bytes).map_err(|e| RuleError::MalformedJson(e.to_string()))?;
        if document.version != RULE_SCHEMA_VERSION {
            return Err(RuleError::MalformedJson(format!(
                "unsupported rule schema version {:?}",
                document.version
            )));
        }
        let rules = document
            .rules
            .into_iter()
            .map(|record| {
                record.rule.check_fields()?;
                Ok(record.rule)
            })
            .collect::<Result<Vec<_>, RuleError>>()?;
        Ok(RuleSet::new(
            document.model,
            document.notation,
            rules,
            document.notes,
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct RuleRecord {
    #[serde(flatten)]
    rule: BusinessRule,
    rendered: String,
}

#[derive(Serialize, Deserialize)]
struct RuleSetDocument {
    model: String,
    notation: Notation,
    rules: Vec<RuleRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
    version: String,
}
