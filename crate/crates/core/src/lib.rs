//! Discover the business rules embedded in business process models.
//!
//! Process models in Petri-net (PNML) or EPC (EPML) notation are lowered into
//! a common [`ProcessGraph`](ir::ProcessGraph), normalized, and scanned for
//! four patterns that typically carry business rules:
//!
//! 1. decision points at XOR splits ([`detect_decision_rules`]),
//! 2. AND/OR connector logic ([`detect_connector_rules`]),
//! 3. the state order of data objects ([`detect_state_order_rules`]),
//! 4. roles assigned to activities ([`detect_authorization_rules`]).
//!
//! Each finding is a [`BusinessRule`] in one of seven forms, categorized as a
//! structural assertion, action assertion or derivation, and carrying the
//! node ids it was derived from.
//!
//! ```
//! use bp_rules::{extract_all, io, PatternSet};
//!
//! let epml = br#"<epml><epc name="orders">
//!   <event id="e1"><name>Order received</name></event>
//!   <function id="f1"><name>Approve order</name></function>
//!   <role name="the sales manager" function="f1"/>
//!   <arc><flow source="e1" target="f1"/></arc>
//! </epc></epml>"#;
//! let graph = io::parse_auto(epml)?.graph;
//! let rules = extract_all(&graph, &PatternSet::all())?;
//! assert_eq!(rules.rules()[0].render_text()?, "the sales manager must approve order");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod coverage;
pub mod io;
pub mod ir;
pub mod lifecycle;
pub mod patterns;
pub mod rules;

pub use coverage::CoverageReport;
pub use ir::{Node, NodeId, NodeKind, Notation, ProcessGraph};
pub use lifecycle::{
    brute_force_precedence, collect_lifecycles, must_precede, Lifecycle, PrecedencePair,
};
pub use patterns::{
    detect_authorization_rules, detect_connector_rules, detect_decision_rules,
    detect_state_order_rules, extract_all, Pattern, PatternSet,
};
pub use rules::{categorize, BusinessRule, Category, RuleForm, RuleSet};
