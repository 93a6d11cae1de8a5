//! Reading process models from PNML, EPML and the native JSON format.

mod epml;
mod native;
mod pnml;
mod xml;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ir::ProcessGraph;

pub use epml::parse_epml;
pub use native::{export_native, parse_native, GRAPH_SCHEMA_VERSION};
pub use pnml::parse_pnml;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormatTag {
    Pnml,
    Epml,
    NativeJson,
}

impl fmt::Display for FormatTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormatTag::Pnml => "PNML",
            FormatTag::Epml => "EPML",
            FormatTag::NativeJson => "NativeJSON",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("UNRECOGNIZED_FORMAT: document is not PNML, EPML or native JSON")]
    UnrecognizedFormat,
    #[error("MALFORMED_XML: {0}")]
    MalformedXml(String),
    #[error("MALFORMED_JSON: {0}")]
    MalformedJson(String),
    #[error("SCHEMA_VIOLATION at {path}: {message}")]
    SchemaViolation { path: String, message: String },
    #[error("DANGLING_ARC: arc {arc:?} references unknown node {endpoint:?}")]
    DanglingArc { arc: String, endpoint: String },
    #[error("DUPLICATE_ID: id {0:?} is declared more than once")]
    DuplicateId(String),
    #[error("CONNECTOR_DEGREE: connector {0:?} has both several inputs and several outputs")]
    ConnectorDegree(String),
    #[error("INVALID_ELEMENT: {0}")]
    InvalidElement(String),
}

impl ModelError {
    pub fn code(&self) -> &'static str {
        match self {
            ModelError::UnrecognizedFormat => "UNRECOGNIZED_FORMAT",
            ModelError::MalformedXml(_) => "MALFORMED_XML",
            ModelError::MalformedJson(_) => "MALFORMED_JSON",
            ModelError::SchemaViolation { .. } => "SCHEMA_VIOLATION",
            ModelError::DanglingArc { .. } => "DANGLING_ARC",
            ModelError::DuplicateId(_) => "DUPLICATE_ID",
            ModelError::ConnectorDegree(_) => "CONNECTOR_DEGREE",
            ModelError::InvalidElement(_) => "INVALID_ELEMENT",
        }
    }
}

/// A parsed graph plus warnings about skipped input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub graph: ProcessGraph,
    pub warnings: Vec<String>,
}

/// Classifies a document by its root element or top-level JSON key.
pub fn detect_format(document: &[u8]) -> Result<FormatTag, ModelError> {
    let text = std::str::from_utf8(document).map_err(|_| ModelError::UnrecognizedFormat)?;
    let text = text.trim_start_matches('\u{feff}').trim_start();
    if text.starts_with('<') {
        return match xml::root_element_name(text) {
            Some("pnml") => Ok(FormatTag::Pnml),
            Some("epml") => Ok(FormatTag::Epml),
            _ => Err(ModelError::UnrecognizedFormat),
        };
    }
    if text.starts_with('{') {
        if let Ok(serde_json::Value::Object(map)) = serde_json::from_str(text) {
            if map.contains_key("process_graph") {
                return Ok(FormatTag::NativeJson);
            }
        }
    }
    Err(ModelError::UnrecognizedFormat)
}

/// Parses a document in the given format; Petri nets come back normalized.
pub fn parse(document: &[u8], format: FormatTag) -> Result<Parsed, ModelError> {
    match format {
        FormatTag::Pnml => parse_pnml(document),
        FormatTag::Epml => parse_epml(document),
        FormatTag::NativeJson => parse_native(document).map(|graph| Parsed {
            graph,
            warnings: Vec::new(),
        }),
    }
}

/// Detects the format, then parses.
pub fn parse_auto(document: &[u8]) -> Result<Parsed, ModelError> {
    parse(document, detect_format(document)?)
}

/// Collects skipped element names and reports each once with a count.
#[derive(Default)]
pub(crate) struct Skipped(BTreeMap<String, usize>);

impl Skipped {
    pub fn note(&mut self, element: &str) {
        *self.0.entry(element.to_owned()).or_default() += 1;
    }

    pub fn into_warnings(self) -> Vec<String> {
        self.0
            .into_iter()
            .map(|(name, count)| match count {
                1 => format!("skipped unsupported element <{name}>"),
                n => format!("skipped unsupported element <{name}> ({n} occurrences)"),
            })
            .collect()
    }
}
