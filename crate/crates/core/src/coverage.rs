//! Which rule patterns each notation can express, optionally with the number
//! of rules a concrete model yielded.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::ir::Notation;
use crate::patterns::Pattern;
use crate::rules::RuleSet;

/// Notations of the constant expressibility matrix.
pub const MATRIX_NOTATIONS: [Notation; 2] = [Notation::PetriNet, Notation::Epc];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverageCell {
    pub expressible: bool,
    /// Rules found in the supplied model; `None` without a model.
    pub matched: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageRow {
    pub pattern: Pattern,
    pub cells: BTreeMap<Notation, CoverageCell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageReport {
    pub rows: Vec<CoverageRow>,
    /// Notation of the supplied model, if any.
    pub model_notation: Option<Notation>,
}

impl CoverageReport {
    /// The bare pattern-by-notation expressibility matrix.
    pub fn matrix() -> Self {
        let rows = Pattern::ALL
            .into_iter()
            .map(|pattern| CoverageRow {
                pattern,
                cells: MATRIX_NOTATIONS
                    .into_iter()
                    .map(|n| {
                        (
                            n,
                            CoverageCell {
                                expressible: pattern.expressible_in(n),
                                matched: None,
                            },
                        )
                    })
                    .collect(),
            })
            .collect();
        CoverageReport {
            rows,
            model_notation: None,
        }
    }

    /// The matrix plus per-pattern rule counts of `rules` in its notation.
    pub fn with_model(rules: &RuleSet) -> Self {
        let mut report = CoverageReport::matrix();
        let notation = rules.notation;
        for row in &mut report.rows {
            let expressible = row.pattern.expressible_in(notation);
            let matched = if expressible {
                rules.count_pattern(row.pattern.number())
            } else {
                0
            };
            row.cells.insert(
                notation,
                CoverageCell {
                    expressible,
                    matched: Some(matched),
                },
            );
        }
        report.model_notation = Some(notation);
        report
    }

    fn notations(&self) -> Vec<Notation> {
        let mut notations = MATRIX_NOTATIONS.to_vec();
        if let Some(n) = self.model_notation {
            if !notations.contains(&n) {
                notations.push(n);
            }
        }
        notations
    }

    /// Plain-text table; `yes`/`no` per cell, `yes / <count>` for the model's notation.
    pub fn render_text(&self) -> String {
        let notations = self.notations();
        let mut table: Vec<Vec<String>> = vec![{
            let mut header = vec!["pattern".to_owned(), "rule template".to_owned()];
            header.extend(notations.iter().map(|n| n.to_string()));
            header
        }];
        for row in &self.rows {
            let mut line = vec![row.pattern.to_string(), row.pattern.template().to_owned()];
            for n in &notations {
                let cell = row.cells[n];
                let word = if cell.expressible { "yes" } else { "no" };
                line.push(match cell.matched {
                    Some(count) => format!("{word} / {count}"),
                    None => word.to_owned(),
                });
            }
            table.push(line);
        }
        let columns = table[0].len();
        let widths: Vec<usize> = (0..columns)
            .map(|c| {
                table
                    .iter()
                    .map(|r| r[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for line in &table {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    /// `{pattern: {notation: {expressible, matched?}}}` with sorted keys.
    pub fn to_json(&self) -> Vec<u8> {
        let mut document = Map::new();
        for row in &self.rows {
            let mut by_notation = Map::new();
            for (notation, cell) in &row.cells {
                let mut entry = Map::new();
                entry.insert("expressible".into(), json!(cell.expressible));
                if let Some(count) = cell.matched {
                    entry.insert("matched".into(), json!(count));
                }
                by_notation.insert(notation.to_string(), Value::Object(entry));
            }
            document.insert(row.pattern.to_string(), Value::Object(by_notation));
        }
        serde_json::to_vec(&Value::Object(document)).expect("JSON values serialize")
    }
}
