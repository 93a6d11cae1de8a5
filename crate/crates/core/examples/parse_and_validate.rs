//! Detect a model's format, parse it and print the structural report.
//!
//! ```bash
//! cargo run --example parse_and_validate -- fixtures/adjacent_functions.epml
//! ```

use std::error::Error;

use bp_rules::io::{detect_format, parse_auto};
use bp_rules::ir::validate;

fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hotel_booking.epml").to_owned()
    });
    let bytes = std::fs::read(&path)?;

    let format = detect_format(&bytes)?;
    let parsed = parse_auto(&bytes)?;
    println!("{path}: {format:?}, notation {}", parsed.graph.notation);
    println!(
        "{} nodes, {} edges",
        parsed.graph.node_count(),
        parsed.graph.edges().len()
    );
    for warning in &parsed.warnings {
        println!("parse warning: {warning}");
    }

    let report = validate(&parsed.graph);
    for issue in report.errors.iter() {
        println!("error {issue}");
    }
    for issue in report.warnings.iter() {
        println!("warning {issue}");
    }
    println!("valid: {}", report.is_ok());
    Ok(())
}
