//! Extract every rule from the hotel booking EPC and show how each one is
//! classified.

use std::error::Error;

use bp_rules::{categorize, extract_all, io, PatternSet};

fn main() -> Result<(), Box<dyn Error>> {
    let bytes = std::fs::read(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/hotel_booking.epml"
    ))?;
    let graph = io::parse_auto(&bytes)?.graph;
    let rules = extract_all(&graph, &PatternSet::all())?;

    for rule in rules.rules() {
        println!(
            "{:<4} {:<11} {}",
            rule.form.number(),
            format!("{:?}", categorize(rule.form)),
            rule.render_text()?
        );
    }
    for note in rules.notes() {
        println!("note: {note}");
    }

    // Only the connector rules.
    let connectors: PatternSet = "2".parse()?;
    println!(
        "pattern 2 alone: {} rules",
        extract_all(&graph, &connectors)?.len()
    );
    Ok(())
}
