//! Which patterns each notation can express, then the counts for one model.

use std::error::Error;

use bp_rules::{extract_all, io, CoverageReport, PatternSet};

fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", CoverageReport::matrix().render_text());
    println!();

    for fixture in ["hotel_booking.epml", "fig1_cancellation.pnml"] {
        let path = format!("{}/fixtures/{fixture}", env!("CARGO_MANIFEST_DIR"));
        let graph = io::parse_auto(&std::fs::read(path)?)?.graph;
        let rules = extract_all(&graph, &PatternSet::all())?;
        println!("{fixture}");
        print!("{}", CoverageReport::with_model(&rules).render_text());
        println!(
            "{}",
            String::from_utf8(CoverageReport::with_model(&rules).to_json())?
        );
        println!();
    }
    Ok(())
}
