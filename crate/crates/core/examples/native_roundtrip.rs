//! Convert any supported model to the native JSON format and read it back.
//!
//! ```bash
//! cargo run --example native_roundtrip -- fixtures/hotel_booking.epml > hotel_booking.json
//! ```

use std::error::Error;
use std::io::Write;

use bp_rules::io::{export_native, parse_auto, parse_native};

fn main() -> Result<(), Box<dyn Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/fixtures/fig1_cancellation.pnml"
        )
        .to_owned()
    });
    let graph = parse_auto(&std::fs::read(&path)?)?.graph;

    let bytes = export_native(&graph);
    let back = parse_native(&bytes)?;
    assert_eq!(back, graph, "round trip changed the graph");
    assert_eq!(export_native(&back), bytes, "export is not stable");

    let mut out = std::io::stdout().lock();
    out.write_all(&bytes)?;
    writeln!(out)?;
    Ok(())
}
