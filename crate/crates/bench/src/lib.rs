//! Fixture loading shared by the benchmarks.

use std::path::Path;

use gsc_core::LabelledGraph;

/// Certified fixtures, smallest first.
pub const FIXTURES: [&str; 6] = ["g1", "c7", "theta344", "theta999_m3", "k4s8_m3", "k4s9_m2"];

pub fn fixture(name: &str) -> LabelledGraph {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.lg"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    LabelledGraph::parse(&text).expect("fixture parses")
}
