#![allow(dead_code)]

use std::path::Path;

use gsc_core::{Alphabet, LabelledGraph};

pub const CERTIFIED: [&str; 6] = ["g1", "c7", "theta344", "theta999_m3", "k4s8_m3", "k4s9_m2"];

pub fn fixture(name: &str) -> LabelledGraph {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.lg"));
    LabelledGraph::parse(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn letters(m: usize) -> Alphabet {
    Alphabet::new((0..m).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}
