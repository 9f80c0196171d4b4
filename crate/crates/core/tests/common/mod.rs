#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use serde_json::Value;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_json(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub const SIEVE_FIXTURES: [&str; 6] = [
    "e_minus2_sieve.json",
    "e17_sieve.json",
    "e1_torsion_sieve.json",
    "g2_case.json",
    "g2_empty.json",
    "g2_torsion_sieve.json",
];
