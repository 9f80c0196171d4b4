//! Running the Mordell-Weil sieve and re-checking its certificate.
//!
//! Usage: cargo run --release --example sieve_certificate [config.json]

use zcs::sieve::{sieve_run, verify_certificate, SieveConfig, Verdict};

fn main() -> zcs::Result<()> {
    let default = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/g2_empty.json");
    let path = std::env::args().nth(1).unwrap_or_else(|| default.to_string());
    let text = std::fs::read_to_string(&path).map_err(|e| zcs::Error::Parse(e.to_string()))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| zcs::Error::Parse(e.to_string()))?;
    let config = SieveConfig::from_json(&value)?;
    let cert = sieve_run(&config)?;
    println!("primes {:?}, shape {:?}", cert.primes, cert.shape.radices());
    for (entry, step) in cert.entries.iter().zip(&cert.steps) {
        println!(
            "  p={:>3}: #J = {:>5}, image {:>3}, |W_p| = {:>4}, survivors {}",
            entry.prime,
            entry.group_order,
            entry.image_size,
            entry.admissible.len(),
            step.survivors.len()
        );
    }
    match &cert.verdict {
        Verdict::Empty => println!("verdict: empty"),
        Verdict::Survivors(s) => println!("verdict: {} surviving cosets", s.len()),
    }
    println!("certificate verifies: {}", verify_certificate(&cert).valid);
    Ok(())
}
