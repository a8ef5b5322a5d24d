//! Optimal valuations of H_{2k+1}, their optimal sets, classification and discharging.
use std::time::Duration;

use snarkflow::proofcheck::{end_to_end_check, Catalog};

fn main() -> snarkflow::Result<()> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let r = end_to_end_check(&Catalog::load()?, k, Duration::from_secs(600))?;
    println!("k={k} φ={:?} bound={} valuations={} pairs={} completed={} passed={} ({} ms)", r.phi.map(|p| p.to_string()), r.bound, r.valuations, r.pairs, r.completed, r.passed, r.elapsed_ms);
    for (name, t) in &r.checks {
        println!("  {name:<22} {:>5} ok {:>5} failed", t.passed, t.failed);
    }
    Ok(())
}
