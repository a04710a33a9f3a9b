//! Random lattices through the verification report.

use std::time::Instant;

use toric_hilbert::hilbert_scheme::{fuzz, VerifyOptions};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let count = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(20);
    let start = Instant::now();
    let cases = fuzz(seed, count, &VerifyOptions::default());
    let mut failed = 0;
    for c in &cases {
        let names: Vec<&str> = c.failures.iter().map(|f| f.name.as_str()).collect();
        println!("{:?} -> {} ideals {}", c.basis, c.ideals, if names.is_empty() { "ok".to_string() } else { format!("FAILED {names:?}") });
        if !c.failures.is_empty() {
            failed += 1;
            for f in &c.failures {
                println!("    {}: {}", f.name, f.witness);
            }
        }
    }
    let skipped = cases.iter().filter(|c| c.oracle_skipped).count();
    println!("exhaustive oracle skipped on {skipped}");
    println!("{failed} of {} failed in {:.1?}", cases.len(), start.elapsed());
}
