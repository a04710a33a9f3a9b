//! The verification report for one lattice, one line per check.

use toric_hilbert::hilbert_scheme::{verify, VerifyOptions};
use toric_hilbert::intlinalg::GaleLattice;

fn main() -> toric_hilbert::Result<()> {
    let lattice = GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]])?;
    let report = verify(&lattice, &VerifyOptions::default());
    for c in &report.checks {
        println!("{} {:<32} {}", if c.pass { "pass" } else { "FAIL" }, c.name, c.reference);
    }
    println!("{} ideals, graph {:?}, overall {}", report.ideals.len(), report.shape, report.overall);
    Ok(())
}
