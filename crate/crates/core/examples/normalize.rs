//! Zero rows and positive multiples are removed before anything else runs.

use toric_hilbert::intlinalg::normalize_gale;

fn main() -> toric_hilbert::Result<()> {
    let rows = [[1, 0], [0, 0], [0, 1], [2, 0], [-1, -1]];
    let (lattice, log) = normalize_gale(&rows)?;
    println!("input  {rows:?}");
    for step in &log.steps {
        println!("  {step}");
    }
    println!("output {:?}", lattice.rows());
    let reduced = [1, 2, 0];
    println!("x^{reduced:?} in the reduced ring is x^{:?} in the original", log.lift_exponents(&reduced)?);
    Ok(())
}
