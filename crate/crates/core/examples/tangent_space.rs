//! Degree-zero tangent dimensions next to flip counts.

use toric_hilbert::hilbert_scheme::{flips, tangent_dimension, ToricHilbertScheme};
use toric_hilbert::intlinalg::GaleLattice;

fn main() -> toric_hilbert::Result<()> {
    for rows in [vec![[2, 0], [0, 1], [-2, 1], [-2, 0]], vec![[1, 0], [0, 1], [-1, -1]], vec![[3, 1], [1, -2], [-4, 5], [2, 2]]] {
        let scheme = ToricHilbertScheme::new(GaleLattice::new(rows.clone())?)?;
        println!("{rows:?}");
        for ideal in scheme.ideals() {
            let d = tangent_dimension(&ideal, &scheme.lattice, scheme.cap)?;
            println!("  dim {d}, flips {}: {ideal}", flips(&scheme, &ideal)?.len());
        }
    }
    Ok(())
}
