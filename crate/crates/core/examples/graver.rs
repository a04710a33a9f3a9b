//! Graver basis of the running lattice, checked against box enumeration.

use toric_hilbert::graver::{graver_basis, graver_box_stable};
use toric_hilbert::intlinalg::GaleLattice;

fn main() -> toric_hilbert::Result<()> {
    let lattice = GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]])?;
    let graver = graver_basis(&lattice)?;
    for e in graver.elements() {
        println!("{:<20} l = {:?}  wall ray {:?}", e.binomial.to_string(), e.binomial.l, e.wall_ray());
    }
    let run = graver_box_stable(&lattice, 512)?;
    println!("box enumeration agrees: {} (stable at radius {})", run.basis == graver, run.radius);
    Ok(())
}
