//! Flips of each ideal and a weight realizing every wall ideal.

use toric_hilbert::hilbert_scheme::{flip_graph, flips, wall_coherence_witness, FlipKind, ToricHilbertScheme};
use toric_hilbert::intlinalg::GaleLattice;

fn main() -> toric_hilbert::Result<()> {
    let scheme = ToricHilbertScheme::new(GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]])?)?;
    for ideal in scheme.ideals() {
        println!("{ideal}");
        for f in flips(&scheme, &ideal)? {
            match (&f.kind, &f.target) {
                (FlipKind::True, Some(t)) => {
                    let w = wall_coherence_witness(&scheme, &ideal, t)?;
                    println!("  {:<20} -> {t}  wall weight {:?} ({:?})", f.to_string(), w.weight, w.branch);
                }
                _ => println!("  {:<20} fake", f.to_string()),
            }
        }
    }
    print!("{}", flip_graph(&scheme)?.to_dot());
    Ok(())
}
