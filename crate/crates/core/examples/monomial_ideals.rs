//! Every monomial ideal with its radical, special simplex, special
//! localization and coherence witness.

use toric_hilbert::hilbert_scheme::ToricHilbertScheme;
use toric_hilbert::intlinalg::GaleLattice;

fn main() -> toric_hilbert::Result<()> {
    let scheme = ToricHilbertScheme::new(GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]])?)?;
    for r in &scheme.records {
        let sigma: Vec<usize> = r.simplex.sigma.iter().map(|k| k + 1).collect();
        println!("{}", r.ideal);
        println!("  radical       {}", r.ideal.radical());
        println!("  simplex       {sigma:?}");
        println!("  localization  {}", r.localization.extend(r.ideal.n()));
        println!("  witness       {:?}", r.witness);
    }
    Ok(())
}
