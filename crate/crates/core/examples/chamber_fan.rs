//! Chambers of the Gale diagram and the Gröbner fan refining them. Writes
//! the fan as SVG to the path given as the first argument, if any.

use toric_hilbert::cli::render::fan_svg;
use toric_hilbert::geometry2d::chamber_complex;
use toric_hilbert::graver::graver_basis;
use toric_hilbert::groebner::groebner_fan;
use toric_hilbert::intlinalg::GaleLattice;

fn main() -> toric_hilbert::Result<()> {
    let lattice = GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]])?;
    let chambers = chamber_complex(&lattice)?;
    println!("support: {}", chambers.support.as_str());
    for c in &chambers.chambers {
        println!("chamber pos(b{}, b{}) = {:?} .. {:?}", c.i + 1, c.j + 1, c.cone.cw.dir, c.cone.ccw.dir);
    }
    let fan = groebner_fan(&lattice, &graver_basis(&lattice)?)?;
    for c in &fan.cones {
        println!("cone {:?} .. {:?}: {}", c.cone.cw.dir, c.cone.ccw.dir, c.ideal);
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, fan_svg(&fan)).expect("writable path");
        println!("wrote {path}");
    }
    Ok(())
}
