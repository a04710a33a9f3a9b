//! Monomial `𝓛`-graded ideals and their neighbourhoods: special simplices,
//! coherence witnesses, flips, wall ideals and tangent spaces.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geometry2d::{chamber_complex, cross, ChamberComplex, Cone2};
use crate::graver::{forced_ideal, graver_basis, GraverBasis};
use crate::groebner::{groebner_fan, initial_ideal, FanCone, GroebnerFan2, InitialIdeal};
use crate::ideals::{delta_chamber, Localized, MonomialIdeal};
use crate::intlinalg::GaleLattice;

pub mod flip_graph;
pub mod flips;
pub mod oracle;
pub mod tangent;
pub mod verify;

pub use flip_graph::{flip_graph, FlipGraph, GraphShape};
pub use flips::{flip_target_formula, flips, wall_coherence_witness, wall_ideal, Flip, FlipKind, WallBranch, WallWitness};
pub use oracle::{exhaustive_ideal_oracle, monomial_count, OracleParams};
pub use tangent::tangent_dimension;
pub use verify::{fuzz, random_lattice, verify, Check, FuzzCase, VerificationReport, VerifyOptions};

/// `σ = [n] ∖ {i, j}` for the chamber `pos(b_i, b_j)` of an ideal, with
/// `b_i` on the counterclockwise ray. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpecialSimplex {
    pub sigma: BTreeSet<usize>,
    pub i: usize,
    pub j: usize,
}

impl SpecialSimplex {
    /// The two complementary indices in ascending order.
    pub fn vars(&self) -> [usize; 2] {
        [self.i.min(self.j), self.i.max(self.j)]
    }
}

pub fn special_simplex(ideal: &MonomialIdeal, lattice: &GaleLattice) -> Result<SpecialSimplex> {
    let chamber = delta_chamber(ideal, lattice)?;
    let (i, j) = chamber.pair();
    let sigma = (0..lattice.n()).filter(|&k| k != i && k != j).collect();
    Ok(SpecialSimplex { sigma, i, j })
}

pub fn special_localization(ideal: &MonomialIdeal, simplex: &SpecialSimplex) -> Localized {
    ideal.localize(&simplex.sigma)
}

/// The weight `w_i = b`, `w_j = a` built from the pure powers `x_i^a`,
/// `x_j^b` of the special localization, checked against `in_w(I_𝓛)`.
pub fn coherence_witness(ideal: &MonomialIdeal, lattice: &GaleLattice, graver: &GraverBasis) -> Result<Vec<i64>> {
    let simplex = special_simplex(ideal, lattice)?;
    let loc = special_localization(ideal, &simplex);
    let local_index = |k: usize| loc.vars.iter().position(|&v| v == k).expect("complement variable");
    let power = |k: usize| {
        loc.ideal
            .pure_power(local_index(k))
            .ok_or_else(|| Error::WitnessFailed(format!("{} has no pure power in x{}", loc.ideal, k + 1)))
    };
    let (a, b) = (power(simplex.i)?, power(simplex.j)?);
    let mut w = vec![0; lattice.n()];
    w[simplex.i] = b;
    w[simplex.j] = a;
    match initial_ideal(lattice, graver, &w)? {
        InitialIdeal::Monomial(m) if &m == ideal => Ok(w),
        other => Err(Error::WitnessFailed(format!("in_w for w = {w:?} is {other:?}, expected {ideal}"))),
    }
}

/// The projection of `𝓛` to the coordinates `vars`, as a Gale lattice.
pub fn projected_lattice(lattice: &GaleLattice, vars: [usize; 2]) -> Result<GaleLattice> {
    GaleLattice::new(vec![lattice.row(vars[0]), lattice.row(vars[1])])
}

/// The ideal of a maximal Gröbner cone, rebuilt as the forced ideal of the
/// initial ideal of the projected lattice.
pub fn monomial_ideal_for_cone(cone: &Cone2, lattice: &GaleLattice, graver: &GraverBasis) -> Result<MonomialIdeal> {
    let chambers = chamber_complex(lattice)?;
    let k = chambers.locate_cone(cone).ok_or(Error::NotInFan)?;
    let (i, j) = chambers.chambers[k].pair();
    let vars = [i.min(j), i.max(j)];
    let local = projected_lattice(lattice, vars)?;
    let local_graver = graver_basis(&local)?;
    let (bi, bj) = (lattice.row(vars[0]), lattice.row(vars[1]));
    let s = cross(bi, bj).signum();
    for t in 1..=8 {
        for (p, q) in [(1, 1), (t + 1, 1), (1, t + 1)] {
            let w = [p * cone.cw.dir[0] + q * cone.ccw.dir[0], p * cone.cw.dir[1] + q * cone.ccw.dir[1]];
            let local_w = [s * cross(w, bj), s * cross(bi, w)];
            if let InitialIdeal::Monomial(m) = initial_ideal(&local, &local_graver, &local_w)? {
                let extended = Localized { vars: vars.to_vec(), ideal: m }.extend(lattice.n());
                return forced_ideal(&extended, graver);
            }
        }
    }
    Err(Error::NotInFan)
}

/// One ideal per maximal cone of the fan, each rebuilt from its special
/// localization and compared with the cone's initial ideal.
pub fn enumerate_monomial_ideals(lattice: &GaleLattice, graver: &GraverBasis) -> Result<Vec<(FanCone, MonomialIdeal)>> {
    let fan = groebner_fan(lattice, graver)?;
    fan.cones
        .into_iter()
        .map(|c| {
            let m = monomial_ideal_for_cone(&c.cone, lattice, graver)?;
            if m != c.ideal {
                return Err(Error::NotInFan);
            }
            Ok((c, m))
        })
        .collect()
}

/// Per-ideal data in fan order.
#[derive(Debug, Clone)]
pub struct IdealRecord {
    pub ideal: MonomialIdeal,
    pub simplex: SpecialSimplex,
    pub localization: Localized,
    pub witness: Vec<i64>,
}

/// Everything computed for one lattice.
#[derive(Debug, Clone)]
pub struct ToricHilbertScheme {
    pub lattice: GaleLattice,
    pub graver: GraverBasis,
    pub chambers: ChamberComplex,
    pub fan: GroebnerFan2,
    pub records: Vec<IdealRecord>,
    /// Radius override for standard monomial searches.
    pub cap: Option<i64>,
}

impl ToricHilbertScheme {
    pub fn new(lattice: GaleLattice) -> Result<Self> {
        ToricHilbertScheme::with_cap(lattice, None)
    }

    pub fn with_cap(lattice: GaleLattice, cap: Option<i64>) -> Result<Self> {
        let graver = graver_basis(&lattice)?;
        let chambers = chamber_complex(&lattice)?;
        let fan = groebner_fan(&lattice, &graver)?;
        let mut records = Vec::with_capacity(fan.cones.len());
        for c in &fan.cones {
            let ideal = c.ideal.clone();
            let simplex = special_simplex(&ideal, &lattice)?;
            let localization = special_localization(&ideal, &simplex);
            let witness = coherence_witness(&ideal, &lattice, &graver)?;
            records.push(IdealRecord { ideal, simplex, localization, witness });
        }
        Ok(ToricHilbertScheme { lattice, graver, chambers, fan, records, cap })
    }

    pub fn ideals(&self) -> Vec<MonomialIdeal> {
        self.records.iter().map(|r| r.ideal.clone()).collect()
    }

    /// Fan position of an ideal.
    pub fn position(&self, ideal: &MonomialIdeal) -> Option<usize> {
        self.records.iter().position(|r| &r.ideal == ideal)
    }
}
