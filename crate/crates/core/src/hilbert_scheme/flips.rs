//! Flips of monomial ideals and coherence of the wall ideals between them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry2d::Ray2;
use crate::graver::GraverBasis;
use crate::groebner::{initial_ideal, lift_weight, InitialIdeal, WallIdeal};
use crate::ideals::{standard_monomial, Binomial, Monomial, MonomialIdeal};
use crate::intlinalg::dot;

use super::ToricHilbertScheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FlipKind {
    True,
    Fake,
}

/// `x^u − x^v` for a minimal generator `x^u` and its standard monomial `x^v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flip {
    pub binomial: Binomial,
    pub kind: FlipKind,
    /// The ideal on the other side of the wall, for true flips.
    pub target: Option<MonomialIdeal>,
    /// The fan ray crossed by a true flip.
    pub wall: Option<Ray2>,
}

impl Flip {
    pub fn generator(&self) -> &Monomial {
        &self.binomial.plus
    }

    pub fn standard(&self) -> &Monomial {
        &self.binomial.minus
    }
}

impl fmt::Display for Flip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.binomial)
    }
}

/// `⟨x^α ∈ M : α ≠ u, x^α − x^β ∈ ±Gr, x^β ∉ M⟩ + ⟨x^v⟩`.
pub fn flip_target_formula(m: &MonomialIdeal, u: &Monomial, v: &Monomial, graver: &GraverBasis) -> MonomialIdeal {
    let mut gens = vec![v.clone()];
    for b in graver.oriented() {
        if &b.plus != u && m.contains(&b.plus) && !m.contains(&b.minus) {
            gens.push(b.plus);
        }
    }
    MonomialIdeal::new(m.n(), gens).expect("consistent length")
}

fn supports_disjoint_from_others(ideal: &MonomialIdeal, u: &Monomial) -> bool {
    ideal.gens().iter().filter(|g| *g != u).all(|g| g.is_coprime(u))
}

/// The two flips of an ideal of the fan.
pub fn flips(scheme: &ToricHilbertScheme, ideal: &MonomialIdeal) -> Result<Vec<Flip>> {
    let k = scheme.position(ideal).ok_or(Error::NotInFan)?;
    let fan = &scheme.fan;
    let cone = &fan.cones[k];
    let boundary = [fan.rays[cone.cw], fan.rays[cone.ccw]];
    let mut out = Vec::new();
    for u in ideal.gens() {
        let v = standard_monomial(ideal, u, &scheme.lattice, scheme.cap)?;
        let binomial = Binomial::from_vector(Binomial::vector_of(u, &v));
        if v.is_one() {
            if supports_disjoint_from_others(ideal, u) {
                out.push(Flip { binomial, kind: FlipKind::Fake, target: None, wall: None });
            }
            continue;
        }
        let z = scheme
            .lattice
            .solve(&binomial.l)
            .ok_or_else(|| Error::InvalidInput(format!("{binomial} is not a lattice binomial")))?;
        let g = Ray2::new([-z[1], z[0]])?;
        let minus_g = Ray2::new([z[1], -z[0]])?;
        let Some(wall) = boundary
            .iter()
            .copied()
            .find(|r| (*r == g || *r == minus_g) && scheme.chambers.in_support_interior(r.dir))
        else {
            continue;
        };
        let neighbour = fan
            .neighbours(k)
            .into_iter()
            .find(|(_, r)| *r == wall)
            .map(|(t, _)| fan.cones[t].ideal.clone())
            .ok_or_else(|| Error::FlipTargetMismatch(format!("no cone beyond ray {:?}", wall.dir)))?;
        let formula = flip_target_formula(ideal, u, &v, &scheme.graver);
        if formula != neighbour {
            return Err(Error::FlipTargetMismatch(format!(
                "flip {binomial} of {ideal}: formula gives {formula}, adjacent cone has {neighbour}"
            )));
        }
        out.push(Flip { binomial, kind: FlipKind::True, target: Some(formula), wall: Some(wall) });
    }
    if out.len() != 2 {
        return Err(Error::FlipCountViolation { found: out.len() });
    }
    Ok(out)
}

/// `I` with the generator `x^u` replaced by `x^u − x^v`.
pub fn wall_ideal(ideal: &MonomialIdeal, flip: &Flip) -> WallIdeal {
    WallIdeal {
        n: ideal.n(),
        monomials: ideal.gens().iter().filter(|g| *g != flip.generator()).cloned().collect(),
        binomials: vec![(flip.generator().clone(), flip.standard().clone())],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallBranch {
    /// `(w₀·l)w₁ − (w₁·l)w₀` from the witnesses of the two ideals.
    Composite,
    /// A nonnegative lift of the shared wall ray.
    WallRayLift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallWitness {
    pub flip: Flip,
    pub wall: WallIdeal,
    pub weight: Vec<i64>,
    pub branch: WallBranch,
}

fn is_wall_at(scheme: &ToricHilbertScheme, w: &[i64], wall: &WallIdeal) -> Result<bool> {
    Ok(match initial_ideal(&scheme.lattice, &scheme.graver, w)? {
        InitialIdeal::Wall(got) => got.same_ideal(wall),
        InitialIdeal::Monomial(_) => false,
    })
}

/// A weight whose initial ideal is the wall ideal between `I` and `J`.
pub fn wall_coherence_witness(
    scheme: &ToricHilbertScheme,
    i: &MonomialIdeal,
    j: &MonomialIdeal,
) -> Result<WallWitness> {
    if i == j {
        return Err(Error::InvalidPair("the two ideals are equal".into()));
    }
    let flip = flips(scheme, i)?
        .into_iter()
        .find(|f| f.target.as_ref() == Some(j))
        .ok_or_else(|| Error::InvalidPair(format!("{i} and {j} are not joined by a true flip")))?;
    let wall = wall_ideal(i, &flip);
    let w0 = &scheme.records[scheme.position(i).ok_or(Error::NotInFan)?].witness;
    let w1 = &scheme.records[scheme.position(j).ok_or(Error::NotInFan)?].witness;
    let l = &flip.binomial.l;
    let (a, b) = (dot(w0, l), dot(w1, l));
    let composite: Vec<i64> = w1.iter().zip(w0).map(|(x1, x0)| a * x1 - b * x0).collect();
    if is_wall_at(scheme, &composite, &wall)? {
        return Ok(WallWitness { flip, wall, weight: composite, branch: WallBranch::Composite });
    }
    let ray = flip.wall.expect("true flips carry their wall");
    let lifted = lift_weight(&scheme.lattice, ray.dir)?;
    if is_wall_at(scheme, &lifted, &wall)? {
        return Ok(WallWitness { flip, wall, weight: lifted, branch: WallBranch::WallRayLift });
    }
    Err(Error::WallNotCoherent(format!("{wall}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlinalg::GaleLattice;

    fn running() -> ToricHilbertScheme {
        ToricHilbertScheme::new(GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]]).unwrap()).unwrap()
    }

    fn describe(fs: &[Flip]) -> Vec<(String, FlipKind)> {
        let mut v: Vec<_> = fs.iter().map(|f| (f.to_string(), f.kind)).collect();
        v.sort();
        v
    }

    #[test]
    fn endpoint_flips() {
        let s = running();
        let ideals = s.ideals();
        let f = flips(&s, &ideals[0]).unwrap();
        assert_eq!(
            describe(&f),
            vec![
                ("x1^2 - x3^2*x4^2".to_string(), FlipKind::True),
                ("x2*x3 - 1".to_string(), FlipKind::Fake),
            ]
        );
        let t = f.iter().find(|f| f.kind == FlipKind::True).unwrap();
        assert_eq!(t.target.as_ref(), Some(&ideals[1]));
    }

    #[test]
    fn interior_flips() {
        let s = running();
        let ideals = s.ideals();
        let f = flips(&s, &ideals[1]).unwrap();
        assert_eq!(
            describe(&f),
            vec![
                ("x1^2*x2 - x3*x4^2".to_string(), FlipKind::True),
                ("x3^2*x4^2 - x1^2".to_string(), FlipKind::True),
            ]
        );
    }

    #[test]
    fn identity_has_two_fake_flips() {
        let s = ToricHilbertScheme::new(GaleLattice::new(vec![[1, 0], [0, 1]]).unwrap()).unwrap();
        let f = flips(&s, &s.ideals()[0]).unwrap();
        assert_eq!(
            describe(&f),
            vec![("x1 - 1".to_string(), FlipKind::Fake), ("x2 - 1".to_string(), FlipKind::Fake)]
        );
    }

    #[test]
    fn wall_witnesses() {
        let s = running();
        let ideals = s.ideals();
        for k in 0..3 {
            let w = wall_coherence_witness(&s, &ideals[k], &ideals[k + 1]).unwrap();
            assert_eq!(dot(&w.weight, &w.flip.binomial.l), 0);
            assert!(w.weight.iter().all(|&x| x >= 0));
        }
        let w = wall_coherence_witness(&s, &ideals[1], &ideals[2]).unwrap();
        assert_eq!(w.flip.to_string(), "x1^2*x2 - x3*x4^2");
        assert_eq!(
            wall_coherence_witness(&s, &ideals[0], &ideals[0]).unwrap_err(),
            Error::InvalidPair("the two ideals are equal".into())
        );
        assert!(matches!(wall_coherence_witness(&s, &ideals[0], &ideals[2]), Err(Error::InvalidPair(_))));
    }
}
