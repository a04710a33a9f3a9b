//! Graver bases of rank-two lattices, the weak-gradedness test and forced
//! ideals.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry2d::{angle_cmp, hilbert_basis, ordered_rays, Cone2, Lattice2};
use crate::ideals::{conformal_le, Binomial, Monomial, MonomialIdeal};
use crate::intlinalg::GaleLattice;

/// One Graver element with its coordinates `z = φ⁻¹(l)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GraverElement {
    #[serde(flatten)]
    pub binomial: Binomial,
    #[serde(skip)]
    pub z: [i64; 2],
}

impl GraverElement {
    /// The ray of the Gale plane whose clockwise normal is `z`.
    pub fn wall_ray(&self) -> [i64; 2] {
        [-self.z[1], self.z[0]]
    }
}

/// Stored with `z₁ > 0`, or `z₁ = 0` and `z₂ < 0`, sorted by the angle of
/// [`GraverElement::wall_ray`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GraverBasis {
    elements: Vec<GraverElement>,
}

fn canonical_sign(z: [i64; 2]) -> bool {
    z[0] > 0 || (z[0] == 0 && z[1] < 0)
}

impl GraverBasis {
    /// Builds the basis from lattice vectors given up to sign.
    pub fn from_vectors(lattice: &GaleLattice, vectors: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut elements = Vec::new();
        for l in vectors {
            let z = lattice
                .solve(&l)
                .ok_or_else(|| Error::InvalidInput(format!("{l:?} is not in the lattice")))?;
            let (l, z) = if canonical_sign(z) { (l, z) } else { (l.iter().map(|x| -x).collect(), [-z[0], -z[1]]) };
            if seen.insert(z) {
                elements.push(GraverElement { binomial: Binomial::from_vector(l), z });
            }
        }
        elements.sort_by(|a, b| angle_cmp(a.wall_ray(), b.wall_ray()));
        Ok(GraverBasis { elements })
    }

    pub fn elements(&self) -> &[GraverElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn binomials(&self) -> impl Iterator<Item = &Binomial> {
        self.elements.iter().map(|e| &e.binomial)
    }

    /// Both orientations of every element.
    pub fn oriented(&self) -> impl Iterator<Item = Binomial> + '_ {
        self.elements.iter().flat_map(|e| [e.binomial.clone(), e.binomial.neg()])
    }

    pub fn contains_vector(&self, l: &[i64]) -> bool {
        self.elements.iter().any(|e| {
            e.binomial.l == l || e.binomial.l.iter().zip(l).all(|(a, b)| *a == -*b)
        })
    }

    pub fn max_degree(&self) -> i64 {
        self.elements
            .iter()
            .map(|e| e.binomial.plus.degree().max(e.binomial.minus.degree()))
            .max()
            .unwrap_or(0)
    }

    /// Set of canonical vectors, for order-independent comparison.
    pub fn vector_set(&self) -> HashSet<Vec<i64>> {
        self.elements.iter().map(|e| e.binomial.l.clone()).collect()
    }
}

/// Subtracts elements of `basis` conformally below `s` until none is.
fn conformal_reduce(mut s: Vec<i64>, basis: &[Vec<i64>]) -> Vec<i64> {
    'outer: loop {
        if s.iter().all(|&x| x == 0) {
            return s;
        }
        for g in basis {
            if conformal_le(g, &s) {
                for (a, b) in s.iter_mut().zip(g) {
                    *a -= b;
                }
                continue 'outer;
            }
        }
        return s;
    }
}

/// ⊑-minimal elements of a set of nonzero vectors.
fn conformal_minimal(mut vectors: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    vectors.sort_by_key(|v| v.iter().map(|x| x.abs()).sum::<i64>());
    vectors.dedup();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for v in vectors {
        if !out.iter().any(|m| conformal_le(m, &v)) {
            out.push(v);
        }
    }
    out
}

/// Completion: seed with `±` columns of `B`, add conformally reduced pair
/// sums until every sum reduces to zero, keep the ⊑-minimal elements.
pub fn graver_basis(lattice: &GaleLattice) -> Result<GraverBasis> {
    let n = lattice.n();
    let columns: Vec<Vec<i64>> = (0..2).map(|c| lattice.rows().iter().map(|r| r[c]).collect()).collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for c in &columns {
        basis.push(c.clone());
        basis.push(c.iter().map(|x| -x).collect());
    }
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for i in 0..basis.len() {
        for j in 0..i {
            queue.push_back((j, i));
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        let s: Vec<i64> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
        let r = conformal_reduce(s, &basis);
        if r.iter().any(|&x| x != 0) {
            let k = basis.len();
            basis.push(r);
            for t in 0..k {
                queue.push_back((t, k));
            }
        }
    }
    debug_assert!(basis.iter().all(|v| v.len() == n));
    let minimal = conformal_minimal(basis.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect());
    GraverBasis::from_vectors(lattice, minimal)
}

/// ⊑-minimal nonzero elements among `B·z`, `z ∈ [−M, M]²`.
pub fn graver_box_oracle(lattice: &GaleLattice, radius: i64) -> Result<GraverBasis> {
    let mut vectors = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            if (a, b) != (0, 0) {
                vectors.push(lattice.lattice_vector([a, b]));
            }
        }
    }
    GraverBasis::from_vectors(lattice, conformal_minimal(vectors))
}

/// Every pairwise sum (of both orientations) reduces to zero.
pub fn is_completion_closed(basis: &GraverBasis) -> bool {
    let all: Vec<Vec<i64>> = basis.oriented().map(|b| b.l).collect();
    for i in 0..all.len() {
        for j in 0..i {
            let s: Vec<i64> = all[i].iter().zip(&all[j]).map(|(a, b)| a + b).collect();
            if conformal_reduce(s, &all).iter().any(|&x| x != 0) {
                return false;
            }
        }
    }
    true
}

/// Result of running the box oracle to stabilization.
#[derive(Debug, Clone)]
pub struct BoxOracleRun {
    pub basis: GraverBasis,
    pub radius: i64,
}

/// The elements generate `𝓛`.
pub fn spans_lattice(basis: &GraverBasis) -> bool {
    let zs: Vec<[i64; 2]> = basis.elements().iter().map(|e| e.z).collect();
    Lattice2::spanned_by(&zs).is_ok_and(|l| l.det().abs() == 1)
}

/// Doubles the radius until the box output is unchanged for two doublings,
/// generates the lattice and passes the closure test.
pub fn graver_box_stable(lattice: &GaleLattice, max_radius: i64) -> Result<BoxOracleRun> {
    let mut radius = 1;
    let mut prev = graver_box_oracle(lattice, radius)?;
    let mut unchanged = 0;
    while radius < max_radius {
        radius *= 2;
        let next = graver_box_oracle(lattice, radius)?;
        if next.vector_set() == prev.vector_set() {
            unchanged += 1;
            if unchanged >= 2 && spans_lattice(&next) && is_completion_closed(&next) {
                return Ok(BoxOracleRun { basis: next, radius });
            }
        } else {
            unchanged = 0;
        }
        prev = next;
    }
    Err(Error::CapExceeded { cap: max_radius })
}

/// Graver basis as the union of Hilbert bases of the closed regions cut out
/// of ℤ² by the lines `b_i · z = 0`.
pub fn graver_by_regions(lattice: &GaleLattice) -> Result<GraverBasis> {
    let mut dirs = Vec::new();
    for b in lattice.rows() {
        dirs.push([-b[1], b[0]]);
        dirs.push([b[1], -b[0]]);
    }
    let (rays, _) = ordered_rays(&dirs)?;
    let k = rays.len();
    let mut vectors = Vec::new();
    for t in 0..k {
        let cone = Cone2::new(rays[t], rays[(t + 1) % k])?;
        for z in hilbert_basis(&cone, &Lattice2::standard())? {
            vectors.push(lattice.lattice_vector(z));
        }
    }
    GraverBasis::from_vectors(lattice, vectors)
}

/// Every Graver binomial has at least one term in `I`.
pub fn is_weakly_graded(ideal: &MonomialIdeal, graver: &GraverBasis) -> bool {
    graver.binomials().all(|b| ideal.contains(&b.plus) || ideal.contains(&b.minus))
}

/// The ideal generated by the Graver terms whose partner lies outside `M`.
pub fn forced_ideal(m: &MonomialIdeal, graver: &GraverBasis) -> Result<MonomialIdeal> {
    if !is_weakly_graded(m, graver) {
        return Err(Error::NotWeaklyGraded);
    }
    let mut gens: Vec<Monomial> = Vec::new();
    for b in graver.binomials() {
        if !m.contains(&b.minus) {
            gens.push(b.plus.clone());
        }
        if !m.contains(&b.plus) {
            gens.push(b.minus.clone());
        }
    }
    MonomialIdeal::new(m.n(), gens)
}
