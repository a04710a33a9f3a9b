//! Monomials, binomials and monomial ideals.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry2d::{chamber_complex, simplices_containing, Chamber};
use crate::intlinalg::GaleLattice;

/// `x^u` for a nonnegative exponent vector `u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Result<Self> {
        if exps.iter().any(|&e| e < 0) {
            return Err(Error::InvalidInput(format!("negative exponent in {exps:?}")));
        }
        Ok(Monomial { exps })
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize, power: i64) -> Self {
        let mut exps = vec![0; n];
        exps[i] = power;
        Monomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// 0-based indices of variables with positive exponent.
    pub fn support(&self) -> BTreeSet<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn divides_exps(&self, other: &[i64]) -> bool {
        self.exps.iter().zip(other).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    /// `self / other` when `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Squarefree part.
    pub fn radical(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&e| e.min(1)).collect() }
    }

    /// Sets `x_j = 1` for `j ∉ vars` and keeps the remaining coordinates.
    pub fn restrict(&self, vars: &[usize]) -> Monomial {
        Monomial { exps: vars.iter().map(|&j| self.exps[j]).collect() }
    }

    /// Inverse of [`restrict`](Self::restrict) with zeros elsewhere.
    pub fn extend(&self, vars: &[usize], n: usize) -> Monomial {
        let mut exps = vec![0; n];
        for (&j, &e) in vars.iter().zip(&self.exps) {
            exps[j] = e;
        }
        Monomial { exps }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// A lattice vector `l` with its binomial `x^{l⁺} − x^{l⁻}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub l: Vec<i64>,
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    pub fn from_vector(l: Vec<i64>) -> Self {
        let plus = Monomial { exps: l.iter().map(|&x| x.max(0)).collect() };
        let minus = Monomial { exps: l.iter().map(|&x| (-x).max(0)).collect() };
        Binomial { l, plus, minus }
    }

    /// `x^a − x^b` for arbitrary monomials; the common factor is kept
    /// in the monomials but cancels in `l`.
    pub fn vector_of(a: &Monomial, b: &Monomial) -> Vec<i64> {
        a.exps.iter().zip(&b.exps).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self) -> Binomial {
        Binomial::from_vector(self.l.iter().map(|x| -x).collect())
    }

    pub fn n(&self) -> usize {
        self.l.len()
    }

    /// Conformal order: `self ⊑ other`.
    pub fn conformally_below(&self, other: &Binomial) -> bool {
        conformal_le(&self.l, &other.l)
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// `a ⊑ b`: `a⁺ ≤ b⁺` and `a⁻ ≤ b⁻` componentwise.
pub fn conformal_le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| if x > 0 { y >= x } else if x < 0 { y <= x } else { true })
}

/// An ideal generated by monomials, stored by its sorted minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(n: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            if g.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.n() });
            }
        }
        Ok(MonomialIdeal { n, gens: minimalize(gens) })
    }

    pub fn from_exps<R: AsRef<[i64]>>(n: usize, gens: &[R]) -> Result<Self> {
        let gens = gens.iter().map(|g| Monomial::new(g.as_ref().to_vec())).collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(n, gens)
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![] }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, gens: vec![Monomial::one(n)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_exps(&self, u: &[i64]) -> bool {
        self.gens.iter().any(|g| g.divides_exps(u))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal { n: self.n, gens: minimalize(self.gens.iter().map(Monomial::radical).collect()) }
    }

    /// Minimal primes `P_σ = ⟨x_j : j ∉ σ⟩`, returned as the sets `σ`
    /// (0-based, sorted).
    pub fn minimal_primes(&self) -> Result<Vec<BTreeSet<usize>>> {
        if self.is_unit() {
            return Err(Error::NotProper);
        }
        let supports: Vec<BTreeSet<usize>> = self.radical().gens.iter().map(Monomial::support).collect();
        let covers = minimal_covers(&supports);
        let mut out: Vec<BTreeSet<usize>> = covers
            .into_iter()
            .map(|c| (0..self.n).filter(|j| !c.contains(j)).collect())
            .collect();
        out.sort();
        Ok(out)
    }

    /// `π_σ(I)`: sets `x_j = 1` for `j ∈ σ`.
    pub fn localize(&self, sigma: &BTreeSet<usize>) -> Localized {
        let vars: Vec<usize> = (0..self.n).filter(|j| !sigma.contains(j)).collect();
        let gens = self.gens.iter().map(|g| g.restrict(&vars));
        let ideal = MonomialIdeal { n: vars.len(), gens: minimalize(gens.collect()) };
        Localized { vars, ideal }
    }

    /// Exponent of the pure-power generator in variable `i`, if any.
    pub fn pure_power(&self, i: usize) -> Option<i64> {
        self.gens
            .iter()
            .find(|g| g.support().into_iter().eq(std::iter::once(i)))
            .map(|g| g.exps[i])
    }

    /// Every variable has a pure power among the generators.
    pub fn is_artinian(&self) -> bool {
        self.is_unit() || (0..self.n).all(|i| self.pure_power(i).is_some())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        MonomialIdeal { n: self.n, gens: minimalize(gens) }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.gens.serialize(s)
    }
}

/// A localization `π_σ(I)` in the variables `vars = σ̄`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Localized {
    pub vars: Vec<usize>,
    pub ideal: MonomialIdeal,
}

impl Localized {
    /// The same generators read in the full ring of `n` variables.
    pub fn extend(&self, n: usize) -> MonomialIdeal {
        let gens = self.ideal.gens.iter().map(|g| g.extend(&self.vars, n)).collect();
        MonomialIdeal { n, gens: minimalize(gens) }
    }
}

impl fmt::Display for Localized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.extend(self.vars.iter().max().map_or(0, |m| m + 1)))
    }
}

/// Sorted minimal elements under divisibility, deduplicated.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| (g.degree(), g.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

/// Inclusion-minimal sets meeting every support.
fn minimal_covers(supports: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    fn go(supports: &[BTreeSet<usize>], chosen: &mut BTreeSet<usize>, out: &mut Vec<BTreeSet<usize>>) {
        match supports.iter().find(|s| s.is_disjoint(chosen)) {
            None => out.push(chosen.clone()),
            Some(s) => {
                for &v in s {
                    chosen.insert(v);
                    go(supports, chosen, out);
                    chosen.remove(&v);
                }
            }
        }
    }
    let mut all = Vec::new();
    go(supports, &mut BTreeSet::new(), &mut all);
    all.sort_by_key(|c| c.len());
    let mut minimal: Vec<BTreeSet<usize>> = Vec::new();
    for c in all {
        if !minimal.iter().any(|m| m.is_subset(&c)) {
            minimal.push(c);
        }
    }
    minimal
}

/// The coset `u + 𝓛`, by its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeClass {
    pub canonical: Vec<i64>,
}

impl DegreeClass {
    pub fn of(lattice: &GaleLattice, u: &[i64]) -> Self {
        DegreeClass { canonical: lattice.reduce_mod_lattice(u) }
    }
}

/// The chamber whose containing simplices `pos(b_i, b_j)` are exactly the
/// complements of the minimal primes of `I`.
pub fn delta_chamber(ideal: &MonomialIdeal, lattice: &GaleLattice) -> Result<Chamber> {
    let primes = ideal.minimal_primes()?;
    let mut pairs = BTreeSet::new();
    for sigma in &primes {
        let comp: Vec<usize> = (0..ideal.n()).filter(|j| !sigma.contains(j)).collect();
        if comp.len() != 2 {
            return Err(Error::NotAChamber(format!("minimal prime of height {}", comp.len())));
        }
        pairs.insert((comp[0], comp[1]));
    }
    let cc = chamber_complex(lattice)?;
    cc.chambers
        .into_iter()
        .find(|c| simplices_containing(lattice, &c.cone) == pairs)
        .ok_or_else(|| Error::NotAChamber(format!("{ideal}")))
}

/// Default radius for [`standard_monomial`].
pub fn default_cap(lattice: &GaleLattice, u: &[i64]) -> i64 {
    let mu = u.iter().map(|x| x.abs()).max().unwrap_or(0);
    let mb = lattice.rows().iter().flat_map(|r| r.iter()).map(|x| x.abs()).max().unwrap_or(0);
    10 * (1 + mu + mb)
}

/// The monomial of degree `u + 𝓛` outside `I`, found by searching
/// `z ∈ ℤ²` with `B·z ≤ u` in square shells of radius up to `cap`.
pub fn standard_monomial(
    ideal: &MonomialIdeal,
    u: &Monomial,
    lattice: &GaleLattice,
    cap: Option<i64>,
) -> Result<Monomial> {
    if !ideal.contains(u) {
        return Ok(u.clone());
    }
    let cap = cap.unwrap_or_else(|| default_cap(lattice, u.exps()));
    let rows = lattice.rows();
    let mut buf = vec![0i64; u.n()];
    let mut try_z = |z: [i64; 2]| -> Option<Monomial> {
        for (k, b) in rows.iter().enumerate() {
            let v = u.exps[k] - (b[0] * z[0] + b[1] * z[1]);
            if v < 0 {
                return None;
            }
            buf[k] = v;
        }
        (!ideal.contains_exps(&buf)).then(|| Monomial { exps: buf.clone() })
    };
    for r in 1..=cap {
        for t in -r..=r {
            for z in [[t, r], [t, -r], [r, t], [-r, t]] {
                if let Some(m) = try_z(z) {
                    return Ok(m);
                }
            }
        }
    }
    Err(Error::CapExceeded { cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[i64]]) -> MonomialIdeal {
        MonomialIdeal::from_exps(n, gens).unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn running() -> GaleLattice {
        GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]]).unwrap()
    }

    #[test]
    fn minimalization() {
        let i = ideal(2, &[&[2, 0], &[1, 0], &[1, 1], &[0, 3]]);
        assert_eq!(i, ideal(2, &[&[0, 3], &[1, 0]]));
    }

    #[test]
    fn primes_row1() {
        // ⟨x2x3, x1²⟩ → σ ∈ {{3,4},{2,4}}
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 0, 0, 0]]);
        assert_eq!(i.minimal_primes().unwrap(), vec![set(&[1, 3]), set(&[2, 3])]);
    }

    #[test]
    fn primes_row2() {
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 1, 0, 0], &[0, 0, 2, 2]]);
        // primes ⟨x1,x3⟩, ⟨x2,x3⟩, ⟨x2,x4⟩
        assert_eq!(
            i.minimal_primes().unwrap(),
            vec![set(&[0, 2]), set(&[0, 3]), set(&[1, 3])]
        );
    }

    #[test]
    fn primes_trivial_and_unit() {
        assert_eq!(ideal(2, &[&[1, 0]]).minimal_primes().unwrap(), vec![set(&[1])]);
        assert_eq!(MonomialIdeal::unit(2).minimal_primes().unwrap_err(), Error::NotProper);
    }

    #[test]
    fn radicals() {
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 0, 0, 0]]);
        assert_eq!(i.radical(), ideal(4, &[&[0, 1, 1, 0], &[1, 0, 0, 0]]));
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 1, 0, 0], &[0, 0, 2, 2]]);
        assert_eq!(i.radical(), ideal(4, &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]]));
        let r = i.radical();
        assert_eq!(r.radical(), r);
    }

    #[test]
    fn localization() {
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 1, 0, 0], &[0, 0, 2, 2]]);
        let loc = i.localize(&set(&[0, 3]));
        assert_eq!(loc.vars, vec![1, 2]);
        assert_eq!(loc.ideal, ideal(2, &[&[1, 0], &[0, 2]]));
        assert_eq!(i.localize(&set(&[])).ideal, i);
        let j = ideal(4, &[&[0, 1, 1, 0], &[0, 0, 0, 2]]);
        assert!(j.localize(&set(&[1, 2])).ideal.is_unit());
    }

    #[test]
    fn artinian_and_pure_powers() {
        let i = ideal(2, &[&[1, 0], &[0, 2]]);
        assert!(i.is_artinian());
        assert_eq!(i.pure_power(1), Some(2));
        assert!(!ideal(2, &[&[1, 1]]).is_artinian());
    }

    #[test]
    fn standard_monomials() {
        let l = running();
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 1, 0, 0], &[0, 0, 2, 2]]);
        // x1² is standard; x3²x4² ≡ x1² is not
        let x1sq = Monomial::new(vec![2, 0, 0, 0]).unwrap();
        assert_eq!(standard_monomial(&i, &x1sq, &l, None).unwrap(), x1sq);
        let m = Monomial::new(vec![0, 0, 2, 2]).unwrap();
        assert_eq!(standard_monomial(&i, &m, &l, None).unwrap(), x1sq);
        let x2x3 = Monomial::new(vec![0, 1, 1, 0]).unwrap();
        assert_eq!(standard_monomial(&i, &x2x3, &l, None).unwrap(), Monomial::one(4));
    }

    #[test]
    fn standard_monomial_cap() {
        let l = running();
        // ⟨1⟩ has no standard monomials
        let err = standard_monomial(&MonomialIdeal::unit(4), &Monomial::one(4), &l, Some(3)).unwrap_err();
        assert_eq!(err, Error::CapExceeded { cap: 3 });
    }

    #[test]
    fn degree_classes_match_membership() {
        let l = running();
        let a = [3, 1, 0, 2];
        let b: Vec<i64> = a.iter().zip(l.lattice_vector([1, 1])).map(|(x, y)| x + y).collect();
        assert_eq!(DegreeClass::of(&l, &a), DegreeClass::of(&l, &b));
        let diff: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        assert!(l.solve(&diff).is_some());
    }

    #[test]
    fn chambers_of_ideals() {
        let l = running();
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 1, 0, 0], &[0, 0, 2, 2]]);
        assert_eq!(delta_chamber(&i, &l).unwrap().pair(), (2, 1));
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 0, 0, 0]]);
        assert_eq!(delta_chamber(&i, &l).unwrap().pair(), (1, 0));
        let i = ideal(4, &[&[0, 1, 1, 0], &[0, 0, 0, 2]]);
        assert_eq!(delta_chamber(&i, &l).unwrap().pair(), (3, 2));
        let bad = ideal(4, &[&[0, 1, 1, 0]]);
        assert!(matches!(delta_chamber(&bad, &l), Err(Error::NotAChamber(_))));
    }

    #[test]
    fn display() {
        let i = ideal(4, &[&[0, 1, 1, 0], &[2, 0, 0, 0]]);
        assert_eq!(i.to_string(), "<x2*x3, x1^2>");
        let b = Binomial::from_vector(vec![2, 0, -2, -2]);
        assert_eq!(b.to_string(), "x1^2 - x3^2*x4^2");
    }

    #[test]
    fn conformal() {
        assert!(conformal_le(&[1, 0, -1], &[2, 1, -1]));
        assert!(!conformal_le(&[1, 0, -1], &[2, -1, 0]));
    }
}
