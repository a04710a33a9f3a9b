//! Buchberger's algorithm for binomial ideals, initial ideals of the lattice
//! ideal, and its Gröbner fan in the Gale plane.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry2d::{angle_cmp, chamber_complex, cross, Cone2, Ray2, Support};
use crate::graver::GraverBasis;
use crate::ideals::{Binomial, Monomial, MonomialIdeal};
use crate::intlinalg::{dot, GaleLattice};

/// Weight `w` refined by graded lex with `x1 > x2 > ... > xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub w: Vec<i64>,
}

impl TermOrder {
    pub fn new(w: Vec<i64>) -> Self {
        TermOrder { w }
    }

    pub fn weight(&self, m: &Monomial) -> i64 {
        dot(&self.w, m.exps())
    }

    /// Tiebreak when weights agree.
    pub fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
        a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps()))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.weight(a).cmp(&self.weight(b)).then_with(|| TermOrder::grlex(a, b))
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// A polynomial with coefficients in `{±1}` arising from binomial input.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Poly {
    /// `lead − trail`, with `lead` greater in the active order.
    Binomial { lead: Monomial, trail: Monomial },
    Monomial(Monomial),
}

impl Poly {
    pub fn lead(&self) -> &Monomial {
        match self {
            Poly::Binomial { lead, .. } => lead,
            Poly::Monomial(m) => m,
        }
    }

    /// Oriented `a − b`, or `None` when the two agree.
    pub fn binomial(a: Monomial, b: Monomial, ord: &TermOrder) -> Option<Poly> {
        match ord.cmp(&a, &b) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Poly::Binomial { lead: a, trail: b }),
            Ordering::Less => Some(Poly::Binomial { lead: b, trail: a }),
        }
    }

    /// The lattice vector `lead − trail` of a binomial.
    pub fn vector(&self) -> Option<Vec<i64>> {
        match self {
            Poly::Binomial { lead, trail } => Some(Binomial::vector_of(lead, trail)),
            Poly::Monomial(_) => None,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Poly::Binomial { lead, trail } => write!(f, "{lead} - {trail}"),
            Poly::Monomial(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedBasis {
    pub order: TermOrder,
    /// Sorted by marked term.
    pub elements: Vec<Poly>,
    pub reduced: bool,
}

impl MarkedBasis {
    pub fn leading_ideal(&self) -> MonomialIdeal {
        let n = self.order.w.len();
        MonomialIdeal::new(n, self.elements.iter().map(|p| p.lead().clone())).expect("consistent length")
    }
}

/// Fully reduces a monomial; `None` when it reduces to zero.
fn reduce_monomial(m: &Monomial, basis: &[Poly]) -> Option<Monomial> {
    let mut m = m.clone();
    loop {
        let mut step = None;
        for p in basis {
            match p {
                Poly::Monomial(g) if g.divides(&m) => return None,
                Poly::Binomial { lead, trail } if lead.divides(&m) => {
                    step = Some(m.quotient(lead).expect("divides").mul(trail));
                    break;
                }
                _ => {}
            }
        }
        match step {
            Some(next) => m = next,
            None => return Some(m),
        }
    }
}

fn normal_form(p: &Poly, basis: &[Poly], ord: &TermOrder) -> Option<Poly> {
    match p {
        Poly::Monomial(m) => reduce_monomial(m, basis).map(Poly::Monomial),
        Poly::Binomial { lead, trail } => {
            match (reduce_monomial(lead, basis), reduce_monomial(trail, basis)) {
                (None, None) => None,
                (Some(a), None) | (None, Some(a)) => Some(Poly::Monomial(a)),
                (Some(a), Some(b)) => Poly::binomial(a, b, ord),
            }
        }
    }
}

fn s_poly(f: &Poly, g: &Poly, ord: &TermOrder) -> Option<Poly> {
    let m = f.lead().lcm(g.lead());
    let shifted_trail = |p: &Poly| match p {
        Poly::Binomial { lead, trail } => Some(m.quotient(lead).expect("lcm").mul(trail)),
        Poly::Monomial(_) => None,
    };
    match (shifted_trail(f), shifted_trail(g)) {
        (Some(a), Some(b)) => Poly::binomial(a, b, ord),
        (Some(a), None) | (None, Some(a)) => Some(Poly::Monomial(a)),
        (None, None) => None,
    }
}

/// Replaces elements by their normal forms modulo the others until stable.
fn interreduce(mut basis: Vec<Poly>, ord: &TermOrder) -> Vec<Poly> {
    basis.sort();
    basis.dedup();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < basis.len() {
            let p = basis.remove(i);
            match normal_form(&p, &basis, ord) {
                None => changed = true,
                Some(q) => {
                    if q != p {
                        changed = true;
                    }
                    basis.insert(i, q);
                    i += 1;
                }
            }
        }
        if !changed {
            return basis;
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` (binomials,
/// optionally together with monomials).
pub fn buchberger_polys(gens: Vec<Poly>, ord: &TermOrder) -> MarkedBasis {
    let mut basis = interreduce(gens, ord);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut next = 0;
    while next < pairs.len() {
        let (i, j) = pairs[next];
        next += 1;
        if basis[i].lead().is_coprime(basis[j].lead()) {
            continue;
        }
        let Some(s) = s_poly(&basis[i], &basis[j], ord) else { continue };
        if let Some(h) = normal_form(&s, &basis, ord) {
            let k = basis.len();
            basis.push(h);
            pairs.extend((0..k).map(|t| (t, k)));
        }
    }
    // minimal: drop elements whose lead is divisible by another lead
    let mut minimal: Vec<Poly> = Vec::new();
    let mut by_lead = basis;
    by_lead.sort_by(|a, b| ord.cmp(a.lead(), b.lead()));
    for p in by_lead {
        if !minimal.iter().any(|q| q.lead().divides(p.lead())) {
            minimal.push(p);
        }
    }
    let reduced: Vec<Poly> = minimal
        .iter()
        .map(|p| match p {
            Poly::Monomial(m) => Poly::Monomial(m.clone()),
            Poly::Binomial { lead, trail } => match reduce_monomial(trail, &minimal) {
                None => Poly::Monomial(lead.clone()),
                Some(t) => Poly::Binomial { lead: lead.clone(), trail: t },
            },
        })
        .collect();
    let mut elements = reduced;
    elements.sort_by(|a, b| ord.cmp(a.lead(), b.lead()));
    MarkedBasis { order: ord.clone(), elements, reduced: true }
}

pub fn buchberger(gens: &[Binomial], ord: &TermOrder) -> MarkedBasis {
    let polys = gens
        .iter()
        .filter_map(|b| Poly::binomial(b.plus.clone(), b.minus.clone(), ord))
        .collect();
    buchberger_polys(polys, ord)
}

/// An initial ideal containing binomials: `in_w` for `w` on a wall.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WallIdeal {
    pub n: usize,
    pub monomials: Vec<Monomial>,
    /// Pairs `(a, b)` standing for `x^a − x^b`.
    pub binomials: Vec<(Monomial, Monomial)>,
}

impl WallIdeal {
    /// Reduced graded-lex Gröbner basis; equal ideals give equal output.
    pub fn canonical(&self) -> Vec<Poly> {
        let ord = TermOrder::new(vec![0; self.n]);
        let mut gens: Vec<Poly> = self.monomials.iter().cloned().map(Poly::Monomial).collect();
        gens.extend(self.binomials.iter().filter_map(|(a, b)| Poly::binomial(a.clone(), b.clone(), &ord)));
        buchberger_polys(gens, &ord).elements
    }

    pub fn same_ideal(&self, other: &WallIdeal) -> bool {
        self.n == other.n && self.canonical() == other.canonical()
    }

    pub fn binomial_count(&self) -> usize {
        self.binomials.len()
    }
}

impl fmt::Display for WallIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.binomials.iter().map(|(a, b)| format!("{a} - {b}")).collect();
        parts.extend(self.monomials.iter().map(ToString::to_string));
        write!(f, "<{}>", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialIdeal {
    Monomial(MonomialIdeal),
    Wall(WallIdeal),
}

impl InitialIdeal {
    pub fn as_monomial(&self) -> Option<&MonomialIdeal> {
        match self {
            InitialIdeal::Monomial(m) => Some(m),
            InitialIdeal::Wall(_) => None,
        }
    }
}

/// A nonnegative `w` with `w·B` a positive multiple of `gale_w`.
pub fn lift_weight(lattice: &GaleLattice, gale_w: [i64; 2]) -> Result<Vec<i64>> {
    let rows = lattice.rows();
    let n = rows.len();
    if gale_w == [0, 0] {
        return Ok(vec![0; n]);
    }
    for (k, b) in rows.iter().enumerate() {
        if cross(*b, gale_w) == 0 && b[0] * gale_w[0] + b[1] * gale_w[1] > 0 {
            let mut w = vec![0; n];
            w[k] = 1;
            return Ok(w);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let Ok(cone) = Cone2::spanned(rows[i], rows[j]) else { continue };
            if cone.contains(gale_w) {
                let d = cross(rows[i], rows[j]);
                let s = d.signum();
                let mut w = vec![0; n];
                w[i] = s * cross(gale_w, rows[j]);
                w[j] = s * cross(rows[i], gale_w);
                let g = crate::intlinalg::gcd(w[i], w[j]);
                w[i] /= g;
                w[j] /= g;
                return Ok(w);
            }
        }
    }
    Err(Error::WeightOutsideSupport)
}

/// `w` itself when nonnegative, otherwise a nonnegative lift of `w·B`.
pub fn effective_weight(lattice: &GaleLattice, w: &[i64]) -> Result<Vec<i64>> {
    if w.len() != lattice.n() {
        return Err(Error::DimensionMismatch { expected: lattice.n(), got: w.len() });
    }
    if w.iter().all(|&x| x >= 0) {
        return Ok(w.to_vec());
    }
    lift_weight(lattice, lattice.gale_weight(w))
}

/// Reduced Gröbner basis of the lattice ideal for `w` refined by grlex.
pub fn lattice_groebner_basis(lattice: &GaleLattice, graver: &GraverBasis, w: &[i64]) -> Result<MarkedBasis> {
    let w = effective_weight(lattice, w)?;
    let gens: Vec<Binomial> = graver.binomials().cloned().collect();
    Ok(buchberger(&gens, &TermOrder::new(w)))
}

/// `in_w(I_𝓛)` computed from the reduced Gröbner basis for `w` refined by
/// graded lex.
pub fn initial_ideal(lattice: &GaleLattice, graver: &GraverBasis, w: &[i64]) -> Result<InitialIdeal> {
    let gb = lattice_groebner_basis(lattice, graver, w)?;
    Ok(initial_from_basis(&gb))
}

pub fn initial_from_basis(gb: &MarkedBasis) -> InitialIdeal {
    let n = gb.order.w.len();
    let mut monomials = Vec::new();
    let mut binomials = Vec::new();
    for p in &gb.elements {
        match p {
            Poly::Monomial(m) => monomials.push(m.clone()),
            Poly::Binomial { lead, trail } => {
                if gb.order.weight(lead) > gb.order.weight(trail) {
                    monomials.push(lead.clone());
                } else {
                    binomials.push((lead.clone(), trail.clone()));
                }
            }
        }
    }
    if binomials.is_empty() {
        InitialIdeal::Monomial(MonomialIdeal::new(n, monomials).expect("consistent length"))
    } else {
        InitialIdeal::Wall(WallIdeal { n, monomials, binomials })
    }
}

/// A maximal cone of the Gröbner fan in the Gale plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    pub cone: Cone2,
    /// Positions of the boundary rays in [`GroebnerFan2::rays`].
    pub cw: usize,
    pub ccw: usize,
    pub ideal: MonomialIdeal,
    /// A generic nonnegative weight in the cone's interior.
    pub weight: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerFan2 {
    pub support: Support,
    pub rays: Vec<Ray2>,
    pub cones: Vec<FanCone>,
    /// Candidate rays that turned out not to be walls.
    pub merged: Vec<Ray2>,
}

impl GroebnerFan2 {
    pub fn ideals(&self) -> Vec<MonomialIdeal> {
        self.cones.iter().map(|c| c.ideal.clone()).collect()
    }

    /// Positions of the cones adjacent to `k` (sharing a ray).
    pub fn neighbours(&self, k: usize) -> Vec<(usize, Ray2)> {
        let c = &self.cones[k];
        let mut out = Vec::new();
        for (t, d) in self.cones.iter().enumerate() {
            if t == k {
                continue;
            }
            if d.ccw == c.cw {
                out.push((t, self.rays[c.cw]));
            }
            if d.cw == c.ccw {
                out.push((t, self.rays[c.ccw]));
            }
        }
        out
    }

    pub fn locate(&self, v: [i64; 2]) -> Option<usize> {
        self.cones.iter().position(|c| c.cone.contains(v))
    }

    pub fn to_json(&self) -> FanJson {
        FanJson {
            rays: self.rays.iter().map(|r| r.dir).collect(),
            support: self.support.as_str().to_string(),
            cones: self
                .cones
                .iter()
                .map(|c| FanConeJson {
                    rays: [c.cw, c.ccw],
                    ideal: c.ideal.gens().iter().map(|g| g.exps().to_vec()).collect(),
                })
                .collect(),
        }
    }
}

/// Serialized fan: ray positions are 0-based indices into `rays`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub rays: Vec<[i64; 2]>,
    pub support: String,
    pub cones: Vec<FanConeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanConeJson {
    pub rays: [usize; 2],
    pub ideal: Vec<Vec<i64>>,
}

impl FanJson {
    pub fn to_fan(&self, n: usize) -> Result<GroebnerFan2> {
        let support = Support::parse(&self.support)
            .ok_or_else(|| Error::InvalidInput(format!("unknown support {}", self.support)))?;
        let rays = self.rays.iter().map(|&r| Ray2::new(r)).collect::<Result<Vec<_>>>()?;
        let mut cones = Vec::new();
        for c in &self.cones {
            let [cw, ccw] = c.rays;
            if cw >= rays.len() || ccw >= rays.len() {
                return Err(Error::InvalidInput("ray index out of range".into()));
            }
            cones.push(FanCone {
                cone: Cone2::new(rays[cw].dir, rays[ccw].dir)?,
                cw,
                ccw,
                ideal: MonomialIdeal::from_exps(n, &c.ideal)?,
                weight: vec![],
            });
        }
        Ok(GroebnerFan2 { support, rays, cones, merged: vec![] })
    }
}

/// Angle of `a` measured counterclockwise from `start`.
fn angle_cmp_from(start: [i64; 2], a: [i64; 2], b: [i64; 2]) -> Ordering {
    let rot = |v: [i64; 2]| [start[0] * v[0] + start[1] * v[1], cross(start, v)];
    angle_cmp(rot(a), rot(b))
}

/// Initial monomial ideal at a generic point of the open sector between
/// `cw` and `ccw`, with its nonnegative weight.
pub fn sector_ideal(
    lattice: &GaleLattice,
    graver: &GraverBasis,
    cw: [i64; 2],
    ccw: [i64; 2],
) -> Result<(MonomialIdeal, Vec<i64>)> {
    for k in 1..=8 {
        for (a, b) in [(1, 1), (k + 1, 1), (1, k + 1)] {
            let p = [a * cw[0] + b * ccw[0], a * cw[1] + b * ccw[1]];
            let w = lift_weight(lattice, p)?;
            if let InitialIdeal::Monomial(m) = initial_ideal(lattice, graver, &w)? {
                return Ok((m, w));
            }
        }
    }
    Err(Error::NotInFan)
}

/// Gröbner fan by wall candidates: chamber rays and Graver wall rays,
/// sectors compared by their initial ideals, equal neighbours merged.
pub fn groebner_fan(lattice: &GaleLattice, graver: &GraverBasis) -> Result<GroebnerFan2> {
    let cc = chamber_complex(lattice)?;
    let start = cc.rays[0].ray.dir;
    let mut candidates: Vec<Ray2> = cc.rays.iter().map(|r| r.ray).collect();
    for e in graver.elements() {
        let g = e.wall_ray();
        for v in [g, [-g[0], -g[1]]] {
            if cc.in_support_interior(v) {
                let r = Ray2::new(v)?;
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort_by(|a, b| angle_cmp_from(start, a.dir, b.dir));
    let k = candidates.len();
    let cyclic = cc.support == Support::Plane;
    let sector_count = if cyclic { k } else { k - 1 };

    let mut sectors: Vec<(usize, usize, MonomialIdeal, Vec<i64>)> = Vec::with_capacity(sector_count);
    for t in 0..sector_count {
        let (a, b) = (t, (t + 1) % k);
        let (ideal, w) = sector_ideal(lattice, graver, candidates[a].dir, candidates[b].dir)?;
        sectors.push((a, b, ideal, w));
    }

    // merge equal neighbours; for the plane, also across the wrap-around
    let mut merged_rays: Vec<usize> = Vec::new();
    let mut groups: Vec<(usize, usize, MonomialIdeal, Vec<i64>)> = Vec::new();
    for s in sectors {
        match groups.last_mut() {
            Some(last) if last.2 == s.2 => {
                merged_rays.push(last.1);
                last.1 = s.1;
            }
            _ => groups.push(s),
        }
    }
    if cyclic && groups.len() > 1 && groups[0].2 == groups[groups.len() - 1].2 {
        let last = groups.pop().expect("nonempty");
        merged_rays.push(last.1);
        groups[0].0 = last.0;
    }

    let mut used: Vec<usize> = groups.iter().flat_map(|g| [g.0, g.1]).collect();
    used.sort_unstable();
    used.dedup();
    // keep the fan order starting at the support's first ray
    let rays: Vec<Ray2> = used.iter().map(|&i| candidates[i]).collect();
    let pos = |i: usize| used.iter().position(|&u| u == i).expect("used ray");
    let mut cones: Vec<FanCone> = groups
        .into_iter()
        .map(|(a, b, ideal, weight)| {
            Ok(FanCone {
                cone: Cone2::new(candidates[a].dir, candidates[b].dir)?,
                cw: pos(a),
                ccw: pos(b),
                ideal,
                weight,
            })
        })
        .collect::<Result<_>>()?;
    cones.sort_by_key(|c| c.cw);
    let merged = merged_rays.into_iter().map(|i| candidates[i]).collect();
    Ok(GroebnerFan2 { support: cc.support, rays, cones, merged })
}
