//! Rational cones in the plane: angular order, the chamber complex of a Gale
//! diagram, and Hilbert bases relative to a chosen lattice.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlinalg::{det2, hnf, primitive2, GaleLattice, IntMat};

pub fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    det2(a, b)
}

fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angle from the positive x-axis, compared exactly.
/// Parallel vectors with the same direction compare equal.
pub fn angle_cmp(a: [i64; 2], b: [i64; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// A primitive nonzero direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ray2 {
    pub dir: [i64; 2],
}

impl Ray2 {
    pub fn new(v: [i64; 2]) -> Result<Self> {
        Ok(Ray2 { dir: primitive2(v)? })
    }
}

/// A pointed two-dimensional cone. `cw` is the clockwise boundary ray,
/// `ccw` the counterclockwise one; `cross(cw, ccw) > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cone2 {
    pub cw: Ray2,
    pub ccw: Ray2,
}

impl Cone2 {
    pub fn new(cw: [i64; 2], ccw: [i64; 2]) -> Result<Self> {
        let (cw, ccw) = (Ray2::new(cw)?, Ray2::new(ccw)?);
        if cross(cw.dir, ccw.dir) <= 0 {
            return Err(Error::InvalidInput(format!(
                "cone rays {:?}, {:?} are not a pointed counterclockwise pair",
                cw.dir, ccw.dir
            )));
        }
        Ok(Cone2 { cw, ccw })
    }

    /// The cone spanned by two independent vectors, in either order.
    pub fn spanned(a: [i64; 2], b: [i64; 2]) -> Result<Self> {
        match cross(a, b).signum() {
            1 => Cone2::new(a, b),
            -1 => Cone2::new(b, a),
            _ => Err(Error::RankDeficient { rank: 1 }),
        }
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        cross(self.cw.dir, v) >= 0 && cross(v, self.ccw.dir) >= 0
    }

    pub fn contains_interior(&self, v: [i64; 2]) -> bool {
        cross(self.cw.dir, v) > 0 && cross(v, self.ccw.dir) > 0
    }

    pub fn contains_cone(&self, other: &Cone2) -> bool {
        self.contains(other.cw.dir) && self.contains(other.ccw.dir)
    }

    /// An integral point in the interior.
    pub fn interior_point(&self) -> [i64; 2] {
        [self.cw.dir[0] + self.ccw.dir[0], self.cw.dir[1] + self.ccw.dir[1]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    Pointed,
    Halfplane,
    Plane,
}

impl Support {
    pub fn as_str(&self) -> &'static str {
        match self {
            Support::Pointed => "pointed",
            Support::Halfplane => "halfplane",
            Support::Plane => "plane",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pointed" => Some(Support::Pointed),
            "halfplane" => Some(Support::Halfplane),
            "plane" => Some(Support::Plane),
            _ => None,
        }
    }
}

/// Distinct primitive directions sorted by angle, plus the support type.
/// For non-plane supports the list starts just after the widest gap, so
/// consecutive entries bound the cones of the support.
pub fn ordered_rays(vectors: &[[i64; 2]]) -> Result<(Vec<[i64; 2]>, Support)> {
    let mut dirs: Vec<[i64; 2]> = Vec::new();
    for &v in vectors {
        if v == [0, 0] {
            continue;
        }
        let d = primitive2(v)?;
        if !dirs.contains(&d) {
            dirs.push(d);
        }
    }
    if dirs.len() < 2 {
        return Err(Error::DegenerateGale);
    }
    dirs.sort_by(|a, b| angle_cmp(*a, *b));
    let k = dirs.len();
    // gap from dirs[t] to dirs[t+1]
    let mut wide = None;
    let mut support = Support::Plane;
    for t in 0..k {
        let c = cross(dirs[t], dirs[(t + 1) % k]);
        if c < 0 {
            wide = Some(t);
            support = Support::Pointed;
        } else if c == 0 {
            // opposite directions: a straight gap
            if support == Support::Plane {
                support = Support::Halfplane;
                wide = Some(t);
            }
        }
    }
    if let Some(t) = wide {
        dirs.rotate_left((t + 1) % k);
    }
    if support != Support::Plane && k == 2 && cross(dirs[0], dirs[1]) == 0 {
        return Err(Error::DegenerateGale);
    }
    Ok((dirs, support))
}

/// Whether the vectors positively span the plane.
pub fn is_positively_spanning(vectors: &[[i64; 2]]) -> bool {
    matches!(ordered_rays(vectors), Ok((_, Support::Plane)))
}

/// A ray of the chamber complex together with the Gale vectors on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleRay {
    pub ray: Ray2,
    /// 0-based indices `k` with `pos(b_k)` equal to this ray, ascending.
    pub sources: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub cone: Cone2,
    /// Lowest-index Gale vector on the counterclockwise ray.
    pub i: usize,
    /// Lowest-index Gale vector on the clockwise ray.
    pub j: usize,
}

impl Chamber {
    pub fn pair(&self) -> (usize, usize) {
        (self.i, self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberComplex {
    pub support: Support,
    pub rays: Vec<GaleRay>,
    pub chambers: Vec<Chamber>,
}

impl ChamberComplex {
    /// Index of a chamber containing `v` (closed cones), the first in order.
    pub fn locate(&self, v: [i64; 2]) -> Option<usize> {
        self.chambers.iter().position(|c| c.cone.contains(v))
    }

    /// Index of the unique chamber containing the cone.
    pub fn locate_cone(&self, cone: &Cone2) -> Option<usize> {
        self.chambers.iter().position(|c| c.cone.contains_cone(cone))
    }

    pub fn in_support(&self, v: [i64; 2]) -> bool {
        self.locate(v).is_some()
    }

    /// In the support and not on its boundary rays.
    pub fn in_support_interior(&self, v: [i64; 2]) -> bool {
        if v == [0, 0] || !self.in_support(v) {
            return false;
        }
        match self.support {
            Support::Plane => true,
            _ => {
                let first = self.rays[0].ray.dir;
                let last = self.rays[self.rays.len() - 1].ray.dir;
                Ray2::new(v).map(|r| r.dir != first && r.dir != last).unwrap_or(false)
            }
        }
    }

    /// Boundary rays of the support (empty for the plane).
    pub fn boundary_rays(&self) -> Vec<Ray2> {
        match self.support {
            Support::Plane => vec![],
            _ => vec![self.rays[0].ray, self.rays[self.rays.len() - 1].ray],
        }
    }
}

pub fn chamber_complex(lattice: &GaleLattice) -> Result<ChamberComplex> {
    let rows = lattice.rows();
    let (dirs, support) = ordered_rays(rows)?;
    let rays: Vec<GaleRay> = dirs
        .iter()
        .map(|&d| GaleRay {
            ray: Ray2 { dir: d },
            sources: (0..rows.len())
                .filter(|&k| rows[k] != [0, 0] && primitive2(rows[k]).ok() == Some(d))
                .collect(),
        })
        .collect();
    let k = rays.len();
    let count = if support == Support::Plane { k } else { k - 1 };
    let mut chambers = Vec::with_capacity(count);
    for t in 0..count {
        let (cw, ccw) = (&rays[t], &rays[(t + 1) % k]);
        chambers.push(Chamber {
            cone: Cone2::new(cw.ray.dir, ccw.ray.dir)?,
            i: ccw.sources[0],
            j: cw.sources[0],
        });
    }
    Ok(ChamberComplex { support, rays, chambers })
}

/// All pairs `i < j` of independent Gale vectors with `chamber ⊆ pos(b_i, b_j)`.
pub fn simplices_containing(lattice: &GaleLattice, chamber: &Cone2) -> BTreeSet<(usize, usize)> {
    let rows = lattice.rows();
    let mut out = BTreeSet::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if let Ok(cone) = Cone2::spanned(rows[i], rows[j]) {
                if cone.contains_cone(chamber) {
                    out.insert((i, j));
                }
            }
        }
    }
    out
}

/// A full-rank lattice in ℤ² given by two basis vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice2 {
    pub basis: [[i64; 2]; 2],
}

impl Lattice2 {
    pub fn standard() -> Self {
        Lattice2 { basis: [[1, 0], [0, 1]] }
    }

    pub fn new(e1: [i64; 2], e2: [i64; 2]) -> Result<Self> {
        if det2(e1, e2) == 0 {
            return Err(Error::RankDeficient { rank: if e1 == [0, 0] && e2 == [0, 0] { 0 } else { 1 } });
        }
        Ok(Lattice2 { basis: [e1, e2] })
    }

    /// The lattice generated by the given vectors.
    pub fn spanned_by(vectors: &[[i64; 2]]) -> Result<Self> {
        let (h, _) = hnf(&IntMat::from_i64(vectors, 2)?);
        let rows = h.to_i64()?;
        let nonzero: Vec<&Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
        if nonzero.len() < 2 {
            return Err(Error::RankDeficient { rank: nonzero.len() });
        }
        Lattice2::new([nonzero[0][0], nonzero[0][1]], [nonzero[1][0], nonzero[1][1]])
    }

    pub fn det(&self) -> i64 {
        det2(self.basis[0], self.basis[1])
    }

    fn scaled_coords(&self, v: [i64; 2]) -> [i64; 2] {
        // det · coordinates of v
        let [e1, e2] = self.basis;
        [det2(v, e2), det2(e1, v)]
    }

    /// Coordinates in the lattice basis, when `v` is a lattice point.
    pub fn coords(&self, v: [i64; 2]) -> Option<[i64; 2]> {
        let d = self.det();
        let [a, b] = self.scaled_coords(v);
        (a % d == 0 && b % d == 0).then(|| [a / d, b / d])
    }

    pub fn point(&self, c: [i64; 2]) -> [i64; 2] {
        let [e1, e2] = self.basis;
        [c[0] * e1[0] + c[1] * e2[0], c[0] * e1[1] + c[1] * e2[1]]
    }

    /// Lattice coordinates of the primitive lattice generator of `pos(v)`.
    pub fn primitive_coords(&self, v: [i64; 2]) -> Result<[i64; 2]> {
        let [a, b] = self.scaled_coords(v);
        let s = self.det().signum();
        primitive2([a * s, b * s])
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        self.coords(v).is_some()
    }
}

/// Hilbert basis of `K ∩ lat`, ordered clockwise from the counterclockwise
/// ray to the clockwise ray.
pub fn hilbert_basis(cone: &Cone2, lat: &Lattice2) -> Result<Vec<[i64; 2]>> {
    if lat.det() == 0 {
        return Err(Error::RankDeficient { rank: 1 });
    }
    let u = lat.primitive_coords(cone.cw.dir)?;
    let v = lat.primitive_coords(cone.ccw.dir)?;
    let mut points = zonotope_points(u, v);
    let set: HashSet<[i64; 2]> = points.iter().copied().collect();
    points.retain(|&p| {
        !set.iter().any(|&q| q != p && set.contains(&[p[0] - q[0], p[1] - q[1]]))
    });
    let mut out: Vec<[i64; 2]> = points.into_iter().map(|c| lat.point(c)).collect();
    out.sort_by(|a, b| 0.cmp(&cross(*b, *a)));
    Ok(out)
}

/// Nonzero integer points of `{λu + μv : 0 ≤ λ, μ ≤ 1}`.
fn zonotope_points(u: [i64; 2], v: [i64; 2]) -> Vec<[i64; 2]> {
    let d = det2(u, v);
    let (s, d) = (d.signum(), d.abs());
    let xs = [0, u[0], v[0], u[0] + v[0]];
    let ys = [0, u[1], v[1], u[1] + v[1]];
    let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            if x == 0 && y == 0 {
                continue;
            }
            let p = [x, y];
            // λ = det(p, v)/det(u, v), μ = det(u, p)/det(u, v)
            let lam = s * det2(p, v);
            let mu = s * det2(u, p);
            if (0..=d).contains(&lam) && (0..=d).contains(&mu) {
                out.push(p);
            }
        }
    }
    out
}

pub fn is_unimodular(cone: &Cone2, lat: &Lattice2) -> bool {
    match (lat.primitive_coords(cone.cw.dir), lat.primitive_coords(cone.ccw.dir)) {
        (Ok(u), Ok(v)) => det2(u, v).abs() == 1,
        _ => false,
    }
}

/// Clockwise normal without primitivization.
pub fn perp(g: [i64; 2]) -> [i64; 2] {
    [g[1], -g[0]]
}

/// For a Hilbert basis listed clockwise from `ccw` to `cw`, both
/// `cw · g_k^⊥` and `ccw · g_k^⊥` strictly decrease along the list.
pub fn is_creeping(cone: &Cone2, basis: &[[i64; 2]]) -> bool {
    let dot = |a: [i64; 2], b: [i64; 2]| a[0] * b[0] + a[1] * b[1];
    let (r, s) = (cone.ccw.dir, cone.cw.dir);
    basis.windows(2).all(|w| {
        let (p, q) = (perp(w[0]), perp(w[1]));
        dot(s, p) > dot(s, q) && dot(r, p) > dot(r, q)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn running() -> GaleLattice {
        GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]]).unwrap()
    }

    #[test]
    fn angular_order() {
        let mut v = vec![[-1, 0], [0, 1], [1, 0], [-2, 1], [-1, 1], [0, -1], [1, -1]];
        v.sort_by(|a, b| angle_cmp(*a, *b));
        assert_eq!(v, vec![[1, 0], [0, 1], [-1, 1], [-2, 1], [-1, 0], [0, -1], [1, -1]]);
    }

    #[test]
    fn running_chambers() {
        let cc = chamber_complex(&running()).unwrap();
        assert_eq!(cc.support, Support::Halfplane);
        let pairs: Vec<(usize, usize)> = cc.chambers.iter().map(Chamber::pair).collect();
        // pos(b1,b2), pos(b2,b3), pos(b3,b4) as (ccw, cw)
        assert_eq!(pairs, vec![(1, 0), (2, 1), (3, 2)]);
        assert_eq!(cc.chambers[1].cone, Cone2::new([0, 1], [-2, 1]).unwrap());
    }

    #[test]
    fn identity_chambers() {
        let cc = chamber_complex(&GaleLattice::new(vec![[1, 0], [0, 1]]).unwrap()).unwrap();
        assert_eq!(cc.support, Support::Pointed);
        assert_eq!(cc.chambers.len(), 1);
    }

    #[test]
    fn cyclic_chambers() {
        let l = GaleLattice::new(vec![[1, 0], [0, 1], [-1, -1]]).unwrap();
        assert!(l.is_cyclic());
        let cc = chamber_complex(&l).unwrap();
        assert_eq!(cc.support, Support::Plane);
        assert_eq!(cc.chambers.len(), 3);
    }

    #[test]
    fn pointed_support_starts_after_gap() {
        let (dirs, s) = ordered_rays(&[[1, -1], [1, 1], [1, 0]]).unwrap();
        assert_eq!(s, Support::Pointed);
        assert_eq!(dirs, vec![[1, -1], [1, 0], [1, 1]]);
    }

    #[test]
    fn coincident_rays_merge() {
        let l = GaleLattice::new(vec![[2, 0], [3, 0], [0, 1]]).unwrap();
        let cc = chamber_complex(&l).unwrap();
        assert_eq!(cc.rays.len(), 2);
        assert_eq!(cc.rays[0].sources, vec![0, 1]);
    }

    #[test]
    fn degenerate() {
        assert_eq!(ordered_rays(&[[1, 0], [2, 0]]).unwrap_err(), Error::DegenerateGale);
        assert_eq!(ordered_rays(&[[1, 0], [-1, 0]]).unwrap_err(), Error::DegenerateGale);
    }

    #[test]
    fn hilbert_middle_chamber() {
        let k = Cone2::new([0, 1], [-2, 1]).unwrap();
        let hb = hilbert_basis(&k, &Lattice2::standard()).unwrap();
        assert_eq!(hb, vec![[-2, 1], [-1, 1], [0, 1]]);
        assert!(is_creeping(&k, &hb));
    }

    #[test]
    fn hilbert_quadrant() {
        let k = Cone2::new([1, 0], [0, 1]).unwrap();
        assert_eq!(hilbert_basis(&k, &Lattice2::standard()).unwrap(), vec![[0, 1], [1, 0]]);
    }

    #[test]
    fn hilbert_thin_cone() {
        let k = Cone2::new([1, 0], [1, 5]).unwrap();
        let hb = hilbert_basis(&k, &Lattice2::standard()).unwrap();
        assert_eq!(hb, vec![[1, 5], [1, 4], [1, 3], [1, 2], [1, 1], [1, 0]]);
        assert!(is_creeping(&k, &hb));
        for w in hb.windows(2) {
            assert!(is_unimodular(&Cone2::spanned(w[0], w[1]).unwrap(), &Lattice2::standard()));
        }
    }

    #[test]
    fn hilbert_in_sublattice() {
        // ℤ𝓑 of the running example is 2ℤ × ℤ
        let lat = Lattice2::spanned_by(running().rows()).unwrap();
        assert_eq!(lat.det().abs(), 2);
        let k = Cone2::new([0, 1], [-2, 1]).unwrap();
        assert_eq!(hilbert_basis(&k, &lat).unwrap(), vec![[-2, 1], [0, 1]]);
        assert!(is_unimodular(&k, &lat));
    }

    #[test]
    fn unimodularity() {
        let z2 = Lattice2::standard();
        assert!(is_unimodular(&Cone2::new([0, 1], [-1, 1]).unwrap(), &z2));
        assert!(!is_unimodular(&Cone2::new([0, 1], [-2, 1]).unwrap(), &z2));
        assert!(is_unimodular(&Cone2::new([1, 0], [0, 1]).unwrap(), &z2));
    }

    #[test]
    fn simplices_for_chamber() {
        let l = running();
        let cc = chamber_complex(&l).unwrap();
        let s = simplices_containing(&l, &cc.chambers[0].cone);
        assert_eq!(s, [(0, 1), (0, 2)].into_iter().collect());
    }

    #[test]
    fn support_interior() {
        let cc = chamber_complex(&running()).unwrap();
        assert!(cc.in_support_interior([-1, 1]));
        assert!(!cc.in_support_interior([1, 0]));
        assert!(!cc.in_support_interior([-3, 0]));
        assert!(!cc.in_support([0, -1]));
    }
}
