//! Exact integer linear algebra.
//!
//! Hermite normal forms and integer kernels run on arbitrary-precision
//! integers. Lattice vectors, exponents and cost vectors are `i64`; every
//! conversion out of `BigInt` is checked.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry2d;

/// A vector of arbitrary-precision integers.
pub type IntVec = Vec<BigInt>;

/// A rectangular matrix of arbitrary-precision integers, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: Vec<IntVec>,
    ncols: usize,
}

impl IntMat {
    pub fn new(rows: Vec<IntVec>, ncols: usize) -> Result<Self> {
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: row.len() });
            }
        }
        Ok(IntMat { rows, ncols })
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R], ncols: usize) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMat::new(rows, ncols)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        IntMat { rows, ncols: n }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[IntVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &IntVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.ncols != other.nrows() {
            return Err(Error::DimensionMismatch { expected: self.ncols, got: other.nrows() });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..other.ncols)
                    .map(|j| {
                        row.iter()
                            .zip(&other.rows)
                            .fold(BigInt::zero(), |acc, (a, orow)| acc + a * &orow[j])
                    })
                    .collect()
            })
            .collect();
        Ok(IntMat { rows, ncols: other.ncols })
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Rows that are not identically zero.
    pub fn nonzero_rows(&self) -> Vec<IntVec> {
        self.rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect()
    }

    pub fn to_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.rows.iter().map(|r| to_i64_vec(r)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let src = self.rows[source].clone();
        for (t, s) in self.rows[target].iter_mut().zip(&src) {
            *t -= factor * s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.rows[i].iter_mut() {
            *x = -x.clone();
        }
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", entries.join(","))?;
        }
        write!(f, "]")
    }
}

pub(crate) fn to_i64_vec(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(x.to_string())))
        .collect()
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * M = H`. Nonzero rows of `H` come first, in echelon order, with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let nrows = m.nrows();
    let mut h = m.clone();
    let mut u = IntMat::identity(nrows);
    let mut pivot_row = 0;

    for col in 0..m.ncols() {
        if pivot_row == nrows {
            break;
        }
        loop {
            let smallest = (pivot_row..nrows)
                .filter(|&i| !h.rows[i][col].is_zero())
                .min_by(|&a, &b| h.rows[a][col].abs().cmp(&h.rows[b][col].abs()));
            let Some(p) = smallest else { break };
            h.swap_rows(pivot_row, p);
            u.swap_rows(pivot_row, p);
            let mut done = true;
            for i in pivot_row + 1..nrows {
                if h.rows[i][col].is_zero() {
                    continue;
                }
                let q = h.rows[i][col].div_floor(&h.rows[pivot_row][col]);
                h.sub_row_multiple(i, pivot_row, &q);
                u.sub_row_multiple(i, pivot_row, &q);
                if !h.rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.rows[pivot_row][col].is_zero() {
            continue;
        }
        if h.rows[pivot_row][col].is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = h.rows[i][col].div_floor(&h.rows[pivot_row][col]);
            h.sub_row_multiple(i, pivot_row, &q);
            u.sub_row_multiple(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

pub fn rank(m: &IntMat) -> usize {
    hnf(m).0.nonzero_rows().len()
}

/// A ℤ-basis of `{a : a·B = 0}`, canonicalized to Hermite normal form.
pub fn integer_kernel(b: &IntMat) -> Result<IntMat> {
    let (h, u) = hnf(b);
    let r = h.nonzero_rows().len();
    if r < b.ncols() {
        return Err(Error::RankDeficient { rank: r });
    }
    let kernel_rows: Vec<IntVec> = u.rows[r..].to_vec();
    if kernel_rows.is_empty() {
        return IntMat::new(vec![], b.nrows());
    }
    let kernel = IntMat::new(kernel_rows, b.nrows())?;
    let (hk, _) = hnf(&kernel);
    IntMat::new(hk.nonzero_rows(), b.nrows())
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Divides out the gcd of the entries, preserving direction.
pub fn primitive(v: &[i64]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

pub fn primitive2(v: [i64; 2]) -> Result<[i64; 2]> {
    let p = primitive(&v)?;
    Ok([p[0], p[1]])
}

/// The primitive clockwise normal `(a, b) ↦ (b, −a)`.
pub fn clockwise_normal(g: [i64; 2]) -> Result<[i64; 2]> {
    let [a, b] = primitive2(g)?;
    Ok([b, -a])
}

/// Inverse of [`clockwise_normal`] on primitive vectors: the ray whose
/// clockwise normal is `z`.
pub fn ray_with_normal(z: [i64; 2]) -> Result<[i64; 2]> {
    let [a, b] = primitive2(z)?;
    Ok([-b, a])
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// One logged rewrite performed while normalizing a Gale diagram.
/// Indices refer to the rows of the original input, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormalizationStep {
    /// `b_index = 0`; the variable never appears.
    DroppedZero { index: usize },
    /// `b_dropped = multiplier · b_kept`; substitution `x_kept ↦ x_dropped^multiplier · x_kept`.
    Merged { dropped: usize, kept: usize, multiplier: i64 },
}

impl fmt::Display for NormalizationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalizationStep::DroppedZero { index } => write!(f, "dropped zero row b{}", index + 1),
            NormalizationStep::Merged { dropped, kept, multiplier } => write!(
                f,
                "b{} = {}·b{}: substitute x{} -> x{}^{}*x{}",
                dropped + 1,
                multiplier,
                kept + 1,
                kept + 1,
                dropped + 1,
                multiplier,
                kept + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationLog {
    pub original_n: usize,
    pub steps: Vec<NormalizationStep>,
    /// Original indices of the surviving rows, in order.
    pub kept: Vec<usize>,
}

impl NormalizationLog {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Maps an exponent vector of the reduced ring back to the original ring
    /// by undoing the substitutions in reverse order.
    pub fn lift_exponents(&self, reduced: &[i64]) -> Result<Vec<i64>> {
        if reduced.len() != self.kept.len() {
            return Err(Error::DimensionMismatch { expected: self.kept.len(), got: reduced.len() });
        }
        let mut out = vec![0i64; self.original_n];
        for (&orig, &e) in self.kept.iter().zip(reduced) {
            out[orig] = e;
        }
        for step in self.steps.iter().rev() {
            if let NormalizationStep::Merged { dropped, kept, multiplier } = *step {
                out[dropped] = multiplier * out[kept];
            }
        }
        Ok(out)
    }
}

/// A rank-two lattice `𝓛 = B·ℤ²` given by its Gale diagram, the rows of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleLattice {
    rows: Vec<[i64; 2]>,
    kernel: IntMat,
    cyclic: bool,
    /// Two rows with nonzero determinant, used to invert `z ↦ Bz`.
    solve_pair: (usize, usize),
    /// Hermite basis of `𝓛` as vectors in ℤⁿ: (pivot column, row).
    class_basis: Vec<(usize, Vec<i64>)>,
}

impl GaleLattice {
    pub fn new(rows: Vec<[i64; 2]>) -> Result<Self> {
        let n = rows.len();
        let b = IntMat::from_i64(&rows, 2)?;
        let r = rank(&b);
        if r < 2 {
            return Err(Error::RankDeficient { rank: r });
        }
        let kernel = integer_kernel(&b)?;
        let cyclic = geometry2d::is_positively_spanning(&rows);
        let mut solve_pair = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                if det2(rows[i], rows[j]) != 0 {
                    solve_pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let solve_pair = solve_pair.ok_or(Error::RankDeficient { rank: 1 })?;

        let columns: Vec<Vec<i64>> = (0..2).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
        let (h, _) = hnf(&IntMat::from_i64(&columns, n)?);
        let mut class_basis = Vec::new();
        for row in h.nonzero_rows() {
            let row = to_i64_vec(&row)?;
            let pivot = row.iter().position(|&x| x != 0).expect("nonzero row");
            class_basis.push((pivot, row));
        }
        Ok(GaleLattice { rows, kernel, cyclic, solve_pair, class_basis })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Gale vectors `b_1..b_n`.
    pub fn rows(&self) -> &[[i64; 2]] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> [i64; 2] {
        self.rows[i]
    }

    /// The derived `(n−2)×n` matrix `A` with `A·B = 0`.
    pub fn kernel(&self) -> &IntMat {
        &self.kernel
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    pub fn basis_matrix(&self) -> IntMat {
        IntMat::from_i64(&self.rows, 2).expect("rows have two entries")
    }

    /// `φ(z) = B·z`.
    pub fn lattice_vector(&self, z: [i64; 2]) -> Vec<i64> {
        self.rows.iter().map(|b| b[0] * z[0] + b[1] * z[1]).collect()
    }

    /// `ŵ = w·B`, the image of a cost vector in the Gale plane.
    pub fn gale_weight(&self, w: &[i64]) -> [i64; 2] {
        let mut out = [0i64; 2];
        for (wi, b) in w.iter().zip(&self.rows) {
            out[0] += wi * b[0];
            out[1] += wi * b[1];
        }
        out
    }

    /// `φ⁻¹(c)` when `c ∈ 𝓛`.
    pub fn solve(&self, c: &[i64]) -> Option<[i64; 2]> {
        if c.len() != self.n() {
            return None;
        }
        let (i, j) = self.solve_pair;
        let (bi, bj) = (self.rows[i], self.rows[j]);
        let d = det2(bi, bj);
        // [bi; bj] z = (c_i, c_j)
        let num0 = c[i] * bj[1] - c[j] * bi[1];
        let num1 = bi[0] * c[j] - bj[0] * c[i];
        if num0 % d != 0 || num1 % d != 0 {
            return None;
        }
        let z = [num0 / d, num1 / d];
        (self.lattice_vector(z) == c).then_some(z)
    }

    /// Canonical representative of `u + 𝓛`.
    pub fn reduce_mod_lattice(&self, u: &[i64]) -> Vec<i64> {
        let mut out = u.to_vec();
        for (pivot, row) in &self.class_basis {
            let q = Integer::div_floor(&out[*pivot], &row[*pivot]);
            if q != 0 {
                for (o, r) in out.iter_mut().zip(row) {
                    *o -= q * r;
                }
            }
        }
        out
    }

    /// Remark-style normalization check: no zero rows and no `b_i = m·b_j`
    /// with `m` a positive integer.
    pub fn is_normalized(&self) -> bool {
        find_reduction(&self.rows, &(0..self.n()).collect::<Vec<_>>()).is_none()
    }
}

pub fn det2(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// `Some(m)` when `a = m·b` for a positive integer `m`.
fn positive_multiple(a: [i64; 2], b: [i64; 2]) -> Option<i64> {
    if det2(a, b) != 0 || b == [0, 0] {
        return None;
    }
    let (num, den) = if b[0] != 0 { (a[0], b[0]) } else { (a[1], b[1]) };
    (num % den == 0 && num / den >= 1).then(|| num / den)
}

fn find_reduction(rows: &[[i64; 2]], alive: &[usize]) -> Option<NormalizationStep> {
    for &i in alive {
        if rows[i] == [0, 0] {
            return Some(NormalizationStep::DroppedZero { index: i });
        }
    }
    for &i in alive {
        for &j in alive {
            if i == j {
                continue;
            }
            if let Some(m) = positive_multiple(rows[i], rows[j]) {
                // duplicates keep the lowest index
                if m == 1 && i < j {
                    continue;
                }
                return Some(NormalizationStep::Merged { dropped: i, kept: j, multiplier: m });
            }
        }
    }
    None
}

/// Drops zero rows and merges positive integer multiples until none remain.
pub fn normalize_gale(rows: &[[i64; 2]]) -> Result<(GaleLattice, NormalizationLog)> {
    let mut alive: Vec<usize> = (0..rows.len()).collect();
    let mut steps = Vec::new();
    while let Some(step) = find_reduction(rows, &alive) {
        let gone = match step {
            NormalizationStep::DroppedZero { index } => index,
            NormalizationStep::Merged { dropped, .. } => dropped,
        };
        alive.retain(|&k| k != gone);
        steps.push(step);
    }
    let reduced: Vec<[i64; 2]> = alive.iter().map(|&k| rows[k]).collect();
    let lattice = GaleLattice::new(reduced)?;
    Ok((lattice, NormalizationLog { original_n: rows.len(), steps, kept: alive }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMat {
        let ncols = rows.first().map_or(0, |r| r.len());
        IntMat::from_i64(rows, ncols).unwrap()
    }

    #[test]
    fn hnf_identity() {
        let m = mat(&[&[1, 0], &[0, 1]]);
        let (h, u) = hnf(&m);
        assert_eq!(h, m);
        assert_eq!(u, IntMat::identity(2));
    }

    #[test]
    fn hnf_running_example() {
        let m = mat(&[&[2, 0], &[0, 1], &[-2, 1], &[-2, 0]]);
        let (h, u) = hnf(&m);
        assert_eq!(h.nonzero_rows(), mat(&[&[2, 0], &[0, 1]]).rows().to_vec());
        assert_eq!(u.mul(&m).unwrap(), h);
        assert_eq!(rank(&u), 4);
    }

    #[test]
    fn hnf_gcd() {
        let (h, _) = hnf(&mat(&[&[4], &[6]]));
        assert_eq!(h.nonzero_rows(), vec![vec![BigInt::from(2)]]);
    }

    #[test]
    fn kernel_running_example() {
        let b = mat(&[&[2, 0], &[0, 1], &[-2, 1], &[-2, 0]]);
        let a = integer_kernel(&b).unwrap();
        assert_eq!(a.nrows(), 2);
        assert!(a.mul(&b).unwrap().is_zero());
        // the choice A = [[1,-1,1,0],[0,-1,1,-1]] spans the same lattice
        let theirs = mat(&[&[1, -1, 1, 0], &[0, -1, 1, -1]]);
        assert!(theirs.mul(&b).unwrap().is_zero());
        assert_eq!(rank(&theirs), 2);
        let (h_theirs, _) = hnf(&theirs);
        assert_eq!(h_theirs.nonzero_rows(), a.rows().to_vec());
    }

    #[test]
    fn kernel_three_rows() {
        let a = integer_kernel(&mat(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(a.to_i64().unwrap(), vec![vec![1, 1, -1]]);
    }

    #[test]
    fn kernel_square() {
        let a = integer_kernel(&mat(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(a.nrows(), 0);
        assert_eq!(a.ncols(), 2);
    }

    #[test]
    fn kernel_rank_deficient() {
        let err = integer_kernel(&mat(&[&[1, 2], &[2, 4], &[3, 6]])).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 1 });
    }

    fn running() -> GaleLattice {
        GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]]).unwrap()
    }

    #[test]
    fn solve_membership() {
        let l = running();
        assert_eq!(l.solve(&[0, 1, 1, 0]), Some([0, 1]));
        assert_eq!(l.solve(&[2, 0, -2, -2]), Some([1, 0]));
        // in the saturation only: odd first coordinate
        assert_eq!(l.solve(&[1, 0, -1, -1]), None);
    }

    #[test]
    fn primitive_and_normal() {
        assert_eq!(primitive(&[-2, 2]).unwrap(), vec![-1, 1]);
        assert_eq!(clockwise_normal([-1, 1]).unwrap(), [1, 1]);
        assert_eq!(clockwise_normal([0, 1]).unwrap(), [1, 0]);
        assert_eq!(primitive(&[0, 0]), Err(Error::ZeroVector));
        assert_eq!(clockwise_normal([0, 0]), Err(Error::ZeroVector));
        assert_eq!(ray_with_normal([1, 1]).unwrap(), [-1, 1]);
    }

    #[test]
    fn normalize_drops_zero_row() {
        let (l, log) = normalize_gale(&[[1, 0], [0, 1], [0, 0]]).unwrap();
        assert_eq!(l.rows(), &[[1, 0], [0, 1]]);
        assert_eq!(log.steps, vec![NormalizationStep::DroppedZero { index: 2 }]);
    }

    #[test]
    fn normalize_running_is_identity() {
        let rows = [[2, 0], [0, 1], [-2, 1], [-2, 0]];
        let (l, log) = normalize_gale(&rows).unwrap();
        assert_eq!(l.rows(), &rows);
        assert!(log.is_empty());
        assert!(l.is_normalized());
    }

    #[test]
    fn normalize_merges_multiple() {
        let (l, log) = normalize_gale(&[[1, 0], [2, 0], [0, 1]]).unwrap();
        assert_eq!(l.rows(), &[[1, 0], [0, 1]]);
        assert_eq!(
            log.steps,
            vec![NormalizationStep::Merged { dropped: 1, kept: 0, multiplier: 2 }]
        );
        // x1 ↦ x2^2 x1: the reduced monomial x1 lifts to x1 x2^2
        assert_eq!(log.lift_exponents(&[1, 0]).unwrap(), vec![1, 2, 0]);
    }

    #[test]
    fn normalize_duplicates_keep_lowest() {
        let (l, log) = normalize_gale(&[[1, 1], [1, 0], [1, 1]]).unwrap();
        assert_eq!(l.rows(), &[[1, 1], [1, 0]]);
        assert_eq!(log.kept, vec![0, 1]);
    }

    #[test]
    fn normalize_keeps_noninteger_ratio() {
        let (l, log) = normalize_gale(&[[2, 0], [3, 0], [0, 1]]).unwrap();
        assert_eq!(l.n(), 3);
        assert!(log.is_empty());
    }

    #[test]
    fn normalize_rank_one_fails() {
        assert_eq!(
            normalize_gale(&[[1, 2]]).unwrap_err(),
            Error::RankDeficient { rank: 1 }
        );
    }

    #[test]
    fn degree_classes() {
        let l = running();
        let u = [3, 1, 0, 2];
        let shifted: Vec<i64> = u.iter().zip(l.lattice_vector([2, -3])).map(|(a, b)| a + b).collect();
        assert_eq!(l.reduce_mod_lattice(&u), l.reduce_mod_lattice(&shifted));
        assert_ne!(l.reduce_mod_lattice(&u), l.reduce_mod_lattice(&[4, 1, 0, 2]));
    }
}
