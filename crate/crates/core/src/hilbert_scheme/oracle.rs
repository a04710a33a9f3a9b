//! Brute-force enumeration of monomial `𝓛`-graded ideals from Graver side
//! choices, checked in bounded degree.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graver::GraverBasis;
use crate::ideals::{Monomial, MonomialIdeal};
use crate::intlinalg::GaleLattice;

pub const MAX_GRAVER_ELEMENTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleParams {
    /// Standard monomials are searched among monomials of this total degree or less.
    pub degree_bound: i64,
    /// Only classes whose least-degree member has degree at most
    /// `degree_bound − margin` must have one.
    pub margin: i64,
}

impl OracleParams {
    /// Classes are required up to degree `maxdeg + 2`. A standard monomial
    /// may have `ρ` times the degree of the least member of its class, where
    /// `ρ` is the largest degree ratio across a Graver binomial, so the
    /// search goes to degree `ρ·(maxdeg + 2)`.
    pub fn for_graver(graver: &GraverBasis) -> Self {
        let required = graver.max_degree().max(1) + 2;
        let ratio = graver
            .binomials()
            .filter_map(|b| {
                let (p, m) = (b.plus.degree(), b.minus.degree());
                (p.min(m) > 0).then(|| (p.max(m) + p.min(m) - 1) / p.min(m))
            })
            .max()
            .unwrap_or(1);
        OracleParams { degree_bound: ratio * required, margin: (ratio - 1) * required }
    }
}

/// `C(d + n, n)`, the number of monomials of degree at most `d` in `n` variables.
pub fn monomial_count(n: usize, d: i64) -> u128 {
    let d = d.max(0) as u128;
    (1..=n as u128).fold(1u128, |acc, k| acc * (d + k) / k)
}

fn monomials_up_to(n: usize, d: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::with_capacity(n), &mut out);
    out.sort_by_key(|m| m.iter().sum::<i64>());
    out
}

/// Ideals generated by one term of every Graver binomial that have exactly
/// one standard monomial in each required class and at most one in every
/// class, counting among all monomials of degree at most `degree_bound`. Every candidate is weakly
/// graded by construction.
pub fn exhaustive_ideal_oracle(
    lattice: &GaleLattice,
    graver: &GraverBasis,
    params: OracleParams,
) -> Result<Vec<MonomialIdeal>> {
    let count = graver.len();
    if count > MAX_GRAVER_ELEMENTS {
        return Err(Error::TooManyGraverElements { count, limit: MAX_GRAVER_ELEMENTS });
    }
    let n = lattice.n();
    let monomials = monomials_up_to(n, params.degree_bound);
    let mut class_of: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut required = Vec::new();
    for (idx, m) in monomials.iter().enumerate() {
        let key = lattice.reduce_mod_lattice(m);
        let next = class_of.len();
        let c = *class_of.entry(key).or_insert(next);
        if c == members.len() {
            // enumeration is by increasing degree, so the first member has least degree
            members.push(Vec::new());
            if m.iter().sum::<i64>() <= params.degree_bound - params.margin {
                required.push(c);
            }
        }
        members[c].push(idx);
    }

    let binomials: Vec<_> = graver.binomials().collect();
    let mut seen: HashSet<MonomialIdeal> = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << count) {
        let gens = binomials.iter().enumerate().map(|(t, b)| {
            if mask >> t & 1 == 1 {
                b.plus.clone()
            } else {
                b.minus.clone()
            }
        });
        let ideal = MonomialIdeal::new(n, gens.collect::<Vec<Monomial>>())?;
        if !seen.insert(ideal.clone()) {
            continue;
        }
        let graded = required.iter().all(|&c| {
            members[c].iter().filter(|&&i| !ideal.contains_exps(&monomials[i])).count() == 1
        });
        let weak = graded
            && members
                .iter()
                .all(|idxs| idxs.iter().filter(|&&i| !ideal.contains_exps(&monomials[i])).count() <= 1);
        if weak {
            out.push(ideal);
        }
    }
    out.sort();
    Ok(out)
}
