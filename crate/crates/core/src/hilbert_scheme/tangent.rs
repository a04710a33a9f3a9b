//! Dimension of the degree-zero part of `Hom_S(I, S/I)`.

use crate::error::Result;
use crate::ideals::{standard_monomial, MonomialIdeal};
use crate::intlinalg::GaleLattice;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A degree-zero homomorphism sends each generator `g_t` to `c_t·x^{v_t}`
/// where `x^{v_t}` is its standard monomial. The syzygy between `g_s` and
/// `g_t` ties or kills coefficients; the answer is the number of free
/// coefficient classes.
pub fn tangent_dimension(ideal: &MonomialIdeal, lattice: &GaleLattice, cap: Option<i64>) -> Result<usize> {
    let gens = ideal.gens();
    let k = gens.len();
    let standard = gens
        .iter()
        .map(|g| standard_monomial(ideal, g, lattice, cap))
        .collect::<Result<Vec<_>>>()?;
    let mut uf = UnionFind::new(k);
    let mut zero = vec![false; k];
    for s in 0..k {
        for t in s + 1..k {
            let m = gens[s].lcm(&gens[t]);
            let a = m.quotient(&gens[s]).expect("lcm").mul(&standard[s]);
            let b = m.quotient(&gens[t]).expect("lcm").mul(&standard[t]);
            match (ideal.contains(&a), ideal.contains(&b)) {
                (false, false) => uf.union(s, t),
                (false, true) => zero[s] = true,
                (true, false) => zero[t] = true,
                (true, true) => {}
            }
        }
    }
    let mut dead = vec![false; k];
    for t in (0..k).filter(|&t| zero[t]) {
        let r = uf.find(t);
        dead[r] = true;
    }
    Ok((0..k).filter(|&t| uf.find(t) == t && !dead[t]).count())
}
