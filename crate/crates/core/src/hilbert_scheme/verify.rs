//! The verification report: every structural property of the monomial
//! ideals, flips and walls, checked on one lattice.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::geometry2d::{hilbert_basis, is_creeping, is_unimodular, Lattice2, Ray2, Support};
use crate::graver::{
    forced_ideal, graver_basis, graver_box_stable, graver_by_regions, is_weakly_graded, GraverBasis,
};
use crate::groebner::{initial_ideal, lattice_groebner_basis, InitialIdeal, Poly};
use crate::ideals::{delta_chamber, MonomialIdeal};
use crate::intlinalg::{normalize_gale, GaleLattice};

use super::flip_graph::{flip_graph, GraphShape};
use super::flips::{flips, wall_coherence_witness, FlipKind};
use super::oracle::{exhaustive_ideal_oracle, monomial_count, OracleParams, MAX_GRAVER_ELEMENTS};
use super::tangent::tangent_dimension;
use super::{projected_lattice, ToricHilbertScheme};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(rename = "ref")]
    pub reference: String,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub ideals: Vec<MonomialIdeal>,
    pub shape: Option<GraphShape>,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub degree_bound: Option<i64>,
    pub margin: Option<i64>,
    /// Radius for standard monomial searches.
    pub cap: Option<i64>,
    pub seed: u64,
    pub random_weights: usize,
    /// The exhaustive oracle is skipped when `2^|Gr|` times the number of
    /// monomials in range exceeds this.
    pub oracle_budget: u128,
    /// Largest box radius tried by the Graver box oracle.
    pub box_radius: i64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            degree_bound: None,
            margin: None,
            cap: None,
            seed: 0,
            random_weights: 5,
            oracle_budget: 1 << 28,
            box_radius: 512,
        }
    }
}

fn run(name: &str, reference: &str, f: impl FnOnce() -> Result<(bool, Value)>) -> Check {
    let (pass, witness) = match f() {
        Ok(r) => r,
        Err(e) => (false, json!({ "error": e.to_string() })),
    };
    Check { name: name.into(), reference: reference.into(), pass, witness }
}

fn fmt_set(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().map(|k| k + 1).collect()
}

fn refinement_rays(scheme: &ToricHilbertScheme, lat: &Lattice2) -> Result<BTreeSet<Ray2>> {
    let mut rays = BTreeSet::new();
    for c in &scheme.chambers.chambers {
        for g in hilbert_basis(&c.cone, lat)? {
            rays.insert(Ray2::new(g)?);
        }
    }
    Ok(rays)
}

/// Runs every check. Failures, including errors, become failing entries.
pub fn verify(lattice: &GaleLattice, options: &VerifyOptions) -> VerificationReport {
    let scheme = match ToricHilbertScheme::with_cap(lattice.clone(), options.cap) {
        Ok(s) => s,
        Err(e) => {
            let c = Check {
                name: "construction".into(),
                reference: "fan, ideals and coherence witnesses can be built".into(),
                pass: false,
                witness: json!({ "error": e.to_string() }),
            };
            return VerificationReport { ideals: Vec::new(), shape: None, checks: vec![c], overall: false };
        }
    };
    let checks = checks_for(&scheme, options);
    let overall = checks.iter().all(|c| c.pass);
    let shape = flip_graph(&scheme).ok().map(|g| g.shape);
    VerificationReport { ideals: scheme.ideals(), shape, checks, overall }
}

pub fn checks_for(s: &ToricHilbertScheme, options: &VerifyOptions) -> Vec<Check> {
    let l = &s.lattice;
    let n = l.n();
    let mut checks = Vec::new();

    checks.push(run(
        "graver_box_oracle",
        "completion returns the conformally minimal lattice vectors found by box enumeration",
        || {
            let run = graver_box_stable(l, options.box_radius)?;
            let regions = graver_by_regions(l)?;
            let disjoint = s.graver.binomials().all(|b| b.plus.is_coprime(&b.minus));
            let pass = run.basis == s.graver && regions == s.graver && disjoint;
            Ok((pass, json!({ "size": s.graver.len(), "box_radius": run.radius, "regions_agree": regions == s.graver })))
        },
    ));

    checks.push(run(
        "hilbert_refinement",
        "maximal Groebner cones are the cones between consecutive Hilbert basis elements of each chamber",
        || {
            let fan_rays: BTreeSet<Ray2> = s.fan.rays.iter().copied().collect();
            let z2 = refinement_rays(s, &Lattice2::standard())? == fan_rays;
            let zb = refinement_rays(s, &Lattice2::spanned_by(l.rows())?)? == fan_rays;
            let merged: Vec<[i64; 2]> = s.fan.merged.iter().map(|r| r.dir).collect();
            Ok((z2, json!({ "Z2": z2, "ZB": zb, "fan_lattice": if z2 { "Z2" } else if zb { "ZB" } else { "none" }, "merged_candidates": merged })))
        },
    ));

    checks.push(run("cone_unimodularity", "every maximal Groebner cone is unimodular in Z^2", || {
        let bad: Vec<usize> = (0..s.fan.cones.len())
            .filter(|&k| !is_unimodular(&s.fan.cones[k].cone, &Lattice2::standard()))
            .collect();
        Ok((bad.is_empty(), json!({ "non_unimodular": bad })))
    }));

    checks.push(run(
        "creeping_monotonicity",
        "along the clockwise Hilbert basis of a chamber, cw·g^perp and ccw·g^perp both strictly decrease",
        || {
            let mut bad = Vec::new();
            for (k, c) in s.chambers.chambers.iter().enumerate() {
                let hb = hilbert_basis(&c.cone, &Lattice2::standard())?;
                let consecutive_unimodular = hb.windows(2).all(|w| {
                    crate::geometry2d::Cone2::spanned(w[0], w[1])
                        .map(|c| is_unimodular(&c, &Lattice2::standard()))
                        .unwrap_or(false)
                });
                if !is_creeping(&c.cone, &hb) || !consecutive_unimodular {
                    bad.push(k);
                }
            }
            Ok((bad.is_empty(), json!({ "failing_chambers": bad })))
        },
    ));

    checks.push(run(
        "chamber_correspondence",
        "the minimal primes of each ideal are the simplices containing the chamber of its cone",
        || {
            let mut rows = Vec::new();
            let mut pass = true;
            for (k, r) in s.records.iter().enumerate() {
                let c = delta_chamber(&r.ideal, l)?;
                let ok = c.cone.contains_cone(&s.fan.cones[k].cone);
                pass &= ok;
                rows.push(json!({ "ideal": r.ideal.to_string(), "chamber": [c.i + 1, c.j + 1], "ok": ok }));
            }
            Ok((pass, Value::Array(rows)))
        },
    ));

    checks.push(run(
        "prime_dimension",
        "every minimal prime of every ideal has |sigma| = n - 2",
        || {
            let mut pass = true;
            for r in &s.records {
                pass &= r.ideal.minimal_primes()?.iter().all(|sg| sg.len() + 2 == n);
            }
            Ok((pass, json!({ "n": n })))
        },
    ));

    checks.push(run(
        "localizations",
        "at each minimal prime, Graver vectors stay nonzero and the localization is weakly graded, artinian and an initial ideal",
        || localization_check(s),
    ));

    checks.push(run(
        "coherence_witnesses",
        "each ideal is in_w(I_L) for w built from the pure powers of its special localization",
        || {
            let mut rows = Vec::new();
            let mut pass = true;
            for r in &s.records {
                let ok = initial_ideal(l, &s.graver, &r.witness)? == InitialIdeal::Monomial(r.ideal.clone());
                pass &= ok;
                rows.push(json!({ "ideal": r.ideal.to_string(), "w": r.witness, "ok": ok }));
            }
            Ok((pass, Value::Array(rows)))
        },
    ));

    checks.push(run(
        "forced_ideal_reconstruction",
        "each ideal is the forced ideal of its special localization",
        || {
            let mut pass = true;
            let mut rows = Vec::new();
            for r in &s.records {
                let f = forced_ideal(&r.localization.extend(n), &s.graver)?;
                pass &= f == r.ideal;
                rows.push(json!({
                    "sigma": fmt_set(&r.simplex.sigma),
                    "localization": r.localization.extend(n).to_string(),
                    "forced": f.to_string(),
                }));
            }
            Ok((pass, Value::Array(rows)))
        },
    ));

    checks.push(run(
        "distinct_special_localizations",
        "distinct ideals have distinct (special simplex, special localization) pairs",
        || {
            let keys: HashSet<_> = s.records.iter().map(|r| (r.simplex.sigma.clone(), r.localization.extend(n))).collect();
            let distinct_ideals: HashSet<_> = s.records.iter().map(|r| r.ideal.clone()).collect();
            Ok((
                keys.len() == s.records.len() && distinct_ideals.len() == s.records.len(),
                json!({ "ideals": s.records.len() }),
            ))
        },
    ));

    checks.push(run(
        "boundary_wall_generators",
        "the terms of the two boundary wall binomials of a cone split into generators and non-members of the special localization",
        || wall_generator_check(s),
    ));

    checks.push(run(
        "exhaustive_oracle",
        "brute-force enumeration over Graver side choices finds exactly the fan ideals",
        || {
            let defaults = OracleParams::for_graver(&s.graver);
            let params = OracleParams {
                degree_bound: options.degree_bound.unwrap_or(defaults.degree_bound),
                margin: options.margin.unwrap_or(defaults.margin),
            };
            let work = monomial_count(n, params.degree_bound).saturating_mul(1u128 << s.graver.len().min(100));
            if s.graver.len() > MAX_GRAVER_ELEMENTS || work > options.oracle_budget {
                return Ok((true, json!({
                    "skipped": format!("{} Graver elements, work {} exceeds budget {}", s.graver.len(), work, options.oracle_budget),
                    "degree_bound": params.degree_bound,
                    "margin": params.margin,
                })));
            }
            let found: BTreeSet<MonomialIdeal> = exhaustive_ideal_oracle(l, &s.graver, params)?.into_iter().collect();
            let fan: BTreeSet<MonomialIdeal> = s.ideals().into_iter().collect();
            Ok((found == fan, json!({
                "degree_bound": params.degree_bound,
                "margin": params.margin,
                "found": found.len(),
                "fan": fan.len(),
            })))
        },
    ));

    checks.push(run("two_flips", "every monomial L-graded ideal has exactly two flips", || {
        let mut rows = Vec::new();
        for r in &s.records {
            let fs = flips(s, &r.ideal)?;
            rows.push(json!({
                "ideal": r.ideal.to_string(),
                "flips": fs.iter().map(|f| json!({ "binomial": f.to_string(), "kind": f.kind })).collect::<Vec<_>>(),
            }));
        }
        Ok((true, Value::Array(rows)))
    }));

    checks.push(run(
        "tangent_dimension",
        "the degree-zero tangent space has dimension equal to the number of flips",
        || {
            let mut dims = Vec::new();
            let mut pass = true;
            for r in &s.records {
                let d = tangent_dimension(&r.ideal, l, s.cap)?;
                let f = flips(s, &r.ideal)?.len();
                pass &= d == f && d == 2;
                dims.push(d);
            }
            Ok((pass, json!({ "dimensions": dims })))
        },
    ));

    checks.push(run(
        "wall_coherence",
        "the wall ideal of every true flip is an initial ideal of I_L",
        || {
            let mut rows = Vec::new();
            for (a, r) in s.records.iter().enumerate() {
                for f in flips(s, &r.ideal)? {
                    if f.kind != FlipKind::True {
                        continue;
                    }
                    let target = f.target.clone().expect("true flip target");
                    let b = s.position(&target).expect("fan ideal");
                    if a > b {
                        continue;
                    }
                    let w = wall_coherence_witness(s, &r.ideal, &target)?;
                    rows.push(json!({
                        "flip": w.flip.to_string(),
                        "weight": w.weight,
                        "branch": w.branch,
                        "wall": w.wall.to_string(),
                    }));
                }
            }
            Ok((true, Value::Array(rows)))
        },
    ));

    checks.push(run(
        "flip_graph",
        "true flips join exactly the adjacent fan cones; the graph is a cycle iff the support is the plane",
        || {
            let g = flip_graph(s)?;
            let want = if s.chambers.support == Support::Plane { GraphShape::Cycle } else { GraphShape::Path };
            let pass = g.matches_adjacency(&s.fan) && g.is_connected() && g.shape == want;
            Ok((pass, json!({ "vertices": g.vertices.len(), "edges": g.edges.len(), "shape": g.shape })))
        },
    ));

    checks.push(run(
        "groebner_in_graver",
        "every reduced Groebner basis element is a Graver binomial",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            let mut weights = Vec::new();
            let mut pass = true;
            for _ in 0..options.random_weights {
                let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=20)).collect();
                let gb = lattice_groebner_basis(l, &s.graver, &w)?;
                pass &= gb.elements.iter().all(|p| match p {
                    Poly::Binomial { .. } => s.graver.contains_vector(&p.vector().expect("binomial")),
                    Poly::Monomial(_) => false,
                });
                weights.push(w);
            }
            Ok((pass, json!({ "weights": weights })))
        },
    ));

    checks.push(run(
        "merged_candidates",
        "candidate wall rays that do not separate distinct ideals",
        || Ok((true, json!({ "merged_sectors": s.fan.merged.len(), "candidate_rays": s.fan.rays.len() + s.fan.merged.len() }))),
    ));

    checks
}

fn localization_check(s: &ToricHilbertScheme) -> Result<(bool, Value)> {
    let l = &s.lattice;
    let n = l.n();
    let mut cache: HashMap<[usize; 2], (GaleLattice, GraverBasis)> = HashMap::new();
    let mut pass = true;
    let mut count = 0;
    for r in &s.records {
        for sigma in r.ideal.minimal_primes()? {
            count += 1;
            let comp: Vec<usize> = (0..n).filter(|k| !sigma.contains(k)).collect();
            // Graver vectors restricted to the complement are nonzero
            pass &= s.graver.binomials().all(|b| comp.iter().any(|&k| b.l[k] != 0));
            if comp.len() != 2 {
                pass = false;
                continue;
            }
            let vars = [comp[0], comp[1]];
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(vars) {
                let local = projected_lattice(l, vars)?;
                let g = graver_basis(&local)?;
                e.insert((local, g));
            }
            let (local, local_graver) = &cache[&vars];
            let loc = r.ideal.localize(&sigma);
            pass &= is_weakly_graded(&loc.ideal, local_graver);
            pass &= loc.ideal.is_artinian();
            match (loc.ideal.pure_power(0), loc.ideal.pure_power(1)) {
                (Some(a), Some(b)) => {
                    let got = initial_ideal(local, local_graver, &[b, a])?;
                    pass &= got == InitialIdeal::Monomial(loc.ideal.clone());
                }
                _ => pass = false,
            }
        }
    }
    Ok((pass, json!({ "localizations": count })))
}

fn wall_generator_check(s: &ToricHilbertScheme) -> Result<(bool, Value)> {
    let n = s.lattice.n();
    let mut pass = true;
    let mut rows = Vec::new();
    for (k, r) in s.records.iter().enumerate() {
        let cone = &s.fan.cones[k].cone;
        // l1 from the counterclockwise ray, l2 from the clockwise ray
        let normal = |g: [i64; 2]| s.lattice.lattice_vector([g[1], -g[0]]);
        let l1 = normal(cone.ccw.dir);
        let l2 = normal(cone.cw.dir);
        let local = |v: &[i64], sign: i64| -> crate::ideals::Monomial {
            let exps: Vec<i64> = r.localization.vars.iter().map(|&j| (sign * v[j]).max(0)).collect();
            crate::ideals::Monomial::new(exps).expect("nonnegative")
        };
        let ideal = &r.localization.ideal;
        let is_gen = |m: &crate::ideals::Monomial| ideal.gens().contains(m);
        let ok = is_gen(&local(&l1, 1))
            && is_gen(&local(&l2, -1))
            && !ideal.contains(&local(&l1, -1))
            && !ideal.contains(&local(&l2, 1));
        pass &= ok;
        rows.push(json!({ "ideal": r.ideal.to_string(), "l1": l1, "l2": l2, "ok": ok }));
    }
    let _ = n;
    Ok((pass, Value::Array(rows)))
}

/// A random `n × 2` matrix with `n` in `3..=max_n` and entries in
/// `[−max_entry, max_entry]`, normalized, redrawn until it has rank two.
pub fn random_lattice<R: Rng>(rng: &mut R, max_n: usize, max_entry: i64) -> (Vec<[i64; 2]>, GaleLattice) {
    loop {
        let n = rng.gen_range(3..=max_n.max(3));
        let rows: Vec<[i64; 2]> = (0..n)
            .map(|_| [rng.gen_range(-max_entry..=max_entry), rng.gen_range(-max_entry..=max_entry)])
            .collect();
        if let Ok((l, _)) = normalize_gale(&rows) {
            return (rows, l);
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzCase {
    pub input: Vec<[i64; 2]>,
    pub basis: Vec<[i64; 2]>,
    pub ideals: usize,
    pub oracle_skipped: bool,
    pub failures: Vec<Check>,
}

/// `count` seeded random lattices through [`verify`].
pub fn fuzz(seed: u64, count: usize, options: &VerifyOptions) -> Vec<FuzzCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let (input, l) = random_lattice(&mut rng, 6, 5);
            let opts = VerifyOptions { seed: options.seed.wrapping_add(k as u64), ..options.clone() };
            let report = verify(&l, &opts);
            FuzzCase {
                input,
                basis: l.rows().to_vec(),
                ideals: report.ideals.len(),
                oracle_skipped: report.check("exhaustive_oracle").is_some_and(|c| c.witness.get("skipped").is_some()),
                failures: report.checks.into_iter().filter(|c| !c.pass).collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_passes() {
        let l = GaleLattice::new(vec![[2, 0], [0, 1], [-2, 1], [-2, 0]]).unwrap();
        let r = verify(&l, &VerifyOptions::default());
        for c in &r.checks {
            assert!(c.pass, "{} failed: {}", c.name, c.witness);
        }
        assert!(r.overall);
        assert_eq!(r.ideals.len(), 4);
        assert_eq!(r.shape, Some(GraphShape::Path));
        assert_eq!(r.check("hilbert_refinement").unwrap().witness["fan_lattice"], "Z2");
    }

    #[test]
    fn identity_passes() {
        let l = GaleLattice::new(vec![[1, 0], [0, 1]]).unwrap();
        let r = verify(&l, &VerifyOptions::default());
        assert!(r.overall, "{:?}", r.failures());
    }

    #[test]
    fn cyclic_passes() {
        let l = GaleLattice::new(vec![[1, 0], [0, 1], [-1, -1]]).unwrap();
        let r = verify(&l, &VerifyOptions::default());
        assert!(r.overall, "{:?}", r.failures());
    }
}
