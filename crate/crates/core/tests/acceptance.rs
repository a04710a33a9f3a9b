//! End-to-end acceptance criteria. One line per criterion; the process
//! fails if any criterion fails or exceeds its time limit.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_hilbert::geometry2d::{chamber_complex, Ray2};
use toric_hilbert::graver::graver_basis;
use toric_hilbert::groebner::{initial_ideal, InitialIdeal};
use toric_hilbert::hilbert_scheme::{
    exhaustive_ideal_oracle, flips, random_lattice, tangent_dimension, verify, wall_coherence_witness,
    wall_ideal, FlipKind, OracleParams, ToricHilbertScheme, VerificationReport, VerifyOptions,
};
use toric_hilbert::ideals::MonomialIdeal;
use toric_hilbert::intlinalg::{dot, GaleLattice};

type Outcome = Result<String, String>;

const RUNNING: [[i64; 2]; 4] = [[2, 0], [0, 1], [-2, 1], [-2, 0]];
const RANDOM_SEED: u64 = 2024;
const RANDOM_COUNT: usize = 100;

fn running() -> GaleLattice {
    GaleLattice::new(RUNNING.to_vec()).unwrap()
}

fn ideal(gens: &[[i64; 4]]) -> MonomialIdeal {
    MonomialIdeal::from_exps(4, gens).unwrap()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Canonical sign: first nonzero entry positive.
fn up_to_sign(l: &[i64]) -> Vec<i64> {
    match l.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => l.iter().map(|y| -y).collect(),
        _ => l.to_vec(),
    }
}

fn graver_running() -> Outcome {
    let g = graver_basis(&running()).map_err(err)?;
    // x2x3 - 1, x3^2x4^2 - x1^2, x1^2x2^2 - x4^2, x1^2x2 - x3x4^2
    let want: BTreeSet<Vec<i64>> = [
        vec![0, 1, 1, 0],
        vec![-2, 0, 2, 2],
        vec![2, 2, 0, -2],
        vec![2, 1, -1, -2],
    ]
    .iter()
    .map(|v| up_to_sign(v))
    .collect();
    let got: BTreeSet<Vec<i64>> = g.binomials().map(|b| up_to_sign(&b.l)).collect();
    ensure(got == want, format!("got {got:?}"))?;
    Ok(format!("{} binomials", g.len()))
}

fn chambers_and_fan() -> Outcome {
    let l = running();
    let cc = chamber_complex(&l).map_err(err)?;
    let pairs: BTreeSet<BTreeSet<usize>> =
        cc.chambers.iter().map(|c| [c.i + 1, c.j + 1].into_iter().collect()).collect();
    let want: BTreeSet<BTreeSet<usize>> = [[1, 2], [2, 3], [3, 4]].iter().map(|p| p.iter().copied().collect()).collect();
    ensure(pairs == want, format!("chambers {pairs:?}"))?;
    let s = ToricHilbertScheme::new(l).map_err(err)?;
    ensure(s.fan.cones.len() == 4, format!("{} maximal cones", s.fan.cones.len()))?;
    let rays: Vec<[i64; 2]> = s.fan.rays.iter().map(|r| r.dir).collect();
    ensure(rays == vec![[1, 0], [0, 1], [-1, 1], [-2, 1], [-1, 0]], format!("rays {rays:?}"))?;
    // (-1,1) is the only ray that is not a Gale vector direction
    let gale: BTreeSet<Ray2> = RUNNING.iter().map(|&b| Ray2::new(b).unwrap()).collect();
    let interior: Vec<[i64; 2]> = s.fan.rays.iter().filter(|r| !gale.contains(r)).map(|r| r.dir).collect();
    ensure(interior == vec![[-1, 1]], format!("non-Gale rays {interior:?}"))?;
    Ok("3 chambers, 4 cones, interior wall (-1,1)".into())
}

fn ideal_table() -> Outcome {
    let s = ToricHilbertScheme::new(running()).map_err(err)?;
    let table: [(MonomialIdeal, MonomialIdeal, Vec<Vec<usize>>); 4] = [
        (ideal(&[[0, 1, 1, 0], [2, 0, 0, 0]]), ideal(&[[0, 1, 1, 0], [1, 0, 0, 0]]), vec![vec![1, 2], vec![1, 3]]),
        (
            ideal(&[[0, 1, 1, 0], [2, 1, 0, 0], [0, 0, 2, 2]]),
            ideal(&[[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]),
            vec![vec![1, 3], vec![2, 3], vec![2, 4]],
        ),
        (
            ideal(&[[0, 1, 1, 0], [2, 2, 0, 0], [0, 0, 1, 2]]),
            ideal(&[[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]]),
            vec![vec![1, 3], vec![2, 3], vec![2, 4]],
        ),
        (ideal(&[[0, 1, 1, 0], [0, 0, 0, 2]]), ideal(&[[0, 1, 1, 0], [0, 0, 0, 1]]), vec![vec![2, 4], vec![3, 4]]),
    ];
    let got = s.ideals();
    ensure(got.len() == 4, format!("{} ideals", got.len()))?;
    for (i, (gens, rad, primes)) in got.iter().zip(&table) {
        ensure(i == gens, format!("{i} != {gens}"))?;
        ensure(&i.radical() == rad, format!("radical of {i} is {}", i.radical()))?;
        // the prime of a face is generated by the variables outside it
        let mut ps: Vec<Vec<usize>> = i
            .minimal_primes()
            .map_err(err)?
            .iter()
            .map(|f| (0..4).filter(|v| !f.contains(v)).map(|v| v + 1).collect())
            .collect();
        ps.sort();
        ensure(&ps == primes, format!("primes of {i}: {ps:?}"))?;
    }
    Ok("4 ideals with radicals and prime decompositions".into())
}

fn special_data() -> Outcome {
    let s = ToricHilbertScheme::new(running()).map_err(err)?;
    let i = ideal(&[[0, 1, 1, 0], [2, 1, 0, 0], [0, 0, 2, 2]]);
    let r = &s.records[s.position(&i).ok_or("ideal missing")?];
    let sigma: Vec<usize> = r.simplex.sigma.iter().map(|k| k + 1).collect();
    ensure(sigma == vec![1, 4], format!("special simplex {sigma:?}"))?;
    let loc = r.localization.extend(4);
    ensure(loc == ideal(&[[0, 1, 0, 0], [0, 0, 2, 0]]), format!("localization {loc}"))?;
    ensure(r.witness == vec![0, 2, 1, 0], format!("witness {:?}", r.witness))?;
    let init = initial_ideal(&s.lattice, &s.graver, &r.witness).map_err(err)?;
    ensure(init == InitialIdeal::Monomial(i.clone()), format!("in_w = {init:?}"))?;
    Ok("simplex {1,4}, localization <x2, x3^2>, w = (0,2,1,0)".into())
}

fn flip_chain() -> Outcome {
    let s = ToricHilbertScheme::new(running()).map_err(err)?;
    let chain = [
        ideal(&[[0, 1, 1, 0], [2, 0, 0, 0]]),
        ideal(&[[0, 1, 1, 0], [2, 1, 0, 0], [0, 0, 2, 2]]),
        ideal(&[[0, 1, 1, 0], [2, 2, 0, 0], [0, 0, 1, 2]]),
        ideal(&[[0, 1, 1, 0], [0, 0, 0, 2]]),
    ];
    let labels = ["x1^2 - x3^2*x4^2", "x1^2*x2 - x3*x4^2", "x1^2*x2^2 - x4^2"];
    for k in 0..3 {
        let fs = flips(&s, &chain[k]).map_err(err)?;
        let f = fs
            .iter()
            .find(|f| f.target.as_ref() == Some(&chain[k + 1]))
            .ok_or(format!("no flip from {} to {}", chain[k], chain[k + 1]))?;
        ensure(f.to_string() == labels[k], format!("flip {f} expected {}", labels[k]))?;
    }
    for end in [&chain[0], &chain[3]] {
        let fake: Vec<String> =
            flips(&s, end).map_err(err)?.iter().filter(|f| f.kind == FlipKind::Fake).map(|f| f.to_string()).collect();
        ensure(fake == vec!["x2*x3 - 1".to_string()], format!("fake flips of {end}: {fake:?}"))?;
    }
    for mid in [&chain[1], &chain[2]] {
        ensure(flips(&s, mid).map_err(err)?.iter().all(|f| f.kind == FlipKind::True), format!("{mid} has a fake flip"))?;
    }
    Ok("3 true flips in order, fake x2*x3 - 1 at both ends".into())
}

fn oracle_running() -> Outcome {
    let l = running();
    let g = graver_basis(&l).map_err(err)?;
    let params = OracleParams::for_graver(&g);
    ensure(params.degree_bound >= 12 && params.margin >= 4, format!("{params:?}"))?;
    let got: BTreeSet<MonomialIdeal> = exhaustive_ideal_oracle(&l, &g, params).map_err(err)?.into_iter().collect();
    let fan: BTreeSet<MonomialIdeal> = ToricHilbertScheme::new(l).map_err(err)?.ideals().into_iter().collect();
    ensure(got == fan, format!("oracle {} ideals, fan {}", got.len(), fan.len()))?;
    Ok(format!("degree bound {}, margin {}: {} ideals", params.degree_bound, params.margin, got.len()))
}

struct TestLattice {
    scheme: ToricHilbertScheme,
    report: VerificationReport,
}

fn test_lattices() -> Vec<TestLattice> {
    let mut rows = vec![RUNNING.to_vec(), vec![[1, 0], [0, 1]], vec![[2, 0], [0, 2]], vec![[1, 0], [0, 1], [-1, -1]]];
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for _ in 0..RANDOM_COUNT {
        rows.push(random_lattice(&mut rng, 6, 5).1.rows().to_vec());
    }
    rows.into_iter()
        .enumerate()
        .map(|(k, r)| {
            let l = GaleLattice::new(r).unwrap();
            let report = verify(&l, &VerifyOptions { seed: k as u64, ..VerifyOptions::default() });
            TestLattice { scheme: ToricHilbertScheme::new(l).expect("scheme builds"), report }
        })
        .collect()
}

fn flips_and_tangents(lattices: &[TestLattice]) -> Outcome {
    let mut count = 0;
    for t in lattices {
        let s = &t.scheme;
        for i in s.ideals() {
            let f = flips(s, &i).map_err(|e| format!("{:?}: {i}: {e}", s.lattice.rows()))?.len();
            let d = tangent_dimension(&i, &s.lattice, s.cap).map_err(err)?;
            ensure(f == 2 && d == 2, format!("{:?}: {i} has {f} flips, tangent dimension {d}", s.lattice.rows()))?;
            count += 1;
        }
    }
    Ok(format!("{count} ideals on {} lattices", lattices.len()))
}

fn wall_coherence(lattices: &[TestLattice]) -> Outcome {
    let (mut composite, mut fallback) = (0, 0);
    for t in lattices {
        let s = &t.scheme;
        for i in s.ideals() {
            for f in flips(s, &i).map_err(err)? {
                let Some(j) = &f.target else { continue };
                let w = wall_coherence_witness(s, &i, j).map_err(|e| format!("{i} -> {j}: {e}"))?;
                ensure(dot(&w.weight, &f.binomial.l) == 0, format!("weight {:?} not on the wall of {f}", w.weight))?;
                match initial_ideal(&s.lattice, &s.graver, &w.weight).map_err(err)? {
                    InitialIdeal::Wall(got) => {
                        ensure(got.binomial_count() == 1, format!("{got} has {} binomials", got.binomial_count()))?;
                        ensure(got.same_ideal(&wall_ideal(&i, &f)), format!("in_w = {got}, wall ideal {}", wall_ideal(&i, &f)))?;
                    }
                    other => return Err(format!("in_w for {f} is {other:?}")),
                }
                match w.branch {
                    toric_hilbert::hilbert_scheme::WallBranch::Composite => composite += 1,
                    toric_hilbert::hilbert_scheme::WallBranch::WallRayLift => fallback += 1,
                }
            }
        }
    }
    Ok(format!("{composite} composite weights, {fallback} wall-ray lifts"))
}

fn property_suites(lattices: &[TestLattice]) -> Outcome {
    let names = [
        "groebner_in_graver",
        "cone_unimodularity",
        "creeping_monotonicity",
        "localizations",
        "distinct_special_localizations",
        "prime_dimension",
        "forced_ideal_reconstruction",
    ];
    for t in lattices {
        for name in names {
            let c = t.report.check(name).ok_or(format!("missing check {name}"))?;
            ensure(c.pass, format!("{:?}: {name} failed: {}", t.scheme.lattice.rows(), c.witness))?;
        }
        let weights = &t.report.check("groebner_in_graver").unwrap().witness["weights"];
        ensure(weights.as_array().map(|a| a.len()) == Some(5), "five random weights")?;
    }
    let overall = lattices.iter().filter(|t| t.report.overall).count();
    Ok(format!("{} suites on {} lattices ({overall} full reports pass)", names.len(), lattices.len()))
}

fn trivial_lattices() -> Outcome {
    let s = ToricHilbertScheme::new(GaleLattice::new(vec![[1, 0], [0, 1]]).unwrap()).map_err(err)?;
    let want = MonomialIdeal::from_exps(2, &[[1, 0], [0, 1]]).unwrap();
    ensure(s.ideals() == vec![want.clone()], format!("identity gives {:?}", s.ideals()))?;
    let fs = flips(&s, &want).map_err(err)?;
    ensure(fs.len() == 2 && fs.iter().all(|f| f.kind == FlipKind::Fake), "identity needs two fake flips")?;
    let s = ToricHilbertScheme::new(GaleLattice::new(vec![[2, 0], [0, 2]]).unwrap()).map_err(err)?;
    let want = MonomialIdeal::from_exps(2, &[[2, 0], [0, 2]]).unwrap();
    ensure(s.ideals() == vec![want], format!("doubled gives {:?}", s.ideals()))?;
    Ok("<x1, x2> with two fake flips; <x1^2, x2^2>".into())
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, title: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("pass", d),
            Ok(d) => ("FAIL", format!("{d}; over time limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {n:>2} {status} {title}: {detail} [{:.2}s of {}s]", elapsed.as_secs_f64(), limit.as_secs());
    };
    report(1, "Graver basis of the running lattice", Duration::from_secs(1), &mut graver_running);
    report(2, "chambers and Groebner fan", Duration::from_secs(1), &mut chambers_and_fan);
    report(3, "monomial ideals, radicals, primes", Duration::from_secs(5), &mut ideal_table);
    report(4, "special simplex, localization, witness", Duration::from_secs(5), &mut special_data);
    report(5, "flip chain", Duration::from_secs(5), &mut flip_chain);
    report(6, "exhaustive oracle equals the fan", Duration::from_secs(60), &mut oracle_running);
    let start = Instant::now();
    let lattices = test_lattices();
    let setup = start.elapsed();
    report(7, "two flips and tangent dimension two", Duration::from_secs(600).saturating_sub(setup), &mut || {
        flips_and_tangents(&lattices).map(|d| format!("{d}, reports built in {:.2}s", setup.as_secs_f64()))
    });
    report(8, "wall ideals are initial ideals", Duration::from_secs(600), &mut || wall_coherence(&lattices));
    report(9, "property suites", Duration::from_secs(600), &mut || property_suites(&lattices));
    report(10, "trivial lattices", Duration::from_secs(5), &mut trivial_lattices);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria pass");
}
