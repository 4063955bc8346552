use std::process::ExitCode;
use std::time::Instant;

use chow_engine::catalog;
use chow_engine::charpoly::{deletion_contraction, via_mobius, whitney};
use chow_engine::chow::{
    deg_psi_minus_product, parse_monomial, psi_minus, psi_plus, DegreeEngine, DivisorCombination,
};
use chow_engine::oracle::{straighten_degree, ChowPoly, Oracle};
use chow_engine::verify::{
    expansion_degree, random_matrix_matroid, verify_charpoly, verify_degrees, verify_pd,
    verify_psi_powers, verify_signs,
};
use chow_engine::volume::{
    eval_volume, minkowski_to_support, postnikov_volume, psi_minus_volume, MinkowskiWeights,
};
use chow_engine::{Matroid, Result, Subset};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

/// `Ok(detail)` on success, `Err(detail)` on a failed check.
type Outcome = std::result::Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn lib<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("error: {e}"))
}

fn named(names: &[&str]) -> std::result::Result<Vec<(String, Matroid)>, String> {
    names
        .iter()
        .map(|n| lib(catalog::load(n)).map(|m| (n.to_string(), m)))
        .collect()
}

fn worked_example() -> Outcome {
    let m = lib(Matroid::from_boolean(7))?;
    let mono = lib(parse_monomial(&m, "D{0,1}^3 * D{0,1,2,3,4}^2 * D{0,1,2,3,4,5}"))?;
    let engine = lib(DegreeEngine::new(&m))?;
    let closed = lib(engine.deg_monomial(&mono))?.0;
    let expanded = lib(expansion_degree(&engine, &lib(engine.expand_monomial(&mono))?))?;
    let straightened = lib(straighten_degree(&m, &mono))?;
    let target = BigInt::from(-4);
    check(
        closed == target && expanded == target && straightened == target,
        || format!("closed form {closed}, expansion {expanded}, straightening oracle {straightened}"),
    )?;
    Ok(format!(
        "closed form {closed}, expansion {expanded}, straightening oracle {straightened}"
    ))
}

fn psi_powers() -> Outcome {
    let list = lib(catalog::with_max_r(3))?;
    let mut rows = 0;
    for (name, m) in &list {
        let (w, d, mo) = (whitney(m), deletion_contraction(m), via_mobius(m));
        check(w == d && w == mo, || format!("{name}: characteristic polynomials differ"))?;
        let rep = lib(verify_psi_powers(m, true))?;
        check(rep.passed(), || format!("{name}: {}", rep.to_json()))?;
        rows += rep.rows.len();
    }
    Ok(format!("{} matroids, {rows} (a, b) pairs", list.len()))
}

fn three_way() -> Outcome {
    let list = named(&["boolean_4", "uniform_2_4", "uniform_3_4", "uniform_3_5", "k4", "fano"])?;
    let mut total = 0;
    let mut parts = Vec::new();
    for (name, m) in &list {
        let rep = lib(verify_degrees(m, None, SEED, true))?;
        check(rep.passed(), || format!("{name}: {}", rep.to_json()))?;
        total += rep.checked;
        parts.push(format!(
            "{name} {}{}",
            rep.checked,
            if rep.exhaustive { "" } else { " sampled" }
        ));
    }
    Ok(format!("{total} monomials ({})", parts.join(", ")))
}

fn self_intersection() -> Outcome {
    let list = lib(catalog::with_max_r(3))?;
    let mut count = 0;
    for (name, m) in &list {
        let oracle = lib(Oracle::new(m))?;
        for f in m.proper_flats().map(|f| f.members) {
            let e = f.min().expect("proper flats of a loopless matroid are nonempty");
            let d = DivisorCombination::generator(f);
            let mut rel = ChowPoly::product(&[d.clone(), d.clone()]);
            rel.add(&ChowPoly::linear(&d).times_linear(&lib(psi_minus(m, f, e))?));
            rel.add(&ChowPoly::linear(&d).times_linear(&lib(psi_plus(m, f, e))?));
            check(lib(oracle.is_zero(&rel))?, || {
                format!("{name}: relation is nonzero for {}", m.show(f))
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} proper flats over {} matroids", list.len()))
}

fn bes() -> Outcome {
    let list: Vec<_> = lib(catalog::with_max_r(2))?
        .into_iter()
        .filter(|(_, m)| m.rank() == 3)
        .collect();
    let (mut pairs, mut ones) = (0, 0);
    for (name, m) in &list {
        let oracle = lib(Oracle::new(m))?;
        let flats: Vec<Subset> = m
            .flats()
            .iter()
            .map(|f| f.members)
            .filter(|s| !s.is_empty())
            .collect();
        let minus: Vec<DivisorCombination> = flats
            .iter()
            .map(|&f| lib(psi_minus(m, f, 0)))
            .collect::<std::result::Result<_, _>>()?;
        for (i, &a) in flats.iter().enumerate() {
            for (j, &b) in flats.iter().enumerate() {
                let fast = lib(deg_psi_minus_product(m, &[a, b]))?;
                let slow =
                    lib(oracle.degree_poly(&ChowPoly::product(&[minus[i].clone(), minus[j].clone()])))?;
                check(fast == slow && (fast.is_zero() || fast.is_one()), || {
                    format!("{name}: ({}, {}) rank test {fast}, oracle {slow}", m.show(a), m.show(b))
                })?;
                pairs += 1;
                if fast.is_one() {
                    ones += 1;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} ordered pairs over {} matroids, {ones} of degree 1",
        list.len()
    ))
}

fn poincare() -> Outcome {
    let list = named(&[
        "boolean_3",
        "boolean_4",
        "uniform_2_4",
        "uniform_3_4",
        "uniform_3_5",
        "k4",
        "fano",
    ])?;
    let mut certs = 0;
    for (name, m) in &list {
        let rep = lib(verify_pd(m, None))?;
        check(rep.passed(), || format!("{name}: {}", rep.to_json()))?;
        check(rep.certificates.iter().all(|c| c.triangular), || {
            format!("{name}: a pairing matrix is not triangular")
        })?;
        check(rep.ranks.iter().all(|r| r.2 == Some(r.1)), || {
            format!("{name}: basis sizes do not match oracle ranks")
        })?;
        certs += rep.certificates.len();
    }
    Ok(format!("{certs} certificates over {} matroids", list.len()))
}

fn weights(n: usize, y: &[(&[usize], i64)]) -> std::result::Result<MinkowskiWeights, String> {
    let mut w = MinkowskiWeights::new(n);
    for (g, v) in y {
        lib(w.set(lib(Subset::from_elements(n, g.iter().copied()))?, BigInt::from(*v)))?;
    }
    Ok(w)
}

fn volumes() -> Outcome {
    let q = |p: i64, d: i64| BigRational::new(BigInt::from(p), BigInt::from(d));
    let b3 = lib(Matroid::from_boolean(3))?;
    let fixed: [(&[(&[usize], i64)], BigRational); 2] = [
        (&[(&[0, 1, 2], 1)], q(1, 2)),
        (&[(&[0, 1], 1), (&[0, 2], 1)], q(1, 1)),
    ];
    for (y, expect) in fixed {
        let w = weights(3, y)?;
        let p = lib(postnikov_volume(3, &w))?;
        let e = lib(eval_volume(&b3, &lib(minkowski_to_support(3, &w))?))?;
        check(p == expect && e == expect, || format!("fixed case: postnikov {p}, eval {e}, expected {expect}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for n in 3..=5 {
        let m = lib(Matroid::from_boolean(n))?;
        for _ in 0..50 {
            let support = rng.gen_range(1..=4);
            let mut w = MinkowskiWeights::new(n);
            for _ in 0..support {
                let g = Subset::from_bits(rng.gen_range(1..1u64 << n));
                lib(w.set(g, BigInt::from(rng.gen_range(0..=3))))?;
            }
            let p = lib(postnikov_volume(n, &w))?;
            let e = lib(eval_volume(&m, &lib(minkowski_to_support(n, &w))?))?;
            let s = lib(psi_minus_volume(&m, &w))?;
            check(p == e && p == s, || {
                format!("n = {n}, y = {}: postnikov {p}, eval {e}, psi expansion {s}", w.to_json_value())
            })?;
            cases += 1;
        }
    }
    Ok(format!("2 fixed cases and {cases} seeded weight vectors"))
}

fn charpoly() -> Outcome {
    let mut list: Vec<(String, Matroid)> = Vec::new();
    for e in catalog::entries() {
        list.push((e.name.clone(), lib(e.build())?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..20 {
        list.push((format!("random_{i}"), lib(random_matrix_matroid(&mut rng, 4))?));
    }
    let mut identities = 0;
    for (name, m) in &list {
        let rep = lib(verify_charpoly(m))?;
        check(rep.passed(), || format!("{name}: {}", rep.to_json()))?;
        identities += rep.recursion.len() + usize::from(rep.simplification_invariant.is_some());
    }
    Ok(format!("{} matroids, {identities} identities", list.len()))
}

fn signs() -> Outcome {
    let mut flags = 0;
    let entries = catalog::entries();
    for e in &entries {
        let m = lib(e.build())?;
        let rep = lib(verify_signs(&m))?;
        check(rep.passed(), || format!("{}: {}", e.name, rep.to_json()))?;
        flags += rep.complete_flags;
    }
    Ok(format!("{} matroids, {flags} complete flags", entries.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("worked example", worked_example),
        ("psi powers and reduced characteristic polynomial", psi_powers),
        ("three-way degree equivalence", three_way),
        ("self-intersection relation", self_intersection),
        ("nested psi-minus degrees", bes),
        ("Poincare duality", poincare),
        ("volume cross-check", volumes),
        ("characteristic polynomial recursions", charpoly),
        ("sign regression", signs),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
