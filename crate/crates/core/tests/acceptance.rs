use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use qgr_core::dehom::Dehom;
use qgr_core::grassmann::{subsets, Grassmannian, IndexSet};
use qgr_core::groupoid::{verify_transport, Dihedral, MapKind, MapSpec};
use qgr_core::hspec::{count_le_diagrams, enumerate_tnn_vanishing_patterns, spectrum_report, weakly_separated};
use qgr_core::qmatrix::{Gen, QuantumMatrixAlgebra};
use qgr_core::scalars::Laurent;
use qgr_core::tnn::RationalMatrix;
use qgr_core::twist::{cocycle_condition_check, gamma_gamma_identity, CocycleKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rewriting_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for (r, c) in [(2usize, 2usize), (2, 3), (3, 3)] {
        let alg = QuantumMatrixAlgebra::new(r, c, 1).map_err(|e| e.to_string())?;
        let word = |rng: &mut ChaCha8Rng| -> Vec<Gen> {
            let len = rng.gen_range(0..=4);
            (0..len)
                .map(|_| Gen::new(rng.gen_range(1..=r), rng.gen_range(1..=c)))
                .collect()
        };
        let per = if (r, c) == (3, 3) { 334 } else { 333 };
        for _ in 0..per {
            let (a, b, d) = (word(&mut rng), word(&mut rng), word(&mut rng));
            let nf = |w: &[Gen]| alg.normal_form(w, Laurent::one()).unwrap();
            let (pa, pb, pd) = (nf(&a), nf(&b), nf(&d));
            let left = alg.mul(&alg.mul(&pa, &pb).unwrap(), &pd).unwrap();
            let right = alg.mul(&pa, &alg.mul(&pb, &pd).unwrap()).unwrap();
            let mut whole = a.clone();
            whole.extend(&b);
            whole.extend(&d);
            ensure(left == right && left == nf(&whole), || {
                format!("{r}x{c}: {a:?} {b:?} {d:?}")
            })?;
            count += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("{count} triples in {:.2}s", t.as_secs_f64()))
}

fn separation() -> Outcome {
    let mut pairs = 0;
    for (m, n) in [(2, 4), (2, 5)] {
        let g = Grassmannian::new(m, n).unwrap();
        let sets = subsets(n, m);
        for (k, i) in sets.iter().enumerate() {
            for j in &sets[k + 1..] {
                let q = g.qcomm(i, j).unwrap().is_some();
                ensure(q == weakly_separated(i, j, n), || format!("({m},{n}) {i} {j}"))?;
                pairs += 1;
            }
        }
    }
    ensure(pairs == 60, || format!("{pairs} pairs"))?;
    Ok("15 + 45 unordered pairs agree".into())
}

fn normality() -> Outcome {
    for (m, n) in [(2, 4), (2, 5)] {
        let g = Grassmannian::new(m, n).unwrap();
        for alpha in 1..=n as i64 {
            let mm = g.consecutive_data(alpha).m_set;
            for i in subsets(n, m) {
                ensure(g.qcomm(&mm, &i).unwrap().is_some(), || {
                    format!("({m},{n}) α={alpha} {i}")
                })?;
            }
        }
    }
    Ok("every consecutive minor quasi-commutes with every minor".into())
}

fn full_rotation() -> Outcome {
    for (m, n) in [(1, 3), (2, 4), (2, 5), (3, 6)] {
        let d = Dihedral::new(m, n).unwrap();
        let expected = Laurent::u_pow(-2 * (m * m) as i64);
        for i in subsets(n, m) {
            ensure(d.big_lambda(&i, n) == expected, || format!("({m},{n}) Λ_{i}"))?;
            for start in -(n as i64)..=n as i64 {
                let bound = 3 * n as i64;
                let mut scalar = Laurent::one();
                let mut set = i.clone();
                for l in start..start + n as i64 {
                    let img = MapSpec::new(MapKind::Theta(l), bound)
                        .apply(&d, l - 1, &set)
                        .map_err(|e| e.to_string())?;
                    scalar = &scalar * &img.scalar;
                    set = img.set;
                }
                ensure(scalar == expected && set == i, || {
                    format!("({m},{n}) {i} window at {start}")
                })?;
            }
        }
    }
    Ok("Λ_I(n) = q^-2m, all windows agree".into())
}

fn gamma_gamma() -> Outcome {
    for (m, n) in [(2, 4), (2, 5)] {
        for i in subsets(n, m) {
            for j in subsets(n, m) {
                ensure(gamma_gamma_identity(&i, &j, n).unwrap(), || {
                    format!("({m},{n}) {i} {j}")
                })?;
            }
        }
    }
    Ok("all ordered pairs".into())
}

fn cocycles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 3..=6 {
        for _ in 0..1000 {
            let mut v = || (0..n).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<_>>();
            let (s, t, w) = (v(), v(), v());
            for kind in [CocycleKind::Gamma, CocycleKind::SmallGamma] {
                ensure(cocycle_condition_check(kind, &s, &t, &w).unwrap(), || {
                    format!("{kind:?} {s:?} {t:?} {w:?}")
                })?;
            }
        }
    }
    Ok("1000 triples for each n in 3..=6".into())
}

fn transport() -> Outcome {
    let g = Grassmannian::new(2, 4).unwrap();
    let rels = g.quadratic_relations().map_err(|e| e.to_string())?;
    let mut summary = Vec::new();
    for kind in [MapKind::Theta(1), MapKind::Omega(0)] {
        let r = verify_transport(&g, &MapSpec::new(kind, 8), &rels).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{kind}: {:?}", r.first_failure()))?;
        summary.push(format!("{kind} {}/{} zero", r.zero_residuals, r.relations));
    }
    let bad = verify_transport(&g, &MapSpec::new(MapKind::ThetaUncorrected(1), 8), &rels).map_err(|e| e.to_string())?;
    ensure(bad.nonzero_residuals >= 1, || {
        "the corrupted map transported every relation".into()
    })?;
    summary.push(format!("control {} nonzero", bad.nonzero_residuals));
    Ok(summary.join(", "))
}

fn dihedral_law() -> Outcome {
    for (m, n) in [(2, 4), (2, 5)] {
        let d = Dihedral::new(m, n).unwrap();
        for i in subsets(n, m) {
            for l in 0..=n {
                ensure(d.dihedral_scalar_check(l, &i, 2 * n as i64).unwrap(), || {
                    format!("({m},{n}) {i} ℓ={l}")
                })?;
            }
            let w = |s: &IndexSet| d.omega_image(0, s).set;
            let c = |s: &IndexSet| d.theta_image(1, s).set;
            ensure(w(&c(&w(&i))) == i.shift(-1, n) && w(&w(&i)) == i, || {
                format!("({m},{n}) {i} image sets")
            })?;
        }
    }
    Ok("ℓ = 0..n at (2,4), (2,5)".into())
}

fn tables() -> Outcome {
    for (m, n) in [(2, 4), (2, 5), (3, 5)] {
        let d = Dehom::new(m, n).unwrap();
        for alpha in 1..=n as i64 {
            for i in 1..=m {
                for j in 1..=n - m {
                    let a = d.sigma_exponent(alpha, i, j).unwrap();
                    let b = d.sigma_exponent_from_first_principles(alpha, i, j).unwrap();
                    ensure(a == b, || format!("({m},{n}) σ at α={alpha} ({i},{j}): {a} vs {b}"))?;
                }
            }
            ensure(d.theta_alpha_check(alpha).unwrap(), || {
                format!("({m},{n}) tables at α={alpha}")
            })?;
        }
    }
    Ok("σ and twisted tables at (2,4), (2,5), (3,5)".into())
}

fn composite() -> Outcome {
    let mut checked = 0;
    for (m, n) in [(2, 4), (2, 5)] {
        let d = Dehom::new(m, n).unwrap();
        let dih = Dihedral::new(m, n).unwrap();
        for alpha in 1..=n as i64 {
            for i in subsets(n, m) {
                let c = d.composite_cycle_scalar(alpha, &i).map_err(|e| e.to_string())?;
                ensure(c.passed(), || {
                    format!("({m},{n}) α={alpha} {i}: {} vs {}", c.scalar, c.expected)
                })?;
                if alpha == 1 {
                    let img = dih.theta_image(0, &i);
                    ensure(c.scalar == img.scalar && c.image == img.set, || {
                        format!("({m},{n}) {i} at α=1")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} composites"))
}

fn positivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, n) in [(2, 4), (2, 5), (3, 5)] {
        let sign = BigRational::from_integer(BigInt::from(if m % 2 == 1 { 1 } else { -1 }));
        for _ in 0..500 {
            let a = RationalMatrix::random(&mut rng, m, n);
            let (c, w) = (a.cyc_act(), a.w0_act());
            for i in subsets(n, m) {
                let v = a.minor_value(&i).unwrap();
                ensure(
                    c.minor_value(&i.shift(1, n)).unwrap() == v && w.minor_value(&i.w0(n)).unwrap() == v,
                    || format!("({m},{n}) minor {i} of\n{a}"),
                )?;
            }
            ensure(a.dihedral_relation_check(), || format!("({m},{n}) dihedral relation"))?;
            let mut p = a.clone();
            for _ in 0..n {
                p = p.cyc_act();
            }
            ensure(p == a.scale(&sign), || format!("({m},{n}) c^n"))?;
        }
    }
    let mut tp_count = 0;
    for k in 0..500 {
        let (m, n) = [(2, 4), (2, 5), (3, 5)][k % 3];
        let (a, tp) = RationalMatrix::tnn_witness(&mut rng, m, n);
        ensure(a.is_tnn() && a.cyc_act().is_tnn() && a.w0_act().is_tnn(), || {
            format!("witness {k}")
        })?;
        if tp {
            ensure(a.is_tp() && a.cyc_act().is_tp() && a.w0_act().is_tp(), || {
                format!("TP witness {k}")
            })?;
            tp_count += 1;
        }
    }
    Ok(format!(
        "1500 random matrices, 500 witnesses ({tp_count} totally positive)"
    ))
}

fn spectrum() -> Outcome {
    let pats = enumerate_tnn_vanishing_patterns(2, 4, 4).map_err(|e| e.to_string())?;
    let le = count_le_diagrams(2, 4);
    ensure(pats.len() == 33 && le == 33, || {
        format!("{} patterns, {le} Le diagrams", pats.len())
    })?;
    let r = spectrum_report(2, 4, 4).map_err(|e| e.to_string())?;
    let (p, c, d) = r.counts();
    ensure((p, c, d) == (34, 11, 10), || format!("{p}/{c}/{d}"))?;
    Ok(format!("{p} patterns, {c} ⟨c⟩-orbits, {d} dihedral orbits"))
}

fn classical_limit() -> Outcome {
    let one = BigInt::from(1);
    for (m, n) in [(1, 3), (2, 4), (2, 5), (3, 6)] {
        let d = Dihedral::new(m, n).unwrap();
        for i in subsets(n, m) {
            for start in -(n as i64)..=n as i64 {
                let img = d.compose_theta(start, n, &i);
                ensure(img.scalar.eval_at_one() == one && img.set == i, || {
                    format!("({m},{n}) rotation {i}")
                })?;
            }
            for l in 0..=n {
                let o = d.omega_image(l, &i);
                ensure(o.scalar.eval_at_one() == one && o.set == i.w0(n), || {
                    format!("({m},{n}) Ω_{l} {i}")
                })?;
            }
        }
    }
    let g = Grassmannian::new(2, 4).unwrap();
    let rels = g.quadratic_relations().map_err(|e| e.to_string())?;
    let run = verify_transport(&g, &MapSpec::new(MapKind::ThetaRun { start: 1, count: 4 }, 8), &rels)
        .map_err(|e| e.to_string())?;
    ensure(run.passed(), || "the four-fold rotation failed to transport".into())?;
    Ok("rotations specialize to the identity, Ω to w0".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("rewriting soundness", rewriting_soundness),
        ("quasi-commutation and weak separability", separation),
        ("consecutive-minor normality", normality),
        ("full rotation scalar", full_rotation),
        ("gamma-Gamma identity", gamma_gamma),
        ("cocycle condition", cocycles),
        ("relation transport", transport),
        ("dihedral scalar law", dihedral_law),
        ("dehomogenization tables", tables),
        ("composite scalars", composite),
        ("totally nonnegative identities", positivity),
        ("spectrum counts", spectrum),
        ("classical limit", classical_limit),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
