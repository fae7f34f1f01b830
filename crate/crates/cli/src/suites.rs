use std::collections::BTreeMap;
use std::fmt::Write as _;

use qgr_core::dehom::Dehom;
use qgr_core::grassmann::{subsets, Grassmannian, IndexSet};
use qgr_core::groupoid::{verify_transport, Dihedral, MapKind, MapSpec, TransportReport};
use qgr_core::hspec::{count_le_diagrams, spectrum_report, weakly_separated};
use qgr_core::qmatrix::QuantumMatrixAlgebra;
use qgr_core::scalars::Laurent;
use qgr_core::tnn::RationalMatrix;
use qgr_core::twist::{
    cocycle_condition_check, eval_cocycle, gamma_gamma_identity, tower_scalar, twisted_product, CocycleKind,
    TwistedElement,
};
use qgr_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

pub struct Ctx {
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub grid: u32,
    pub level_bound: i64,
}

pub struct Report {
    pub value: Value,
    pub text: String,
    pub failure: Option<String>,
}

impl Report {
    fn ok(value: Value, text: String) -> Self {
        Self {
            value,
            text,
            failure: None,
        }
    }
}

fn set(s: &str, n: usize) -> Result<IndexSet> {
    let i: IndexSet = s.parse()?;
    IndexSet::within(i.elems().to_vec(), n)
}

pub fn nf(ctx: &Ctx, input: &str) -> Result<Report> {
    let alg = QuantumMatrixAlgebra::new(ctx.m, ctx.n, ctx.m as i64)?;
    let mut out = Vec::new();
    let mut text = String::new();
    for line in input.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let p = alg.parse_expr(line)?;
        out.push(json!({ "input": line, "normal_form": p.to_string() }));
        writeln!(text, "{p}").unwrap();
    }
    Ok(Report::ok(Value::Array(out), text))
}

pub fn minor(ctx: &Ctx, s: &str) -> Result<Report> {
    let g = Grassmannian::new(ctx.m, ctx.n)?;
    let i = set(s, ctx.n)?;
    let p = g.minor(&i)?;
    Ok(Report::ok(
        json!({ "set": i, "terms": p.len(), "minor": p.to_string() }),
        format!("{p}\n"),
    ))
}

pub fn qcomm(ctx: &Ctx, a: &str, b: &str) -> Result<Report> {
    let g = Grassmannian::new(ctx.m, ctx.n)?;
    let (i, j) = (set(a, ctx.n)?, set(b, ctx.n)?);
    let r = g.qcomm(&i, &j)?;
    let ws = weakly_separated(&i, &j, ctx.n);
    let text = match r {
        Some(r) => format!("{j}{i} = q^{r} {i}{j}\n"),
        None => format!("{i} and {j} do not quasi-commute\n"),
    };
    Ok(Report::ok(
        json!({ "a": i, "b": j, "exponent": r, "weakly_separated": ws }),
        text,
    ))
}

pub fn relations(ctx: &Ctx) -> Result<Report> {
    let g = Grassmannian::new(ctx.m, ctx.n)?;
    let rels = g.quadratic_relations()?;
    let bad = rels
        .iter()
        .position(|r| g.evaluate(r).map(|p| !p.is_zero()).unwrap_or(true));
    let mut text = String::new();
    for r in &rels {
        writeln!(text, "{r}").unwrap();
    }
    let terms: Vec<Value> = rels.iter().map(|r| json!(r.terms)).collect();
    Ok(Report {
        value: json!({ "m": ctx.m, "n": ctx.n, "count": rels.len(), "relations": terms }),
        text,
        failure: bad.map(|k| format!("relation {k} does not vanish: {}", rels[k])),
    })
}

#[derive(Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum TwistQuery {
    Cocycle {
        kind: CocycleKind,
        s: Vec<i64>,
        t: Vec<i64>,
    },
    Condition {
        kind: CocycleKind,
        s: Vec<i64>,
        t: Vec<i64>,
        v: Vec<i64>,
    },
    Tower {
        level: i64,
        s: Vec<i64>,
        t: Vec<i64>,
    },
    Identity {
        left: IndexSet,
        right: IndexSet,
    },
    Product {
        level: i64,
        left: IndexSet,
        right: IndexSet,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TwistInput {
    One(TwistQuery),
    Many(Vec<TwistQuery>),
}

pub fn twist(ctx: &Ctx, input: &str) -> std::result::Result<Report, String> {
    let parsed: TwistInput = serde_json::from_str(input).map_err(|e| format!("bad twist input: {e}"))?;
    let queries = match parsed {
        TwistInput::One(q) => vec![q],
        TwistInput::Many(v) => v,
    };
    let g = Grassmannian::new(ctx.m, ctx.n).map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    let mut text = String::new();
    let mut failure = None;
    for q in queries {
        let (value, line) = twist_one(ctx, &g, q).map_err(|e| e.to_string())?;
        if value.get("holds") == Some(&Value::Bool(false)) && failure.is_none() {
            failure = Some(format!("identity fails: {value}"));
        }
        writeln!(text, "{line}").unwrap();
        out.push(value);
    }
    Ok(Report {
        value: Value::Array(out),
        text,
        failure,
    })
}

fn twist_one(ctx: &Ctx, g: &Grassmannian, q: TwistQuery) -> Result<(Value, String)> {
    let check_level = |level: i64| {
        if level.abs() > ctx.level_bound {
            Err(Error::LevelOutOfBound {
                level,
                bound: ctx.level_bound,
            })
        } else {
            Ok(())
        }
    };
    Ok(match q {
        TwistQuery::Cocycle { kind, s, t } => {
            let v = eval_cocycle(kind, &s, &t)?;
            (json!({ "op": "cocycle", "value": v }), v.to_string())
        }
        TwistQuery::Condition { kind, s, t, v } => {
            let h = cocycle_condition_check(kind, &s, &t, &v)?;
            (json!({ "op": "condition", "holds": h }), h.to_string())
        }
        TwistQuery::Tower { level, s, t } => {
            check_level(level)?;
            let v = tower_scalar(level, &s, &t)?;
            (json!({ "op": "tower", "value": v }), v.to_string())
        }
        TwistQuery::Identity { left, right } => {
            g.check_set(&left)?;
            g.check_set(&right)?;
            let h = gamma_gamma_identity(&left, &right, ctx.n)?;
            (json!({ "op": "identity", "holds": h }), h.to_string())
        }
        TwistQuery::Product { level, left, right } => {
            check_level(level)?;
            let a = TwistedElement::new(level, g.minor(&left)?);
            let b = TwistedElement::new(level, g.minor(&right)?);
            let p = twisted_product(g.algebra(), level, &a, &b)?;
            let s = p.value.to_string();
            (json!({ "op": "product", "level": level, "value": s }), s)
        }
    })
}

fn transport_text(r: &TransportReport) -> String {
    let mut t = format!(
        "{} on Gr({},{}): level {} -> {}{}\n{} relations, {} zero residuals, {} nonzero\n",
        r.map,
        r.m,
        r.n,
        r.source_level,
        r.target_level,
        if r.anti { " (anti)" } else { "" },
        r.relations,
        r.zero_residuals,
        r.nonzero_residuals
    );
    for note in &r.notes {
        writeln!(t, "note: {note}").unwrap();
    }
    t
}

pub fn groupoid_verify(ctx: &Ctx, map: &str) -> Result<Report> {
    let kind: MapKind = map.parse()?;
    let g = Grassmannian::new(ctx.m, ctx.n)?;
    let rels = g.quadratic_relations()?;
    let r = verify_transport(&g, &MapSpec::new(kind, ctx.level_bound), &rels)?;
    let failure = r
        .first_failure()
        .map(|f| format!("relation {} has residual {}", f.relation, f.residual));
    Ok(Report {
        text: transport_text(&r),
        value: serde_json::to_value(&r).expect("serializable"),
        failure,
    })
}

pub fn groupoid_image(ctx: &Ctx, map: &str, s: &str, level: Option<i64>) -> Result<Report> {
    let kind: MapKind = map.parse()?;
    let spec = MapSpec::new(kind, ctx.level_bound);
    let d = Dihedral::new(ctx.m, ctx.n)?;
    let i = set(s, ctx.n)?;
    if i.len() != ctx.m {
        return Err(Error::WrongCardinality {
            set: i.to_string(),
            found: i.len(),
            expected: ctx.m,
        });
    }
    let img = spec.apply(&d, level.unwrap_or(spec.source_level), &i)?;
    Ok(Report::ok(
        json!({ "map": kind.to_string(), "set": i, "image": img }),
        format!("{i} -> ({}) * {} at level {}\n", img.scalar, img.set, img.level),
    ))
}

pub fn dehom_check(ctx: &Ctx, alpha: Option<i64>) -> Result<Report> {
    let d = Dehom::new(ctx.m, ctx.n)?;
    let alphas: Vec<i64> = match alpha {
        Some(a) => vec![a],
        None => (1..=ctx.n as i64).collect(),
    };
    let mut failure = None;
    let mut rows = Vec::new();
    let mut text = String::new();
    for &a in &alphas {
        let mut sigma = BTreeMap::new();
        for i in 1..=ctx.m {
            for j in 1..=ctx.n - ctx.m {
                let s = d.sigma_exponent(a, i, j)?;
                let f = d.sigma_exponent_from_first_principles(a, i, j)?;
                if s != f && failure.is_none() {
                    failure = Some(format!("α={a}: σ({i},{j}) = {s} but first principles give {f}"));
                }
                sigma.insert(format!("{i},{j}"), s);
            }
        }
        let tables = d.theta_alpha_check(a)?;
        let xrel = d.x_relations_check(a)?;
        if failure.is_none() && !tables {
            failure = Some(format!("α={a}: twisted tables differ from the next algebra"));
        }
        if failure.is_none() && !xrel {
            failure = Some(format!("α={a}: localized x generators break a relation"));
        }
        let mut lambda = BTreeMap::new();
        if tables {
            for i in subsets(ctx.n, ctx.m) {
                let c = d.composite_cycle_scalar(a, &i)?;
                if !c.passed() && failure.is_none() {
                    failure = Some(format!("α={a}: composite on {i} gives {} not {}", c.scalar, c.expected));
                }
                lambda.insert(
                    i.to_string(),
                    json!({ "scalar": c.scalar, "expected": c.expected, "passed": c.passed() }),
                );
            }
        }
        writeln!(text, "alpha {a}: tables {}, x relations {}", tables, xrel).unwrap();
        for (k, v) in &sigma {
            writeln!(text, "  sigma({k}) = {v}").unwrap();
        }
        for (k, v) in &lambda {
            writeln!(text, "  lambda {k} = {}", v["scalar"].as_str().unwrap_or("?")).unwrap();
        }
        rows.push(json!({ "alpha": a, "sigma": sigma, "theta_alpha": tables, "x_relations": xrel, "lambda": lambda }));
    }
    Ok(Report {
        value: json!({ "m": ctx.m, "n": ctx.n, "alphas": rows }),
        text,
        failure,
    })
}

pub fn hspec_orbits(ctx: &Ctx) -> Result<Report> {
    let r = spectrum_report(ctx.m, ctx.n, ctx.grid)?;
    let (p, c, d) = r.counts();
    let failure = (!r.complete()).then(|| {
        format!(
            "{} realizable patterns but {} Le diagrams (raise --grid?)",
            r.tnn_patterns, r.le_diagrams
        )
    });
    let mut value = serde_json::to_value(&r).expect("serializable");
    value["counts"] = json!({ "patterns": p, "cycle_orbits": c, "dihedral_orbits": d });
    let mut text = format!(
        "{p} patterns ({} realizable, {} Le diagrams), {c} <c>-orbits, {d} dihedral orbits\nnote: {}\n",
        r.tnn_patterns, r.le_diagrams, r.note
    );
    for orbit in &r.dihedral_orbits.orbits {
        let names: Vec<String> = orbit.iter().map(|&k| r.patterns[k].to_string()).collect();
        writeln!(text, "  {}", names.join(" ")).unwrap();
    }
    Ok(Report { value, text, failure })
}

pub fn le_count(ctx: &Ctx) -> Report {
    let k = count_le_diagrams(ctx.m, ctx.n);
    Report::ok(json!({ "m": ctx.m, "n": ctx.n, "le_diagrams": k }), format!("{k}\n"))
}

/// The first broken identity of `a`, if any.
fn matrix_failure(a: &RationalMatrix) -> Option<String> {
    let (m, n) = (a.rows(), a.cols());
    let (c, w) = (a.cyc_act(), a.w0_act());
    for i in subsets(n, m) {
        let v = a.minor_value(&i).ok()?;
        if c.minor_value(&i.shift(1, n)).ok()? != v {
            return Some(format!("Δ_{i} differs after c"));
        }
        if w.minor_value(&i.w0(n)).ok()? != v {
            return Some(format!("Δ_{i} differs after w0"));
        }
    }
    if !a.dihedral_relation_check() {
        return Some("(w0 c w0)·A differs from c^-1·A".into());
    }
    let mut p = a.clone();
    for _ in 0..n {
        p = p.cyc_act();
    }
    let sign: i64 = if m % 2 == 1 { 1 } else { -1 };
    if p != a.scale(&num_rational::BigRational::from_integer(sign.into())) {
        return Some("c^n·A differs from (-1)^(m-1)·A".into());
    }
    if a.is_tnn() && !(c.is_tnn() && w.is_tnn()) {
        return Some("total nonnegativity not preserved".into());
    }
    if a.is_tp() && !(c.is_tp() && w.is_tp()) {
        return Some("total positivity not preserved".into());
    }
    None
}

pub fn tnn_verify(ctx: &Ctx, trials: usize, matrix: Option<&str>) -> std::result::Result<Report, String> {
    if let Some(js) = matrix {
        let a: RationalMatrix = serde_json::from_str(js).map_err(|e| format!("bad matrix: {e}"))?;
        if a.rows() == 0 || a.rows() >= a.cols() {
            return Err(format!(
                "matrix must be m x n with 1 <= m < n, got {}x{}",
                a.rows(),
                a.cols()
            ));
        }
        let minors: BTreeMap<String, String> = a
            .minors()
            .into_iter()
            .map(|(i, v)| (i.to_string(), v.to_string()))
            .collect();
        let failure = matrix_failure(&a).map(|f| format!("{f} for\n{a}"));
        return Ok(Report {
            value: json!({
                "matrix": a, "minors": minors, "tnn": a.is_tnn(), "tp": a.is_tp(),
                "c": a.cyc_act(), "w0": a.w0_act(), "passed": failure.is_none(),
            }),
            text: format!(
                "tnn {}, tp {}\nc·A:\n{}w0·A:\n{}",
                a.is_tnn(),
                a.is_tp(),
                a.cyc_act(),
                a.w0_act()
            ),
            failure,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut failure = None;
    let mut tp = 0;
    for k in 0..trials {
        let a = RationalMatrix::random(&mut rng, ctx.m, ctx.n);
        if let Some(f) = matrix_failure(&a) {
            failure.get_or_insert_with(|| format!("random matrix {k}: {f}\n{a}"));
        }
        let (w, is_tp) = RationalMatrix::tnn_witness(&mut rng, ctx.m, ctx.n);
        if !w.is_tnn() || (is_tp && !w.is_tp()) {
            failure.get_or_insert_with(|| format!("witness {k} is not positive as built\n{w}"));
        }
        if let Some(f) = matrix_failure(&w) {
            failure.get_or_insert_with(|| format!("witness {k}: {f}\n{w}"));
        }
        tp += usize::from(w.is_tp());
    }
    Ok(Report {
        value: json!({ "m": ctx.m, "n": ctx.n, "seed": ctx.seed, "random": trials, "witnesses": trials, "tp_witnesses": tp, "passed": failure.is_none() }),
        text: format!("{trials} random matrices and {trials} witnesses ({tp} totally positive) checked\n"),
        failure,
    })
}

struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

pub fn all(ctx: &Ctx, trials: usize) -> Result<Report> {
    let (m, n) = (ctx.m, ctx.n);
    let g = Grassmannian::new(m, n)?;
    let d = Dihedral::new(m, n)?;
    let sets = subsets(n, m);
    let mut checks = Vec::new();

    let rels = g.quadratic_relations()?;
    let vanish = rels.iter().all(|r| g.evaluate(r).map(|p| p.is_zero()).unwrap_or(false));
    checks.push(Check {
        name: "relations",
        passed: vanish,
        detail: format!("{} relations", rels.len()),
    });

    let mut agree = true;
    for (k, i) in sets.iter().enumerate() {
        for j in &sets[k + 1..] {
            agree &= g.qcomm(i, j)?.is_some() == weakly_separated(i, j, n);
        }
    }
    checks.push(Check {
        name: "qcomm",
        passed: agree,
        detail: "quasi-commutation agrees with weak separability".into(),
    });

    let mut normal = true;
    for alpha in 1..=n as i64 {
        let mm = g.consecutive_data(alpha).m_set;
        for i in &sets {
            normal &= g.qcomm(&mm, i)?.is_some();
        }
    }
    checks.push(Check {
        name: "normality",
        passed: normal,
        detail: "consecutive minors are normal".into(),
    });

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut cocycles = true;
    for _ in 0..trials {
        let mut v = || (0..n).map(|_| rng.gen_range(-9i64..=9)).collect::<Vec<_>>();
        let (s, t, w) = (v(), v(), v());
        for kind in [CocycleKind::Gamma, CocycleKind::SmallGamma] {
            cocycles &= cocycle_condition_check(kind, &s, &t, &w)?;
        }
    }
    let mut gg = true;
    for i in &sets {
        for j in &sets {
            gg &= gamma_gamma_identity(i, j, n)?;
        }
    }
    checks.push(Check {
        name: "twist",
        passed: cocycles && gg,
        detail: format!("{trials} cocycle triples, gamma-Gamma identity on all pairs"),
    });

    let expected = Laurent::u_pow(-2 * (m * m) as i64);
    let rotation = sets.iter().all(|i| d.big_lambda(i, n) == expected);
    let mut law = true;
    for i in &sets {
        for l in 0..=n {
            law &= d.dihedral_scalar_check(l, i, ctx.level_bound.max(2 * n as i64))?;
        }
    }
    checks.push(Check {
        name: "dihedral",
        passed: rotation && law,
        detail: "full rotation scalar and dihedral law".into(),
    });

    for kind in [MapKind::Theta(1), MapKind::Omega(0)] {
        let r = verify_transport(&g, &MapSpec::new(kind, ctx.level_bound), &rels)?;
        checks.push(Check {
            name: if kind == MapKind::Theta(1) {
                "groupoid theta1"
            } else {
                "groupoid omega0"
            },
            passed: r.passed(),
            detail: match r.first_failure() {
                Some(f) => format!("relation {} has residual {}", f.relation, f.residual),
                None => format!("{} zero residuals", r.zero_residuals),
            },
        });
    }
    let control = verify_transport(&g, &MapSpec::new(MapKind::ThetaUncorrected(1), ctx.level_bound), &rels)?;
    // For m = 1 each generator has its own content, so rescaling one of
    // them is a graded automorphism and the control cannot fail.
    checks.push(Check {
        name: "groupoid control",
        passed: m == 1 || !control.passed(),
        detail: if m == 1 {
            "not applicable for m = 1".into()
        } else {
            format!("corrupted map leaves {} nonzero residuals", control.nonzero_residuals)
        },
    });

    let dh = Dehom::new(m, n)?;
    let mut dehom_ok = true;
    let mut first = String::new();
    for alpha in 1..=n as i64 {
        if !dh.theta_alpha_check(alpha)? {
            dehom_ok = false;
            first = format!("tables at α={alpha}");
            break;
        }
        for i in &sets {
            let c = dh.composite_cycle_scalar(alpha, i)?;
            if !c.passed() {
                dehom_ok = false;
                first = format!("composite at α={alpha} on {i}");
                break;
            }
        }
    }
    checks.push(Check {
        name: "dehom",
        passed: dehom_ok,
        detail: if dehom_ok {
            "tables and composite scalars".into()
        } else {
            first
        },
    });

    if m <= 2 && n <= 5 {
        let r = spectrum_report(m, n, ctx.grid)?;
        let (p, c, o) = r.counts();
        checks.push(Check {
            name: "hspec",
            passed: r.complete(),
            detail: format!("{p} patterns, {c} <c>-orbits, {o} dihedral orbits"),
        });
    }

    let t = tnn_verify(ctx, trials, None).map_err(Error::Consistency)?;
    checks.push(Check {
        name: "tnn",
        passed: t.failure.is_none(),
        detail: t
            .failure
            .unwrap_or_else(|| format!("{trials} random matrices and witnesses")),
    });

    let failure = checks
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail));
    let mut text = String::new();
    for c in &checks {
        writeln!(
            text,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
        .unwrap();
    }
    let value = json!({
        "m": m, "n": n, "seed": ctx.seed, "trials": trials,
        "checks": checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect::<Vec<_>>(),
        "passed": failure.is_none(),
    });
    Ok(Report { value, text, failure })
}
