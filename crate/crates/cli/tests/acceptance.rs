//! Acceptance suite. Each test checks one criterion against oracles written
//! here, prints a single `PASS` or `FAIL` line with its runtime, and fails
//! when the check or the runtime budget fails.
//!
//! Criteria run one at a time so that their timings do not overlap.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use linecomplex::criterion::{
    chain_profile, chain_profile_counted, check_conditions, classify_regular, counterexample_family,
    nevanlinna_conjecture_eval, teichmueller_verdict, Outcome, PaddingSchedule, TypeClass, ZETA_2,
};
use linecomplex::curvature::{polygon_excess, vertex_ramification, vertex_ramifications};
use linecomplex::dilatation::{
    annulus_modulus, dilatation_quotient, plane_vs_disc_demo, JacobianSample,
};
use linecomplex::exhaustion::{limit_estimate, wreath_exhaust, wreath_exhaust_counted, LimitVerdict};
use linecomplex::hurwitz::{
    build_from_monodromy, covering_summary, random_datum, random_planar_datum, MonodromyDatum,
};
use linecomplex::rules::{ChainSchedule, ChainTree, ExpRule, PeriodicTable, TableVertex};
use linecomplex::walk::{effective_resistance, effective_resistance_tree, resistance_depths};
use linecomplex::{face_of, trace_faces, Color, FaceOrder, LineComplex, LocalRule, Rational};
use linecomplex_cli::{run, Report};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(index: usize, name: &str, budget_secs: u64, check: impl FnOnce() -> Result<String, String>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    let (status, note) = match &result {
        Ok(_) if elapsed >= budget => ("FAIL", format!("over the {budget_secs} s budget")),
        Ok(note) => ("PASS", note.clone()),
        Err(why) => ("FAIL", why.clone()),
    };
    println!(
        "{status} [{index}/8] {name}: {note} ({:.2} s of {budget_secs} s)",
        elapsed.as_secs_f64()
    );
    assert_eq!(status, "PASS", "{name}: {note}");
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn lc(args: &[&str]) -> Result<String, String> {
    let mut argv = vec!["lc"];
    argv.extend_from_slice(args);
    let out = run(argv);
    if out.code == 0 {
        Ok(out.stdout)
    } else {
        Err(format!("lc {} exited {}: {}", args.join(" "), out.code, out.stderr.trim()))
    }
}

fn spec(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(name)
        .display()
        .to_string()
}

fn field<'a>(r: &'a Report, key: &str) -> Result<&'a str, String> {
    r.get(key).ok_or_else(|| format!("report lacks {key}"))
}

/// Branching `b = Σ (n - #cycles)`, counted from the images directly.
fn branching_of(d: &MonodromyDatum) -> usize {
    d.sigma()
        .iter()
        .map(|p| {
            let n = p.degree();
            let mut seen = vec![false; n];
            let mut cycles = 0;
            for s in 0..n {
                if !seen[s] {
                    cycles += 1;
                    let mut j = s;
                    while !seen[j] {
                        seen[j] = true;
                        j = p.images()[j];
                    }
                }
            }
            n - cycles
        })
        .sum()
}

/// Two hundred transitive data with `n ≤ 8`, `q ≤ 5`; every other one is
/// drawn planar so that genus 0 is well represented.
fn corpus() -> Vec<MonodromyDatum> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200)
        .map(|i| {
            let n = rng.gen_range(1..=8);
            let q = rng.gen_range(2..=5);
            if i % 2 == 0 {
                random_planar_datum(&mut rng, n, q)
            } else {
                random_datum(&mut rng, n, q)
            }
        })
        .collect()
}

#[test]
fn finite_mean_ramification_identity() {
    criterion(1, "finite mean-ramification identity", 10, || {
        let mut genus_zero = 0;
        for d in corpus() {
            let c = build_from_monodromy(&d);
            let n = d.n() as i64;
            let b = branching_of(&d);
            let faces = trace_faces(&c).map_err(|e| e.to_string())?;
            let chi = c.vertex_count() as i64 - c.edge_count() as i64 + faces.len() as i64;
            ensure(chi == 2 * n - b as i64, || format!("{d}: χ = {chi} but 2n - b = {}", 2 * n - b as i64))?;
            let total: Rational = vertex_ramifications(&c).map_err(|e| e.to_string())?.into_iter().sum();
            ensure(total == frac(2 * b as i64, 1), || format!("{d}: Σ V_P = {total}, 2b = {}", 2 * b))?;
            if chi != 2 {
                continue;
            }
            genus_zero += 1;
            let expected = frac(2, 1) - frac(2, n);
            let s = covering_summary(&d);
            ensure(s.mean_ramification == expected, || {
                format!("{d}: mean {} ≠ 2 - 2/n = {expected}", s.mean_ramification)
            })?;
            let r = wreath_exhaust(&c, &c.base(), 2 * d.n() + 1, None).map_err(|e| e.to_string())?;
            ensure(r.last().mean == expected, || format!("{d}: exhaustion ends at {}", r.last().mean))?;
        }
        ensure(genus_zero >= 100, || format!("only {genus_zero} genus-0 data"))?;
        Ok(format!(
            "Σ V_P = 2b for 200 data; V = 2 - 2/n exactly for all {genus_zero} of genus 0"
        ))
    });
}

/// `V_P` and `E_P` assembled from face corners: a face of order `m` (or
/// infinite) puts one corner at each vertex of its boundary.
fn corner_check(orders: &[FaceOrder], q: usize, at: &str) -> Result<(), String> {
    let mut v = Rational::from_integer(0.into());
    let mut e = frac(2 - q as i64, 1);
    for o in orders {
        match o.m() {
            Some(m) => {
                v += frac(1, 1) - frac(1, m as i64);
                e += frac(1, m as i64);
            }
            None => v += frac(1, 1),
        }
    }
    ensure(v == vertex_ramification::<Rational>(orders), || format!("{at}: V_P differs"))?;
    ensure(e == polygon_excess::<Rational>(orders, q), || format!("{at}: E_P differs"))?;
    ensure(&v + &e == frac(2, 1), || format!("{at}: V_P + E_P = {}", &v + &e))
}

fn rule_corners<R: LocalRule>(rule: &R, radius: usize, cap: usize, name: &str) -> Result<usize, String> {
    let ball = linecomplex::complex::explore(rule, &rule.base(), radius).map_err(|e| e.to_string())?;
    for v in &ball.vertices {
        let orders: Vec<FaceOrder> = (0..rule.q())
            .map(|s| face_of(rule, v, s, cap).map(|f| f.order))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        corner_check(&orders, rule.q(), &format!("{name} {v:?}"))?;
    }
    Ok(ball.len())
}

#[test]
fn curvature_identity() {
    criterion(2, "curvature identity V_P + E_P = 2", 5, || {
        let mut vertices = 0;
        let mut complexes: Vec<LineComplex> = corpus().iter().map(build_from_monodromy).collect();
        complexes.push(LineComplex::bigon_complex(4));
        for c in &complexes {
            let faces = trace_faces(c).map_err(|e| e.to_string())?;
            let mut corners: BTreeMap<usize, Vec<FaceOrder>> = BTreeMap::new();
            for f in &faces {
                for d in &f.boundary {
                    corners.entry(d.vertex.0).or_default().push(f.order);
                }
            }
            ensure(corners.len() == c.vertex_count(), || "a vertex lies on no face".into())?;
            for (v, orders) in &corners {
                ensure(orders.len() == c.q(), || format!("v{v} has {} corners", orders.len()))?;
                corner_check(orders, c.q(), &format!("v{v}"))?;
            }
            vertices += corners.len();
        }
        let exp_table = PeriodicTable::new(
            2,
            vec![
                TableVertex {
                    color: Color::Inner,
                    neighbors: vec![(1, 0), (1, -1)],
                },
                TableVertex {
                    color: Color::Outer,
                    neighbors: vec![(0, 0), (0, 1)],
                },
            ],
        );
        let family = counterexample_family(3, 1, PaddingSchedule::DEFAULT).map_err(|e| e.to_string())?;
        vertices += rule_corners(&ExpRule, 20, 200, "exp")?;
        vertices += rule_corners(&exp_table, 20, 200, "table")?;
        vertices += rule_corners(&ChainTree::regular(3), 6, 200, "modular")?;
        vertices += rule_corners(&ChainTree::regular(5), 4, 200, "tree(5)")?;
        vertices += rule_corners(&family, 12, 400, "counterexample")?;
        Ok(format!(
            "{vertices} vertices over {} finite complexes and 5 infinite rules",
            complexes.len()
        ))
    });
}

#[test]
fn reference_family_trichotomy() {
    criterion(3, "reference-family trichotomy", 10, || {
        let exp = wreath_exhaust(&ExpRule, &0, 50, None).map_err(|e| e.to_string())?;
        ensure(exp.generations.iter().all(|g| g.mean == frac(2, 1)), || "exp: V_ν ≠ 2".into())?;
        let last = exp.last();
        let exp_verdict =
            classify_regular(&[last.vp_min.clone(), last.vp_max.clone()]).map_err(|e| e.to_string())?;
        ensure(exp_verdict.value == TypeClass::Parabolic, || format!("exp: {exp_verdict}"))?;

        let modular = ChainTree::regular(3);
        let m = wreath_exhaust_counted(&modular, 50, None).map_err(|e| e.to_string())?;
        ensure(m.generations.iter().all(|g| g.mean == frac(3, 1)), || "modular: V_ν ≠ 3".into())?;
        let p = chain_profile_counted(&modular, 50, usize::MAX).map_err(|e| e.to_string())?;
        ensure(p.psi.iter().all(|&x| x == 1), || "modular: ψ is not ≡ 1".into())?;
        let s50 = p.last_sum();
        // Σ_{k ≤ 50} 1/k², summed here exactly
        let direct: Rational = (1..=50i64).map(|k| frac(1, k * k)).sum();
        ensure(s50 == direct, || format!("modular: S_50 = {s50}, expected {direct}"))?;
        let s50 = num_traits::ToPrimitive::to_f64(&s50).unwrap();
        ensure(s50 <= ZETA_2, || format!("S_50 = {s50} > π²/6"))?;
        let series = teichmueller_verdict(&p, 50, Some(&modular.schedule().envelope()));
        ensure(series.value == TypeClass::Hyperbolic, || format!("modular: {series}"))?;
        let bound: f64 = series
            .evidence
            .iter()
            .find(|(k, _)| k == "series_bound")
            .and_then(|(_, v)| v.parse().ok())
            .ok_or("modular: no series bound")?;
        ensure(bound <= ZETA_2 + 1e-6, || format!("series bound {bound} > π²/6"))?;

        let cli_exp = Report::parse(&lc(&["classify", &spec("exp.toml"), "--depth", "50", "--walk-trials", "200"])?);
        ensure(field(&cli_exp, "regular_trichotomy")? == "PARABOLIC", || "lc: exp not PARABOLIC".into())?;
        ensure(field(&cli_exp, "exhaustion.mean_last")? == "2", || "lc: exp V ≠ 2".into())?;
        let cli_mod =
            Report::parse(&lc(&["classify", &spec("modular.toml"), "--depth", "50", "--walk-trials", "200"])?);
        ensure(field(&cli_mod, "series_criterion")? == "HYPERBOLIC", || "lc: modular series".into())?;
        ensure(field(&cli_mod, "regular_trichotomy")? == "HYPERBOLIC", || "lc: modular regular".into())?;
        ensure(field(&cli_mod, "exhaustion.mean_last")? == "3", || "lc: modular V ≠ 3".into())?;
        Ok(format!(
            "exp V_ν ≡ 2 PARABOLIC; modular V_ν ≡ 3, ψ ≡ 1, S_50 = {s50:.6} ≤ {ZETA_2:.6}, HYPERBOLIC"
        ))
    });
}

#[test]
fn conjecture_refutation() {
    criterion(4, "conjecture refutation (q = 3, c = 1, depth 200)", 60, || {
        let tree = counterexample_family(3, 1, PaddingSchedule::DEFAULT).map_err(|e| e.to_string())?;
        let r = wreath_exhaust_counted(&tree, 200, None).map_err(|e| e.to_string())?;
        let window = 50;
        let tol = frac(1, 100);
        let two = frac(2, 1);
        let mut worst = Rational::from_integer(0.into());
        for g in &r.generations[r.generations.len() - window..] {
            let dev = if g.mean > two { &g.mean - &two } else { &two - &g.mean };
            worst = worst.max(dev);
        }
        ensure(worst < tol, || format!("max |V_ν - 2| = {worst} over the window"))?;
        let profile = chain_profile_counted(&tree, 200, usize::MAX).map_err(|e| e.to_string())?;
        let series = teichmueller_verdict(&profile, 200, Some(&tree.schedule().envelope()));
        ensure(series.value == TypeClass::Hyperbolic, || format!("series: {series}"))?;
        let est = limit_estimate(&r, Some(window), Some(tol));
        ensure(est.verdict == LimitVerdict::Converged, || format!("limit {}", est.verdict))?;
        let a = nevanlinna_conjecture_eval(&est, &series);
        ensure(a.outcome == Outcome::Refutes, || format!("outcome {}", a.outcome))?;

        let cli = Report::parse(&lc(&[
            "classify",
            &spec("counterexample.toml"),
            "--walk-trials",
            "200",
        ])?);
        ensure(field(&cli, "conjecture")? == "REFUTES", || "lc: not REFUTES".into())?;
        ensure(field(&cli, "series_criterion")? == "HYPERBOLIC", || "lc: series".into())?;
        let worst = num_traits::ToPrimitive::to_f64(&worst).unwrap();
        Ok(format!("max |V_ν - 2| = {worst:.5} < 0.01 over the last {window}; series HYPERBOLIC; REFUTES"))
    });
}

#[test]
fn oracle_concordance() {
    criterion(5, "oracle concordance", 120, || {
        let mut notes = Vec::new();
        for (name, independent_key, expected) in [
            ("exp", "regular_trichotomy", "PARABOLIC"),
            ("modular", "series_criterion", "HYPERBOLIC"),
            ("counterexample", "series_criterion", "HYPERBOLIC"),
        ] {
            let r = Report::parse(&lc(&[
                "classify",
                &spec(&format!("{name}.toml")),
                "--walk-trials",
                "10000",
                "--horizon",
                "10000",
                "--seed",
                "7",
            ])?);
            ensure(field(&r, independent_key)? == expected, || format!("{name}: criterion disagrees"))?;
            let oracle = field(&r, "walk_oracle")?;
            ensure(oracle == format!("{expected}-proxy"), || format!("{name}: oracle says {oracle}"))?;
            notes.push(format!("{name} {oracle}"));
        }
        // Rayleigh monotonicity at every sampled depth
        let exp = effective_resistance::<f64, _>(&ExpRule, &0, &resistance_depths(64)).map_err(|e| e.to_string())?;
        let modular = effective_resistance_tree::<f64, _>(&ChainTree::regular(3), &resistance_depths(1024))
            .map_err(|e| e.to_string())?;
        let family = counterexample_family(3, 1, PaddingSchedule::DEFAULT).map_err(|e| e.to_string())?;
        let fam = effective_resistance_tree::<f64, _>(&family, &resistance_depths(65_536)).map_err(|e| e.to_string())?;
        for (name, c) in [("exp", &exp), ("modular", &modular), ("counterexample", &fam)] {
            ensure(c.is_monotone(), || format!("{name}: resistance not monotone"))?;
            ensure(c.resistance.windows(2).all(|w| w[1] >= w[0]), || format!("{name}: resistance decreases"))?;
        }
        // closed forms: ν/2 on the path, (2/3)(1 - 2^-ν) on the 3-regular tree
        for (&d, &x) in exp.depths.iter().zip(&exp.resistance) {
            ensure((x - d as f64 / 2.0).abs() < 1e-8, || format!("exp R({d}) = {x}"))?;
        }
        for (&d, &x) in modular.depths.iter().zip(&modular.resistance) {
            let f = 2.0 / 3.0 * (1.0 - 0.5f64.powi(d as i32));
            ensure((x - f).abs() < 1e-12, || format!("modular R({d}) = {x}"))?;
        }
        Ok(notes.join("; "))
    });
}

/// Ratio of the singular values of a 2×2 matrix, from the eigenvalues of
/// `JᵀJ`.
fn singular_ratio(j: &JacobianSample<f64>) -> f64 {
    let (a, b, c, d) = (j.ux, j.uy, j.vx, j.vy);
    let p = a * a + b * b + c * c + d * d;
    let det = a * d - b * c;
    let disc = (p * p - 4.0 * det * det).max(0.0).sqrt();
    ((p + disc) / (p - disc)).sqrt()
}

#[test]
fn dilatation_formula() {
    criterion(6, "dilatation formula and moduli", 1, || {
        let d = |j: &JacobianSample<f64>| dilatation_quotient(j).map_err(|e| e.to_string());
        ensure(d(&JacobianSample::identity())? == 1.0, || "D(id) ≠ 1".into())?;
        let stretch = JacobianSample::new(2.0, 0.0, 0.0, 1.0);
        ensure((d(&stretch)? - 2.0).abs() < 1e-15, || "D(diag(2,1)) ≠ 2".into())?;
        ensure((singular_ratio(&stretch) - 2.0).abs() < 1e-15, || "oracle disagrees".into())?;
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut worst: f64 = 0.0;
        for _ in 0..2000 {
            let j = JacobianSample::new(
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
            );
            if j.determinant() < 0.05 {
                continue;
            }
            let base = d(&j)?;
            let oracle = singular_ratio(&j);
            ensure((base - oracle).abs() <= 1e-9 * oracle, || format!("D = {base}, oracle {oracle}"))?;
            let scaled = d(&j.scaled(rng.gen_range(1e-3..1e3)))?;
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let rotated = d(&JacobianSample::rotation(theta).compose(&j).compose(&JacobianSample::rotation(phi)))?;
            for x in [scaled, rotated] {
                worst = worst.max((x - base).abs() / base);
            }
        }
        ensure(worst <= 1e-12, || format!("relative change {worst:e} under scaling or rotation"))?;
        let demo = plane_vs_disc_demo(2.0f64, 1.0, 1.0, 3).map_err(|e| e.to_string())?;
        ensure(demo.rows.len() == 3, || "demo rows".into())?;
        for row in &demo.rows {
            let closed = 2.0 * (1.0 + row.k as f64);
            let direct = (row.annulus.r2() / row.annulus.r1()).ln() / std::f64::consts::TAU;
            ensure((row.modulus - closed).abs() < 1e-12 * closed, || format!("row {}: {}", row.k, row.modulus))?;
            ensure((annulus_modulus(&row.annulus) - direct).abs() < 1e-12 * closed, || "modulus".into())?;
            ensure(row.exceeds() && row.modulus > 2.0, || format!("row {} does not exceed", row.k))?;
        }
        Ok(format!(
            "D(id) = 1, D(diag(2,1)) = 2, invariance within {worst:.1e}; moduli 4, 6, 8 exceed K·M = 2"
        ))
    });
}

#[test]
fn structural_counts() {
    criterion(7, "structural counts |B_k| = q(q-1)^(k-1)", 10, || {
        let mut trees = vec![
            ("modular".to_string(), ChainTree::regular(3)),
            ("tree(4)".to_string(), ChainTree::regular(4)),
            ("tree(5)".to_string(), ChainTree::regular(5)),
            (
                "counterexample".to_string(),
                counterexample_family(3, 1, PaddingSchedule::DEFAULT).map_err(|e| e.to_string())?,
            ),
            (
                "counterexample q=4".to_string(),
                counterexample_family(4, 2, PaddingSchedule::doubling(4)).map_err(|e| e.to_string())?,
            ),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..4 {
            let q = rng.gen_range(3..=4);
            let lengths: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=3)).collect();
            trees.push((format!("periodic #{i}"), ChainTree::new(q, ChainSchedule::Periodic(lengths))));
        }
        let mut checked = 0;
        for (name, t) in &trees {
            let cond = check_conditions(t, 5).map_err(|e| e.to_string())?;
            if !cond.all_hold() {
                return Err(format!("{name}: conditions fail: {:?}", cond.witnesses));
            }
            let q = t.q();
            let explicit = chain_profile(t, 8, usize::MAX).map_err(|e| e.to_string())?;
            let counted = chain_profile_counted(t, 8, usize::MAX).map_err(|e| e.to_string())?;
            for k in 1..=8 {
                let expected = BigUint::from(q) * BigUint::from(q - 1).pow(k as u32 - 1);
                ensure(explicit.b_counts[k] == expected, || {
                    format!("{name}: |B_{k}| = {} ≠ {expected}", explicit.b_counts[k])
                })?;
                ensure(counted.b_counts[k] == expected, || format!("{name}: counted |B_{k}|"))?;
            }
            checked += 1;
        }
        // rules failing the conditions are outside the statement
        ensure(!check_conditions(&ExpRule, 5).map_err(|e| e.to_string())?.all_hold(), || {
            "exp passes the conditions".into()
        })?;
        Ok(format!("{checked} rules passing the conditions, k ≤ 8, explicit and counted"))
    });
}

fn monodromy_spec(d: &MonodromyDatum) -> String {
    let sigma: Vec<String> = d.sigma().iter().map(|p| format!("\"{p}\"")).collect();
    format!(
        "schema = 1\nkind = \"monodromy\"\nn = {}\nsigma = [{}]\n",
        d.n(),
        sigma.join(", ")
    )
}

#[test]
fn round_trip_and_determinism() {
    criterion(8, "round trip and determinism", 10, || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for i in 0..50 {
            let n = rng.gen_range(1..=8);
            let q = rng.gen_range(2..=5);
            let d = if i % 2 == 0 {
                random_planar_datum(&mut rng, n, q)
            } else {
                random_datum(&mut rng, n, q)
            };
            let src = dir.path().join(format!("m{i}.toml"));
            let table = dir.path().join(format!("t{i}.toml"));
            std::fs::write(&src, monodromy_spec(&d)).map_err(|e| e.to_string())?;
            let (src, table) = (src.display().to_string(), table.display().to_string());
            let before = Report::parse(&lc(&["build", &src])?);
            lc(&["export", &src, "--format", "structured", "--out", &table])?;
            let after = Report::parse(&lc(&["build", &table])?);
            ensure(field(&after, "source")? == "table", || "re-import is not a table".into())?;
            ensure(before.section("stats.") == after.section("stats."), || {
                format!("{d}: stats differ\n{before}\n{after}")
            })?;
            ensure(!before.section("stats.").is_empty(), || "no stats".into())?;
        }
        let runs = [
            vec!["classify", "SPEC", "--depth", "40", "--walk-trials", "300", "--horizon", "2000", "--seed", "11"],
            vec!["walk", "SPEC", "--walk-trials", "300", "--horizon", "2000", "--seed", "11"],
        ];
        let mut compared = 0;
        for name in ["exp.toml", "modular.toml", "counterexample.toml", "triple_cover.toml"] {
            let path = spec(name);
            for args in &runs {
                let args: Vec<&str> = args.iter().map(|a| if *a == "SPEC" { path.as_str() } else { a }).collect();
                let (a, b) = (lc(&args)?, lc(&args)?);
                ensure(a == b, || format!("{name}: two runs of `lc {}` differ", args[0]))?;
                ensure(a.contains("seed: 11\n") && a.starts_with("schema: 1\n"), || {
                    format!("{name}: report lacks seed or schema")
                })?;
                compared += 1;
            }
        }
        Ok(format!("50 export/import round trips keep stats; {compared} repeated reports byte-identical"))
    });
}
