use std::collections::BTreeMap;
use std::fmt::Write as _;

use linecomplex::complex::explore;
use linecomplex::criterion::{
    chain_profile, chain_profile_counted, check_conditions, classify_finite, classify_regular,
    independent_verdict, nevanlinna_conjecture_eval, teichmueller_verdict, Basis, ChainProfile, TypeVerdict,
};
use linecomplex::curvature::vertex_ramification;
use linecomplex::dilatation::{
    annulus_modulus, grid_dilatation, plane_vs_disc_demo, AnnulusSpec, JacobianSample,
};
use linecomplex::exhaustion::{
    default_cap, limit_estimate, wreath_exhaust, wreath_exhaust_counted, ExhaustionReport, Mode,
};
use linecomplex::hurwitz::CoveringSummary;
use linecomplex::rules::PeriodicTable;
use linecomplex::walk::{
    effective_resistance, effective_resistance_tree, oracle_verdict, resistance_depths, simulate_walk,
    Method, WalkEstimate,
};
use linecomplex::{face_of, trace_faces, FaceOrder, LineComplex, LocalRule, Rational, Real};
use serde::Serialize;

use crate::report::{rational, Report};
use crate::spec::Document;
use crate::surface::{load, with_rule, Loaded, Surface};
use crate::{CliError, Flags, Format};

const BUILD_DEPTH: usize = 6;
const CLASSIFY_DEPTH: usize = 200;
const EXPORT_DEPTH: usize = 3;
/// Generations of the Speiser tree walked explicitly (rules without cone
/// types grow exponentially there).
const EXPLICIT_PROFILE_DEPTH: usize = 12;
const TREE_RESISTANCE_DEPTH: usize = 65_536;
const BALL_RESISTANCE_DEPTH: usize = 64;

fn header(command: &str, loaded: &Loaded) -> Report {
    let mut r = Report::new(command);
    r.put("source", &loaded.label);
    r.put("q", loaded.q());
    r.put("finite", loaded.is_finite());
    r
}

pub fn build(doc: Document, f: &Flags) -> Result<String, CliError> {
    let loaded = load(doc)?;
    let mut r = header("build", &loaded);
    match &loaded.surface {
        Surface::Finite { complex, summary } => {
            finite_stats(&mut r, complex, summary)?;
            r.put(
                "summary",
                format!("genus {}, mean {}", summary.genus, summary.mean_ramification),
            );
        }
        s => {
            let depth = f.depth.unwrap_or(BUILD_DEPTH).max(1);
            with_rule!(s, rule => ball_stats(&mut r, rule, depth, f.cap))?;
        }
    }
    Ok(r.to_string())
}

fn finite_stats(r: &mut Report, c: &LineComplex, s: &CoveringSummary) -> Result<(), CliError> {
    let mut by_m: BTreeMap<usize, usize> = BTreeMap::new();
    let faces = trace_faces(c)?;
    for face in &faces {
        let m = face.order.m().ok_or_else(|| CliError::Breach("infinite face on a closed complex".into()))?;
        *by_m.entry(m).or_default() += 1;
    }
    let by_m: Vec<String> = by_m.iter().map(|(m, k)| format!("{m}:{k}")).collect();
    r.put("stats.q", c.q());
    r.put("stats.sheets", s.n);
    r.put("stats.vertices", c.vertex_count());
    r.put("stats.edges", c.edge_count());
    r.put("stats.faces", faces.len());
    r.put("stats.faces_by_m", by_m.join(" "));
    r.put("stats.branching", s.total_branching);
    r.put("stats.euler_characteristic", s.euler_characteristic);
    r.put("stats.genus", s.genus);
    r.put("stats.mean_ramification", &s.mean_ramification);
    r.put("stats.mean_identity", s.mean_identity);
    Ok(())
}

fn ball_stats<R: LocalRule>(r: &mut Report, rule: &R, depth: usize, cap: Option<usize>) -> Result<(), CliError> {
    let cap = cap.unwrap_or_else(|| default_cap(rule.q(), depth, false));
    let ball = explore(rule, &rule.base(), depth)?;
    let edges = ball.edges(rule);
    let mut sides = [0usize; 3];
    for v in &ball.vertices {
        for s in 0..rule.q() {
            let i = match face_of(rule, v, s, cap)?.order {
                FaceOrder::Finite(1) => 0,
                FaceOrder::Finite(_) => 1,
                FaceOrder::Infinite { .. } => 2,
            };
            sides[i] += 1;
        }
    }
    let base_faces: Vec<FaceOrder> = (0..rule.q())
        .map(|s| face_of(rule, &rule.base(), s, cap).map(|f| f.order))
        .collect::<Result<_, _>>()?;
    let conditions = check_conditions(rule, depth)?;
    r.put("ball.radius", depth);
    r.put("ball.cap", cap);
    r.put("ball.vertices", ball.len());
    r.put("ball.edges", edges.len());
    r.put("ball.sides_bigon", sides[0]);
    r.put("ball.sides_algebraic", sides[1]);
    r.put("ball.sides_logarithmic", sides[2]);
    r.put(
        "base.faces",
        base_faces.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" "),
    );
    r.put("base.vp", vertex_ramification::<Rational>(&base_faces));
    r.put("conditions.no_algebraic", conditions.no_algebraic);
    r.put("conditions.no_infinite_unbranched_chain", conditions.no_infinite_unbranched_chain);
    r.put("conditions.degrees_two_or_q", conditions.degrees_two_or_q);
    r.put(
        "conditions.witness",
        conditions.witnesses.first().map_or("none".to_string(), |w| w.to_string()),
    );
    let kinds: Vec<&str> = [(sides[2], "logarithmic"), (sides[1], "algebraic"), (sides[0], "bigons")]
        .iter()
        .filter(|(n, _)| *n > 0)
        .map(|(_, k)| *k)
        .collect();
    r.put("summary", format!("infinite; faces {}", kinds.join(", ")));
    Ok(())
}

fn parse_tolerance(text: &str) -> Result<Rational, CliError> {
    let t: Rational = text
        .trim()
        .parse()
        .map_err(|_| CliError::Invalid(format!("--tol: expected a fraction like 1/100, got \"{text}\"")))?;
    if t <= Rational::from_integer(0.into()) {
        return Err(CliError::Invalid("--tol must be positive".into()));
    }
    Ok(t)
}

/// One method's outcome: a verdict, or the precondition it could not meet.
enum Row {
    Verdict(TypeVerdict),
    NotApplicable(String),
}

impl Row {
    fn from_result(r: Result<TypeVerdict, linecomplex::Error>) -> Self {
        match r {
            Ok(v) => Row::Verdict(v),
            Err(e) => Row::NotApplicable(e.to_string()),
        }
    }

    fn verdict(&self) -> Option<&TypeVerdict> {
        match self {
            Row::Verdict(v) => Some(v),
            Row::NotApplicable(_) => None,
        }
    }

    fn put(&self, r: &mut Report, key: &str, extra: &[String]) {
        match self {
            Row::Verdict(v) => {
                r.put(key, v.label());
                let mut parts = vec![format!("basis={}", v.basis)];
                parts.extend(v.evidence.iter().map(|(k, x)| format!("{k}={x}")));
                parts.extend(extra.iter().cloned());
                if let Some(reason) = &v.reason {
                    parts.push(format!("reason={reason}"));
                }
                r.put(format!("{key}.detail"), parts.join("; "));
            }
            Row::NotApplicable(why) => {
                r.put(key, "NOT_APPLICABLE");
                r.put(format!("{key}.detail"), why);
            }
        }
    }
}

fn exhaust(loaded: &Loaded, depth: usize, cap: Option<usize>) -> Result<ExhaustionReport, CliError> {
    Ok(match &loaded.surface {
        Surface::Tree(t) => wreath_exhaust_counted(t, depth, cap)?,
        s => with_rule!(s, rule => wreath_exhaust(rule, &rule.base(), depth, cap))?,
    })
}

fn series(loaded: &Loaded, depth: usize, cap: Option<usize>) -> (Row, Option<ChainProfile>) {
    let q = loaded.q();
    let explicit = |p: Result<ChainProfile, linecomplex::Error>, horizon: usize| match p {
        Ok(p) => (Row::Verdict(teichmueller_verdict(&p, horizon, None)), Some(p)),
        Err(e) => (Row::NotApplicable(e.to_string()), None),
    };
    match &loaded.surface {
        Surface::Finite { .. } => (
            Row::NotApplicable("closed surface: the Speiser tree is finite".into()),
            None,
        ),
        Surface::Tree(t) => match chain_profile_counted(t, depth, cap.unwrap_or(usize::MAX)) {
            Ok(p) => {
                let v = teichmueller_verdict(&p, depth, Some(&t.schedule().envelope()));
                (Row::Verdict(v), Some(p))
            }
            Err(e) => (Row::NotApplicable(e.to_string()), None),
        },
        Surface::Exp => {
            let h = depth.min(EXPLICIT_PROFILE_DEPTH);
            let bound = cap.unwrap_or_else(|| default_cap(q, depth, false));
            explicit(chain_profile(&linecomplex::rules::ExpRule, h, bound), h)
        }
        Surface::Periodic(t) => {
            let h = depth.min(EXPLICIT_PROFILE_DEPTH);
            let bound = cap.unwrap_or_else(|| default_cap(q, depth, false));
            explicit(chain_profile(t, h, bound), h)
        }
    }
}

fn run_walk(loaded: &Loaded, f: &Flags) -> Result<WalkEstimate, CliError> {
    Ok(with_rule!(&loaded.surface, rule => simulate_walk(
        rule,
        &rule.base(),
        f.walk_trials,
        f.horizon,
        f.seed
    ))?)
}

/// Resistance curve and oracle verdict; closed surfaces get none.
fn resistance(
    loaded: &Loaded,
    f: &Flags,
) -> Result<Option<linecomplex::walk::ResistanceCurve<Real>>, CliError> {
    let curve = match &loaded.surface {
        Surface::Finite { .. } => return Ok(None),
        Surface::Tree(t) => {
            let d = f
                .resistance_depth
                .unwrap_or_else(|| tree_resistance_depth(t, f.depth.unwrap_or(CLASSIFY_DEPTH)))
                .max(1);
            effective_resistance_tree::<Real, _>(t, &resistance_depths(d))?
        }
        s => {
            let d = f.resistance_depth.unwrap_or(BALL_RESISTANCE_DEPTH).max(1);
            with_rule!(s, rule => effective_resistance::<Real, _>(rule, &rule.base(), &resistance_depths(d)))?
        }
    };
    if !curve.is_monotone() {
        return Err(CliError::Breach(
            "effective resistance decreased with depth (Rayleigh monotonicity)".into(),
        ));
    }
    Ok(Some(curve))
}

/// Graph distance spanned by the first `generations` generations of the
/// Speiser tree, at most [`TREE_RESISTANCE_DEPTH`]: the resistance then sees
/// as many branchings as the exhaustion does.
fn tree_resistance_depth(t: &linecomplex::rules::ChainTree, generations: usize) -> usize {
    let mut d = 0usize;
    for k in 1..=generations.max(1) {
        d = d.saturating_add(t.schedule().steps(k));
        if d >= TREE_RESISTANCE_DEPTH {
            return TREE_RESISTANCE_DEPTH;
        }
    }
    d
}

fn oracle_row(curve: Option<&linecomplex::walk::ResistanceCurve<Real>>) -> Row {
    match curve {
        Some(c) => Row::Verdict(oracle_verdict(c)),
        None => Row::Verdict(TypeVerdict::inconclusive(
            Basis::Oracle,
            "closed surface: walks on a finite graph always return",
        )),
    }
}

fn walk_summary(w: &WalkEstimate) -> String {
    format!(
        "return_fraction={:.4}±{:.4} ({} trials, horizon {})",
        w.return_fraction, w.std_error, w.trials, w.horizon
    )
}

pub fn classify(doc: Document, f: &Flags) -> Result<String, CliError> {
    let loaded = load(doc)?;
    let tol = parse_tolerance(&f.tol)?;
    let depth = f.depth.unwrap_or(CLASSIFY_DEPTH).max(1);
    let window = f.window.unwrap_or(depth / 4).clamp(1, depth + 1);
    let mut r = header("classify", &loaded);
    r.put("seed", f.seed);
    r.put("depth", depth);
    r.put("window", window);
    r.put("tolerance", &tol);
    r.put("walk_trials", f.walk_trials);
    r.put("walk_horizon", f.horizon);

    let ex = exhaust(&loaded, depth, f.cap)?;
    let est = limit_estimate(&ex, Some(window), Some(tol));
    let last = ex.last();
    r.put(
        "exhaustion.mode",
        match ex.mode {
            Mode::Counted => "counted",
            Mode::Explicit => "explicit",
        },
    );
    r.put("exhaustion.cap", ex.cap);
    r.put("exhaustion.truncations", ex.truncations);
    r.put("exhaustion.vertices", &last.count);
    r.put("exhaustion.mean_last", rational(&last.mean));
    r.put("exhaustion.window_min", rational(&est.lim_inf));
    r.put("exhaustion.window_max", rational(&est.lim_sup));
    r.put("exhaustion.limit", est.verdict);

    let regular = Row::from_result(classify_regular(&[last.vp_min.clone(), last.vp_max.clone()]));
    let (series_row, profile) = series(&loaded, depth, f.cap);
    let curve = resistance(&loaded, f)?;
    let oracle = oracle_row(curve.as_ref());
    let walk = run_walk(&loaded, f)?;
    let finite = match &loaded.surface {
        Surface::Finite { summary, .. } => Row::Verdict(classify_finite(summary)),
        _ => Row::NotApplicable("open surface".into()),
    };

    regular.put(&mut r, "regular_trichotomy", &[format!("radius={depth}")]);
    let profile_extra: Vec<String> = profile
        .iter()
        .map(|p| format!("branch_counts_match={}", p.counts_match()))
        .collect();
    series_row.put(&mut r, "series_criterion", &profile_extra);
    oracle.put(&mut r, "walk_oracle", &[walk_summary(&walk)]);
    finite.put(&mut r, "finite_cover", &[]);

    let candidates: Vec<TypeVerdict> = [&series_row, &regular, &finite]
        .iter()
        .filter_map(|row| row.verdict().cloned())
        .collect();
    let independent = independent_verdict(&candidates)
        .cloned()
        .unwrap_or_else(|| TypeVerdict::inconclusive(Basis::SeriesCriterion, "no method applies"));
    let a = nevanlinna_conjecture_eval(&est, &independent);
    r.put("conjecture", a.outcome);
    let mut detail = vec![
        format!("excess={}", rational(&a.excess)),
        format!(
            "prediction={}",
            a.prediction.map_or("none", |p| p.name())
        ),
        format!("verdict={} ({})", a.verdict.name(), a.basis),
    ];
    if let Some(reason) = &a.reason {
        detail.push(format!("reason={reason}"));
    }
    r.put("conjecture.detail", detail.join("; "));
    Ok(r.to_string())
}

pub fn walk(doc: Document, f: &Flags) -> Result<String, CliError> {
    let loaded = load(doc)?;
    let mut r = header("walk", &loaded);
    r.put("seed", f.seed);
    let w = run_walk(&loaded, f)?;
    r.put("walk.trials", w.trials);
    r.put("walk.horizon", w.horizon);
    r.put("walk.returns", w.returns);
    r.put("walk.return_fraction", format!("{:.6}", w.return_fraction));
    r.put("walk.std_error", format!("{:.6}", w.std_error));
    let curve = resistance(&loaded, f)?;
    match &curve {
        Some(c) => {
            r.put(
                "resistance.method",
                match c.method {
                    Method::ConjugateGradient => "conjugate gradient",
                    Method::TreeReduction => "tree reduction",
                },
            );
            r.put("resistance.max_residual", format!("{:.3e}", c.max_residual));
            r.put("resistance.monotone", c.is_monotone());
            for (d, x) in c.depths.iter().zip(&c.resistance) {
                r.put(format!("resistance.{d}"), format!("{x:.9}"));
            }
        }
        None => {
            r.put("resistance.method", "none (closed surface)");
        }
    }
    oracle_row(curve.as_ref()).put(&mut r, "oracle", &[walk_summary(&w)]);
    Ok(r.to_string())
}

pub fn export(doc: Document, f: &Flags) -> Result<String, CliError> {
    let loaded = load(doc)?;
    match (f.format, &loaded.surface) {
        (Format::Dot, Surface::Finite { complex, .. }) => dot_finite(&loaded.label, complex),
        (Format::Dot, s) => {
            let depth = f.depth.unwrap_or(EXPORT_DEPTH);
            with_rule!(s, rule => dot_ball(&loaded.label, rule, depth, f.cap))
        }
        (Format::Structured, Surface::Finite { complex, .. }) => {
            structured(&PeriodicTable::from_line_complex(complex))
        }
        (Format::Structured, Surface::Periodic(t)) => structured(t),
        (Format::Structured, _) => Err(CliError::Invalid(format!(
            "structured export needs a finite complex or a table rule, not \"{}\"",
            loaded.label
        ))),
    }
}

fn dot_color(c: linecomplex::Color) -> &'static str {
    match c {
        linecomplex::Color::Inner => "fillcolor=white, fontcolor=black",
        linecomplex::Color::Outer => "fillcolor=black, fontcolor=white",
    }
}

fn dot_finite(label: &str, c: &LineComplex) -> Result<String, CliError> {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{label}\" {{");
    let _ = writeln!(out, "  // q = {}, {} vertices, {} edges", c.q(), c.vertex_count(), c.edge_count());
    let _ = writeln!(out, "  node [shape=circle, style=filled];");
    for v in c.vertices() {
        let _ = writeln!(out, "  v{} [label=\"v{}\", {}];", v.0, v.0, dot_color(c.color_of(v)));
    }
    for (a, b) in c.edges() {
        let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", a.vertex.0, b.vertex.0, a.slot + 1);
    }
    for (i, face) in trace_faces(c)?.iter().enumerate() {
        let cycle: Vec<String> = face
            .boundary
            .iter()
            .map(|d| format!("v{}", d.vertex.0))
            .collect();
        let _ = writeln!(
            out,
            "  // face {i} over a{}: m = {}, boundary {}",
            face.branch + 1,
            face.order,
            cycle.join(" ")
        );
    }
    out.push_str("}\n");
    Ok(out)
}

fn dot_ball<R: LocalRule>(label: &str, rule: &R, depth: usize, cap: Option<usize>) -> Result<String, CliError> {
    let cap = cap.unwrap_or_else(|| default_cap(rule.q(), depth.max(1), false));
    let ball = explore(rule, &rule.base(), depth)?;
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{label}\" {{");
    let _ = writeln!(out, "  // q = {}, ball of radius {depth}: {} vertices", rule.q(), ball.len());
    let _ = writeln!(out, "  node [shape=circle, style=filled];");
    for (i, v) in ball.vertices.iter().enumerate() {
        let name = format!("{v:?}").replace('"', "\\\"");
        let _ = writeln!(
            out,
            "  v{i} [label=\"v{i}\", tooltip=\"{name}\", {}];",
            dot_color(rule.color(v))
        );
    }
    for (a, b, s) in ball.edges(rule) {
        let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", a.0, b.0, s + 1);
    }
    for (i, v) in ball.vertices.iter().enumerate() {
        let orders: Vec<String> = (0..rule.q())
            .map(|s| face_of(rule, v, s, cap).map(|f| f.order.to_string()))
            .collect::<Result<_, _>>()?;
        let _ = writeln!(out, "  // v{i} faces: {}", orders.join(" "));
    }
    out.push_str("}\n");
    Ok(out)
}

#[derive(Serialize)]
struct TableDoc {
    schema: i64,
    kind: &'static str,
    name: &'static str,
    q: usize,
    vertex: Vec<TableRow>,
}

#[derive(Serialize)]
struct TableRow {
    color: &'static str,
    neighbors: Vec<(usize, i64)>,
}

fn structured(t: &PeriodicTable) -> Result<String, CliError> {
    let doc = TableDoc {
        schema: crate::SCHEMA,
        kind: "rule",
        name: "table",
        q: t.q(),
        vertex: t
            .vertices()
            .iter()
            .map(|v| TableRow {
                color: match v.color {
                    linecomplex::Color::Inner => "inner",
                    linecomplex::Color::Outer => "outer",
                },
                neighbors: v.neighbors.clone(),
            })
            .collect(),
    };
    toml::to_string(&doc).map_err(|e| CliError::Breach(format!("table serialization: {e}")))
}

pub fn dilatation(doc: Document, _f: &Flags) -> Result<String, CliError> {
    let Document::Dilatation(spec) = doc else {
        return Err(CliError::Invalid("`lc dilatation` needs a spec of kind \"dilatation\"".into()));
    };
    let mut r = Report::new("dilatation");
    if !spec.grid.is_empty() {
        let grid: Vec<Vec<JacobianSample<Real>>> = spec
            .grid
            .iter()
            .map(|row| row.iter().map(|&[ux, uy, vx, vy]| JacobianSample::new(ux, uy, vx, vy)).collect())
            .collect();
        let g = grid_dilatation(&grid)?;
        r.put("grid.rows", grid.len());
        r.put("grid.samples", grid.iter().map(Vec::len).sum::<usize>());
        r.put("grid.max_d", format!("{:.12}", g.max_d));
        r.put("grid.argmax", format!("row {}, column {}", g.argmax.0, g.argmax.1));
    }
    for (i, &(r1, r2)) in spec.annuli.iter().enumerate() {
        let a = AnnulusSpec::new(r1, r2)?;
        r.put(format!("annulus.{}", i + 1), format!("r1={r1}; r2={r2}; modulus={:.12}", annulus_modulus(&a)));
    }
    if let Some(d) = spec.demo {
        let demo = plane_vs_disc_demo(d.k, d.disc_bound, d.r1, d.rows)?;
        r.put("demo.k_qc", demo.k_qc);
        r.put("demo.disc_bound", demo.disc_bound);
        for row in &demo.rows {
            r.put(
                format!("demo.row.{}", row.k),
                format!(
                    "r2={:.6e}; modulus={:.12}; allowed={:.12}; exceeds={}",
                    row.annulus.r2(),
                    row.modulus,
                    row.allowed,
                    row.exceeds()
                ),
            );
        }
    }
    Ok(r.to_string())
}
