//! Spec documents: TOML files with a `schema` version and a `kind`.
//!
//! ```toml
//! schema = 1
//! kind = "monodromy"        # or "rule", "dilatation"
//! n = 3
//! sigma = ["(1 2 3)", "(1 3 2)"]
//! ```
//!
//! See the README for the full schema.

use std::ops::Range;

use linecomplex::criterion::{counterexample_family, PaddingSchedule};
use linecomplex::hurwitz::{MonodromyDatum, Permutation};
use linecomplex::rules::{ChainTree, PeriodicTable, TableVertex};
use linecomplex::{Color, Error as CoreError};
use serde::Deserialize;
use toml::Spanned;

use crate::CliError;

pub const SCHEMA: i64 = 1;

#[derive(Debug)]
pub enum Document {
    Monodromy(MonodromyDatum),
    Rule(RuleSpec),
    Dilatation(DilatationSpec),
}

#[derive(Debug)]
pub enum RuleSpec {
    Exp,
    /// A chain tree under the name it was given (`modular`, `tree(q)`,
    /// `counterexample`).
    Tree { name: String, tree: ChainTree },
    Table(PeriodicTable),
}

#[derive(Debug, Default)]
pub struct DilatationSpec {
    /// Rows of Jacobian samples `[u_x, u_y, v_x, v_y]`.
    pub grid: Vec<Vec<[f64; 4]>>,
    pub annuli: Vec<(f64, f64)>,
    pub demo: Option<DemoSpec>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoSpec {
    pub k: f64,
    pub disc_bound: f64,
    #[serde(default = "one")]
    pub r1: f64,
    #[serde(default = "three")]
    pub rows: usize,
}

fn one() -> f64 {
    1.0
}

fn three() -> usize {
    3
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    schema: Spanned<i64>,
    kind: Spanned<String>,
    n: Option<Spanned<usize>>,
    q: Option<Spanned<usize>>,
    sigma: Option<Vec<Spanned<String>>>,
    name: Option<Spanned<String>>,
    params: Option<Spanned<Params>>,
    vertex: Option<Vec<Spanned<RawVertex>>>,
    grid: Option<Vec<Vec<[f64; 4]>>>,
    annulus: Option<Vec<Spanned<RawAnnulus>>>,
    demo: Option<DemoSpec>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Params {
    q: Option<usize>,
    c: Option<usize>,
    padding: Option<String>,
    growth: Option<usize>,
    prefix: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    color: String,
    neighbors: Vec<(usize, i64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnnulus {
    r1: f64,
    r2: f64,
}

/// Error located in the source text.
struct Located {
    span: Option<Range<usize>>,
    message: String,
}

impl Located {
    fn at(span: Range<usize>, message: impl Into<String>) -> Self {
        Located {
            span: Some(span),
            message: message.into(),
        }
    }

    fn nowhere(message: impl Into<String>) -> Self {
        Located {
            span: None,
            message: message.into(),
        }
    }
}

/// 1-based line and column (in characters) of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[start..].chars().count() + 1)
}

pub fn parse_document(text: &str, path: &str) -> Result<Document, CliError> {
    let locate = |e: Located| match e.span {
        Some(span) => {
            let (line, column) = line_column(text, span.start);
            CliError::Parse {
                path: path.to_string(),
                line,
                column,
                message: e.message,
            }
        }
        None => CliError::Invalid(format!("{path}: {}", e.message)),
    };
    let raw: Raw = toml::from_str(text).map_err(|e| {
        locate(Located {
            span: e.span(),
            message: e.message().trim().to_string(),
        })
    })?;
    document(raw, text).map_err(locate)
}

fn document(raw: Raw, text: &str) -> Result<Document, Located> {
    if *raw.schema.get_ref() != SCHEMA {
        return Err(Located::at(
            raw.schema.span(),
            format!("unsupported schema {} (expected {SCHEMA})", raw.schema.get_ref()),
        ));
    }
    let kind_span = raw.kind.span();
    let allowed: &[&str] = match raw.kind.get_ref().as_str() {
        "monodromy" => &["n", "q", "sigma"],
        "rule" => &["name", "params", "q", "vertex"],
        "dilatation" => &["grid", "annulus", "demo"],
        other => {
            return Err(Located::at(
                kind_span,
                format!("unknown kind \"{other}\" (expected monodromy, rule or dilatation)"),
            ))
        }
    };
    let present = [
        ("n", raw.n.is_some()),
        ("q", raw.q.is_some()),
        ("sigma", raw.sigma.is_some()),
        ("name", raw.name.is_some()),
        ("params", raw.params.is_some()),
        ("vertex", raw.vertex.is_some()),
        ("grid", raw.grid.is_some()),
        ("annulus", raw.annulus.is_some()),
        ("demo", raw.demo.is_some()),
    ];
    if let Some((key, _)) = present.iter().find(|(k, p)| *p && !allowed.contains(k)) {
        return Err(Located::at(
            kind_span,
            format!("key \"{key}\" does not belong to kind \"{}\"", raw.kind.get_ref()),
        ));
    }
    match raw.kind.get_ref().as_str() {
        "monodromy" => monodromy(raw, text).map(Document::Monodromy),
        "rule" => rule(raw).map(Document::Rule),
        _ => dilatation(raw).map(Document::Dilatation),
    }
}

fn monodromy(raw: Raw, text: &str) -> Result<MonodromyDatum, Located> {
    let n = raw.n.ok_or_else(|| Located::at(raw.kind.span(), "monodromy needs n"))?;
    let sigma = raw
        .sigma
        .ok_or_else(|| Located::at(raw.kind.span(), "monodromy needs sigma"))?;
    if *n.get_ref() == 0 {
        return Err(Located::at(n.span(), "n must be at least 1"));
    }
    if let Some(q) = &raw.q {
        if *q.get_ref() != sigma.len() {
            return Err(Located::at(
                q.span(),
                format!("q = {} but sigma lists {} permutations", q.get_ref(), sigma.len()),
            ));
        }
    }
    let mut perms = Vec::with_capacity(sigma.len());
    for s in &sigma {
        let p = Permutation::parse(s.get_ref(), *n.get_ref()).map_err(|e| match e {
            CoreError::CycleSyntax { message, column } => {
                // column counts characters of the string body; skip the quote
                let start = s.span().start + 1;
                let offset = s.get_ref().char_indices().nth(column - 1).map_or(s.get_ref().len(), |(i, _)| i);
                let at = start + offset;
                debug_assert!(text.is_char_boundary(at.min(text.len())));
                Located::at(at..at + 1, format!("cycle notation: {message}"))
            }
            other => Located::at(s.span(), other.to_string()),
        })?;
        perms.push(p);
    }
    MonodromyDatum::new(*n.get_ref(), perms).map_err(|e| Located::at(raw.kind.span(), e.to_string()))
}

fn rule(raw: Raw) -> Result<RuleSpec, Located> {
    let name = raw
        .name
        .ok_or_else(|| Located::at(raw.kind.span(), "rule needs a name"))?;
    let name_span = name.span();
    let name = name.into_inner();
    let params_span = raw.params.as_ref().map(|p| p.span());
    let at_params = params_span.clone().unwrap_or_else(|| name_span.clone());
    let params = raw.params.map(Spanned::into_inner).unwrap_or_default();
    let no_params = |what: &str| -> Result<(), Located> {
        match &params_span {
            Some(span) => Err(Located::at(span.clone(), format!("rule \"{what}\" takes no params"))),
            None => Ok(()),
        }
    };
    let is_table = name == "table";
    if !is_table {
        if let Some(v) = raw.vertex.as_ref().and_then(|v| v.first()) {
            return Err(Located::at(v.span(), "vertex tables belong to rule \"table\""));
        }
        if let Some(q) = &raw.q {
            return Err(Located::at(q.span(), "q of a named rule goes in [params]"));
        }
    }
    match name.as_str() {
        "exp" => {
            no_params("exp")?;
            Ok(RuleSpec::Exp)
        }
        "modular" => {
            no_params("modular")?;
            Ok(RuleSpec::Tree {
                name,
                tree: ChainTree::regular(3),
            })
        }
        "counterexample" => {
            let q = params.q.unwrap_or(3);
            let c = params.c.unwrap_or(1);
            let padding = match params.padding.as_deref().unwrap_or("geometric") {
                "none" => {
                    if params.growth.is_some() || params.prefix.is_some() {
                        return Err(Located::at(
                            at_params.clone(),
                            "growth and prefix need padding = \"geometric\"",
                        ));
                    }
                    PaddingSchedule::None
                }
                "geometric" => {
                    let PaddingSchedule::Geometric { growth, prefix } = PaddingSchedule::DEFAULT else {
                        unreachable!()
                    };
                    PaddingSchedule::Geometric {
                        growth: params.growth.unwrap_or(growth),
                        prefix: params.prefix.unwrap_or(prefix),
                    }
                }
                other => {
                    return Err(Located::at(
                        at_params.clone(),
                        format!("unknown padding \"{other}\" (expected none or geometric)"),
                    ))
                }
            };
            let tree = counterexample_family(q, c, padding)
                .map_err(|e| Located::at(at_params.clone(), e.to_string()))?;
            Ok(RuleSpec::Tree { name, tree })
        }
        "table" => {
            no_params("table")?;
            table(raw.q, raw.vertex, name_span).map(RuleSpec::Table)
        }
        other => match tree_arity(other) {
            Some(q) if (3..=255).contains(&q) => {
                no_params("tree(q)")?;
                Ok(RuleSpec::Tree {
                    name,
                    tree: ChainTree::regular(q),
                })
            }
            Some(q) => Err(Located::at(name_span, format!("tree(q) needs 3 ≤ q ≤ 255, got {q}"))),
            None => Err(Located::at(
                name_span,
                format!("unknown rule \"{other}\" (expected exp, modular, tree(q), counterexample or table)"),
            )),
        },
    }
}

fn tree_arity(name: &str) -> Option<usize> {
    name.strip_prefix("tree(")?.strip_suffix(')')?.trim().parse().ok()
}

fn table(
    q: Option<Spanned<usize>>,
    vertices: Option<Vec<Spanned<RawVertex>>>,
    name_span: Range<usize>,
) -> Result<PeriodicTable, Located> {
    let q = q.ok_or_else(|| Located::at(name_span.clone(), "table needs q"))?;
    let vertices = vertices.ok_or_else(|| Located::at(name_span, "table needs [[vertex]] entries"))?;
    let mut out = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let color = match v.get_ref().color.as_str() {
            "inner" => Color::Inner,
            "outer" => Color::Outer,
            other => {
                return Err(Located::at(
                    v.span(),
                    format!("unknown color \"{other}\" (expected inner or outer)"),
                ))
            }
        };
        out.push(TableVertex {
            color,
            neighbors: v.get_ref().neighbors.clone(),
        });
    }
    let table = PeriodicTable::new(*q.get_ref(), out);
    let problems = table.problems();
    if !problems.is_empty() {
        return Err(Located::nowhere(format!("invalid table:\n  {}", problems.join("\n  "))));
    }
    Ok(table)
}

fn dilatation(raw: Raw) -> Result<DilatationSpec, Located> {
    let annuli = raw
        .annulus
        .unwrap_or_default()
        .into_iter()
        .map(|a| (a.get_ref().r1, a.get_ref().r2))
        .collect();
    let spec = DilatationSpec {
        grid: raw.grid.unwrap_or_default(),
        annuli,
        demo: raw.demo,
    };
    if spec.grid.is_empty() && spec.annuli.is_empty() && spec.demo.is_none() {
        return Err(Located::at(raw.kind.span(), "dilatation spec needs grid, annulus or demo"));
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Document, CliError> {
        parse_document(text, "spec.toml")
    }

    #[test]
    fn line_columns() {
        let t = "ab\ncdé\nf";
        assert_eq!(line_column(t, 0), (1, 1));
        assert_eq!(line_column(t, 4), (2, 2));
        assert_eq!(line_column(t, t.find('f').unwrap()), (3, 1));
        assert_eq!(line_column(t, t.find('é').unwrap() + 2), (2, 4));
    }

    #[test]
    fn monodromy_document() {
        let d = parse("schema = 1\nkind = \"monodromy\"\nn = 3\nsigma = [\"(123)\", \"(132)\"]\n").unwrap();
        match d {
            Document::Monodromy(m) => assert_eq!((m.n(), m.q()), (3, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unclosed_cycle_points_at_the_parenthesis() {
        let text = "schema = 1\nkind = \"monodromy\"\nn = 2\nsigma = [\"(12\", \"(12)\"]\n";
        match parse(text) {
            Err(CliError::Parse { line, column, message, .. }) => {
                assert_eq!(line, 4);
                assert_eq!(column, 11);
                assert!(message.contains("unclosed"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn toml_errors_carry_positions() {
        match parse("schema = 1\nkind = \"rule\"\nname = \n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse("schema = 2\nkind = \"rule\"\nname = \"exp\"\n") {
            Err(CliError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 10)),
            other => panic!("{other:?}"),
        }
        match parse("schema = 1\nkind = \"rule\"\nname = \"exp\"\nn = 3\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("schema = 1\nkind = \"rule\"\nname = \"exp\"\ncolour = 1\n"),
            Err(CliError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn named_rules() {
        let rule = |body: &str| match parse(&format!("schema = 1\nkind = \"rule\"\n{body}")) {
            Ok(Document::Rule(r)) => Ok(r),
            Ok(other) => panic!("{other:?}"),
            Err(e) => Err(e),
        };
        assert!(matches!(rule("name = \"exp\"\n"), Ok(RuleSpec::Exp)));
        match rule("name = \"tree(4)\"\n").unwrap() {
            RuleSpec::Tree { tree, .. } => assert_eq!(tree, ChainTree::regular(4)),
            other => panic!("{other:?}"),
        }
        match rule("name = \"counterexample\"\n[params]\nq = 3\nc = 1\n").unwrap() {
            RuleSpec::Tree { tree, .. } => {
                assert_eq!(tree, counterexample_family(3, 1, PaddingSchedule::DEFAULT).unwrap())
            }
            other => panic!("{other:?}"),
        }
        assert!(rule("name = \"tree(2)\"\n").is_err());
        assert!(rule("name = \"counterexample\"\n[params]\nc = 0\n").is_err());
        assert!(rule("name = \"counterexample\"\n[params]\npadding = \"none\"\ngrowth = 2\n").is_err());
        assert!(rule("name = \"modular\"\n[params]\nq = 4\n").is_err());
        assert!(rule("name = \"sine\"\n").is_err());
    }

    #[test]
    fn tables() {
        let text = "schema = 1\nkind = \"rule\"\nname = \"table\"\nq = 2\n\
            [[vertex]]\ncolor = \"inner\"\nneighbors = [[1, 0], [1, -1]]\n\
            [[vertex]]\ncolor = \"outer\"\nneighbors = [[0, 0], [0, 1]]\n";
        match parse(text).unwrap() {
            Document::Rule(RuleSpec::Table(t)) => assert!(t.is_periodic()),
            other => panic!("{other:?}"),
        }
        let broken = text.replace("[[0, 0], [0, 1]]", "[[0, 0], [0, 0]]");
        match parse(&broken) {
            Err(CliError::Invalid(m)) => assert!(m.contains("does not lead back"), "{m}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dilatation_document() {
        let text = "schema = 1\nkind = \"dilatation\"\ngrid = [[[1.0, 0.0, 0.0, 1.0]]]\n\
            [[annulus]]\nr1 = 1.0\nr2 = 2.0\n[demo]\nk = 2.0\ndisc_bound = 1.0\n";
        match parse(text).unwrap() {
            Document::Dilatation(d) => {
                assert_eq!(d.grid.len(), 1);
                assert_eq!(d.annuli, vec![(1.0, 2.0)]);
                assert_eq!(d.demo.unwrap().rows, 3);
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("schema = 1\nkind = \"dilatation\"\n").is_err());
    }
}
