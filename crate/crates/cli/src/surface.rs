use linecomplex::curvature::{polygon_excess, vertex_face_orders, vertex_ramifications};
use linecomplex::hurwitz::{build_from_monodromy, complex_summary, covering_summary, CoveringSummary};
use linecomplex::rules::{ChainTree, PeriodicTable};
use linecomplex::{validate, LineComplex, Rational};
use num_bigint::BigInt;

use crate::spec::{Document, RuleSpec};
use crate::CliError;

/// A surface ready for analysis.
pub enum Surface {
    /// A closed covering, from monodromy or a table without offsets.
    Finite {
        complex: LineComplex,
        summary: CoveringSummary,
    },
    Exp,
    Tree(ChainTree),
    Periodic(PeriodicTable),
}

pub struct Loaded {
    /// `monodromy`, `table`, or the rule name.
    pub label: String,
    pub surface: Surface,
}

impl Loaded {
    pub fn q(&self) -> usize {
        match &self.surface {
            Surface::Finite { complex, .. } => complex.q(),
            Surface::Exp => 2,
            Surface::Tree(t) => linecomplex::LocalRule::q(t),
            Surface::Periodic(t) => linecomplex::LocalRule::q(t),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.surface, Surface::Finite { .. })
    }
}

/// Runs `$body` with `$r` bound to the surface's rule.
macro_rules! with_rule {
    ($surface:expr, $r:ident => $body:expr) => {
        match $surface {
            $crate::surface::Surface::Finite { complex: $r, .. } => $body,
            $crate::surface::Surface::Exp => {
                let $r = &linecomplex::rules::ExpRule;
                $body
            }
            $crate::surface::Surface::Tree($r) => $body,
            $crate::surface::Surface::Periodic($r) => $body,
        }
    };
}
pub(crate) use with_rule;

pub fn load(doc: Document) -> Result<Loaded, CliError> {
    match doc {
        Document::Monodromy(d) => {
            let complex = build_from_monodromy(&d);
            let summary = covering_summary(&d);
            check_finite(&complex, &summary)?;
            Ok(Loaded {
                label: "monodromy".into(),
                surface: Surface::Finite { complex, summary },
            })
        }
        Document::Rule(RuleSpec::Exp) => Ok(Loaded {
            label: "exp".into(),
            surface: Surface::Exp,
        }),
        Document::Rule(RuleSpec::Tree { name, tree }) => Ok(Loaded {
            label: name,
            surface: Surface::Tree(tree),
        }),
        Document::Rule(RuleSpec::Table(t)) => match t.to_line_complex() {
            Some(complex) => {
                let report = validate(&complex);
                if !report.is_valid() {
                    let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                    return Err(CliError::Invalid(format!("validation failed:\n  {}", lines.join("\n  "))));
                }
                let summary = complex_summary(&complex)?;
                check_finite(&complex, &summary)?;
                Ok(Loaded {
                    label: "table".into(),
                    surface: Surface::Finite { complex, summary },
                })
            }
            None => Ok(Loaded {
                label: "table".into(),
                surface: Surface::Periodic(t),
            }),
        },
        Document::Dilatation(_) => Err(CliError::Invalid(
            "a dilatation spec describes no surface; use `lc dilatation`".into(),
        )),
    }
}

/// Identities every closed covering satisfies; a failure is a bug, not bad
/// input.
fn check_finite(c: &LineComplex, s: &CoveringSummary) -> Result<(), CliError> {
    let report = validate(c);
    if !report.is_valid() {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::Breach(format!(
            "constructed complex is invalid:\n  {}",
            lines.join("\n  ")
        )));
    }
    if complex_summary(c)? != *s {
        return Err(CliError::Breach("face count disagrees with cycle count".into()));
    }
    let two = Rational::from_integer(BigInt::from(2));
    let vps = vertex_ramifications(c)?;
    for (v, (orders, vp)) in vertex_face_orders(c)?.iter().zip(&vps).enumerate() {
        let e: Rational = polygon_excess(orders, c.q());
        if vp + e != two {
            return Err(CliError::Breach(format!("V_P + E_P ≠ 2 at v{v}")));
        }
    }
    let total: Rational = vps.into_iter().sum();
    if total != Rational::from_integer(BigInt::from(2 * s.total_branching)) {
        return Err(CliError::Breach(format!("Σ V_P = {total} ≠ 2b = {}", 2 * s.total_branching)));
    }
    if s.mean_identity == linecomplex::hurwitz::MeanIdentity::Fails {
        return Err(CliError::Breach("genus 0 but V ≠ 2 - 2/n".into()));
    }
    Ok(())
}
