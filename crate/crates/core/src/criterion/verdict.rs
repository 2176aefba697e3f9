use std::fmt;

use num_traits::{Signed, ToPrimitive};

use super::profile::ChainProfile;
use crate::exhaustion::{LimitEstimate, LimitVerdict};
use crate::hurwitz::CoveringSummary;
use crate::rules::LengthEnvelope;
use crate::{Error, Rational, Result};

/// `ζ(2) = π²/6`.
pub const ZETA_2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
    Inconclusive,
}

impl TypeClass {
    pub fn name(self) -> &'static str {
        match self {
            TypeClass::Hyperbolic => "HYPERBOLIC",
            TypeClass::Parabolic => "PARABOLIC",
            TypeClass::Elliptic => "ELLIPTIC",
            TypeClass::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// The rule that produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    SeriesCriterion,
    RegularTrichotomy,
    FiniteCoverGenusZero,
    /// Random walk / resistance on the 1-skeleton, a heuristic proxy.
    Oracle,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::SeriesCriterion => "series criterion",
            Basis::RegularTrichotomy => "regular trichotomy",
            Basis::FiniteCoverGenusZero => "finite cover genus 0",
            Basis::Oracle => "oracle (1-skeleton proxy)",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeVerdict {
    pub value: TypeClass,
    pub basis: Basis,
    /// Named numbers the verdict rests on, in a fixed order.
    pub evidence: Vec<(String, String)>,
    /// Why no verdict was reached, for INCONCLUSIVE.
    pub reason: Option<String>,
}

impl TypeVerdict {
    pub fn new(value: TypeClass, basis: Basis) -> Self {
        TypeVerdict {
            value,
            basis,
            evidence: Vec::new(),
            reason: None,
        }
    }

    pub fn inconclusive(basis: Basis, reason: impl Into<String>) -> Self {
        TypeVerdict {
            reason: Some(reason.into()),
            ..TypeVerdict::new(TypeClass::Inconclusive, basis)
        }
    }

    pub fn with(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.evidence.push((key.to_string(), value.to_string()));
        self
    }

    pub fn is_conclusive(&self) -> bool {
        self.value != TypeClass::Inconclusive
    }

    /// The verdict as printed: oracle verdicts carry a `-proxy` suffix.
    pub fn label(&self) -> String {
        match (self.basis, self.value) {
            (Basis::Oracle, v) if v != TypeClass::Inconclusive => format!("{}-proxy", v.name()),
            (_, v) => v.name().to_string(),
        }
    }
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label(), self.basis)?;
        if let Some(r) = &self.reason {
            write!(f, ": {r}")?;
        }
        Ok(())
    }
}

/// Riemann zeta at `s > 1`, by direct summation with an integral tail.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0);
    let n = 10_000;
    let head: f64 = (1..n).map(|k| (k as f64).powf(-s)).sum();
    let n = n as f64;
    // Euler–Maclaurin: ∫_n^∞ + f(n)/2 + f'(n)/12 corrections
    head + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s / 12.0 * n.powf(-s - 1.0)
}

/// Teichmüller's series criterion: `Σ ψ(k)/k² < ∞` implies hyperbolic.
///
/// Convergence is accepted only with a certificate:
/// - a declared envelope `ψ(k) ≤ a·k^e + b` with `e < 1`, supplied by the
///   construction of the rule and checked against every computed `ψ(k)`;
///   the series is then at most `a·ζ(2-e) + b·ζ(2)`;
/// - or `ψ` constant over the second half of the profile, read as bounded
///   (comparison with `ψ_max·ζ(2)`), labelled as an observed plateau.
///
/// Divergence proves nothing, so every other case is INCONCLUSIVE.
pub fn teichmueller_verdict(
    profile: &ChainProfile,
    horizon: usize,
    declared: Option<&LengthEnvelope>,
) -> TypeVerdict {
    let basis = Basis::SeriesCriterion;
    if horizon == 0 || profile.depth < horizon {
        return TypeVerdict::inconclusive(
            basis,
            format!("profile depth {} below horizon {horizon}", profile.depth),
        );
    }
    let psi = &profile.psi[..horizon];
    let s_k = profile.partial_sums[horizon - 1]
        .to_f64()
        .unwrap_or(f64::NAN);
    if let Some(env) = declared {
        let within = psi
            .iter()
            .enumerate()
            .all(|(i, &p)| p as f64 <= env.eval(i + 1) + 1e-9);
        if env.exponent < 1.0 && within {
            let bound = env.a * zeta(2.0 - env.exponent) + env.b * ZETA_2;
            return TypeVerdict::new(TypeClass::Hyperbolic, basis)
                .with(
                    "certificate",
                    format!("declared envelope {}·k^{} + {}", env.a, env.exponent, env.b),
                )
                .with("psi_max", psi[horizon - 1])
                .with("partial_sum", format!("{s_k:.6}"))
                .with("series_bound", format!("{bound:.6}"));
        }
        if !within {
            return TypeVerdict::inconclusive(basis, "observed ψ exceeds the declared envelope");
        }
    }
    let tail = &psi[horizon / 2..];
    if horizon >= 2 && tail.first() == tail.last() {
        let psi_max = psi[horizon - 1];
        return TypeVerdict::new(TypeClass::Hyperbolic, basis)
            .with("certificate", "bounded psi (observed plateau)")
            .with("psi_max", psi_max)
            .with("partial_sum", format!("{s_k:.6}"))
            .with("series_bound", format!("{:.6}", psi_max as f64 * ZETA_2));
    }
    TypeVerdict::inconclusive(
        basis,
        "ψ still growing; the criterion gives no verdict on divergence",
    )
    .with("psi_max", psi[horizon - 1])
    .with("partial_sum", format!("{s_k:.6}"))
}

/// The trichotomy for regularly ramified surfaces, where every vertex has
/// the same `V_P = V`: elliptic, parabolic or hyperbolic as `V < 2`, `= 2`
/// or `> 2`. `vp_values` certifies regularity.
pub fn classify_regular(vp_values: &[Rational]) -> Result<TypeVerdict> {
    let first = vp_values
        .first()
        .ok_or_else(|| Error::Precondition("no V_P values".into()))?;
    if let Some(other) = vp_values.iter().find(|v| *v != first) {
        let (min, max) = if other < first {
            (other, first)
        } else {
            (first, other)
        };
        return Err(Error::NotRegular {
            min: min.to_string(),
            max: max.to_string(),
        });
    }
    let two = Rational::from_integer(2.into());
    let value = match first.cmp(&two) {
        std::cmp::Ordering::Less => TypeClass::Elliptic,
        std::cmp::Ordering::Equal => TypeClass::Parabolic,
        std::cmp::Ordering::Greater => TypeClass::Hyperbolic,
    };
    Ok(TypeVerdict::new(value, Basis::RegularTrichotomy)
        .with("V", first)
        .with("E", &two - first))
}

/// Closed coverings: genus 0 is the sphere (elliptic type).
pub fn classify_finite(summary: &CoveringSummary) -> TypeVerdict {
    if summary.genus == 0 {
        TypeVerdict::new(TypeClass::Elliptic, Basis::FiniteCoverGenusZero)
            .with("genus", 0)
            .with("mean_ramification", &summary.mean_ramification)
    } else {
        TypeVerdict::inconclusive(
            Basis::FiniteCoverGenusZero,
            format!(
                "closed surface of genus {} is not simply connected",
                summary.genus
            ),
        )
    }
}

/// First conclusive verdict in the order given.
pub fn independent_verdict(candidates: &[TypeVerdict]) -> Option<&TypeVerdict> {
    candidates.iter().find(|v| v.is_conclusive())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Confirms,
    Refutes,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Confirms => "CONFIRMS",
            Outcome::Refutes => "REFUTES",
            Outcome::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureAssessment {
    /// `E = 2 - V` from the window estimate.
    pub excess: Rational,
    pub prediction: Option<TypeClass>,
    pub verdict: TypeClass,
    pub basis: Basis,
    pub outcome: Outcome,
    pub reason: Option<String>,
}

/// Compares the conjecture's prediction (parabolic iff `E = 0`, hyperbolic
/// iff `E < 0`) with an independently obtained verdict. `E` counts as zero
/// when `|E|` is below the estimate's tolerance.
pub fn nevanlinna_conjecture_eval(
    estimate: &LimitEstimate,
    verdict: &TypeVerdict,
) -> ConjectureAssessment {
    let excess = Rational::from_integer(2.into()) - estimate.value();
    let mut a = ConjectureAssessment {
        excess: excess.clone(),
        prediction: None,
        verdict: verdict.value,
        basis: verdict.basis,
        outcome: Outcome::NotApplicable,
        reason: None,
    };
    if estimate.verdict != LimitVerdict::Converged {
        a.reason = Some(format!("V_ν did not converge ({})", estimate.verdict));
        return a;
    }
    a.prediction = if excess.abs() < estimate.tolerance {
        Some(TypeClass::Parabolic)
    } else if excess.is_negative() {
        Some(TypeClass::Hyperbolic)
    } else {
        a.reason = Some("positive mean excess: the conjecture concerns open surfaces".into());
        return a;
    };
    if !verdict.is_conclusive() {
        a.reason = Some("no independent verdict".into());
        return a;
    }
    a.outcome = if a.prediction == Some(verdict.value) {
        Outcome::Confirms
    } else {
        Outcome::Refutes
    };
    a
}
