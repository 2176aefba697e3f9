use std::fmt;

use super::profile::chain_profile_counted;
use super::verdict::{teichmueller_verdict, TypeVerdict};
use crate::exhaustion::{limit_estimate, wreath_exhaust_counted, LimitEstimate};
use crate::rules::{ChainSchedule, ChainTree};
use crate::{Error, Rational, Result};

/// How fast the bigon padding between branch vertices grows.
///
/// Padding is measured by chain length: a chain of length `ℓ` holds `ℓ - 1`
/// bundles of `q - 1` parallel edges, i.e. `(ℓ - 1)(q - 2)` bigons on each
/// of its `2ℓ - 2` interior vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaddingSchedule {
    /// Chains of constant length `c`; `c = 1` is the modular surface.
    None,
    /// Chain length multiplied by `growth` per generation for the first
    /// `prefix` generations, then grown like `√k`.
    Geometric { growth: usize, prefix: usize },
}

impl PaddingSchedule {
    /// The schedule used by default: tripling for six generations.
    pub const DEFAULT: PaddingSchedule = PaddingSchedule::Geometric {
        growth: 3,
        prefix: 6,
    };

    pub fn doubling(prefix: usize) -> Self {
        PaddingSchedule::Geometric { growth: 2, prefix }
    }
}

impl fmt::Display for PaddingSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaddingSchedule::None => f.write_str("none"),
            PaddingSchedule::Geometric { growth, prefix } => {
                write!(f, "geometric(growth={growth}, prefix={prefix})")
            }
        }
    }
}

/// A chain tree whose padding makes bigons dominate every generation while
/// chain lengths stay below an envelope with exponent `1/2`, so that
/// `Σ ψ(k)/k²` converges by a declared certificate.
///
/// The schedule is checked against its envelope for the first `10⁴`
/// generations. Whether `V_ν` approaches 2 at a given depth is checked by
/// [`certify_family`].
pub fn counterexample_family(q: usize, c: usize, padding: PaddingSchedule) -> Result<ChainTree> {
    if q < 3 {
        return Err(Error::ScheduleInvalid(format!(
            "q = {q}; chain trees need q ≥ 3"
        )));
    }
    if q > u8::MAX as usize {
        return Err(Error::ScheduleInvalid(format!("q = {q} is too large")));
    }
    if c == 0 {
        return Err(Error::ScheduleInvalid("chain length c must be ≥ 1".into()));
    }
    let schedule = match padding {
        PaddingSchedule::None => ChainSchedule::Constant(c),
        PaddingSchedule::Geometric { growth, prefix } => {
            if growth < 2 || prefix < 1 {
                return Err(Error::ScheduleInvalid(format!(
                    "geometric padding needs growth ≥ 2 and prefix ≥ 1, got {growth} and {prefix}"
                )));
            }
            if (prefix as u32 - 1) as f64 * (growth as f64).log2() + (c as f64).log2() > 40.0 {
                return Err(Error::ScheduleInvalid("chain lengths overflow".into()));
            }
            ChainSchedule::Growing { c, growth, prefix }
        }
    };
    let env = schedule.envelope();
    if env.exponent >= 1.0 {
        return Err(Error::ScheduleInvalid(
            "envelope exponent must be below 1".into(),
        ));
    }
    if let Some(k) = (1..=10_000).find(|&k| schedule.length(k) as f64 > env.eval(k) + 1e-9) {
        return Err(Error::ScheduleInvalid(format!(
            "chain length exceeds the envelope at k = {k}"
        )));
    }
    Ok(ChainTree::new(q, schedule))
}

/// The two defining properties of a family member, as computed.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyCertificate {
    pub series: TypeVerdict,
    pub limit: LimitEstimate,
    /// Largest `|V_ν - 2|` over the trailing window.
    pub max_deviation: Rational,
}

/// Runs the series criterion to `horizon` generations with the schedule's
/// declared envelope, and the exhaustion to `depth` with a window of
/// `window` generations and the given tolerance.
pub fn certify_family(
    tree: &ChainTree,
    depth: usize,
    window: usize,
    tolerance: Rational,
    horizon: usize,
) -> Result<FamilyCertificate> {
    let profile = chain_profile_counted(tree, horizon, usize::MAX)?;
    let series = teichmueller_verdict(&profile, horizon, Some(&tree.schedule().envelope()));
    let report = wreath_exhaust_counted(tree, depth, None)?;
    let limit = limit_estimate(&report, Some(window), Some(tolerance));
    let two = Rational::from_integer(2.into());
    let dev = |x: &Rational| if x > &two { x - &two } else { &two - x };
    let max_deviation = dev(&limit.lim_inf).max(dev(&limit.lim_sup));
    Ok(FamilyCertificate {
        series,
        limit,
        max_deviation,
    })
}
