use std::fmt;

use num_traits::Signed;

use super::ExhaustionReport;
use crate::scalar::ratio;
use crate::Rational;

/// `10⁻³`.
pub const DEFAULT_TOLERANCE: (i64, i64) = (1, 1000);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitVerdict {
    Converged,
    Oscillating,
    Inconclusive,
}

impl fmt::Display for LimitVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitVerdict::Converged => "CONVERGED",
            LimitVerdict::Oscillating => "OSCILLATING",
            LimitVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Window estimate of `lim inf V_ν` and `lim sup V_ν`. These are estimates
/// read off a finite window, not certified limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitEstimate {
    pub lim_inf: Rational,
    pub lim_sup: Rational,
    pub window: usize,
    pub tolerance: Rational,
    pub verdict: LimitVerdict,
}

impl LimitEstimate {
    /// Midpoint of the window, the value to quote for `V`.
    pub fn value(&self) -> Rational {
        (&self.lim_inf + &self.lim_sup) / Rational::from_integer(2.into())
    }
}

/// Reads `V` off the last `window` generations (default `depth/4`).
///
/// CONVERGED when the window spread is below `tolerance` (default `10⁻³`).
/// Otherwise OSCILLATING when the window moves both up and down, and
/// INCONCLUSIVE when it is still drifting monotonically.
pub fn limit_estimate(
    r: &ExhaustionReport,
    window: Option<usize>,
    tolerance: Option<Rational>,
) -> LimitEstimate {
    let window = window.unwrap_or(r.depth / 4).clamp(1, r.generations.len());
    let tolerance = tolerance.unwrap_or_else(|| ratio(DEFAULT_TOLERANCE.0, DEFAULT_TOLERANCE.1));
    let (lim_inf, lim_sup) = r.tail_window(window);
    let spread = &lim_sup - &lim_inf;
    let verdict = if spread < tolerance {
        LimitVerdict::Converged
    } else {
        let tail = &r.generations[r.generations.len() - window..];
        let diffs: Vec<Rational> = tail.windows(2).map(|w| &w[1].mean - &w[0].mean).collect();
        let up = diffs.iter().any(|d| d.is_positive());
        let down = diffs.iter().any(|d| d.is_negative());
        if up && down {
            LimitVerdict::Oscillating
        } else {
            LimitVerdict::Inconclusive
        }
    };
    LimitEstimate {
        lim_inf,
        lim_sup,
        window,
        tolerance,
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exhaustion::{wreath_exhaust, wreath_exhaust_counted};
    use crate::rules::{ChainSchedule, ChainTree, ExpRule};

    #[test]
    fn constant_sequence_converges() {
        let r = wreath_exhaust(&ExpRule, &0, 20, None).unwrap();
        let e = limit_estimate(&r, None, None);
        assert_eq!(e.verdict, LimitVerdict::Converged);
        assert_eq!(e.lim_inf, ratio(2, 1));
        assert_eq!(e.lim_sup, ratio(2, 1));
        assert_eq!(e.window, 5);
    }

    fn ones_then(runs: usize, long: usize) -> Vec<usize> {
        let mut v = vec![1; runs];
        v.push(long);
        v
    }

    #[test]
    fn alternating_blocks_oscillate() {
        // runs of branch vertices push V towards 3, one long chain level
        // pulls it back towards 2
        let t = ChainTree::new(3, ChainSchedule::Periodic(ones_then(12, 40)));
        let r = wreath_exhaust_counted(&t, 240, None).unwrap();
        let e = limit_estimate(&r, Some(120), None);
        assert_eq!(e.verdict, LimitVerdict::Oscillating, "{e:?}");
        assert!(e.lim_inf < ratio(21, 10), "{}", e.lim_inf);
        assert!(e.lim_sup > ratio(28, 10), "{}", e.lim_sup);
    }

    #[test]
    fn drifting_sequence_is_inconclusive() {
        let t = ChainTree::new(3, ChainSchedule::Constant(30));
        let r = wreath_exhaust_counted(&t, 40, None).unwrap();
        let e = limit_estimate(&r, Some(10), None);
        assert_eq!(e.verdict, LimitVerdict::Inconclusive, "{e:?}");
    }
}
