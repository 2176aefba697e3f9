use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::LocalRule;
use crate::{Error, Result};

/// Return statistics of simple random walks started at a base vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkEstimate {
    pub base_label: String,
    pub trials: usize,
    pub horizon: usize,
    pub seed: u64,
    pub returns: usize,
    /// Fraction of walks back at the base within `horizon` steps.
    pub return_fraction: f64,
    /// Binomial standard error of `return_fraction`.
    pub std_error: f64,
}

/// Runs `trials` simple random walks of at most `horizon` steps on the
/// 1-skeleton (each of the `q` edge-ends equally likely, so parallel edges
/// weigh by multiplicity).
///
/// Trial `i` draws from ChaCha8 seeded with `seed` on stream `i`, so the
/// estimate does not depend on scheduling.
pub fn simulate_walk<R: LocalRule>(
    rule: &R,
    base: &R::Vertex,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<WalkEstimate> {
    if trials == 0 || horizon == 0 {
        return Err(Error::Precondition("trials and horizon must be ≥ 1".into()));
    }
    let q = rule.q();
    let returns = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut v = base.clone();
            for _ in 0..horizon {
                v = rule.neighbor(&v, rng.gen_range(0..q));
                if &v == base {
                    return 1;
                }
            }
            0
        })
        .sum::<usize>();
    let p = returns as f64 / trials as f64;
    Ok(WalkEstimate {
        base_label: format!("{base:?}"),
        trials,
        horizon,
        seed,
        returns,
        return_fraction: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
    })
}
