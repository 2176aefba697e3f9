use std::collections::{BTreeMap, HashSet};

use num_traits::Float;

use super::network::Network;
use crate::complex::{explore, step, LocalRule};
use crate::criterion::{Basis, TypeClass, TypeVerdict};
use crate::exhaustion::ConeTypes;
use crate::{Error, Result};

/// Relative residual required of the linear solver.
pub const SOLVER_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Grounded Laplacian of the explicit ball, conjugate gradients.
    ConjugateGradient,
    /// Exact series-parallel elimination over cone types of a tree.
    TreeReduction,
}

/// Effective resistance between the base and the grounded `ν`-sphere, for
/// the `ν` in `depths`. Edges are unit resistors; `m` parallel edges
/// conduct `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResistanceCurve<T> {
    pub depths: Vec<usize>,
    /// Infinite when the sphere is empty (a finite complex inside the ball).
    pub resistance: Vec<T>,
    pub solver_tolerance: T,
    /// Largest relative residual reached, zero for exact elimination.
    pub max_residual: T,
    pub method: Method,
}

impl<T: Float> ResistanceCurve<T> {
    /// Rayleigh monotonicity, allowing for the solver tolerance.
    pub fn is_monotone(&self) -> bool {
        self.resistance.windows(2).all(|w| {
            let slack = self.solver_tolerance * T::from(10.0).unwrap() * w[0].abs().max(T::one());
            w[1] >= w[0] - slack
        })
    }

    pub fn at(&self, depth: usize) -> Option<T> {
        self.depths
            .iter()
            .position(|&d| d == depth)
            .map(|i| self.resistance[i])
    }
}

/// Depths sampled by default: every `ν` up to 64, beyond that the powers of
/// two and `depth` itself.
pub fn resistance_depths(depth: usize) -> Vec<usize> {
    if depth <= 64 {
        return (1..=depth).collect();
    }
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |&d| d.checked_mul(2))
        .take_while(|&d| d <= depth)
        .collect();
    if out.last() != Some(&depth) {
        out.push(depth);
    }
    out
}

fn tolerance<T: Float>() -> T {
    T::from(SOLVER_TOLERANCE)
        .unwrap()
        .max(T::epsilon() * T::from(64.0).unwrap())
}

/// Resistance curve of any rule from the explicit ball of radius `depth`.
pub fn effective_resistance<T: Float, R: LocalRule>(
    rule: &R,
    base: &R::Vertex,
    depths: &[usize],
) -> Result<ResistanceCurve<T>> {
    let max = depths.iter().copied().max().unwrap_or(0);
    if depths.is_empty() || depths.contains(&0) {
        return Err(Error::Precondition("resistance depths must be ≥ 1".into()));
    }
    let ball = explore(rule, base, max)?;
    let tol = tolerance::<T>();
    let mut resistance = Vec::with_capacity(depths.len());
    let mut max_residual = T::zero();
    for &nu in depths {
        if nu > ball.radius() {
            resistance.push(T::infinity());
            continue;
        }
        let n = ball.layer_end[nu - 1];
        let mut edges = Vec::new();
        let mut ground = Vec::new();
        for (i, v) in ball.vertices[..n].iter().enumerate() {
            for s in 0..rule.q() {
                let j = ball.index[&rule.neighbor(v, s)].0;
                if j >= n {
                    ground.push((i, T::one()));
                } else if i < j {
                    edges.push((i, j, T::one()));
                }
                // edges with j < i were added from the other end; i == j is a loop
            }
        }
        let net = Network::from_edges(n, &edges, &ground);
        let (r, res) = net.resistance_to_ground(0, tol)?;
        max_residual = max_residual.max(res);
        resistance.push(r);
    }
    Ok(ResistanceCurve {
        depths: depths.to_vec(),
        resistance,
        solver_tolerance: tol,
        max_residual,
        method: Method::ConjugateGradient,
    })
}

/// Resistance curve of a cone-typed tree rule from its base, by exact
/// series-parallel elimination: the resistance below a vertex depends only
/// on its cone type and distance, so each level is reduced once per type.
pub fn effective_resistance_tree<T: Float, R: ConeTypes>(
    rule: &R,
    depths: &[usize],
) -> Result<ResistanceCurve<T>> {
    let max = depths.iter().copied().max().unwrap_or(0);
    if depths.is_empty() || depths.contains(&0) {
        return Err(Error::Precondition("resistance depths must be ≥ 1".into()));
    }
    // levels[d][i] = children of cone i at distance d: (index at d + 1, multiplicity)
    let mut levels: Vec<Vec<Vec<(usize, usize)>>> = Vec::with_capacity(max);
    let mut reps: Vec<(R::Vertex, Option<R::Vertex>)> = vec![(rule.base(), None)];
    for _ in 0..max {
        let mut index: BTreeMap<R::Cone, usize> = BTreeMap::new();
        let mut next: Vec<(R::Vertex, Option<R::Vertex>)> = Vec::new();
        let mut children = Vec::with_capacity(reps.len());
        for (v, parent) in &reps {
            let mut mine: Vec<(R::Vertex, usize)> = Vec::new();
            for s in 0..rule.q() {
                let w = step(rule, v, s)?;
                if Some(&w) == parent.as_ref() {
                    continue;
                }
                match mine.iter_mut().find(|(u, _)| *u == w) {
                    Some((_, m)) => *m += 1,
                    None => mine.push((w, 1)),
                }
            }
            let mut seen = HashSet::new();
            let list = mine
                .into_iter()
                .map(|(w, m)| {
                    debug_assert!(seen.insert(w.clone()));
                    let i = *index.entry(rule.cone(&w)).or_insert_with(|| {
                        next.push((w.clone(), Some(v.clone())));
                        next.len() - 1
                    });
                    (i, m)
                })
                .collect();
            children.push(list);
        }
        levels.push(children);
        reps = next;
    }
    let resistance = depths
        .iter()
        .map(|&nu| {
            let mut below: Vec<T> = vec![T::zero(); levels.get(nu).map_or(reps.len(), Vec::len)];
            for d in (0..nu).rev() {
                below = levels[d]
                    .iter()
                    .map(|kids| {
                        let g = kids.iter().fold(T::zero(), |acc, &(i, m)| {
                            acc + T::one() / (T::one() / T::from(m).unwrap() + below[i])
                        });
                        T::one() / g
                    })
                    .collect();
            }
            below[0]
        })
        .collect();
    Ok(ResistanceCurve {
        depths: depths.to_vec(),
        resistance,
        solver_tolerance: T::zero(),
        max_residual: T::zero(),
        method: Method::TreeReduction,
    })
}

/// Heuristic type from the growth of the resistance curve.
///
/// Uses the samples at powers of two and the increments between them.
/// Over the trailing half of the increments, a fitted per-doubling ratio
/// below 0.8 (or increments vanishing to round-off) reads as a finite limit
/// and a transient walk: HYPERBOLIC-proxy. A ratio of at least 0.95 means
/// increments bounded below: PARABOLIC-proxy.
pub fn oracle_verdict<T: Float>(curve: &ResistanceCurve<T>) -> TypeVerdict {
    let basis = Basis::Oracle;
    let samples: Vec<(usize, f64)> = curve
        .depths
        .iter()
        .zip(&curve.resistance)
        .filter(|(d, _)| d.is_power_of_two())
        .map(|(&d, r)| (d, r.to_f64().unwrap_or(f64::NAN)))
        .collect();
    if samples.len() < 3 {
        return TypeVerdict::inconclusive(basis, "fewer than 3 doubling samples");
    }
    if samples.iter().any(|(_, r)| !r.is_finite()) {
        return TypeVerdict::new(TypeClass::Parabolic, basis)
            .with("resistance", "infinite (finite complex)");
    }
    let r_last = samples.last().unwrap().1;
    let floor = 1e-12 * r_last.abs().max(1.0);
    let inc: Vec<f64> = samples.windows(2).map(|w| w[1].1 - w[0].1).collect();
    let tail = &inc[inc.len() - (inc.len() / 2).max(2)..];
    let first = tail[0];
    let last = *tail.last().unwrap();
    let ratio = if last <= floor {
        0.0
    } else if first <= floor {
        f64::INFINITY
    } else {
        (last / first).powf(1.0 / (tail.len() - 1) as f64)
    };
    let value = if ratio < 0.8 {
        TypeClass::Hyperbolic
    } else if ratio >= 0.95 {
        TypeClass::Parabolic
    } else {
        TypeClass::Inconclusive
    };
    let v = TypeVerdict::new(value, basis)
        .with("doubling_ratio", format!("{ratio:.4}"))
        .with("resistance_last", format!("{r_last:.6}"))
        .with("depth_last", samples.last().unwrap().0);
    if value == TypeClass::Inconclusive {
        TypeVerdict {
            reason: Some("increments neither decay nor stay bounded below".into()),
            ..v
        }
    } else {
        v
    }
}
