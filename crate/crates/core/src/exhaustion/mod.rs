//! Wreathlike exhaustion: the breadth-first generations `Γ^ν` around a base
//! vertex and the mean ramification `V_ν = (1/n_ν) Σ_{P ∈ Γ^ν} V_P`.
//!
//! Every vertex of `Γ^ν` contributes its full `V_P`, including faces that
//! reach beyond the current horizon. Face orders come from lazy tracing with
//! a cap; faces that do not close within it count as logarithmic and the
//! report records how many such decisions were made.
//!
//! Two evaluation modes exist. [`wreath_exhaust`] materializes the ball and
//! works for any rule and base. [`wreath_exhaust_counted`] is for tree-shaped
//! rules whose subtrees fall into finitely many [`ConeTypes`] per level: it
//! carries one representative per cone with an exact multiplicity, which
//! makes depths like 50 on the modular tree (`≈ 2^50` vertices) cheap.

mod counted;
mod limit;

use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::complex::{curvature, explore, FaceOrder, FaceResolver, LocalRule, VertexId};
use crate::{Rational, Result};

pub use counted::wreath_exhaust_counted;
pub use limit::{limit_estimate, LimitEstimate, LimitVerdict, DEFAULT_TOLERANCE};

/// Rules whose 1-skeleton (parallel edges merged) is a tree and whose
/// vertices fall into cone types: two vertices of the same cone type have
/// isomorphic subtrees away from the base, with matching colors and face
/// orders.
pub trait ConeTypes: LocalRule {
    type Cone: Clone + Eq + Hash + Ord + std::fmt::Debug;

    fn cone(&self, v: &Self::Vertex) -> Self::Cone;

    /// Whether `v` lies within graph distance `radius` of the base.
    fn within(&self, v: &Self::Vertex, radius: usize) -> bool;
}

/// How the generations were evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Explicit,
    Counted,
}

/// One generation `Γ^ν`: every vertex at distance `≤ ν` from the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generation {
    pub radius: usize,
    /// `n_ν`.
    pub count: BigUint,
    /// `Σ V_P` over `Γ^ν`.
    pub ramification: Rational,
    /// `V_ν`.
    pub mean: Rational,
    /// `E_ν = 2 - V_ν`.
    pub excess: Rational,
    /// Smallest and largest `V_P` met in `Γ^ν`.
    pub vp_min: Rational,
    pub vp_max: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionReport {
    /// Id of the base in the exhaustion's own numbering (always `v0`).
    pub base: VertexId,
    /// The base as the rule names it.
    pub base_label: String,
    pub q: usize,
    pub depth: usize,
    /// Indexed by `ν = 0..=depth`.
    pub generations: Vec<Generation>,
    /// Radius at which a finite complex was fully covered, if it was.
    pub exhausted_at: Option<usize>,
    pub cap: usize,
    /// Face evaluations that hit the cap.
    pub truncations: usize,
    pub mode: Mode,
}

impl ExhaustionReport {
    pub fn means(&self) -> Vec<Rational> {
        self.generations.iter().map(|g| g.mean.clone()).collect()
    }

    pub fn last(&self) -> &Generation {
        self.generations.last().expect("at least generation 0")
    }

    /// `(min, max)` of `V_ν` over the last `w` generations.
    pub fn tail_window(&self, w: usize) -> (Rational, Rational) {
        let w = w.clamp(1, self.generations.len());
        let tail = &self.generations[self.generations.len() - w..];
        let min = tail.iter().map(|g| &g.mean).min().unwrap().clone();
        let max = tail.iter().map(|g| &g.mean).max().unwrap().clone();
        (min, max)
    }

    /// Whether every vertex met had the same `V_P`.
    pub fn is_regular(&self) -> bool {
        let g = self.last();
        g.vp_min == g.vp_max
    }

    pub fn cap_truncated(&self) -> bool {
        self.truncations > 0
    }

    /// The report restricted to depth `ν ≤ depth`.
    pub fn prefix(&self, depth: usize) -> ExhaustionReport {
        let mut r = self.clone();
        r.depth = depth.min(self.depth);
        r.generations.truncate(r.depth + 1);
        r.exhausted_at = self.exhausted_at.filter(|&e| e <= r.depth);
        r
    }
}

/// Default face-tracing cap: `10·q·depth`, or unlimited for finite rules
/// whose faces always close.
pub fn default_cap(q: usize, depth: usize, finite: bool) -> usize {
    if finite {
        usize::MAX
    } else {
        (10 * q * depth.max(1)).max(2)
    }
}

fn vertex_ramification<R: LocalRule>(
    rule: &R,
    v: &R::Vertex,
    resolver: &mut FaceResolver<R::Vertex>,
    keep: impl Fn(&R::Vertex) -> bool,
) -> Result<Rational> {
    let orders: Vec<FaceOrder> = (0..rule.q())
        .map(|s| resolver.order(rule, v, s, &keep))
        .collect::<Result<_>>()?;
    Ok(curvature::vertex_ramification(&orders))
}

pub(crate) struct Accumulator {
    count: BigUint,
    sum: Rational,
    vp_min: Option<Rational>,
    vp_max: Option<Rational>,
}

impl Accumulator {
    pub(crate) fn new() -> Self {
        Accumulator {
            count: BigUint::zero(),
            sum: Rational::zero(),
            vp_min: None,
            vp_max: None,
        }
    }

    pub(crate) fn add(&mut self, vp: &Rational, multiplicity: &BigUint) {
        self.count += multiplicity;
        self.sum += vp * Rational::from_integer(multiplicity.clone().into());
        if self.vp_min.as_ref().map_or(true, |m| vp < m) {
            self.vp_min = Some(vp.clone());
        }
        if self.vp_max.as_ref().map_or(true, |m| vp > m) {
            self.vp_max = Some(vp.clone());
        }
    }

    pub(crate) fn snapshot(&self, radius: usize) -> Generation {
        let mean = &self.sum / Rational::from_integer(self.count.clone().into());
        Generation {
            radius,
            count: self.count.clone(),
            ramification: self.sum.clone(),
            excess: Rational::from_integer(2.into()) - &mean,
            mean,
            vp_min: self.vp_min.clone().unwrap(),
            vp_max: self.vp_max.clone().unwrap(),
        }
    }
}

/// Breadth-first exhaustion of `rule` around `base` up to radius `depth`.
///
/// `cap` bounds face tracing (see [`default_cap`]). For finite complexes
/// the generations stop growing once the complex is covered and the
/// remaining ones repeat the terminal values.
pub fn wreath_exhaust<R: LocalRule>(
    rule: &R,
    base: &R::Vertex,
    depth: usize,
    cap: Option<usize>,
) -> Result<ExhaustionReport> {
    if depth < 1 {
        return Err(crate::Error::Precondition(
            "exhaustion depth must be ≥ 1".into(),
        ));
    }
    let cap = cap.unwrap_or_else(|| default_cap(rule.q(), depth, rule.is_finite()));
    let ball = explore(rule, base, depth)?;
    let mut resolver = FaceResolver::new(cap);
    let mut acc = Accumulator::new();
    let mut generations = Vec::with_capacity(depth + 1);
    let one = BigUint::one();
    for r in 0..=depth {
        if r <= ball.radius() {
            for v in &ball.vertices[ball.layer(r)] {
                let vp =
                    vertex_ramification(rule, v, &mut resolver, |w| ball.index.contains_key(w))?;
                acc.add(&vp, &one);
            }
        }
        generations.push(acc.snapshot(r));
    }
    Ok(ExhaustionReport {
        base: VertexId(0),
        base_label: format!("{base:?}"),
        q: rule.q(),
        depth,
        generations,
        exhausted_at: ball.exhausted.then(|| ball.radius()),
        cap,
        truncations: resolver.truncations(),
        mode: Mode::Explicit,
    })
}
