use std::collections::HashSet;
use std::fmt;

use super::speiser::simple_neighbors;
use crate::complex::{explore, FaceOrder, FaceResolver, LocalRule};
use crate::exhaustion::default_cap;
use crate::Result;

/// Evidence that one of the three conditions fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A face of finite order `m ≥ 2` through `(vertex, slot)`.
    AlgebraicFace {
        vertex: String,
        slot: usize,
        m: usize,
    },
    /// The whole complex is finite, so every branch point is algebraic.
    FiniteComplex { vertices: usize },
    /// A chain vertex with no branch vertex within `bound` steps on one side.
    UnbranchedChain { vertex: String, bound: usize },
    /// A branch vertex whose number of distinct neighbors is not `q`.
    Degree { vertex: String, degree: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::AlgebraicFace { vertex, slot, m } => {
                write!(f, "algebraic face of order {m} at {vertex} slot {slot}")
            }
            Witness::FiniteComplex { vertices } => {
                write!(f, "finite complex with {vertices} vertices")
            }
            Witness::UnbranchedChain { vertex, bound } => {
                write!(f, "no branch vertex within {bound} steps of {vertex}")
            }
            Witness::Degree { vertex, degree } => {
                write!(f, "branch vertex {vertex} has degree {degree}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionsReport {
    /// (1) every face is a bigon or logarithmic.
    pub no_algebraic: bool,
    /// (2) no infinite unbranched chain, certified up to `bound` steps only.
    pub no_infinite_unbranched_chain: bool,
    /// (3) every vertex has two or `q` distinct neighbors.
    pub degrees_two_or_q: bool,
    pub bound: usize,
    pub witnesses: Vec<Witness>,
}

impl ConditionsReport {
    pub fn all_hold(&self) -> bool {
        self.no_algebraic && self.no_infinite_unbranched_chain && self.degrees_two_or_q
    }
}

/// Checks the three conditions on the ball of radius `bound` around the
/// rule's base. Chains are followed up to `bound` steps beyond the ball.
pub fn check_conditions<R: LocalRule>(rule: &R, bound: usize) -> Result<ConditionsReport> {
    let bound = bound.max(1);
    let q = rule.q();
    let ball = explore(rule, &rule.base(), bound)?;
    let mut witnesses = Vec::new();

    let mut no_algebraic = true;
    if rule.is_finite() || ball.exhausted {
        no_algebraic = false;
        witnesses.push(Witness::FiniteComplex {
            vertices: ball.len(),
        });
    }
    let mut resolver = FaceResolver::new(default_cap(q, bound, false));
    for v in &ball.vertices {
        for s in 0..q {
            if let FaceOrder::Finite(m) =
                resolver.order(rule, v, s, |w| ball.index.contains_key(w))?
            {
                if m >= 2 {
                    if no_algebraic || witnesses.len() < 8 {
                        witnesses.push(Witness::AlgebraicFace {
                            vertex: format!("{v:?}"),
                            slot: s,
                            m,
                        });
                    }
                    no_algebraic = false;
                }
            }
        }
    }

    let mut degrees_two_or_q = true;
    let mut no_infinite_unbranched_chain = true;
    let mut settled: HashSet<R::Vertex> = HashSet::new();
    for v in &ball.vertices {
        let nb = simple_neighbors(rule, v)?;
        if nb.len() != 2 && nb.len() != q {
            degrees_two_or_q = false;
            witnesses.push(Witness::Degree {
                vertex: format!("{v:?}"),
                degree: nb.len(),
            });
        }
        if nb.len() != 2 || settled.contains(v) {
            continue;
        }
        // walk both ways; every chain vertex met is settled with it
        let mut run = vec![v.clone()];
        let mut open = false;
        for (first, _) in &nb {
            let mut prev = v.clone();
            let mut cur = first.clone();
            let mut steps = 0;
            loop {
                let here = simple_neighbors(rule, &cur)?;
                if here.len() != 2 {
                    break;
                }
                if steps == bound {
                    open = true;
                    break;
                }
                run.push(cur.clone());
                let next = here.into_iter().find(|(w, _)| *w != prev).unwrap().0;
                prev = std::mem::replace(&mut cur, next);
                steps += 1;
            }
        }
        if open {
            no_infinite_unbranched_chain = false;
            witnesses.push(Witness::UnbranchedChain {
                vertex: format!("{v:?}"),
                bound,
            });
            break;
        }
        settled.extend(run);
    }
    Ok(ConditionsReport {
        no_algebraic,
        no_infinite_unbranched_chain,
        degrees_two_or_q,
        bound,
        witnesses,
    })
}
