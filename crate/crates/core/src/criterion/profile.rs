use std::collections::{BTreeMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::speiser::{follow_chain, is_branch, simple_neighbors, WeightedEdge};
use crate::complex::LocalRule;
use crate::exhaustion::ConeTypes;
use crate::{Error, Rational, Result};

/// Generation structure of the Speiser tree seen from a branch vertex `B_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainProfile {
    pub q: usize,
    /// Depth `K`.
    pub depth: usize,
    /// `|B_k|` for `k = 0..=K`.
    pub b_counts: Vec<BigUint>,
    /// Multiset of lengths of the chains `B_{k-1} → B_k`; entry `k - 1`.
    pub chain_lengths: Vec<BTreeMap<usize, BigUint>>,
    /// `φ(k)` for `k = 1..=K`, at index `k - 1`.
    pub phi: Vec<usize>,
    /// `ψ(k) = max_{κ ≤ k} φ(κ)`, at index `k - 1`.
    pub psi: Vec<usize>,
    /// `S_k = Σ_{κ ≤ k} ψ(κ)/κ²`, at index `k - 1`.
    pub partial_sums: Vec<Rational>,
}

impl ChainProfile {
    fn from_levels(
        q: usize,
        b_counts: Vec<BigUint>,
        chain_lengths: Vec<BTreeMap<usize, BigUint>>,
    ) -> Self {
        let phi: Vec<usize> = chain_lengths
            .iter()
            .map(|m| m.keys().next_back().copied().unwrap_or(0))
            .collect();
        let psi: Vec<usize> = phi
            .iter()
            .scan(0, |run, &p| {
                *run = (*run).max(p);
                Some(*run)
            })
            .collect();
        let mut sum = Rational::zero();
        let partial_sums = psi
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let k = BigInt::from(i + 1);
                sum += Rational::new(BigInt::from(p), k.pow(2u32));
                sum.clone()
            })
            .collect();
        ChainProfile {
            q,
            depth: phi.len(),
            b_counts,
            chain_lengths,
            phi,
            psi,
            partial_sums,
        }
    }

    /// `q(q-1)^{k-1}` for `k ≥ 1`, and 1 for `k = 0`.
    pub fn expected_count(q: usize, k: usize) -> BigUint {
        if k == 0 {
            BigUint::one()
        } else {
            BigUint::from(q) * BigUint::from(q - 1).pow(k as u32 - 1)
        }
    }

    /// Whether `|B_k| = q(q-1)^{k-1}` for every computed `k`.
    pub fn counts_match(&self) -> bool {
        self.b_counts
            .iter()
            .enumerate()
            .all(|(k, b)| *b == Self::expected_count(self.q, k))
    }

    pub fn psi_max(&self) -> usize {
        self.psi.last().copied().unwrap_or(0)
    }

    pub fn last_sum(&self) -> Rational {
        self.partial_sums
            .last()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

fn start_vertex<R: LocalRule>(rule: &R) -> Result<R::Vertex> {
    let b0 = rule.base();
    let nb = simple_neighbors(rule, &b0)?;
    if nb.len() != rule.q() {
        return Err(Error::Precondition(format!(
            "base {b0:?} has {} distinct neighbors; B_0 needs q = {} simple edges",
            nb.len(),
            rule.q()
        )));
    }
    Ok(b0)
}

fn outgoing<R: LocalRule>(
    rule: &R,
    b: &R::Vertex,
    back: Option<&R::Vertex>,
    bound: usize,
) -> Result<Vec<WeightedEdge<R::Vertex>>> {
    let mut out = Vec::new();
    for (w, m) in simple_neighbors(rule, b)? {
        if Some(&w) == back {
            continue;
        }
        out.push(follow_chain(rule, b, &w, m, bound)?);
    }
    Ok(out)
}

/// Walks the generations `B_0, ..., B_K` from the rule's base, which must
/// have `q` simple edges. Chains longer than `bound` steps fail with
/// `InfiniteChainDetected`; meeting a branch vertex twice is a failed
/// precondition (the Speiser tree is not a tree).
pub fn chain_profile<R: LocalRule>(rule: &R, depth: usize, bound: usize) -> Result<ChainProfile> {
    let b0 = start_vertex(rule)?;
    let mut seen: HashSet<R::Vertex> = HashSet::from([b0.clone()]);
    // each element: branch vertex and the last vertex of the chain into it
    let mut level: Vec<(R::Vertex, Option<R::Vertex>)> = vec![(b0, None)];
    let mut b_counts = vec![BigUint::one()];
    let mut chain_lengths = Vec::with_capacity(depth);
    for _ in 0..depth {
        let mut next = Vec::new();
        let mut lengths: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (b, back) in &level {
            for e in outgoing(rule, b, back.as_ref(), bound)? {
                if !seen.insert(e.to.clone()) {
                    return Err(Error::Precondition(format!(
                        "branch vertex {:?} reached twice",
                        e.to
                    )));
                }
                *lengths.entry(e.length()).or_default() += 1u32;
                let before = e.interior.last().cloned().unwrap_or_else(|| b.clone());
                next.push((e.to, Some(before)));
            }
        }
        b_counts.push(BigUint::from(next.len()));
        chain_lengths.push(lengths);
        level = next;
    }
    Ok(ChainProfile::from_levels(rule.q(), b_counts, chain_lengths))
}

/// [`chain_profile`] for cone-typed tree rules: one representative branch
/// vertex per cone type and generation, with exact multiplicities.
pub fn chain_profile_counted<R: ConeTypes>(
    rule: &R,
    depth: usize,
    bound: usize,
) -> Result<ChainProfile> {
    struct Entry<V> {
        rep: V,
        back: Option<V>,
        count: BigUint,
    }
    let b0 = start_vertex(rule)?;
    let mut level: BTreeMap<R::Cone, Entry<R::Vertex>> = BTreeMap::new();
    level.insert(
        rule.cone(&b0),
        Entry {
            rep: b0,
            back: None,
            count: BigUint::one(),
        },
    );
    let mut b_counts = vec![BigUint::one()];
    let mut chain_lengths = Vec::with_capacity(depth);
    for _ in 0..depth {
        let mut next: BTreeMap<R::Cone, Entry<R::Vertex>> = BTreeMap::new();
        let mut lengths: BTreeMap<usize, BigUint> = BTreeMap::new();
        for e in level.values() {
            for edge in outgoing(rule, &e.rep, e.back.as_ref(), bound)? {
                debug_assert!(is_branch(rule, &edge.to)?);
                *lengths.entry(edge.length()).or_default() += &e.count;
                let before = edge
                    .interior
                    .last()
                    .cloned()
                    .unwrap_or_else(|| e.rep.clone());
                next.entry(rule.cone(&edge.to))
                    .and_modify(|x| x.count += &e.count)
                    .or_insert(Entry {
                        rep: edge.to,
                        back: Some(before),
                        count: e.count.clone(),
                    });
            }
        }
        b_counts.push(next.values().fold(BigUint::zero(), |acc, e| acc + &e.count));
        chain_lengths.push(lengths);
        level = next;
    }
    Ok(ChainProfile::from_levels(rule.q(), b_counts, chain_lengths))
}
