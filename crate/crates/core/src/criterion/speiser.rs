use crate::complex::{step, LocalRule};
use crate::{Error, Result};

/// Distinct neighbors of `v` in slot order, with the number of parallel
/// edges to each.
pub fn simple_neighbors<R: LocalRule + ?Sized>(
    rule: &R,
    v: &R::Vertex,
) -> Result<Vec<(R::Vertex, usize)>> {
    let mut out: Vec<(R::Vertex, usize)> = Vec::new();
    for s in 0..rule.q() {
        let w = step(rule, v, s)?;
        match out.iter_mut().find(|(u, _)| *u == w) {
            Some((_, m)) => *m += 1,
            None => out.push((w, 1)),
        }
    }
    Ok(out)
}

/// A vertex is a branch vertex when it does not have exactly two distinct
/// neighbors; the others lie on unbranched chains.
pub fn is_branch<R: LocalRule + ?Sized>(rule: &R, v: &R::Vertex) -> Result<bool> {
    Ok(simple_neighbors(rule, v)?.len() != 2)
}

/// A maximal unbranched chain contracted to one edge of the Speiser tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedEdge<V> {
    pub from: V,
    pub to: V,
    /// Chain vertices strictly between `from` and `to`.
    pub interior: Vec<V>,
    /// Parallel-edge count of every step, `interior.len() + 1` entries.
    pub multiplicities: Vec<usize>,
}

impl<V> WeightedEdge<V> {
    /// Steps of the 1-skeleton along the chain.
    pub fn steps(&self) -> usize {
        self.multiplicities.len()
    }

    /// Chain length: single edges and bundles alternate along a chain, and
    /// the length counts one of each pair, `⌈steps / 2⌉`.
    pub fn length(&self) -> usize {
        self.steps().div_ceil(2)
    }
}

impl<V: Clone> WeightedEdge<V> {
    /// Re-inserts the chain: the 1-skeleton edges `(a, b, multiplicity)`.
    pub fn expand(&self) -> Vec<(V, V, usize)> {
        let mut path = Vec::with_capacity(self.interior.len() + 2);
        path.push(self.from.clone());
        path.extend(self.interior.iter().cloned());
        path.push(self.to.clone());
        path.windows(2)
            .zip(&self.multiplicities)
            .map(|(w, &m)| (w[0].clone(), w[1].clone(), m))
            .collect()
    }
}

/// Follows the chain that leaves branch vertex `from` towards `first` until
/// it reaches a branch vertex, giving up after `bound` steps.
pub fn follow_chain<R: LocalRule + ?Sized>(
    rule: &R,
    from: &R::Vertex,
    first: &R::Vertex,
    first_multiplicity: usize,
    bound: usize,
) -> Result<WeightedEdge<R::Vertex>> {
    let mut interior = Vec::new();
    let mut multiplicities = vec![first_multiplicity];
    let mut prev = from.clone();
    let mut cur = first.clone();
    loop {
        let nb = simple_neighbors(rule, &cur)?;
        if nb.len() != 2 {
            return Ok(WeightedEdge {
                from: from.clone(),
                to: cur,
                interior,
                multiplicities,
            });
        }
        if multiplicities.len() >= bound {
            return Err(Error::InfiniteChainDetected {
                bound,
                context: format!("{from:?}"),
            });
        }
        let (next, m) = nb
            .into_iter()
            .find(|(w, _)| *w != prev)
            .expect("two distinct neighbors");
        interior.push(cur.clone());
        multiplicities.push(m);
        prev = std::mem::replace(&mut cur, next);
    }
}

/// The Speiser tree of a rule: branch vertices joined by contracted chains.
///
/// Edges are computed lazily. Contraction keeps every chain's vertices and
/// edge multiplicities, so [`WeightedEdge::expand`] restores the complex.
pub struct SpeiserTree<'a, R: LocalRule> {
    rule: &'a R,
    bound: usize,
    root: R::Vertex,
}

impl<'a, R: LocalRule> SpeiserTree<'a, R> {
    pub fn rule(&self) -> &R {
        self.rule
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The branch vertex nearest to the rule's base along its chain.
    pub fn root(&self) -> &R::Vertex {
        &self.root
    }

    /// One contracted edge per distinct neighbor of the branch vertex `v`.
    pub fn edges(&self, v: &R::Vertex) -> Result<Vec<WeightedEdge<R::Vertex>>> {
        simple_neighbors(self.rule, v)?
            .into_iter()
            .map(|(w, m)| follow_chain(self.rule, v, &w, m, self.bound))
            .collect()
    }

    /// Contracted edges within `radius` tree steps of the root, each once,
    /// in breadth-first order. Assumes the Speiser tree is a tree.
    pub fn ball(&self, radius: usize) -> Result<Vec<WeightedEdge<R::Vertex>>> {
        let mut out = Vec::new();
        let mut frontier: Vec<(R::Vertex, Option<R::Vertex>)> = vec![(self.root.clone(), None)];
        for _ in 0..radius {
            let mut next = Vec::new();
            for (v, parent) in frontier {
                for e in self.edges(&v)? {
                    if Some(&e.to) == parent.as_ref() {
                        continue;
                    }
                    next.push((e.to.clone(), Some(v.clone())));
                    out.push(e);
                }
            }
            frontier = next;
        }
        Ok(out)
    }
}

/// Contracts the unbranched chains of `rule`.
///
/// Fails with `InfiniteChainDetected` when the base lies on a chain that
/// has no branch vertex within `bound` steps in either direction; edges
/// fail the same way when a chain exceeds the bound.
pub fn to_speiser_tree<R: LocalRule>(rule: &R, bound: usize) -> Result<SpeiserTree<'_, R>> {
    let base = rule.base();
    let nb = simple_neighbors(rule, &base)?;
    let root = if nb.len() != 2 {
        base
    } else {
        let (w, m) = nb[0].clone();
        match follow_chain(rule, &base, &w, m, bound) {
            Ok(e) => e.to,
            Err(_) => {
                let (w, m) = nb[1].clone();
                follow_chain(rule, &base, &w, m, bound)?.to
            }
        }
    };
    Ok(SpeiserTree { rule, bound, root })
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, HashSet};

    use super::*;
    use crate::rules::{ChainSchedule, ChainTree, ExpRule, TreeVertex};

    #[test]
    fn modular_tree_is_unchanged() {
        let t = ChainTree::regular(3);
        let s = to_speiser_tree(&t, 100).unwrap();
        let ball = s.ball(4).unwrap();
        assert_eq!(ball.len(), 3 + 6 + 12 + 24);
        assert!(ball.iter().all(|e| e.steps() == 1 && e.length() == 1));
    }

    #[test]
    fn constant_chains_become_weight_c() {
        for c in 1..5 {
            let t = ChainTree::new(4, ChainSchedule::Constant(c));
            let s = to_speiser_tree(&t, 100).unwrap();
            for e in s.ball(3).unwrap() {
                assert_eq!(e.length(), c);
                assert_eq!(e.steps(), 2 * c - 1);
                // single edges and bundles of q - 1 alternate
                for (i, &m) in e.multiplicities.iter().enumerate() {
                    assert_eq!(m, if i % 2 == 0 { 1 } else { 3 });
                }
            }
        }
    }

    #[test]
    fn exp_surface_is_one_infinite_chain() {
        let err = to_speiser_tree(&ExpRule, 64).err().unwrap();
        assert!(matches!(
            err,
            Error::InfiniteChainDetected { bound: 64, .. }
        ));
    }

    #[test]
    fn expansion_round_trip() {
        let t = ChainTree::new(3, ChainSchedule::Periodic(vec![2, 1, 3]));
        let s = to_speiser_tree(&t, 100).unwrap();
        let edges = s.ball(3).unwrap();
        let mut expanded: BTreeMap<TreeVertex, BTreeMap<TreeVertex, usize>> = BTreeMap::new();
        let mut inner = HashSet::new();
        for e in &edges {
            inner.insert(e.from.clone());
            inner.extend(e.interior.iter().cloned());
            for (a, b, m) in e.expand() {
                expanded.entry(a.clone()).or_default().insert(b.clone(), m);
                expanded.entry(b).or_default().insert(a, m);
            }
        }
        // every vertex not on the outer rim has its full neighborhood back
        for v in inner {
            let original: BTreeMap<_, _> = simple_neighbors(&t, &v).unwrap().into_iter().collect();
            assert_eq!(expanded[&v], original, "{v:?}");
        }
    }
}
