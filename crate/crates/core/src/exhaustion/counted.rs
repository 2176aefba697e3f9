use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;

use super::{default_cap, vertex_ramification, Accumulator, ConeTypes, ExhaustionReport, Mode};
use crate::complex::{step, FaceResolver, VertexId};
use crate::{Error, Rational, Result};

struct Entry<V> {
    rep: V,
    parent: Option<V>,
    multiplicity: BigUint,
}

/// Exhaustion of a cone-typed tree rule from its own base.
///
/// Each level is a map from cone type to one representative vertex and the
/// number of vertices of that type; `V_P` is evaluated once per cone type.
/// The result equals [`super::wreath_exhaust`] from the rule's base, without
/// visiting every vertex.
pub fn wreath_exhaust_counted<R: ConeTypes>(
    rule: &R,
    depth: usize,
    cap: Option<usize>,
) -> Result<ExhaustionReport> {
    if depth < 1 {
        return Err(Error::Precondition("exhaustion depth must be ≥ 1".into()));
    }
    let cap = cap.unwrap_or_else(|| default_cap(rule.q(), depth, rule.is_finite()));
    let base = rule.base();
    let mut resolver = FaceResolver::new(cap);
    let mut vp_cache: HashMap<R::Cone, Rational> = HashMap::new();
    let mut acc = Accumulator::new();
    let mut generations = Vec::with_capacity(depth + 1);
    let mut exhausted_at = None;

    let mut level: BTreeMap<R::Cone, Entry<R::Vertex>> = BTreeMap::new();
    level.insert(
        rule.cone(&base),
        Entry {
            rep: base.clone(),
            parent: None,
            multiplicity: BigUint::one(),
        },
    );
    for r in 0..=depth {
        for (cone, e) in &level {
            let vp = match vp_cache.get(cone) {
                Some(vp) => vp.clone(),
                None => {
                    let vp = vertex_ramification(rule, &e.rep, &mut resolver, |w| rule.within(w, depth + 1))?;
                    vp_cache.insert(cone.clone(), vp.clone());
                    vp
                }
            };
            acc.add(&vp, &e.multiplicity);
        }
        generations.push(acc.snapshot(r));
        if r == depth {
            break;
        }
        let mut next: BTreeMap<R::Cone, Entry<R::Vertex>> = BTreeMap::new();
        for e in level.values() {
            let mut seen = HashSet::new();
            for s in 0..rule.q() {
                let w = step(rule, &e.rep, s)?;
                if Some(&w) == e.parent.as_ref() || !seen.insert(w.clone()) {
                    continue;
                }
                next.entry(rule.cone(&w))
                    .and_modify(|x| x.multiplicity += &e.multiplicity)
                    .or_insert(Entry {
                        rep: w,
                        parent: Some(e.rep.clone()),
                        multiplicity: e.multiplicity.clone(),
                    });
            }
        }
        if next.is_empty() && exhausted_at.is_none() {
            exhausted_at = Some(r);
        }
        level = next;
    }
    Ok(ExhaustionReport {
        base: VertexId(0),
        base_label: format!("{base:?}"),
        q: rule.q(),
        depth,
        generations,
        exhausted_at,
        cap,
        truncations: resolver.truncations(),
        mode: Mode::Counted,
    })
}
