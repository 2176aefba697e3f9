use std::collections::HashMap;
use std::fmt;

use super::rule::{step, LocalRule};
use super::{Dart, EdgeEnd, LineComplex};
use crate::{Error, Result};

/// Half the number of sides of a face: a `2m`-gon has order `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceOrder {
    /// `m ≥ 1`; `m = 1` is a bigon (unbranched point), otherwise a branch
    /// point of order `m - 1`.
    Finite(usize),
    /// Logarithmic branch point. `truncated` marks faces that merely failed
    /// to close within the tracing cap.
    Infinite { truncated: bool },
}

impl FaceOrder {
    pub fn m(self) -> Option<usize> {
        match self {
            FaceOrder::Finite(m) => Some(m),
            FaceOrder::Infinite { .. } => None,
        }
    }

    pub fn is_bigon(self) -> bool {
        self == FaceOrder::Finite(1)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, FaceOrder::Infinite { .. })
    }

    /// Finite and not a bigon: an algebraic branch point.
    pub fn is_algebraic(self) -> bool {
        matches!(self, FaceOrder::Finite(m) if m >= 2)
    }

    pub fn is_truncated(self) -> bool {
        matches!(self, FaceOrder::Infinite { truncated: true })
    }
}

impl fmt::Display for FaceOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceOrder::Finite(m) => write!(f, "{m}"),
            FaceOrder::Infinite { truncated: true } => write!(f, "inf(cap)"),
            FaceOrder::Infinite { truncated: false } => write!(f, "inf"),
        }
    }
}

/// A face (elementary region) of a line complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face<V = super::VertexId> {
    /// Edge-ends in tracing order; empty for infinite faces.
    pub boundary: Vec<Dart<V>>,
    pub order: FaceOrder,
    /// 0-based index of the branch value the face lies over.
    pub branch: usize,
}

/// Traces every face of a finite complex.
///
/// Faces are returned in order of their smallest starting edge-end, so the
/// output is deterministic. Every edge-end lies on exactly one face.
pub fn trace_faces(c: &LineComplex) -> Result<Vec<Face>> {
    let q = c.q();
    let mut visited: Vec<Vec<bool>> = c
        .vertices()
        .map(|v| vec![false; c.rotation(v).len()])
        .collect();
    let mut faces = Vec::new();
    for v in c.vertices() {
        for s in 0..c.rotation(v).len() {
            if visited[v.0][s] {
                continue;
            }
            let start: EdgeEnd = Dart::new(v, s);
            let branch = c.color_of(v).face_label(s, q);
            let mut boundary = Vec::new();
            let mut cur = start;
            loop {
                if !boundary.is_empty() && cur == start {
                    break;
                }
                let bad = || Error::NonPlanarRotation {
                    vertex: cur.vertex.0,
                    slot: cur.slot,
                };
                let seen = visited
                    .get_mut(cur.vertex.0)
                    .and_then(|r| r.get_mut(cur.slot))
                    .ok_or_else(bad)?;
                if *seen || c.color_of(cur.vertex).face_label(cur.slot, q) != branch {
                    return Err(bad());
                }
                *seen = true;
                boundary.push(cur);
                let far = c.partner(cur).ok_or_else(bad)?;
                if c.partner(far) != Some(cur) || far.slot >= q {
                    return Err(bad());
                }
                cur = Dart::new(far.vertex, c.color_of(far.vertex).next_slot(far.slot, q));
            }
            if boundary.len() % 2 != 0 {
                return Err(Error::NonPlanarRotation {
                    vertex: v.0,
                    slot: s,
                });
            }
            faces.push(Face {
                order: FaceOrder::Finite(boundary.len() / 2),
                boundary,
                branch,
            });
        }
    }
    Ok(faces)
}

/// Traces the face through edge-end `(v, slot)` of a rule, giving up after
/// `cap` edge-ends; such faces are reported infinite and flagged truncated.
pub fn face_of<R: LocalRule + ?Sized>(
    rule: &R,
    v: &R::Vertex,
    slot: usize,
    cap: usize,
) -> Result<Face<R::Vertex>> {
    if cap < 2 {
        return Err(Error::Precondition(format!("face tracing cap {cap} < 2")));
    }
    let q = rule.q();
    let branch = rule.color(v).face_label(slot, q);
    let start = Dart::new(v.clone(), slot);
    let mut boundary = vec![start.clone()];
    let mut cur = start.clone();
    loop {
        let w = step(rule, &cur.vertex, cur.slot)?;
        let next = rule.color(&w).next_slot(cur.slot, q);
        cur = Dart::new(w, next);
        if cur == start {
            break;
        }
        if boundary.len() == cap {
            return Ok(Face {
                boundary: Vec::new(),
                order: FaceOrder::Infinite { truncated: true },
                branch,
            });
        }
        boundary.push(cur.clone());
    }
    Ok(Face {
        order: FaceOrder::Finite(boundary.len() / 2),
        boundary,
        branch,
    })
}

/// The `q` faces around `v`, in rotation order (one per edge-end of `v`).
pub fn faces_at<R: LocalRule + ?Sized>(
    rule: &R,
    v: &R::Vertex,
    cap: usize,
) -> Result<Vec<Face<R::Vertex>>> {
    (0..rule.q()).map(|s| face_of(rule, v, s, cap)).collect()
}

/// Memoizing face-order lookup for repeated queries over a region.
///
/// Edge-ends visited while tracing are remembered when `keep` accepts their
/// vertex, so every face in the region is traced at most once up to the
/// first remembered edge-end.
pub struct FaceResolver<V> {
    cap: usize,
    known: HashMap<Dart<V>, FaceOrder>,
    truncations: usize,
}

impl<V: Clone + Eq + std::hash::Hash> FaceResolver<V> {
    pub fn new(cap: usize) -> Self {
        FaceResolver {
            cap: cap.max(2),
            known: HashMap::new(),
            truncations: 0,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Number of faces that were declared infinite because of the cap.
    pub fn truncations(&self) -> usize {
        self.truncations
    }

    pub fn order<R>(
        &mut self,
        rule: &R,
        v: &V,
        slot: usize,
        keep: impl Fn(&V) -> bool,
    ) -> Result<FaceOrder>
    where
        R: LocalRule<Vertex = V> + ?Sized,
    {
        let start = Dart::new(v.clone(), slot);
        if let Some(&o) = self.known.get(&start) {
            return Ok(o);
        }
        let q = rule.q();
        let mut visited = vec![start.clone()];
        let mut cur = start.clone();
        let mut steps = 1usize;
        let order = loop {
            let w = step(rule, &cur.vertex, cur.slot)?;
            let next = rule.color(&w).next_slot(cur.slot, q);
            cur = Dart::new(w, next);
            if cur == start {
                break FaceOrder::Finite(steps / 2);
            }
            if let Some(&o) = self.known.get(&cur) {
                break o;
            }
            if steps == self.cap {
                self.truncations += 1;
                break FaceOrder::Infinite { truncated: true };
            }
            steps += 1;
            if keep(&cur.vertex) {
                visited.push(cur.clone());
            }
        };
        for d in visited {
            self.known.insert(d, order);
        }
        Ok(order)
    }
}
