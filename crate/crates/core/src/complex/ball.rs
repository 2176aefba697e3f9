use std::collections::HashMap;

use super::rule::{step, LocalRule};
use super::{Color, Dart, EdgeEnd, LineComplex, VertexId};
use crate::Result;

/// Breadth-first ball around a base vertex of a rule.
///
/// Vertex ids are assigned in discovery order; a vertex's neighbors are
/// scanned in slot order, so ids are reproducible.
#[derive(Clone, Debug)]
pub struct Ball<V> {
    pub vertices: Vec<V>,
    pub index: HashMap<V, VertexId>,
    pub distance: Vec<usize>,
    /// `layer_end[r]` is the number of vertices at distance `≤ r`.
    pub layer_end: Vec<usize>,
    /// True when no vertex lies beyond the last layer: the complex is finite
    /// and fully contained in the ball.
    pub exhausted: bool,
}

impl<V: Clone + Eq + std::hash::Hash> Ball<V> {
    pub fn radius(&self) -> usize {
        self.layer_end.len() - 1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn id(&self, v: &V) -> Option<VertexId> {
        self.index.get(v).copied()
    }

    /// Vertices at distance exactly `r`.
    pub fn layer(&self, r: usize) -> std::ops::Range<usize> {
        let start = if r == 0 { 0 } else { self.layer_end[r - 1] };
        start..self.layer_end[r]
    }

    /// Edges with both ends in the ball, each once, as `(a, b, slot)` with
    /// `a` the endpoint discovered first.
    pub fn edges<R: LocalRule<Vertex = V>>(&self, rule: &R) -> Vec<(VertexId, VertexId, usize)> {
        let mut out = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            for s in 0..rule.q() {
                if let Some(j) = self.id(&rule.neighbor(v, s)) {
                    if i < j.0 {
                        out.push((VertexId(i), j, s));
                    }
                }
            }
        }
        out
    }

    /// The ball as an explicit complex when it holds the whole (finite)
    /// complex, renumbered by discovery order.
    pub fn to_line_complex<R: LocalRule<Vertex = V>>(&self, rule: &R) -> Option<LineComplex> {
        if !self.exhausted {
            return None;
        }
        let q = rule.q();
        let colors: Vec<Color> = self.vertices.iter().map(|v| rule.color(v)).collect();
        let rotation: Vec<Vec<EdgeEnd>> = self
            .vertices
            .iter()
            .map(|v| {
                (0..q)
                    .map(|s| Dart::new(self.index[&rule.neighbor(v, s)], s))
                    .collect()
            })
            .collect();
        Some(LineComplex::new(q, colors, rotation))
    }
}

/// Explores all vertices within `radius` of `base`, checking rule symmetry
/// on every edge it crosses.
pub fn explore<R: LocalRule>(rule: &R, base: &R::Vertex, radius: usize) -> Result<Ball<R::Vertex>> {
    let q = rule.q();
    let mut vertices = vec![base.clone()];
    let mut index = HashMap::from([(base.clone(), VertexId(0))]);
    let mut distance = vec![0];
    let mut layer_end = vec![1];
    let mut exhausted = false;
    let mut frontier = 0..1;
    for r in 1..=radius + 1 {
        let mut discovered = Vec::new();
        for i in frontier.clone() {
            let v = vertices[i].clone();
            for s in 0..q {
                let w = step(rule, &v, s)?;
                if !index.contains_key(&w) {
                    index.insert(w.clone(), VertexId(vertices.len() + discovered.len()));
                    discovered.push(w);
                }
            }
        }
        if discovered.is_empty() {
            exhausted = true;
            break;
        }
        if r > radius {
            for w in &discovered {
                index.remove(w);
            }
            break;
        }
        let start = vertices.len();
        distance.extend(std::iter::repeat(r).take(discovered.len()));
        vertices.extend(discovered);
        layer_end.push(vertices.len());
        frontier = start..vertices.len();
    }
    Ok(Ball {
        vertices,
        index,
        distance,
        layer_end,
        exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigon_complex_ball_is_exhausted() {
        let c = LineComplex::bigon_complex(3);
        let ball = explore(&c, &VertexId(0), 5).unwrap();
        assert!(ball.exhausted);
        assert_eq!(ball.len(), 2);
        assert_eq!(ball.radius(), 1);
        assert_eq!(ball.edges(&c).len(), 3);
        assert_eq!(ball.to_line_complex(&c).unwrap(), c);
    }

    #[test]
    fn radius_zero_sees_only_the_base() {
        let c = LineComplex::bigon_complex(2);
        let ball = explore(&c, &VertexId(1), 0).unwrap();
        assert_eq!(ball.vertices, vec![VertexId(1)]);
        assert!(!ball.exhausted);
    }
}
