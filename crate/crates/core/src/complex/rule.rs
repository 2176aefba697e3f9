use std::fmt::Debug;
use std::hash::Hash;

use super::{Color, LineComplex, VertexId};
use crate::{Error, Result};

/// Local description of a (possibly infinite) line complex.
///
/// A rule answers, for any vertex, its color and the vertex across each of
/// its `q` slots. The edge leaving `v` at slot `s` must arrive at slot `s` of
/// the neighbor, and colors must alternate; [`step`] checks both on every
/// move. Implementations are deterministic and must be safe to query from
/// several threads.
pub trait LocalRule: Sync {
    type Vertex: Clone + Eq + Hash + Debug + Send + Sync;

    fn q(&self) -> usize;

    fn base(&self) -> Self::Vertex;

    fn color(&self, v: &Self::Vertex) -> Color;

    fn neighbor(&self, v: &Self::Vertex, slot: usize) -> Self::Vertex;

    /// The cyclic list of the `q` neighbors together with their colors.
    fn neighbors(&self, v: &Self::Vertex) -> Vec<(Self::Vertex, Color)> {
        (0..self.q())
            .map(|s| {
                let w = self.neighbor(v, s);
                let c = self.color(&w);
                (w, c)
            })
            .collect()
    }

    /// Whether the rule is known to describe a finite complex.
    fn is_finite(&self) -> bool {
        false
    }
}

impl<R: LocalRule + ?Sized> LocalRule for &R {
    type Vertex = R::Vertex;

    fn q(&self) -> usize {
        (**self).q()
    }
    fn base(&self) -> Self::Vertex {
        (**self).base()
    }
    fn color(&self, v: &Self::Vertex) -> Color {
        (**self).color(v)
    }
    fn neighbor(&self, v: &Self::Vertex, slot: usize) -> Self::Vertex {
        (**self).neighbor(v, slot)
    }
    fn is_finite(&self) -> bool {
        (**self).is_finite()
    }
}

/// A validated finite complex is its own rule, based at `v0`.
impl LocalRule for LineComplex {
    type Vertex = VertexId;

    fn q(&self) -> usize {
        LineComplex::q(self)
    }
    fn base(&self) -> VertexId {
        VertexId(0)
    }
    fn color(&self, v: &VertexId) -> Color {
        self.color_of(*v)
    }
    fn neighbor(&self, v: &VertexId, slot: usize) -> VertexId {
        self.rotation(*v)[slot].vertex
    }
    fn is_finite(&self) -> bool {
        true
    }
}

/// Moves across slot `slot` of `v`, checking symmetry and color alternation.
pub fn step<R: LocalRule + ?Sized>(rule: &R, v: &R::Vertex, slot: usize) -> Result<R::Vertex> {
    let w = rule.neighbor(v, slot);
    let back = rule.neighbor(&w, slot);
    if &back != v {
        return Err(Error::RuleInconsistent {
            context: format!("{v:?} slot {slot} -> {w:?}, which leads back to {back:?}"),
        });
    }
    if rule.color(&w) == rule.color(v) {
        return Err(Error::RuleInconsistent {
            context: format!("{v:?} and {w:?} share a color"),
        });
    }
    Ok(w)
}
