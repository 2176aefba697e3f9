//! Canonical representation of line complexes.
//!
//! Vertices are half sheets: [`Color::Inner`] vertices are lifts of the
//! point inside the polygon bounded by the curve through the branch values,
//! [`Color::Outer`] vertices lifts of the point outside it. Each vertex has
//! `q` slots; slot `i` is the edge crossing the side `(a_i a_{i+1})` of that
//! curve, so an edge always joins slot `i` of an inner vertex to slot `i` of
//! an outer vertex.
//!
//! The planar embedding is the rotation system given by the slots: inner
//! vertices list their slots counter-clockwise, outer vertices clockwise.
//! Tracing a face from the edge-end `(v, s)` moves along the edge to
//! `(w, s)` and continues with the slot after `s` in the rotation at `w`.
//! With this convention the face through an inner edge-end at slot `i`
//! surrounds the branch value `a_i`.

mod ball;
pub mod curvature;
mod face;
mod rule;
mod validate;

use std::fmt;

pub use ball::{explore, Ball};
pub use face::{face_of, faces_at, trace_faces, Face, FaceOrder, FaceResolver};
pub use rule::{step, LocalRule};
pub use validate::{validate, ValidationReport, Violation};

/// Stable vertex identifier: index into the vertex list of a complex, or
/// breadth-first discovery order for explored balls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Inner,
    Outer,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Inner => Color::Outer,
            Color::Outer => Color::Inner,
        }
    }

    /// Slot that follows `slot` in the rotation at a vertex of this color.
    pub fn next_slot(self, slot: usize, q: usize) -> usize {
        match self {
            Color::Inner => (slot + 1) % q,
            Color::Outer => (slot + q - 1) % q,
        }
    }

    /// Branch value (0-based) of the face traced from an edge-end at `slot`.
    pub fn face_label(self, slot: usize, q: usize) -> usize {
        match self {
            Color::Inner => slot,
            Color::Outer => (slot + 1) % q,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Inner => "inner",
            Color::Outer => "outer",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One end of an edge: a vertex together with the slot the edge occupies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart<V> {
    pub vertex: V,
    pub slot: usize,
}

impl<V> Dart<V> {
    pub fn new(vertex: V, slot: usize) -> Self {
        Dart { vertex, slot }
    }
}

pub type EdgeEnd = Dart<VertexId>;

impl Copy for Dart<VertexId> {}

impl fmt::Display for EdgeEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, slot {})", self.vertex, self.slot)
    }
}

/// A finite line complex given explicitly by its rotation system.
///
/// `rotation[v][s]` is the far end of the edge leaving `v` at slot `s`. The
/// structure is plain data: it may violate any of the line-complex
/// invariants, which [`validate`] reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineComplex {
    q: usize,
    colors: Vec<Color>,
    rotation: Vec<Vec<EdgeEnd>>,
}

impl LineComplex {
    pub fn new(q: usize, colors: Vec<Color>, rotation: Vec<Vec<EdgeEnd>>) -> Self {
        assert_eq!(colors.len(), rotation.len(), "one rotation per vertex");
        LineComplex {
            q,
            colors,
            rotation,
        }
    }

    /// Builds a complex from a list of edges `(inner, outer, slot)`.
    ///
    /// Vertices are numbered `0..colors.len()`; every listed edge occupies
    /// the same slot at both ends.
    pub fn from_edges(q: usize, colors: Vec<Color>, edges: &[(usize, usize, usize)]) -> Self {
        let placeholder = Dart::new(VertexId(usize::MAX), usize::MAX);
        let mut rotation = vec![vec![placeholder; q]; colors.len()];
        for &(a, b, s) in edges {
            rotation[a][s] = Dart::new(VertexId(b), s);
            rotation[b][s] = Dart::new(VertexId(a), s);
        }
        LineComplex::new(q, colors, rotation)
    }

    /// The one-sheeted complex: an inner and an outer vertex joined by `q`
    /// parallel edges.
    pub fn bigon_complex(q: usize) -> Self {
        let edges: Vec<_> = (0..q).map(|s| (0, 1, s)).collect();
        LineComplex::from_edges(q, vec![Color::Inner, Color::Outer], &edges)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.colors.len()).map(VertexId)
    }

    pub fn color_of(&self, v: VertexId) -> Color {
        self.colors[v.0]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn rotation(&self, v: VertexId) -> &[EdgeEnd] {
        &self.rotation[v.0]
    }

    pub fn partner(&self, d: EdgeEnd) -> Option<EdgeEnd> {
        self.rotation.get(d.vertex.0)?.get(d.slot).copied()
    }

    /// Number of edges, counting each edge-end pair once.
    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Every edge once, as the lexicographically smaller edge-end first.
    pub fn edges(&self) -> Vec<(EdgeEnd, EdgeEnd)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in self.vertices() {
            for (s, &far) in self.rotation[v.0].iter().enumerate() {
                let here = Dart::new(v, s);
                if here < far {
                    out.push((here, far));
                }
            }
        }
        out
    }

    pub fn count_color(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }
}
