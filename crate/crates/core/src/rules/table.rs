use crate::complex::{Color, Dart, LineComplex, LocalRule, VertexId};

/// One vertex type of a [`PeriodicTable`]: its color and, per slot, the
/// target type together with the lattice offset of the target cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableVertex {
    pub color: Color,
    pub neighbors: Vec<(usize, i64)>,
}

/// Complex described by a finite neighbor table repeated along `ℤ`.
///
/// Vertex `(i, n)` is type `i` in cell `n`. With all offsets zero the table
/// is an ordinary finite complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTable {
    q: usize,
    vertices: Vec<TableVertex>,
}

impl PeriodicTable {
    pub fn new(q: usize, vertices: Vec<TableVertex>) -> Self {
        PeriodicTable { q, vertices }
    }

    pub fn vertices(&self) -> &[TableVertex] {
        &self.vertices
    }

    /// Inconsistencies of the table itself; the rule is only usable when
    /// this is empty.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.q < 2 {
            out.push(format!("q = {} < 2", self.q));
        }
        if self.vertices.is_empty() {
            out.push("table has no vertices".into());
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.neighbors.len() != self.q {
                out.push(format!(
                    "vertex {i}: degree ≠ q ({} slots, q {})",
                    v.neighbors.len(),
                    self.q
                ));
                continue;
            }
            for (s, &(t, off)) in v.neighbors.iter().enumerate() {
                let Some(target) = self.vertices.get(t) else {
                    out.push(format!("vertex {i} slot {s}: unknown vertex {t}"));
                    continue;
                };
                if target.neighbors.get(s) != Some(&(i, -off)) {
                    out.push(format!(
                        "vertex {i} slot {s}: vertex {t} does not lead back at slot {s}"
                    ));
                }
                if target.color == v.color {
                    out.push(format!(
                        "vertex {i} slot {s}: edge joins two {} vertices",
                        v.color
                    ));
                }
            }
        }
        out
    }

    pub fn is_periodic(&self) -> bool {
        self.vertices
            .iter()
            .any(|v| v.neighbors.iter().any(|&(_, off)| off != 0))
    }

    /// The finite complex of a table without offsets.
    pub fn to_line_complex(&self) -> Option<LineComplex> {
        if self.is_periodic() {
            return None;
        }
        let colors = self.vertices.iter().map(|v| v.color).collect();
        let rotation = self
            .vertices
            .iter()
            .map(|v| {
                v.neighbors
                    .iter()
                    .enumerate()
                    .map(|(s, &(t, _))| Dart::new(VertexId(t), s))
                    .collect()
            })
            .collect();
        Some(LineComplex::new(self.q, colors, rotation))
    }

    /// Table of a finite complex. Edge-ends arriving at another slot are
    /// kept as their target vertex; such complexes fail validation anyway.
    pub fn from_line_complex(c: &LineComplex) -> Self {
        let vertices = c
            .vertices()
            .map(|v| TableVertex {
                color: c.color_of(v),
                neighbors: c.rotation(v).iter().map(|d| (d.vertex.0, 0)).collect(),
            })
            .collect();
        PeriodicTable::new(c.q(), vertices)
    }
}

impl LocalRule for PeriodicTable {
    type Vertex = (usize, i64);

    fn q(&self) -> usize {
        self.q
    }

    fn base(&self) -> (usize, i64) {
        (0, 0)
    }

    fn color(&self, v: &(usize, i64)) -> Color {
        self.vertices[v.0].color
    }

    fn neighbor(&self, v: &(usize, i64), slot: usize) -> (usize, i64) {
        let (t, off) = self.vertices[v.0].neighbors[slot];
        (t, v.1 + off)
    }

    fn is_finite(&self) -> bool {
        !self.is_periodic()
    }
}
