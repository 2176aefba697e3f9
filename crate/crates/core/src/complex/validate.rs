use std::collections::VecDeque;
use std::fmt;

use super::{Dart, EdgeEnd, LineComplex, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    QTooSmall {
        q: usize,
    },
    Empty,
    Degree {
        vertex: VertexId,
        degree: usize,
        q: usize,
    },
    DanglingEnd {
        end: EdgeEnd,
    },
    NotInvolution {
        end: EdgeEnd,
        far: EdgeEnd,
    },
    SlotMismatch {
        end: EdgeEnd,
        far: EdgeEnd,
    },
    SameColor {
        end: EdgeEnd,
        far: EdgeEnd,
    },
    Disconnected {
        unreachable: VertexId,
        reached: usize,
        total: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::QTooSmall { q } => write!(f, "q = {q} < 2"),
            Violation::Empty => write!(f, "complex has no vertices"),
            Violation::Degree { vertex, degree, q } => {
                write!(f, "degree ≠ q at {vertex}: degree {degree}, q {q}")
            }
            Violation::DanglingEnd { end } => {
                write!(f, "edge-end {end} points outside the complex")
            }
            Violation::NotInvolution { end, far } => {
                write!(f, "edge-end {end} leads to {far}, which does not lead back")
            }
            Violation::SlotMismatch { end, far } => {
                write!(f, "edge at {end} arrives at a different slot {far}")
            }
            Violation::SameColor { end, far } => {
                write!(
                    f,
                    "edge {end} -- {far} joins two vertices of the same color"
                )
            }
            Violation::Disconnected {
                unreachable,
                reached,
                total,
            } => write!(
                f,
                "not connected: {unreachable} unreachable from v0 ({reached} of {total} reached)"
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks bipartiteness, `q`-regularity, rotation-system consistency and
/// connectivity. Violations are collected, never raised.
pub fn validate(c: &LineComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let q = c.q();
    if q < 2 {
        violations.push(Violation::QTooSmall { q });
    }
    if c.vertex_count() == 0 {
        violations.push(Violation::Empty);
        return ValidationReport { violations };
    }

    for v in c.vertices() {
        let rot = c.rotation(v);
        if rot.len() != q {
            violations.push(Violation::Degree {
                vertex: v,
                degree: rot.len(),
                q,
            });
        }
        for (s, &far) in rot.iter().enumerate() {
            let end = Dart::new(v, s);
            let Some(back) = c.partner(far) else {
                violations.push(Violation::DanglingEnd { end });
                continue;
            };
            if back != end {
                violations.push(Violation::NotInvolution { end, far });
                continue;
            }
            // report each edge once
            if end > far {
                continue;
            }
            if far.slot != s {
                violations.push(Violation::SlotMismatch { end, far });
            }
            if c.color_of(v) == c.color_of(far.vertex) {
                violations.push(Violation::SameColor { end, far });
            }
        }
    }

    let n = c.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for far in c.rotation(VertexId(v)) {
            let w = far.vertex.0;
            if w < n && !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    if let Some(first) = seen.iter().position(|&s| !s) {
        violations.push(Violation::Disconnected {
            unreachable: VertexId(first),
            reached,
            total: n,
        });
    }

    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Color;

    #[test]
    fn bigon_complex_is_valid() {
        for q in 2..6 {
            assert!(validate(&LineComplex::bigon_complex(q)).is_valid());
        }
    }

    #[test]
    fn missing_edge_is_a_degree_violation() {
        let c = LineComplex::new(
            2,
            vec![Color::Inner, Color::Outer],
            vec![
                vec![Dart::new(VertexId(1), 0)],
                vec![Dart::new(VertexId(0), 0), Dart::new(VertexId(0), 1)],
            ],
        );
        let report = validate(&c);
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::Degree {
                vertex: VertexId(0),
                degree: 1,
                q: 2
            }
        )));
        assert!(report.violations[0].to_string().contains("degree ≠ q"));
    }

    #[test]
    fn same_color_and_slot_mismatch_are_reported() {
        let c = LineComplex::new(
            2,
            vec![Color::Inner, Color::Inner],
            vec![
                vec![Dart::new(VertexId(1), 1), Dart::new(VertexId(1), 0)],
                vec![Dart::new(VertexId(0), 1), Dart::new(VertexId(0), 0)],
            ],
        );
        let report = validate(&c);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::SameColor { .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::SlotMismatch { .. })));
    }

    #[test]
    fn disconnected_union_is_reported() {
        let colors = vec![Color::Inner, Color::Outer, Color::Inner, Color::Outer];
        let edges = [(0, 1, 0), (0, 1, 1), (2, 3, 0), (2, 3, 1)];
        let report = validate(&LineComplex::from_edges(2, colors, &edges));
        assert_eq!(
            report.violations,
            vec![Violation::Disconnected {
                unreachable: VertexId(2),
                reached: 2,
                total: 4
            }]
        );
    }

    #[test]
    fn dangling_end_is_reported() {
        let c = LineComplex::new(
            2,
            vec![Color::Inner, Color::Outer],
            vec![
                vec![Dart::new(VertexId(1), 0), Dart::new(VertexId(7), 1)],
                vec![Dart::new(VertexId(0), 0), Dart::new(VertexId(0), 1)],
            ],
        );
        let report = validate(&c);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DanglingEnd { .. })));
    }
}
