use crate::complex::{Color, LocalRule};

/// Line complex of `exp`: branch values `0` and `∞`, both logarithmic.
///
/// Vertex `k` is the half plane `k`; even vertices are inner. Every face is
/// one of the two sides of the path, so every vertex has `V_P = 2`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpRule;

impl LocalRule for ExpRule {
    type Vertex = i64;

    fn q(&self) -> usize {
        2
    }

    fn base(&self) -> i64 {
        0
    }

    fn color(&self, v: &i64) -> Color {
        if v.rem_euclid(2) == 0 {
            Color::Inner
        } else {
            Color::Outer
        }
    }

    fn neighbor(&self, v: &i64, slot: usize) -> i64 {
        let forward = (slot == 0) == (self.color(v) == Color::Inner);
        if forward {
            v + 1
        } else {
            v - 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{explore, face_of, step};

    #[test]
    fn symmetric_and_alternating() {
        for v in -5..5 {
            for s in 0..2 {
                step(&ExpRule, &v, s).unwrap();
            }
        }
    }

    #[test]
    fn faces_never_close() {
        for v in -3..3 {
            for s in 0..2 {
                let f = face_of(&ExpRule, &v, s, 10).unwrap();
                assert!(f.order.is_truncated());
            }
        }
    }

    #[test]
    fn balls_are_intervals() {
        let ball = explore(&ExpRule, &0, 4).unwrap();
        let mut v = ball.vertices.clone();
        v.sort();
        assert_eq!(v, (-4..=4).collect::<Vec<_>>());
        assert_eq!(ball.vertices[..3], [0, 1, -1]);
    }
}
