//! Vertex ramification and polygon excess.
//!
//! A face of order `m` distributes `2m - 2` (twice its branch order) evenly
//! over its `2m` corners, so each corner receives `1 - 1/m`; an infinite
//! face gives `1`. Dually, the polygon of the curve's lift around a vertex
//! has angle `π/m` at each corner and its excess is `Σ 1/m - q + 2`. The two
//! always add up to 2.

use super::{trace_faces, FaceOrder, LineComplex};
use crate::{Rational, Result, Scalar};

/// `V_P = Σ (1 - 1/m)` over the faces incident to a vertex.
pub fn vertex_ramification<T: Scalar>(faces: &[FaceOrder]) -> T {
    faces.iter().fold(T::zero(), |acc, f| {
        acc + match f.m() {
            Some(m) => T::one() - T::recip_usize(m),
            None => T::one(),
        }
    })
}

/// `E_P = Σ 1/m - q + 2`; infinite faces contribute no angle.
pub fn polygon_excess<T: Scalar>(faces: &[FaceOrder], q: usize) -> T {
    debug_assert_eq!(faces.len(), q, "one angle per side");
    let angles = faces.iter().fold(T::zero(), |acc, f| match f.m() {
        Some(m) => acc + T::recip_usize(m),
        None => acc,
    });
    angles + T::from_usize(2) - T::from_usize(q)
}

/// Whether the vertex touches at least two non-bigon faces, the situation
/// of every vertex of an infinite simply connected covering.
pub fn in_transcendental_class(faces: &[FaceOrder]) -> bool {
    faces.iter().filter(|f| !f.is_bigon()).count() >= 2
}

/// Orders of the faces at every slot of every vertex of a finite complex,
/// indexed `[vertex][slot]`.
pub fn vertex_face_orders(c: &LineComplex) -> Result<Vec<Vec<FaceOrder>>> {
    let mut out: Vec<Vec<FaceOrder>> = c
        .vertices()
        .map(|v| vec![FaceOrder::Finite(0); c.rotation(v).len()])
        .collect();
    for face in trace_faces(c)? {
        for d in &face.boundary {
            out[d.vertex.0][d.slot] = face.order;
        }
    }
    Ok(out)
}

/// `V_P` for every vertex of a finite complex.
pub fn vertex_ramifications(c: &LineComplex) -> Result<Vec<Rational>> {
    Ok(vertex_face_orders(c)?
        .iter()
        .map(|f| vertex_ramification(f))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Rational, SmallRational};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    const INF: FaceOrder = FaceOrder::Infinite { truncated: true };

    fn r(p: i64, q: i64) -> SmallRational {
        SmallRational::new(p, q)
    }

    #[test]
    fn logarithmic_vertex() {
        let f = [INF; 3];
        assert_eq!(vertex_ramification::<SmallRational>(&f), r(3, 1));
        assert_eq!(polygon_excess::<SmallRational>(&f, 3), r(-1, 1));
    }

    #[test]
    fn unbranched_vertex() {
        let f = [FaceOrder::Finite(1); 4];
        assert!(vertex_ramification::<SmallRational>(&f).is_zero());
        assert_eq!(polygon_excess::<SmallRational>(&f, 4), r(2, 1));
    }

    #[test]
    fn mixed_vertex() {
        let f = [
            FaceOrder::Finite(2),
            FaceOrder::Finite(2),
            FaceOrder::Finite(1),
        ];
        assert!(vertex_ramification::<SmallRational>(&f).is_one());
    }

    #[test]
    fn square_tiling_is_flat() {
        let f = [FaceOrder::Finite(2); 4];
        assert!(polygon_excess::<SmallRational>(&f, 4).is_zero());
        assert_eq!(vertex_ramification::<SmallRational>(&f), r(2, 1));
    }

    #[test]
    fn float_route_agrees() {
        let f = [FaceOrder::Finite(3), INF, FaceOrder::Finite(5)];
        let v: f64 = vertex_ramification(&f);
        assert!((v - (2.0 / 3.0 + 1.0 + 0.8)).abs() < 1e-15);
    }

    fn order() -> impl Strategy<Value = FaceOrder> {
        prop_oneof![(1usize..50).prop_map(FaceOrder::Finite), Just(INF),]
    }

    proptest! {
        #[test]
        fn ramification_plus_excess_is_two(faces in prop::collection::vec(order(), 2..9)) {
            let q = faces.len();
            let v: Rational = vertex_ramification(&faces);
            let e: Rational = polygon_excess(&faces, q);
            prop_assert_eq!(v.clone() + e, Rational::from_integer(2.into()));
            prop_assert!(v >= Rational::zero());
            prop_assert!(v <= Rational::from_integer(q.into()));
            if in_transcendental_class(&faces) && faces.iter().all(|f| f.is_bigon() || f.is_infinite()) {
                prop_assert!(v >= Rational::from_integer(2.into()));
            }
        }
    }
}
