//! Scalar abstraction shared by the exact and floating routes.
//!
//! Curvature quantities only need field operations and small integer
//! constants, so they are written once over [`Scalar`] and instantiated with
//! [`crate::Rational`] for exact identities or `f64` for quick estimates.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Scalar: Num + Clone + PartialOrd + Debug {
    fn from_usize(n: usize) -> Self;

    fn recip_usize(n: usize) -> Self {
        Self::one() / Self::from_usize(n)
    }

    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for f64 {
    fn from_usize(n: usize) -> Self {
        n as f64
    }
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_usize(n: usize) -> Self {
        n as f32
    }
    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }
}

impl Scalar for num_rational::Ratio<i64> {
    fn from_usize(n: usize) -> Self {
        Self::from_integer(n as i64)
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for BigRational {
    fn from_usize(n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact rational from a float literal; used for tolerances such as `1e-3`.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_f64(x).expect("finite tolerance")
}

/// `p / q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
