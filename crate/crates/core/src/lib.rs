//! Line complexes of simply connected branched coverings of the sphere.
//!
//! A line complex is the bipartite, `q`-regular planar graph obtained by
//! lifting the dual of a closed curve through the branch values
//! `a_1, ..., a_q`. This crate builds such complexes, either explicitly from
//! permutation monodromy data or lazily from a [`LocalRule`], traces their
//! faces, and computes the combinatorial quantities used to study the type
//! problem:
//!
//! - vertex ramification `V_P` and polygon excess `E_P` ([`curvature`]),
//! - mean ramification over wreathlike (breadth-first) exhaustions
//!   ([`exhaustion`]),
//! - Speiser-tree chain profiles and the `Σ ψ(k)/k²` hyperbolicity criterion
//!   ([`criterion`]),
//! - a random-walk / effective-resistance oracle on the 1-skeleton ([`walk`]),
//! - dilatation quotients and annulus moduli ([`dilatation`]).
//!
//! Exact quantities use arbitrary-precision rationals ([`Rational`]); the
//! numerical modules are generic over [`num_traits::Float`] with `f64`
//! aliases exported here.

pub mod complex;
pub mod criterion;
pub mod dilatation;
mod error;
pub mod exhaustion;
pub mod hurwitz;
pub mod rules;
pub mod scalar;
pub mod walk;

pub use complex::curvature;
pub use complex::{
    face_of, trace_faces, validate, Color, EdgeEnd, Face, FaceOrder, LineComplex, LocalRule,
    ValidationReport, VertexId, Violation,
};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Exact rational used for ramification, excess and series partial sums.
pub type Rational = num_rational::BigRational;
/// Machine-word rational, enough for single-vertex curvature.
pub type SmallRational = num_rational::Ratio<i64>;
/// Floating type used by the numerical modules.
pub type Real = f64;

pub type Jacobian = dilatation::JacobianSample<Real>;
pub type Annulus = dilatation::AnnulusSpec<Real>;
pub type Curve = walk::ResistanceCurve<Real>;
