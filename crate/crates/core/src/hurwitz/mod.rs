//! Finite line complexes from permutation monodromy.
//!
//! A covering with `n` sheets branched over `a_1, ..., a_q` is described by
//! the permutations `σ_1, ..., σ_q` of the sheets obtained by going once
//! around each branch value. Sheets are labelled `1..n` in input and output
//! and `0..n` internally.

mod monodromy;
mod perm;

pub use monodromy::{
    build_from_monodromy, complex_summary, covering_summary, random_datum, random_planar_datum,
    CoveringSummary, MeanIdentity, MonodromyDatum,
};
pub use perm::Permutation;
