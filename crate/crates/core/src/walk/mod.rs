//! Random-walk and electrical-network oracle on the 1-skeleton.
//!
//! A parabolic surface is one on which Brownian motion is recurrent, and
//! recurrence is equivalent to infinite effective resistance to infinity.
//! This module measures both on the combinatorial 1-skeleton of a line
//! complex. The skeleton is only a proxy for the surface, so verdicts
//! derived here are labelled as such.

mod network;
mod random;
mod resistance;

pub use network::Network;
pub use random::{simulate_walk, WalkEstimate};
pub use resistance::{
    effective_resistance, effective_resistance_tree, oracle_verdict, resistance_depths, Method,
    ResistanceCurve, SOLVER_TOLERANCE,
};
