//! Reference families of infinite line complexes.
//!
//! - [`ExpRule`]: the exponential function's complex, a bi-infinite path
//!   over two logarithmic branch values.
//! - [`ChainTree`]: trees whose branch vertices are joined by unbranched
//!   chains with lengths given per generation; constant length 1 is the
//!   universal covering of the `q`-punctured sphere.
//! - [`PeriodicTable`]: finitely many vertex types repeated along a
//!   one-dimensional lattice; finite tables are ordinary complexes.

mod chain_tree;
mod exp;
mod table;

pub use chain_tree::{ChainSchedule, ChainTree, LengthEnvelope, TreeVertex};
pub use exp::ExpRule;
pub use table::{PeriodicTable, TableVertex};
