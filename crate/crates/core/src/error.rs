use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("face tracing revisited edge-end ({vertex}, slot {slot}) inconsistently")]
    NonPlanarRotation { vertex: usize, slot: usize },

    #[error("rule inconsistent at {context}")]
    RuleInconsistent { context: String },

    #[error("monodromy does not act transitively on the sheets ({orbit} of {n} reached)")]
    NonTransitive { orbit: usize, n: usize },

    #[error("product of the monodromy permutations is not the identity")]
    ProductNotIdentity,

    #[error("invalid monodromy datum: {0}")]
    InvalidMonodromy(String),

    #[error("cycle notation: {message} at column {column}")]
    CycleSyntax { message: String, column: usize },

    #[error("unbranched chain longer than {bound} edges starting at {context}")]
    InfiniteChainDetected { bound: usize, context: String },

    #[error("vertex ramification values are not constant ({min} to {max})")]
    NotRegular { min: String, max: String },

    #[error("invalid padding schedule: {0}")]
    ScheduleInvalid(String),

    #[error("linear solver did not reach residual {tolerance:e} after {iterations} iterations")]
    SolverDiverged { iterations: usize, tolerance: f64 },

    #[error("degenerate jacobian (determinant {determinant}) at {location}")]
    DegenerateJacobian { determinant: f64, location: String },

    #[error("invalid annulus: radii must satisfy 0 < r1 < r2")]
    InvalidAnnulus,

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
