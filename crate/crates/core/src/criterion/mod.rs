//! Type criteria: Speiser-tree conversion, Teichmüller's conditions and
//! series criterion, the regular trichotomy, the evaluation of Nevanlinna's
//! conjecture, and a family of surfaces with mean ramification 2 that are
//! nevertheless hyperbolic.

mod conditions;
mod family;
mod profile;
mod speiser;
mod verdict;

pub use conditions::{check_conditions, ConditionsReport, Witness};
pub use family::{certify_family, counterexample_family, FamilyCertificate, PaddingSchedule};
pub use profile::{chain_profile, chain_profile_counted, ChainProfile};
pub use speiser::{
    follow_chain, is_branch, simple_neighbors, to_speiser_tree, SpeiserTree, WeightedEdge,
};
pub use verdict::{
    classify_finite, classify_regular, independent_verdict, nevanlinna_conjecture_eval,
    teichmueller_verdict, zeta, Basis, ConjectureAssessment, Outcome, TypeClass, TypeVerdict,
    ZETA_2,
};
