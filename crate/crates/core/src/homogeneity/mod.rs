//! Orbits and automorphisms of the limit. Two tuples lie in one orbit exactly
//! when their types agree; automorphisms are partial isomorphisms extended one
//! point at a time, growing the model whenever the image must be new.

mod partial_iso;
mod stabilizer;
mod transitivity;

pub use partial_iso::{build_automorphism, orbit_equal, LazyAutomorphism, PartialIso};
pub use stabilizer::{stabilizer_order, BranchClass, FactoredCount, StabilizerDecomposition};
pub use transitivity::{
    double_transitivity_check, weak_pair_type, weak_two_transitivity_check, weak_two_transitivity_pairs, CheckReport,
    WeakPairOutcome, CHECK_MODEL_BUDGET,
};
