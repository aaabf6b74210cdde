//! Labelled-tree invariants of finite configurations: a finite tree whose
//! vertices carry their order in the dendrite, with an ordered list of marked
//! coordinates. Two tuples lie in the same orbit exactly when their invariants
//! are isomorphic, so canonization and enumeration here give the orbit census.

mod canon;
mod enumerate;
mod label;
mod tree;

pub(crate) use canon::encode_rooted;
pub use canon::{canonical_code, is_isomorphic, CanonicalCode};
pub use enumerate::{census_count, enumerate_type_codes, enumerate_types};
pub use label::{OrderLabel, Signature};
pub(crate) use tree::render_dot;
pub use tree::{validate, LabelledTree, TreeVertex, ValidationReport, Violation};
