//! Exact combinatorics for generalised Ważewski dendrites D_S.

pub mod checks;
pub mod dendrite_model;
pub mod error;
pub mod homogeneity;
pub mod labelled_trees;
pub mod reconstruct;
pub mod semilinear;

pub use error::{Error, Result};
