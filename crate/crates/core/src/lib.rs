//! Quantum-like models of concept combination.
//!
//! * [`fit`]: complex Hilbert-space representation of a concept disjunction
//!   reproducing observed choice probabilities through interference.
//! * [`bell`]: CHSH statistic from coincidence counts, and the product model
//!   built from marginals.
//! * [`corpus`]: phrase document frequencies from local text corpora.
//! * [`slit`]: double-slit density profiles.
//! * [`model`]: probability columns, complex vectors, projectors.

pub mod bell;
pub mod corpus;
pub mod datasets;
pub mod error;
pub mod fit;
pub mod formats;
pub mod model;
pub mod slit;

pub use error::{Error, Result};
