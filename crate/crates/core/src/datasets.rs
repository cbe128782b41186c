//! Bundled datasets, embedded at compile time so analyses run offline.
//!
//! * `fruits-vegetables`: choice frequencies of 24 exemplars for *Fruits*,
//!   *Vegetables* and *Fruits or Vegetables*, rounded to 4 decimals, plus the
//!   published sign choice for each `lambda_k`.
//! * `animal-acts`: web page counts for the subject/verb phrases of *The Animal
//!   Acts* (horse, bear, tiger, cat × growls, whinnies, snorts, meows), and the
//!   single-word page counts used by the product model. Counts were collected
//!   once and are frozen here.

use crate::bell::{CoincidenceSet, MarginalCounts};
use crate::corpus::ConceptPairGrid;
use crate::error::Result;
use crate::fit::SignAssignment;
use crate::formats;
use crate::model::{validate_dataset, DisjunctionDataset, DEFAULT_SUM_TOLERANCE};

pub const FRUITS_VEGETABLES_CSV: &str = include_str!("../data/fruits_vegetables.csv");
pub const FRUITS_VEGETABLES_SIGNS_CSV: &str = include_str!("../data/fruits_vegetables_signs.csv");
pub const ANIMAL_ACTS_COUNTS_JSON: &str = include_str!("../data/animal_acts_counts.json");
pub const ANIMAL_ACTS_MARGINALS_JSON: &str = include_str!("../data/animal_acts_marginals.json");
pub const ANIMAL_ACTS_GRID_JSON: &str = include_str!("../data/animal_acts_grid.json");

pub fn fruits_vegetables() -> DisjunctionDataset {
    let raw = formats::parse_dataset_csv(FRUITS_VEGETABLES_CSV).expect("bundled csv parses");
    validate_dataset(raw, DEFAULT_SUM_TOLERANCE).expect("bundled dataset is valid")
}

pub fn fruits_vegetables_signs(ds: &DisjunctionDataset) -> Result<SignAssignment> {
    formats::parse_signs_csv(FRUITS_VEGETABLES_SIGNS_CSV, ds)
}

pub fn animal_acts_counts() -> CoincidenceSet {
    formats::parse_counts_json(ANIMAL_ACTS_COUNTS_JSON).expect("bundled counts parse")
}

pub fn animal_acts_marginals() -> MarginalCounts {
    formats::parse_marginals_json(ANIMAL_ACTS_MARGINALS_JSON).expect("bundled marginals parse")
}

pub fn animal_acts_grid() -> ConceptPairGrid {
    ConceptPairGrid::from_json(ANIMAL_ACTS_GRID_JSON).expect("bundled grid parses")
}
