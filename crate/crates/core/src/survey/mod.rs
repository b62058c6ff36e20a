//! Exhaustive censuses and statement verifiers.
//!
//! [`census`] classifies the sign of `theta = ABC - ABS` over every free tree
//! of an order and ranks near-ties; [`verify`] checks the sign statements
//! about graphs without pendent vertices, degree-2 subdivision, line graphs
//! and the pendent-count theorems over whole graph families.

pub mod census;
pub mod verify;

use serde::Serializer;
use thiserror::Error;

use crate::indices::IndexError;

pub use census::{
    classify_trees, classify_trees_with, find_near_ties, near_zero_candidates, ratio_table, smallest_negative_tree,
    CensusOptions, ClassificationRecord, RatioRow, SmallestNegative, TieRecord, ZeroCandidate, DEFAULT_WITNESS_CAP,
};
pub use verify::{
    check_thm2_hypothesis, check_thm3_hypothesis, verify_prop1, verify_prop2, verify_thm1, verify_thm2, verify_thm3,
    Failure, Statement, VerificationReport,
};

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("tree censuses start at order 3, got {0}")]
    OrderTooSmall(usize),
    #[error("tree orders above {max} are not supported, got {0}", max = crate::treegen::MAX_TREE_ORDER)]
    OrderTooLarge(usize),
    #[error("empty order range {0}..={1}")]
    EmptyRange(usize, usize),
    #[error("top_k must be at least 1")]
    ZeroTopK,
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// Serialises a float as its shortest round-trip decimal string.
pub(crate) fn f64_roundtrip<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:?}"))
}

pub(crate) fn opt_f64_roundtrip<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => f64_roundtrip(x, s),
        None => s.serialize_none(),
    }
}
