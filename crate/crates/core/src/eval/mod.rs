//! Evaluation: classification metrics, correlation, per-source coverage and
//! summary statistics over a built store.

mod coverage;
mod metrics;
mod stats;

use thiserror::Error;

pub use coverage::{coverage, coverage_of, CoverageReport};
pub use metrics::{
    classification_metrics, feature_correlations, parse_votes, pearson, rpref, ClassScores, ClassificationReport,
    Correlation,
};
pub use stats::{store_stats, CoMention, GraphCompleteness, LinkedEvent, StoreStats};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("no input values")]
    Empty,
    #[error("need at least 2 points, got {0}")]
    TooShort(usize),
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error(transparent)]
    Kg(#[from] crate::kg::KgError),
}
