//! Biographical timelines: candidate relations, relevance features, the
//! distant-supervision benchmark, a linear classifier and the TM baseline.

mod benchmark;
mod candidates;
mod features;
mod generate;
mod render;
mod svm;

pub use benchmark::{
    build_benchmark, parse_abstract_links, parse_bio_annotations, record_matches, split_entities, AbstractLinks,
    Benchmark, BenchmarkInput, BioAnnotation, BioRecord, BiographySource,
};
pub use candidates::{collect_candidates, CandidateEntry};
pub use features::{build_feature_space, extract_features, FeatureExtractor, FeatureSpace, FeatureVector, ALL_LANGUAGES};
pub use render::{render_html, render_tsv};
pub use svm::{predict, train, train_instances, training_instances, Normalization, RelevanceModel, TrainConfig, TrainOutcome};
pub use generate::{generate_timeline, tm_baseline, Timeline, TmConfig};

use thiserror::Error;

use crate::kg::{Iri, KgError};

#[derive(Debug, Error)]
pub enum TimelineError {
    #[error("unknown entity {0}")]
    UnknownEntity(Iri),
    #[error("unknown person {0}")]
    UnknownPerson(Iri),
    #[error("training set is empty")]
    EmptyTraining,
    #[error("training data has only {0} instances")]
    DegenerateTraining(&'static str),
    #[error("feature vector has {got} values, model expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{path}: line {line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error(transparent)]
    Kg(#[from] KgError),
}
