//! Vocabulary, identifiers, time intervals, the quad store, and the
//! temporal-knowledge-graph view over a named graph.

mod iri;
pub mod model;
pub mod nquads;
pub mod query;
pub mod store;
pub mod time;
pub mod tkg;
pub mod vocab;

pub use iri::Iri;
pub use model::{RelationNode, TemporalEntity};
pub use store::{GraphInfo, Literal, Quad, QuadPattern, QuadStore, Term};
pub use time::{make_interval, Bound, Precision, TimeInterval, TimePoint};
pub use tkg::{to_tkg, to_tkg_with_entity_times, ProvenanceKind, TemporalRelation, Tkg};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KgError {
    #[error("invalid IRI {value:?}: {reason}")]
    InvalidIri { value: String, reason: String },
    #[error("invalid date {0:?}")]
    InvalidDate(String),
    #[error("interval start {start} is after end {end}")]
    OrderViolation { start: TimePoint, end: TimePoint },
    #[error("unknown graph {0}")]
    UnknownGraph(Iri),
    #[error("unknown entity {0}")]
    UnknownEntity(Iri),
    #[error("N-Quads line {line}: {message}")]
    Parse { line: usize, message: String },
}
