//! Per-source fixture parsing, event identification, date extraction from
//! event lists, predicate mapping and raw relation extraction.

pub mod config;
pub mod dates;
pub mod events;
pub mod format;
pub mod mapping;
pub mod relations;

use std::fmt;
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kg::{Iri, KgError};

pub use config::{IdentificationConfig, LanguageConfig};
pub use dates::{extract_date, parse_event_list_page, Scope, TextEvent};
pub use events::{identify_events, Identification};
pub use format::{
    load_source, parse_event_lists, parse_kg_source, parse_wiki_corpus, EventListLine, EventListPage, KgRecords,
    Link, Sentence, SourceRecords, TripleRecord, WikiCorpus, WikiPage,
};
pub use mapping::{map_predicate, PredicateMapping, TimeRole};
pub use relations::{extract_entity_times, extract_relations, RawRelation, RelationCategory, StatedTimes};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: line {line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("{path}: line {line}: unknown record tag {tag:?}")]
    Schema { path: String, line: usize, tag: String },
    #[error("subclass cycle among {0:?}")]
    Cycle(Vec<Iri>),
    #[error("no temporal scope pattern matches page title {0:?}")]
    Scope(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Kg(#[from] KgError),
}

/// Kind of reference source; selects the fixture adapter and ingestion rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    KgWikidata,
    KgDbpedia,
    KgYago,
    WikiCorpus,
    WikiEventLists,
    Wcep,
}

impl SourceKind {
    /// Position in the default trust order (1 = most trusted).
    pub fn default_trust_rank(self) -> u32 {
        match self {
            SourceKind::KgWikidata => 1,
            SourceKind::KgDbpedia => 2,
            SourceKind::WikiCorpus | SourceKind::WikiEventLists => 3,
            SourceKind::Wcep => 4,
            SourceKind::KgYago => 5,
        }
    }

    pub fn is_kg(self) -> bool {
        matches!(self, SourceKind::KgWikidata | SourceKind::KgDbpedia | SourceKind::KgYago)
    }

    /// Kinds whose triples carry qualifier (validity) times.
    pub fn has_qualifier_times(self) -> bool {
        matches!(self, SourceKind::KgWikidata | SourceKind::KgYago)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::KgWikidata => "kg_wikidata",
            SourceKind::KgDbpedia => "kg_dbpedia",
            SourceKind::KgYago => "kg_yago",
            SourceKind::WikiCorpus => "wiki_corpus",
            SourceKind::WikiEventLists => "wiki_event_lists",
            SourceKind::Wcep => "wcep",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceDescriptor {
    pub graph: Iri,
    pub kind: SourceKind,
    pub language: Option<String>,
    pub trust_rank: u32,
    pub created: Option<NaiveDate>,
}

impl SourceDescriptor {
    /// A descriptor with the default trust rank for its kind.
    pub fn new(graph: Iri, kind: SourceKind, language: Option<&str>) -> Self {
        SourceDescriptor {
            graph,
            kind,
            language: language.map(str::to_string),
            trust_rank: kind.default_trust_rank(),
            created: None,
        }
    }

    /// Language used for labels and event-list parsing; English by default.
    pub fn language_or_default(&self) -> &str {
        self.language.as_deref().unwrap_or("en")
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, IngestError> {
    std::fs::read_to_string(path).map_err(|source| IngestError::Io { path: path.display().to_string(), source })
}
