use std::collections::BTreeSet;

use super::{IngestError, SourceKind};
use crate::kg::vocab::{expand, SEM_HAS_BEGIN, SEM_HAS_END};
use crate::kg::Iri;

const DEFAULT_MAPPING: &str = include_str!("../../data/predicate_mapping.tsv");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingRow {
    pub canonical: Iri,
    pub kind: SourceKind,
    pub source: Iri,
    /// Row applies only when both endpoints are events.
    pub events_only: bool,
    /// The canonical statement runs from the source object to the source subject.
    pub inverse: bool,
}

/// Which interval bound a time predicate states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TimeRole {
    Begin,
    End,
}

/// Source predicate to canonical predicate table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateMapping {
    pub rows: Vec<MappingRow>,
}

impl Default for PredicateMapping {
    fn default() -> Self {
        Self::parse(DEFAULT_MAPPING).expect("bundled predicate mapping is valid")
    }
}

impl PredicateMapping {
    /// Parses the tab-separated table
    /// `canonical  source  source_predicate  guard  inverse`.
    pub fn parse(text: &str) -> Result<Self, IngestError> {
        let bad = |line: usize, message: String| IngestError::Parse { path: "predicate mapping".into(), line, message };
        let mut rows = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').map(str::trim).collect();
            if f.len() != 5 {
                return Err(bad(i + 1, format!("expected 5 fields, got {}", f.len())));
            }
            let kind = match f[1] {
                "wikidata" => SourceKind::KgWikidata,
                "dbpedia" => SourceKind::KgDbpedia,
                "yago" => SourceKind::KgYago,
                other => return Err(bad(i + 1, format!("unknown source {other:?}"))),
            };
            let flag = |v: &str, yes: &str| -> Result<bool, IngestError> {
                match v {
                    "-" | "no" => Ok(false),
                    v if v == yes => Ok(true),
                    other => Err(bad(i + 1, format!("unexpected flag {other:?}"))),
                }
            };
            rows.push(MappingRow {
                canonical: expand(f[0]).map_err(|e| bad(i + 1, e.to_string()))?,
                kind,
                source: expand(f[2]).map_err(|e| bad(i + 1, e.to_string()))?,
                events_only: flag(f[3], "events")?,
                inverse: flag(f[4], "yes")?,
            });
        }
        let mapping = PredicateMapping { rows };
        mapping.validate()?;
        Ok(mapping)
    }

    /// Each (source, predicate) pair maps to one canonical predicate, except
    /// that a point-in-time predicate may state both interval bounds.
    fn validate(&self) -> Result<(), IngestError> {
        let mut seen: BTreeSet<(SourceKind, &Iri)> = BTreeSet::new();
        for row in self.rows.iter().filter(|r| Self::time_role_of(&r.canonical).is_none()) {
            if !seen.insert((row.kind, &row.source)) {
                return Err(IngestError::Config(format!("{} maps to several predicates for {}", row.source, row.kind)));
            }
        }
        for row in self.rows.iter().filter(|r| Self::time_role_of(&r.canonical).is_some()) {
            if seen.contains(&(row.kind, &row.source)) {
                return Err(IngestError::Config(format!("{} is both a time and a relation predicate", row.source)));
            }
        }
        Ok(())
    }

    fn time_role_of(canonical: &Iri) -> Option<TimeRole> {
        if *canonical == *SEM_HAS_BEGIN {
            Some(TimeRole::Begin)
        } else if *canonical == *SEM_HAS_END {
            Some(TimeRole::End)
        } else {
            None
        }
    }

    /// The relation row for a source predicate, if its guard holds.
    pub fn relation_row(&self, kind: SourceKind, predicate: &Iri, both_events: bool) -> Option<&MappingRow> {
        self.rows.iter().find(|r| {
            r.kind == kind
                && r.source == *predicate
                && Self::time_role_of(&r.canonical).is_none()
                && (!r.events_only || both_events)
        })
    }

    /// Interval bounds stated by a time predicate; empty for other predicates.
    pub fn time_roles(&self, kind: SourceKind, predicate: &Iri) -> Vec<TimeRole> {
        let mut roles: Vec<TimeRole> = self
            .rows
            .iter()
            .filter(|r| r.kind == kind && r.source == *predicate)
            .filter_map(|r| Self::time_role_of(&r.canonical))
            .collect();
        roles.sort();
        roles.dedup();
        roles
    }
}

/// Canonical predicate for `source_pred` given whether (subject, object) are
/// events. Time predicates map to their first listed bound.
pub fn map_predicate(
    kind: SourceKind,
    source_pred: &Iri,
    endpoints_are_events: (bool, bool),
    mapping: &PredicateMapping,
) -> Option<Iri> {
    let both = endpoints_are_events.0 && endpoints_are_events.1;
    mapping
        .rows
        .iter()
        .find(|r| r.kind == kind && r.source == *source_pred && (!r.events_only || both))
        .map(|r| r.canonical.clone())
}
