use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::format::KgRecords;
use super::mapping::{PredicateMapping, TimeRole};
use super::{SourceDescriptor, SourceKind};
use crate::kg::time::{Bound, TimeInterval, TimePoint};
use crate::kg::{Iri, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelationCategory {
    /// Carries a qualifier validity time.
    Temporal = 1,
    /// Involves an event or an entity with known existence time.
    Indirect = 2,
    /// A mapped event, sub-event, sequence or place-hierarchy predicate.
    Structural = 3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRelation {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
    pub qualifier_time: TimeInterval,
    pub graph: Iri,
    pub category: RelationCategory,
}

/// Begin and end values a source states for one resource.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StatedTimes {
    pub starts: BTreeSet<TimePoint>,
    pub ends: BTreeSet<TimePoint>,
}

/// Existence/happening times stated through mapped time predicates.
pub fn extract_entity_times(kg: &KgRecords, kind: SourceKind, mapping: &PredicateMapping) -> BTreeMap<Iri, StatedTimes> {
    let mut out: BTreeMap<Iri, StatedTimes> = BTreeMap::new();
    for t in &kg.triples {
        for role in mapping.time_roles(kind, &t.predicate) {
            let entry = out.entry(t.subject.clone()).or_default();
            match role {
                TimeRole::Begin => entry.starts.extend(t.object.as_time_point(Bound::Start)),
                TimeRole::End => entry.ends.extend(t.object.as_time_point(Bound::End)),
            }
        }
    }
    out.retain(|_, v| !v.starts.is_empty() || !v.ends.is_empty());
    out
}

/// Classifies every non-time triple of a knowledge-graph source into one of
/// the three relation categories, dropping the rest. `events` and `timed`
/// are in the source's own identifier space.
pub fn extract_relations(
    kg: &KgRecords,
    descriptor: &SourceDescriptor,
    mapping: &PredicateMapping,
    events: &BTreeSet<Iri>,
    timed: &BTreeSet<Iri>,
) -> Vec<RawRelation> {
    let kind = descriptor.kind;
    let mut out = Vec::new();
    for t in &kg.triples {
        if !mapping.time_roles(kind, &t.predicate).is_empty() {
            continue;
        }
        let object_iri = t.object.as_iri();
        let both_events = events.contains(&t.subject) && object_iri.is_some_and(|o| events.contains(o));
        let relation = |subject: Iri, predicate: Iri, object: Term, time: TimeInterval, category| RawRelation {
            subject,
            predicate,
            object,
            qualifier_time: time,
            graph: descriptor.graph.clone(),
            category,
        };
        if let (Some(o), Some(row)) = (object_iri, mapping.relation_row(kind, &t.predicate, both_events)) {
            let (s, o) = if row.inverse { (o.clone(), t.subject.clone()) } else { (t.subject.clone(), o.clone()) };
            out.push(relation(s, row.canonical.clone(), Term::Iri(o), TimeInterval::default(), RelationCategory::Structural));
        } else if kind.has_qualifier_times() && !t.qualifier.is_empty() {
            out.push(relation(t.subject.clone(), t.predicate.clone(), t.object.clone(), t.qualifier, RelationCategory::Temporal));
        } else if [Some(&t.subject), object_iri].into_iter().flatten().any(|e| events.contains(e) || timed.contains(e)) {
            out.push(relation(
                t.subject.clone(),
                t.predicate.clone(),
                t.object.clone(),
                TimeInterval::default(),
                RelationCategory::Indirect,
            ));
        }
    }
    out
}
