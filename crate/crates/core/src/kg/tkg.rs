use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::model::{RelationNode, TemporalEntity};
use super::store::{QuadStore, Term};
use super::time::TimeInterval;
use super::vocab::{RDF_TYPE, SEM_CORE, SEM_EVENT};
use super::{Iri, KgError};

/// Where a temporal relation's validity time came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProvenanceKind {
    Explicit,
    InducedFromEvent,
    InducedFromEntity,
}

impl ProvenanceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProvenanceKind::Explicit => "explicit",
            ProvenanceKind::InducedFromEvent => "induced_from_event",
            ProvenanceKind::InducedFromEntity => "induced_from_entity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemporalRelation {
    pub uri: Iri,
    pub time: TimeInterval,
    pub subject_entity: Iri,
    pub object_entity: Iri,
    pub role: Iri,
    pub provenance_kind: ProvenanceKind,
}

/// Directed multigraph of temporal entities and temporal relations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tkg {
    pub entities: BTreeMap<Iri, TemporalEntity>,
    pub relations: Vec<TemporalRelation>,
}

impl Tkg {
    pub fn entity(&self, iri: &Iri) -> Option<&TemporalEntity> {
        self.entities.get(iri)
    }

    pub fn is_event(&self, iri: &Iri) -> bool {
        self.entities.get(iri).is_some_and(|e| e.is_event)
    }

    /// Relations with `iri` at either end, in relation order.
    pub fn relations_of<'a>(&'a self, iri: &'a Iri) -> impl Iterator<Item = &'a TemporalRelation> + 'a {
        self.relations
            .iter()
            .filter(move |r| r.subject_entity == *iri || r.object_entity == *iri)
    }
}

fn typed_instances(store: &QuadStore, graph: &Iri) -> BTreeSet<Iri> {
    store
        .referencing(&SEM_CORE)
        .chain(store.referencing(&SEM_EVENT))
        .filter(|q| q.graph == *graph && q.predicate == *RDF_TYPE)
        .map(|q| q.subject.clone())
        .collect()
}

fn read_entities(store: &QuadStore, graph: &Iri) -> BTreeMap<Iri, TemporalEntity> {
    typed_instances(store, graph)
        .into_iter()
        .filter_map(|id| TemporalEntity::read(store, &id, graph).map(|e| (id, e)))
        .collect()
}

/// Materializes the temporal knowledge graph stated in `graph`.
pub fn to_tkg(store: &QuadStore, graph: &Iri) -> Result<Tkg, KgError> {
    if !store.has_graph(graph) {
        return Err(KgError::UnknownGraph(graph.clone()));
    }
    let entities = read_entities(store, graph);
    Ok(assemble(store, graph, entities))
}

/// Like [`to_tkg`], but entity times (and entities missing from `graph`) are
/// taken from `times_graph` where it knows them.
pub fn to_tkg_with_entity_times(store: &QuadStore, graph: &Iri, times_graph: &Iri) -> Result<Tkg, KgError> {
    for g in [graph, times_graph] {
        if !store.has_graph(g) {
            return Err(KgError::UnknownGraph(g.clone()));
        }
    }
    let mut entities = read_entities(store, graph);
    for (id, other) in read_entities(store, times_graph) {
        match entities.get_mut(&id) {
            Some(e) => {
                if !other.time.is_empty() {
                    e.time = other.time;
                }
                e.is_event |= other.is_event;
            }
            None => {
                entities.insert(id, other);
            }
        }
    }
    Ok(assemble(store, graph, entities))
}

fn assemble(store: &QuadStore, graph: &Iri, entities: BTreeMap<Iri, TemporalEntity>) -> Tkg {
    let mut relations = Vec::new();
    for node in RelationNode::read_all(store, graph) {
        let (Some(role), Term::Iri(object)) = (&node.role, &node.object) else {
            continue;
        };
        let Some(target) = entities.get(object) else {
            continue;
        };
        if !entities.contains_key(&node.subject) {
            continue;
        }
        let (time, provenance_kind) = if !node.time.is_empty() {
            (node.time, ProvenanceKind::Explicit)
        } else if !target.time.is_empty() {
            let kind = if target.is_event {
                ProvenanceKind::InducedFromEvent
            } else {
                ProvenanceKind::InducedFromEntity
            };
            (target.time, kind)
        } else {
            continue;
        };
        relations.push(TemporalRelation {
            uri: node.id.clone(),
            time,
            subject_entity: node.subject.clone(),
            object_entity: object.clone(),
            role: role.clone(),
            provenance_kind,
        });
    }
    relations.sort_by(|a, b| a.uri.cmp(&b.uri));
    Tkg { entities, relations }
}
