//! The two canned provenance queries: locations of an event per graph, and
//! the events most often co-mentioned with an entity.

use std::collections::BTreeMap;

use chrono::NaiveDate;

use super::model::RelationNode;
use super::store::{QuadStore, Term};
use super::time::Bound;
use super::vocab::{self, OWL_SAME_AS, RDF_SUBJECT, RDF_TYPE, SEM_EVENT, SEM_HAS_BEGIN, SEM_HAS_PLACE};
use super::{Iri, KgError};

/// Resolves a source identifier (or canonical id) to the canonical resource.
pub fn resolve(store: &QuadStore, iri: &Iri) -> Result<Iri, KgError> {
    if let Some(q) = store.referencing(iri).find(|q| q.predicate == *OWL_SAME_AS) {
        return Ok(q.subject.clone());
    }
    if store.about(iri).any(|q| q.predicate == *RDF_TYPE) {
        return Ok(iri.clone());
    }
    Err(KgError::UnknownEntity(iri.clone()))
}

/// The English DBpedia identifier of a canonical resource, or the resource
/// itself when it has none.
pub fn display_iri(store: &QuadStore, canonical: &Iri) -> Iri {
    let dbpedia_en = vocab::graph_iri("dbpedia_en").expect("static graph name");
    let found = store
        .objects(canonical, &OWL_SAME_AS, Some(&dbpedia_en))
        .find_map(|t| t.as_iri().cloned());
    found.unwrap_or_else(|| canonical.clone())
}

/// `(location, graph)` rows, ordered by graph then location.
pub fn canned_query_locations(store: &QuadStore, event: &Iri) -> Result<Vec<(Iri, Iri)>, KgError> {
    let canonical = resolve(store, event)?;
    let mut rows: Vec<(Iri, Iri)> = store
        .about(&canonical)
        .filter(|q| q.predicate == *SEM_HAS_PLACE)
        .filter_map(|q| q.object.as_iri().map(|loc| (display_iri(store, loc), q.graph.clone())))
        .collect();
    rows.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));
    rows.dedup();
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopEvent {
    pub event: Iri,
    pub count: u64,
    pub start: Option<NaiveDate>,
}

/// Events connected to `entity` as relation objects, by descending mention
/// count in `mentions_graph` and then by IRI.
pub fn canned_query_top_events(store: &QuadStore, entity: &Iri, mentions_graph: &Iri) -> Result<Vec<TopEvent>, KgError> {
    let canonical = resolve(store, entity)?;
    let mut counts: BTreeMap<Iri, u64> = BTreeMap::new();
    let relation_ids: Vec<Iri> = store
        .referencing(&canonical)
        .filter(|q| q.predicate == *RDF_SUBJECT)
        .map(|q| q.subject.clone())
        .collect();
    for rel in relation_ids {
        let mut graphs = store.about(&rel).filter(|q| q.predicate == *RDF_SUBJECT).map(|q| q.graph.clone());
        let Some(graph) = graphs.next() else { continue };
        let Some(node) = RelationNode::read(store, &rel, &graph) else { continue };
        let Term::Iri(object) = &node.object else { continue };
        let is_event = store
            .objects(object, &RDF_TYPE, None)
            .any(|t| t.as_iri() == Some(&*SEM_EVENT));
        if !is_event {
            continue;
        }
        let n = node.mentions.get(mentions_graph).copied().unwrap_or(0);
        let slot = counts.entry(object.clone()).or_insert(0);
        *slot = (*slot).max(n);
    }
    let mut rows: Vec<TopEvent> = counts
        .into_iter()
        .map(|(ev, count)| TopEvent {
            event: display_iri(store, &ev),
            count,
            start: store
                .objects(&ev, &SEM_HAS_BEGIN, Some(&vocab::FUSED_GRAPH))
                .find_map(|t| t.as_time_point(Bound::Start))
                .map(|p| p.date),
        })
        .collect();
    rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.event.cmp(&b.event)));
    Ok(rows)
}
