//! Canonical identifiers across sources, text-event deduplication and
//! assembly of the per-source named graphs.

mod cluster;
mod dedup;

pub use cluster::{cluster_sameas, is_wikidata_id, Clustering, Conflict};
pub use dedup::{dedup_text_events, Attachment, Dedup, MergedTextEvent, SourcedTextEvent};

use std::collections::BTreeMap;

use crate::ingest::SourceDescriptor;
use crate::kg::vocab::FUSED_GRAPH;
use crate::kg::{Iri, QuadStore, RelationNode, TemporalEntity, Term};

/// Everything one source contributes, already in canonical identifiers.
#[derive(Clone, Debug)]
pub struct SourceGraph {
    pub descriptor: SourceDescriptor,
    pub entities: BTreeMap<Iri, TemporalEntity>,
    pub relations: Vec<RelationNode>,
    /// Direct statements such as places and sub-event links.
    pub statements: Vec<(Iri, Iri, Term)>,
}

impl SourceGraph {
    pub fn new(descriptor: SourceDescriptor) -> Self {
        SourceGraph { descriptor, entities: BTreeMap::new(), relations: Vec::new(), statements: Vec::new() }
    }

    /// The entity record for `id`, created on first use.
    pub fn entity(&mut self, id: &Iri, is_event: bool) -> &mut TemporalEntity {
        let e = self.entities.entry(id.clone()).or_insert_with(|| TemporalEntity::new(id.clone(), is_event));
        e.is_event |= is_event;
        e
    }
}

/// Writes one named graph per source plus the empty fused graph.
pub fn assemble_graphs(sources: &[SourceGraph]) -> QuadStore {
    let mut store = QuadStore::new();
    for s in sources {
        store.register_graph(s.descriptor.graph.clone(), s.descriptor.created);
    }
    store.register_graph(FUSED_GRAPH.clone(), None);
    for s in sources {
        for r in &s.relations {
            for g in r.links.keys().chain(r.mentions.keys()) {
                if !store.has_graph(g) {
                    store.register_graph(g.clone(), None);
                }
            }
        }
    }
    for s in sources {
        let g = &s.descriptor.graph;
        for e in s.entities.values() {
            e.write(&mut store, g).expect("graph registered");
        }
        for r in &s.relations {
            r.write(&mut store, g).expect("graph registered");
        }
        for (subj, pred, obj) in &s.statements {
            store.add(subj, pred, obj.clone(), g).expect("graph registered");
        }
    }
    store
}
