//! The fused `event_kg` graph: one time, a minimal location set and DBpedia
//! types per resource, plus relation nodes with fused validity times.

mod location;
mod time;
mod types;

pub use location::{ancestors, find_cycle, fuse_locations, Containment};
pub use time::{fuse_bound, fuse_time, fuse_time_explained, BoundCandidate, FusionRule, TimeCandidate};
pub use types::{fuse_types, TypeMapping};

use std::collections::{BTreeMap, BTreeSet};

use log::warn;
use serde::Serialize;
use thiserror::Error;

use crate::kg::vocab::*;
use crate::kg::{Iri, KgError, QuadStore, RelationNode, TemporalEntity, Term};

#[derive(Debug, Error)]
pub enum FuseError {
    #[error("containment cycle: {}", .0.iter().map(|i| i.as_str()).collect::<Vec<_>>().join(" -> "))]
    Cycle(Vec<Iri>),
    #[error("fusion config: {0}")]
    Config(String),
    #[error(transparent)]
    Kg(#[from] KgError),
}

#[derive(Clone, Debug)]
pub struct FusionConfig {
    /// Trust rank per source graph; unlisted graphs are ranked by name.
    pub trust_ranks: BTreeMap<Iri, u32>,
    pub types: TypeMapping,
    /// Fail on containment cycles instead of keeping the unreduced union.
    pub strict: bool,
}

impl Default for FusionConfig {
    fn default() -> Self {
        FusionConfig { trust_ranks: BTreeMap::new(), types: TypeMapping::bundled(), strict: false }
    }
}

impl FusionConfig {
    pub fn trust_rank(&self, graph: &Iri) -> u32 {
        if let Some(r) = self.trust_ranks.get(graph) {
            return *r;
        }
        let name = graph.local_name();
        if name.starts_with("wikidata") {
            1
        } else if name.starts_with("dbpedia") {
            2
        } else if name.starts_with("wikipedia") {
            3
        } else if name.starts_with("wcep") {
            4
        } else if name.starts_with("yago") {
            5
        } else {
            6
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FusionReport {
    pub resources: usize,
    pub events: usize,
    pub relations: usize,
    pub location_cycles: Vec<Vec<Iri>>,
}

/// Subject, role and object shared by the source nodes of one fused node.
type RelationKey = (Iri, Option<Iri>, Term);

/// Predicates copied unchanged from the source graphs into the fused graph.
fn structural_predicates() -> [&'static Iri; 4] {
    [&SO_HAS_SUB_EVENT, &DBO_PREVIOUS_EVENT, &DBO_NEXT_EVENT, &SO_CONTAINED_IN_PLACE]
}

/// Rebuilds `eventKG-g:event_kg` from the source graphs.
pub fn build_fused_graph(store: &mut QuadStore, config: &FusionConfig) -> Result<FusionReport, FuseError> {
    let fused = FUSED_GRAPH.clone();
    store.clear_graph(&fused);
    store.register_graph(fused.clone(), None);
    let mut sources: Vec<(u32, Iri)> =
        store.graphs().map(|(g, _)| g.clone()).filter(|g| *g != fused).map(|g| (config.trust_rank(&g), g)).collect();
    sources.sort();

    let mut resources: BTreeSet<Iri> = BTreeSet::new();
    for class in [&*SEM_CORE, &*SEM_EVENT] {
        resources.extend(
            store.referencing(class).filter(|q| q.predicate == *RDF_TYPE && q.graph != fused).map(|q| q.subject.clone()),
        );
    }
    let mut contained_in: Containment = BTreeMap::new();
    let mut copied = Vec::new();
    for q in store.iter().filter(|q| q.graph != fused) {
        if structural_predicates().contains(&&q.predicate) {
            if let Term::Iri(o) = &q.object {
                if q.predicate == *SO_CONTAINED_IN_PLACE {
                    contained_in.entry(q.subject.clone()).or_default().insert(o.clone());
                }
                copied.push((q.subject.clone(), q.predicate.clone(), o.clone()));
            }
        }
    }

    let mut report = FusionReport::default();
    let mut out: Vec<TemporalEntity> = Vec::new();
    let mut places_out: Vec<(Iri, BTreeSet<Iri>)> = Vec::new();
    for id in &resources {
        let mut merged = TemporalEntity::new(id.clone(), false);
        let mut candidates = Vec::new();
        let mut place_sets = Vec::new();
        let mut type_sets = Vec::new();
        for (rank, g) in &sources {
            let places: BTreeSet<Iri> =
                store.objects(id, &SEM_HAS_PLACE, Some(g)).filter_map(|t| t.as_iri().cloned()).collect();
            if !places.is_empty() {
                place_sets.push(places);
            }
            let Some(e) = TemporalEntity::read(store, id, g) else { continue };
            merged.is_event |= e.is_event;
            if !e.time.is_empty() {
                candidates.push(TimeCandidate::new(g.clone(), *rank, e.time));
            }
            for (lang, label) in e.labels {
                if merged.labels.get(&lang).is_some_and(|l| *l != label) {
                    merged.aliases.entry(lang).or_default().insert(label);
                } else {
                    merged.labels.insert(lang, label);
                }
            }
            for (lang, set) in e.aliases {
                merged.aliases.entry(lang).or_default().extend(set);
            }
            for (lang, set) in e.descriptions {
                merged.descriptions.entry(lang).or_default().extend(set);
            }
            merged.same_as.extend(e.same_as);
            merged.extracted_from.extend(e.extracted_from);
            type_sets.push(e.types);
        }
        for (lang, set) in merged.aliases.iter_mut() {
            if let Some(l) = merged.labels.get(lang) {
                set.remove(l);
            }
        }
        merged.aliases.retain(|_, s| !s.is_empty());
        merged.time = fuse_time(&candidates);
        merged.types = fuse_types(&type_sets, &config.types);
        let places = match fuse_locations(&place_sets, &contained_in) {
            Ok(p) => p,
            Err(FuseError::Cycle(c)) if !config.strict => {
                warn!("{id}: {}", FuseError::Cycle(c.clone()));
                if !report.location_cycles.contains(&c) {
                    report.location_cycles.push(c);
                }
                place_sets.iter().flatten().cloned().collect()
            }
            Err(e) => return Err(e),
        };
        report.resources += 1;
        report.events += usize::from(merged.is_event);
        places_out.push((id.clone(), places));
        out.push(merged);
    }
    for e in &out {
        e.write(store, &fused)?;
    }
    for (id, places) in places_out {
        for p in places {
            store.add(&id, &SEM_HAS_PLACE, &p, &fused)?;
        }
    }
    for (s, p, o) in copied {
        store.add(&s, &p, &o, &fused)?;
    }

    let mut groups: BTreeMap<RelationKey, Vec<(u32, Iri, RelationNode)>> = BTreeMap::new();
    for (rank, g) in &sources {
        for node in RelationNode::read_all(store, g) {
            groups.entry((node.subject.clone(), node.role.clone(), node.object.clone())).or_default().push((*rank, g.clone(), node));
        }
    }
    for (n, ((subject, role, object), members)) in groups.into_iter().enumerate() {
        let mut node = RelationNode::new(resource_iri(&format!("relation_{n}")), subject, role, object);
        let candidates: Vec<TimeCandidate> = members
            .iter()
            .filter(|(_, _, m)| !m.time.is_empty())
            .map(|(r, g, m)| TimeCandidate::new(g.clone(), *r, m.time))
            .collect();
        node.time = fuse_time(&candidates);
        for (_, _, m) in &members {
            for (g, c) in &m.links {
                let slot = node.links.entry(g.clone()).or_insert(0);
                *slot = (*slot).max(*c);
            }
            for (g, c) in &m.mentions {
                let slot = node.mentions.entry(g.clone()).or_insert(0);
                *slot = (*slot).max(*c);
            }
        }
        node.write(store, &fused)?;
        report.relations += 1;
    }
    Ok(report)
}
