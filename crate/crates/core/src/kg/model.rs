use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::store::{QuadStore, Term};
use super::time::{Bound, TimeInterval, TimePoint};
use super::vocab::*;
use super::{Iri, KgError};

/// An entity or event with its existence / happening time and descriptive data.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TemporalEntity {
    pub id: Option<Iri>,
    pub is_event: bool,
    pub time: TimeInterval,
    pub labels: BTreeMap<String, String>,
    pub aliases: BTreeMap<String, BTreeSet<String>>,
    pub descriptions: BTreeMap<String, BTreeSet<String>>,
    pub types: BTreeSet<Iri>,
    pub same_as: BTreeSet<Iri>,
    pub extracted_from: BTreeSet<Iri>,
}

impl TemporalEntity {
    pub fn new(id: Iri, is_event: bool) -> Self {
        TemporalEntity { id: Some(id), is_event, ..Default::default() }
    }

    pub fn iri(&self) -> &Iri {
        self.id.as_ref().expect("entity has an id")
    }

    /// Reads the entity as stated in `graph`. Returns `None` when the graph
    /// does not type it as `sem:Core` or `sem:Event`.
    pub fn read(store: &QuadStore, id: &Iri, graph: &Iri) -> Option<Self> {
        let mut entity = TemporalEntity::new(id.clone(), false);
        let mut typed = false;
        let mut starts = Vec::new();
        let mut ends = Vec::new();
        for q in store.about(id).filter(|q| q.graph == *graph) {
            let p = &q.predicate;
            if *p == *RDF_TYPE {
                if let Term::Iri(t) = &q.object {
                    if *t == *SEM_EVENT {
                        entity.is_event = true;
                        typed = true;
                    } else if *t == *SEM_CORE {
                        typed = true;
                    } else {
                        entity.types.insert(t.clone());
                    }
                }
            } else if *p == *SEM_HAS_BEGIN {
                starts.extend(q.object.as_time_point(Bound::Start));
            } else if *p == *SEM_HAS_END {
                ends.extend(q.object.as_time_point(Bound::End));
            } else if *p == *RDFS_LABEL {
                if let Some((lang, text)) = lang_text(&q.object) {
                    match entity.labels.entry(lang) {
                        std::collections::btree_map::Entry::Occupied(o) => {
                            entity.aliases.entry(o.key().clone()).or_default().insert(text);
                        }
                        std::collections::btree_map::Entry::Vacant(v) => {
                            v.insert(text);
                        }
                    }
                }
            } else if *p == *DCTERMS_ALTERNATIVE {
                if let Some((lang, text)) = lang_text(&q.object) {
                    entity.aliases.entry(lang).or_default().insert(text);
                }
            } else if *p == *DCTERMS_DESCRIPTION {
                if let Some((lang, text)) = lang_text(&q.object) {
                    entity.descriptions.entry(lang).or_default().insert(text);
                }
            } else if *p == *OWL_SAME_AS {
                entity.same_as.extend(q.object.as_iri().cloned());
            } else if *p == *EKG_EXTRACTED_FROM {
                entity.extracted_from.extend(q.object.as_iri().cloned());
            }
        }
        if !typed {
            return None;
        }
        // Several stated values in one graph: earliest start, latest end.
        entity.time = TimeInterval::lenient(
            starts.into_iter().min_by_key(|p| p.date),
            ends.into_iter().max_by_key(|p| p.date),
        );
        Some(entity)
    }

    /// Writes the entity's statements into `graph`.
    pub fn write(&self, store: &mut QuadStore, graph: &Iri) -> Result<(), KgError> {
        let id = self.iri();
        let class = if self.is_event { &*SEM_EVENT } else { &*SEM_CORE };
        store.add(id, &RDF_TYPE, class, graph)?;
        for t in &self.types {
            store.add(id, &RDF_TYPE, t, graph)?;
        }
        if let Some(s) = self.time.start {
            store.add(id, &SEM_HAS_BEGIN, Term::date(s), graph)?;
        }
        if let Some(e) = self.time.end {
            store.add(id, &SEM_HAS_END, Term::date(e), graph)?;
        }
        for (lang, label) in &self.labels {
            store.add(id, &RDFS_LABEL, Term::lang_string(label, lang), graph)?;
        }
        for (lang, set) in &self.aliases {
            for a in set {
                store.add(id, &DCTERMS_ALTERNATIVE, Term::lang_string(a, lang), graph)?;
            }
        }
        for (lang, set) in &self.descriptions {
            for d in set {
                store.add(id, &DCTERMS_DESCRIPTION, Term::lang_string(d, lang), graph)?;
            }
        }
        for s in &self.same_as {
            store.add(id, &OWL_SAME_AS, s, graph)?;
        }
        for s in &self.extracted_from {
            store.add(id, &EKG_EXTRACTED_FROM, s, graph)?;
        }
        Ok(())
    }
}

fn lang_text(term: &Term) -> Option<(String, String)> {
    let lit = term.as_literal()?;
    Some((lit.language.clone().unwrap_or_default(), lit.value.clone()))
}

/// The n-ary `eventKG-s:Relation` node: subject, object, role and optional
/// validity time, plus interlinking counts keyed by the graph they come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationNode {
    pub id: Iri,
    pub subject: Iri,
    pub object: Term,
    /// `None` for nodes that only carry interlinking counts.
    pub role: Option<Iri>,
    pub time: TimeInterval,
    pub links: BTreeMap<Iri, u64>,
    pub mentions: BTreeMap<Iri, u64>,
}

impl RelationNode {
    pub fn new(id: Iri, subject: Iri, role: Option<Iri>, object: impl Into<Term>) -> Self {
        RelationNode {
            id,
            subject,
            object: object.into(),
            role,
            time: TimeInterval::default(),
            links: BTreeMap::new(),
            mentions: BTreeMap::new(),
        }
    }

    pub fn object_iri(&self) -> Option<&Iri> {
        self.object.as_iri()
    }

    pub fn links_all(&self) -> u64 {
        self.links.values().sum()
    }

    pub fn mentions_all(&self) -> u64 {
        self.mentions.values().sum()
    }

    /// Structural and time quads go into `graph`; counts go into the graph
    /// they are keyed by. Zero counts are not written.
    pub fn write(&self, store: &mut QuadStore, graph: &Iri) -> Result<(), KgError> {
        store.add(&self.id, &RDF_TYPE, &*EKG_RELATION, graph)?;
        store.add(&self.id, &RDF_SUBJECT, &self.subject, graph)?;
        store.add(&self.id, &RDF_OBJECT, self.object.clone(), graph)?;
        if let Some(role) = &self.role {
            store.add(&self.id, &SEM_ROLE_TYPE, role, graph)?;
        }
        if let Some(s) = self.time.start {
            store.add(&self.id, &SEM_HAS_BEGIN, Term::date(s), graph)?;
        }
        if let Some(e) = self.time.end {
            store.add(&self.id, &SEM_HAS_END, Term::date(e), graph)?;
        }
        for (g, n) in self.links.iter().filter(|(_, n)| **n > 0) {
            store.add(&self.id, &EKG_LINKS, Term::integer(*n), g)?;
        }
        for (g, n) in self.mentions.iter().filter(|(_, n)| **n > 0) {
            store.add(&self.id, &EKG_MENTIONS, Term::integer(*n), g)?;
        }
        Ok(())
    }

    /// All relation nodes declared in `graph`, ordered by id.
    pub fn read_all(store: &QuadStore, graph: &Iri) -> Vec<RelationNode> {
        let ids: BTreeSet<Iri> = store
            .referencing(&EKG_RELATION)
            .filter(|q| q.graph == *graph && q.predicate == *RDF_TYPE)
            .map(|q| q.subject.clone())
            .collect();
        ids.into_iter().filter_map(|id| Self::read(store, &id, graph)).collect()
    }

    pub fn read(store: &QuadStore, id: &Iri, graph: &Iri) -> Option<RelationNode> {
        let mut subject = None;
        let mut object = None;
        let mut role = None;
        let mut starts: Vec<TimePoint> = Vec::new();
        let mut ends: Vec<TimePoint> = Vec::new();
        let mut links = BTreeMap::new();
        let mut mentions = BTreeMap::new();
        for q in store.about(id) {
            let p = &q.predicate;
            if *p == *EKG_LINKS {
                if let Some(n) = q.object.as_count() {
                    links.insert(q.graph.clone(), n);
                }
                continue;
            }
            if *p == *EKG_MENTIONS {
                if let Some(n) = q.object.as_count() {
                    mentions.insert(q.graph.clone(), n);
                }
                continue;
            }
            if q.graph != *graph {
                continue;
            }
            if *p == *RDF_SUBJECT {
                subject = q.object.as_iri().cloned();
            } else if *p == *RDF_OBJECT {
                object = Some(q.object.clone());
            } else if *p == *SEM_ROLE_TYPE {
                role = q.object.as_iri().cloned();
            } else if *p == *SEM_HAS_BEGIN {
                starts.extend(q.object.as_time_point(Bound::Start));
            } else if *p == *SEM_HAS_END {
                ends.extend(q.object.as_time_point(Bound::End));
            }
        }
        Some(RelationNode {
            id: id.clone(),
            subject: subject?,
            object: object?,
            role,
            time: TimeInterval::lenient(
                starts.into_iter().min_by_key(|p| p.date),
                ends.into_iter().max_by_key(|p| p.date),
            ),
            links,
            mentions,
        })
    }
}
