use std::collections::{BTreeMap, BTreeSet};

use crate::interlink::CorpusStats;
use crate::kg::vocab::compact;
use crate::kg::{Iri, ProvenanceKind, Tkg};

use super::candidates::CandidateEntry;
use super::TimelineError;

/// Pseudo language code for counts summed over all reference collections.
pub const ALL_LANGUAGES: &str = "all";

/// Layout of the feature vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureSpace {
    /// TEF-C slots.
    pub entity_types: Vec<Iri>,
    /// TRF-PI slots.
    pub predicates: Vec<Iri>,
    /// Per-language blocks; the last entry is [`ALL_LANGUAGES`].
    pub languages: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
}

impl FeatureSpace {
    pub fn new(entity_types: Vec<Iri>, predicates: Vec<Iri>, stats: &CorpusStats) -> Self {
        let mut languages: Vec<String> = stats.language_codes().map(str::to_string).collect();
        languages.push(ALL_LANGUAGES.to_string());
        FeatureSpace { entity_types, predicates, languages }
    }

    pub fn len(&self) -> usize {
        self.names().len()
    }

    pub fn is_empty(&self) -> bool {
        self.names().is_empty()
    }

    /// Feature names in vector order.
    pub fn names(&self) -> Vec<String> {
        let mut n: Vec<String> = self.entity_types.iter().map(|t| format!("TEF-C:{}", compact(t))).collect();
        for l in &self.languages {
            n.extend(["CEF-M", "CEF-MR", "CEF-MRR"].map(|f| format!("{f}:{l}")));
        }
        n.push("CEF-E".into());
        n.extend(self.predicates.iter().map(|p| format!("TRF-PI:{}", compact(p))));
        for l in &self.languages {
            n.extend(["TRF-M", "TRF-MR", "TRF-MRR"].map(|f| format!("{f}:{l}")));
        }
        n.extend(["TF-TDS", "TF-TDE", "TF-TDS-missing", "TF-TDE-missing", "TF-TP"].map(String::from));
        n
    }

    /// Position of a named feature.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }
}

/// Keeps the more frequent half of the timeline-entity types (rounded up)
/// and every predicate used by at least a quarter of the training relations.
pub fn build_feature_space(
    training_candidates: &[CandidateEntry],
    training_entities: &[Iri],
    tkg: &Tkg,
    stats: &CorpusStats,
) -> Result<FeatureSpace, TimelineError> {
    if training_candidates.is_empty() || training_entities.is_empty() {
        return Err(TimelineError::EmptyTraining);
    }
    let mut type_counts: BTreeMap<&Iri, usize> = BTreeMap::new();
    for e in training_entities.iter().collect::<BTreeSet<_>>() {
        for t in tkg.entity(e).map(|x| &x.types).into_iter().flatten() {
            *type_counts.entry(t).or_default() += 1;
        }
    }
    let mut types: Vec<(&Iri, usize)> = type_counts.into_iter().collect();
    types.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let keep = types.len().div_ceil(2);
    let entity_types = types.into_iter().take(keep).map(|(t, _)| t.clone()).collect();

    let mut role_counts: BTreeMap<&Iri, usize> = BTreeMap::new();
    for c in training_candidates {
        *role_counts.entry(&c.relation.role).or_default() += 1;
    }
    let n = training_candidates.len();
    let predicates = role_counts.into_iter().filter(|(_, k)| 4 * k >= n).map(|(r, _)| r.clone()).collect();
    Ok(FeatureSpace::new(entity_types, predicates, stats))
}

/// 1 for the highest score, consecutive integers for each lower distinct
/// score; returns (rank, number of distinct scores).
fn dense_rank(scores: &BTreeSet<u64>, own: u64) -> (usize, usize) {
    let above = scores.range(own + 1..).count();
    let distinct = scores.len() + usize::from(!scores.contains(&own));
    (above + 1, distinct)
}

/// Per-entity score sets shared by all candidates of one timeline entity.
pub struct FeatureExtractor<'a> {
    space: &'a FeatureSpace,
    tkg: &'a Tkg,
    stats: &'a CorpusStats,
    context: BTreeMap<Iri, Context>,
}

struct Context {
    connected_links: Vec<BTreeSet<u64>>,
    event_mentions: Vec<BTreeSet<u64>>,
}

impl<'a> FeatureExtractor<'a> {
    pub fn new(space: &'a FeatureSpace, tkg: &'a Tkg, stats: &'a CorpusStats) -> Self {
        FeatureExtractor { space, tkg, stats, context: BTreeMap::new() }
    }

    fn link_count(&self, lang: &str, e: &Iri) -> u64 {
        if lang == ALL_LANGUAGES {
            self.stats.link_total_all(e)
        } else {
            self.stats.link_total(lang, e)
        }
    }

    fn mention_count(&self, lang: &str, a: &Iri, b: &Iri) -> u64 {
        if lang == ALL_LANGUAGES {
            self.stats.mentions_all(a, b)
        } else {
            self.stats.mentions(lang, a, b)
        }
    }

    fn context(&mut self, entity: &Iri) -> &Context {
        if !self.context.contains_key(entity) {
            let connected: BTreeSet<&Iri> = self
                .tkg
                .relations_of(entity)
                .map(|r| if r.subject_entity == *entity { &r.object_entity } else { &r.subject_entity })
                .collect();
            let mut ctx = Context { connected_links: Vec::new(), event_mentions: Vec::new() };
            for lang in &self.space.languages {
                ctx.connected_links.push(connected.iter().map(|c| self.link_count(lang, c)).collect());
                ctx.event_mentions.push(
                    connected
                        .iter()
                        .filter(|c| self.tkg.is_event(c))
                        .map(|c| self.mention_count(lang, entity, c))
                        .collect(),
                );
            }
            self.context.insert(entity.clone(), ctx);
        }
        &self.context[entity]
    }

    pub fn extract(&mut self, c: &CandidateEntry) -> FeatureVector {
        let (space, tkg) = (self.space, self.tkg);
        let e = &c.timeline_entity;
        let other = &c.connected_entity;
        let entity = tkg.entity(e);
        let mut v = Vec::with_capacity(space.len());
        for t in &space.entity_types {
            v.push(flag(entity.is_some_and(|x| x.types.contains(t))));
        }
        let links: Vec<u64> = space.languages.iter().map(|l| self.link_count(l, other)).collect();
        let mentions: Vec<u64> = space.languages.iter().map(|l| self.mention_count(l, e, other)).collect();
        self.context(e);
        let ctx = &self.context[e];
        for (i, n) in links.iter().enumerate() {
            let (rank, distinct) = dense_rank(&ctx.connected_links[i], *n);
            v.extend([*n as f64, rank as f64, rank as f64 / distinct as f64]);
        }
        v.push(flag(tkg.is_event(other)));
        for p in &space.predicates {
            v.push(flag(c.relation.role == *p));
        }
        for (i, n) in mentions.iter().enumerate() {
            let (rank, distinct) = dense_rank(&ctx.event_mentions[i], *n);
            v.extend([*n as f64, rank as f64, rank as f64 / distinct as f64]);
        }
        let r_start = c.relation.time.start_date();
        let days = |bound: Option<chrono::NaiveDate>| match (bound, r_start) {
            (Some(b), Some(r)) => Some((b - r).num_days() as f64),
            _ => None,
        };
        let tds = days(entity.and_then(|x| x.time.start_date()));
        let tde = days(entity.and_then(|x| x.time.end_date()));
        v.extend([tds.unwrap_or(0.0), tde.unwrap_or(0.0), flag(tds.is_none()), flag(tde.is_none())]);
        v.push(match c.relation.provenance_kind {
            ProvenanceKind::Explicit => 3.0,
            ProvenanceKind::InducedFromEvent => 2.0,
            ProvenanceKind::InducedFromEntity => 1.0,
        });
        FeatureVector { values: v }
    }
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

pub fn extract_features(candidate: &CandidateEntry, space: &FeatureSpace, tkg: &Tkg, stats: &CorpusStats) -> FeatureVector {
    FeatureExtractor::new(space, tkg, stats).extract(candidate)
}
