use crate::interlink::CorpusStats;
use crate::kg::{Iri, Tkg};

use super::candidates::{collect_candidates, CandidateEntry};
use super::features::FeatureExtractor;
use super::svm::{predict, RelevanceModel};
use super::TimelineError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Timeline {
    pub entity: Iri,
    pub entries: Vec<CandidateEntry>,
}

impl Timeline {
    /// Orders entries by start, then end, then relation IRI; missing dates last.
    pub fn new(entity: Iri, mut entries: Vec<CandidateEntry>) -> Self {
        entries.sort_by_key(chronological_key);
        Timeline { entity, entries }
    }

    pub fn is_chronological(&self) -> bool {
        self.entries.windows(2).all(|w| chronological_key(&w[0]) <= chronological_key(&w[1]))
    }
}

type ChronoKey = (bool, Option<chrono::NaiveDate>, bool, Option<chrono::NaiveDate>, Iri);

fn chronological_key(c: &CandidateEntry) -> ChronoKey {
    let t = &c.relation.time;
    (t.start.is_none(), t.start_date(), t.end.is_none(), t.end_date(), c.relation.uri.clone())
}

/// The candidates the model classifies as relevant, chronologically.
pub fn generate_timeline(entity: &Iri, model: &RelevanceModel, tkg: &Tkg, stats: &CorpusStats) -> Result<Timeline, TimelineError> {
    let mut extractor = FeatureExtractor::new(&model.space, tkg, stats);
    let mut kept = Vec::new();
    for c in collect_candidates(tkg, entity)? {
        if predict(model, &extractor.extract(&c))? {
            kept.push(c);
        }
    }
    Ok(Timeline::new(entity.clone(), kept))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TmConfig {
    /// Minimum co-mention count over all languages; 0 keeps everything.
    pub min_frequency: u64,
}

/// The adapted Time-Machine baseline: drops relations starting before the
/// entity's existence, then keeps the `k` best by
/// `links(connected) * (1 + co-mentions)`.
pub fn tm_baseline(entity: &Iri, tkg: &Tkg, stats: &CorpusStats, k: usize, config: &TmConfig) -> Result<Timeline, TimelineError> {
    let birth = tkg.entity(entity).and_then(|e| e.time.start_date());
    let mut scored: Vec<(u64, CandidateEntry)> = collect_candidates(tkg, entity)?
        .into_iter()
        .filter(|c| match (birth, c.relation.time.start_date()) {
            (Some(b), Some(s)) => s >= b,
            _ => true,
        })
        .filter_map(|c| {
            let co = stats.mentions_all(entity, &c.connected_entity);
            (co >= config.min_frequency).then(|| (stats.link_total_all(&c.connected_entity) * (1 + co), c))
        })
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.relation.uri.cmp(&b.1.relation.uri)));
    scored.truncate(k);
    Ok(Timeline::new(entity.clone(), scored.into_iter().map(|(_, c)| c).collect()))
}
