use crate::kg::{Iri, TemporalRelation, Tkg};

use super::TimelineError;

/// A temporal relation involving the timeline entity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateEntry {
    pub relation: TemporalRelation,
    pub timeline_entity: Iri,
    /// The endpoint that is not the timeline entity.
    pub connected_entity: Iri,
}

/// All temporal relations with `entity` as subject or object, ordered by
/// relation IRI.
pub fn collect_candidates(tkg: &Tkg, entity: &Iri) -> Result<Vec<CandidateEntry>, TimelineError> {
    if tkg.entity(entity).is_none() {
        return Err(TimelineError::UnknownEntity(entity.clone()));
    }
    let mut out: Vec<CandidateEntry> = tkg
        .relations_of(entity)
        .map(|r| CandidateEntry {
            relation: r.clone(),
            timeline_entity: entity.clone(),
            connected_entity: if r.subject_entity == *entity { r.object_entity.clone() } else { r.subject_entity.clone() },
        })
        .collect();
    out.sort_by(|a, b| a.relation.uri.cmp(&b.relation.uri));
    Ok(out)
}
