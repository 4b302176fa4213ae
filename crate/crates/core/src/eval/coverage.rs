use std::collections::BTreeMap;

use serde::Serialize;

use super::EvalError;
use crate::kg::vocab::FUSED_GRAPH;
use crate::kg::{to_tkg, to_tkg_with_entity_times, Iri, QuadStore, TemporalRelation, Tkg};
use crate::timeline::{record_matches, Benchmark, BiographySource, CandidateEntry};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverageReport {
    pub graph: Iri,
    pub plain: f64,
    /// Coverage when the source's entity times are replaced by fused ones.
    pub extended: f64,
    /// Persons with at least one relevant relation.
    pub persons: usize,
}

fn connects(r: &TemporalRelation, a: &Iri, b: &Iri) -> bool {
    (r.subject_entity == *a && r.object_entity == *b) || (r.subject_entity == *b && r.object_entity == *a)
}

fn matched(benchmark: &Benchmark, person: &Iri, relevant: &TemporalRelation, fused: &Tkg, sources: &[&Tkg]) -> bool {
    let other = if relevant.subject_entity == *person { &relevant.object_entity } else { &relevant.subject_entity };
    let records = benchmark.records.get(person).map(Vec::as_slice).unwrap_or_default();
    sources.iter().flat_map(|s| s.relations.iter()).filter(|c| connects(c, person, other)).any(|c| {
        let candidate = CandidateEntry { relation: c.clone(), timeline_entity: person.clone(), connected_entity: other.clone() };
        match benchmark.source {
            BiographySource::Enc => fused.is_event(other),
            BiographySource::Bio => records.iter().any(|r| record_matches(r, &candidate, fused)),
        }
    })
}

/// Mean over persons of the fraction of their relevant benchmark relations
/// that some relation of `sources` also describes, judged with the
/// benchmark's own matching rule. Persons without relevant relations are
/// skipped; returns the mean and the number of persons averaged.
pub fn coverage_of(benchmark: &Benchmark, fused: &Tkg, sources: &[&Tkg]) -> (f64, usize) {
    let by_uri: BTreeMap<&Iri, &TemporalRelation> = fused.relations.iter().map(|r| (&r.uri, r)).collect();
    let mut fractions = Vec::new();
    for person in benchmark.persons() {
        let relevant = benchmark.relevant(&person);
        if relevant.is_empty() {
            continue;
        }
        let hits = relevant
            .iter()
            .filter(|uri| by_uri.get(uri).is_some_and(|r| matched(benchmark, &person, r, fused, sources)))
            .count();
        fractions.push(hits as f64 / relevant.len() as f64);
    }
    if fractions.is_empty() {
        return (0.0, 0);
    }
    (fractions.iter().sum::<f64>() / fractions.len() as f64, fractions.len())
}

/// Plain and extended coverage of each source graph against a benchmark
/// judged on the fused graph.
pub fn coverage(benchmark: &Benchmark, store: &QuadStore, graphs: &[Iri]) -> Result<Vec<CoverageReport>, EvalError> {
    let fused = to_tkg(store, &FUSED_GRAPH)?;
    let mut reports = Vec::new();
    for graph in graphs {
        let plain = to_tkg(store, graph)?;
        let extended = to_tkg_with_entity_times(store, graph, &FUSED_GRAPH)?;
        let (p, persons) = coverage_of(benchmark, &fused, &[&plain]);
        // A relation matched with the source's own times still counts.
        let (e, _) = coverage_of(benchmark, &fused, &[&plain, &extended]);
        reports.push(CoverageReport { graph: graph.clone(), plain: p, extended: e, persons });
    }
    Ok(reports)
}
