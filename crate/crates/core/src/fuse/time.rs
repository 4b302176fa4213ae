use std::collections::BTreeMap;

use serde::Serialize;

use crate::kg::{Bound, Iri, TimeInterval, TimePoint};

/// One source's stated time for a resource or relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeCandidate {
    pub source: Iri,
    /// Lower is more trusted.
    pub trust_rank: u32,
    pub time: TimeInterval,
}

impl TimeCandidate {
    pub fn new(source: Iri, trust_rank: u32, time: TimeInterval) -> Self {
        TimeCandidate { source, trust_rank, time }
    }
}

/// The rule that settled a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FusionRule {
    /// All sources agree.
    Unanimous,
    /// Only one value is left once unit-boundary dates are set aside.
    Boundary,
    /// A strict plurality of sources.
    Majority,
    /// The most trusted source among the tied values.
    Trust,
}

/// A bound value stated by one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCandidate {
    pub source: Iri,
    pub trust_rank: u32,
    pub point: TimePoint,
}

/// Fuses one interval bound. Each source casts one vote: its earliest start
/// or latest end when it states several.
pub fn fuse_bound(candidates: &[BoundCandidate], bound: Bound) -> Option<(TimePoint, FusionRule)> {
    let mut per_source: BTreeMap<&Iri, (u32, TimePoint)> = BTreeMap::new();
    for c in candidates {
        let slot = per_source.entry(&c.source).or_insert((c.trust_rank, c.point));
        slot.0 = slot.0.min(c.trust_rank);
        let better = match bound {
            Bound::Start => (c.point.date, std::cmp::Reverse(c.point.precision)) < (slot.1.date, std::cmp::Reverse(slot.1.precision)),
            Bound::End => (c.point.date, c.point.precision) > (slot.1.date, slot.1.precision),
        };
        if better {
            slot.1 = c.point;
        }
    }
    let votes: Vec<(u32, &Iri, TimePoint)> = per_source.into_iter().map(|(s, (r, p))| (r, s, p)).collect();
    if votes.is_empty() {
        return None;
    }
    let distinct = |v: &[(u32, &Iri, TimePoint)]| {
        let mut d: Vec<_> = v.iter().map(|x| x.2.date).collect();
        d.sort();
        d.dedup();
        d.len()
    };
    let all_distinct = distinct(&votes);
    let votes: Vec<_> = if votes.iter().any(|v| !v.2.is_unit_boundary()) {
        votes.into_iter().filter(|v| !v.2.is_unit_boundary()).collect()
    } else {
        votes
    };
    let mut by_date: BTreeMap<chrono::NaiveDate, Vec<(u32, &Iri, TimePoint)>> = BTreeMap::new();
    for v in &votes {
        by_date.entry(v.2.date).or_default().push(*v);
    }
    for supporters in by_date.values_mut() {
        supporters.sort();
    }
    let top = by_date.values().map(Vec::len).max().expect("non-empty");
    let tied: Vec<&Vec<_>> = by_date.values().filter(|s| s.len() == top).collect();
    let winner = tied.iter().min_by_key(|s| (s[0].0, s[0].1)).expect("non-empty");
    let rule = if all_distinct == 1 {
        FusionRule::Unanimous
    } else if by_date.len() == 1 {
        FusionRule::Boundary
    } else if tied.len() == 1 {
        FusionRule::Majority
    } else {
        FusionRule::Trust
    };
    Some((winner[0].2, rule))
}

/// Fuses start and end independently. When the fused start falls after the
/// fused end, the most trusted source's own interval is used instead.
pub fn fuse_time(candidates: &[TimeCandidate]) -> TimeInterval {
    fuse_time_explained(candidates).0
}

pub fn fuse_time_explained(candidates: &[TimeCandidate]) -> (TimeInterval, [Option<FusionRule>; 2]) {
    let collect = |pick: fn(&TimeInterval) -> Option<TimePoint>| -> Vec<BoundCandidate> {
        candidates
            .iter()
            .filter_map(|c| pick(&c.time).map(|point| BoundCandidate { source: c.source.clone(), trust_rank: c.trust_rank, point }))
            .collect()
    };
    let start = fuse_bound(&collect(|t| t.start), Bound::Start);
    let end = fuse_bound(&collect(|t| t.end), Bound::End);
    let rules = [start.map(|s| s.1), end.map(|e| e.1)];
    match TimeInterval::new(start.map(|s| s.0), end.map(|e| e.0)) {
        Ok(t) => (t, rules),
        Err(_) => {
            let best = candidates
                .iter()
                .filter(|c| !c.time.is_empty())
                .min_by(|a, b| (a.trust_rank, &a.source, a.time).cmp(&(b.trust_rank, &b.source, b.time)))
                .expect("a bound was fused");
            (best.time, [Some(FusionRule::Trust); 2])
        }
    }
}
