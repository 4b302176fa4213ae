//! Brute-force reference implementations and their input generators.

use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tkgraph::fuse::TimeCandidate;
use tkgraph::kg::{Bound, Iri, Precision, ProvenanceKind, TemporalEntity, TimeInterval, TimePoint, Tkg};
use tkgraph::timeline::{BioRecord, CandidateEntry};

use super::{iri, relation};

/// (source index, trust rank, time point) for one bound.
pub type BoundVote = (usize, u32, TimePoint);

/// Literal application of the three rules to one bound.
pub fn fuse_bound(c: &[BoundVote], bound: Bound) -> Option<TimePoint> {
    let mut sources: Vec<usize> = c.iter().map(|x| x.0).collect();
    sources.sort();
    sources.dedup();
    let mut votes: Vec<BoundVote> = Vec::new();
    for s in sources {
        let mine: Vec<_> = c.iter().filter(|x| x.0 == s).collect();
        let rank = mine.iter().map(|x| x.1).min().unwrap();
        let mut points: Vec<TimePoint> = mine.iter().map(|x| x.2).collect();
        points.sort_by_key(|p| (p.date, p.precision));
        let p = match bound {
            Bound::Start => {
                let d = points[0].date;
                *points.iter().filter(|p| p.date == d).max_by_key(|p| p.precision).unwrap()
            }
            Bound::End => *points.last().unwrap(),
        };
        votes.push((s, rank, p));
    }
    if votes.is_empty() {
        return None;
    }
    // (i)
    let alternatives: Vec<_> = votes.iter().filter(|v| !v.2.is_unit_boundary()).cloned().collect();
    let pool = if alternatives.is_empty() { votes } else { alternatives };
    // (ii)
    let count = |d| pool.iter().filter(|v| v.2.date == d).count();
    let best = pool.iter().map(|v| count(v.2.date)).max().unwrap();
    let tied: Vec<_> = pool.iter().filter(|v| count(v.2.date) == best).collect();
    // (iii)
    let source_name = |s: usize| format!("http://eventKG.l3s.uni-hannover.de/graph/s{s}");
    let winner = tied.iter().min_by_key(|v| (v.1, source_name(v.0))).unwrap();
    Some(winner.2)
}

pub fn point_strategy() -> impl Strategy<Value = TimePoint> {
    (1995i32..1998, 1u32..=12, prop_oneof![Just(1u32), Just(15), Just(28), 1u32..=31], 0u8..4).prop_map(|(y, m, d, p)| match p {
        0 => TimePoint::year(y, Bound::Start).unwrap(),
        1 => TimePoint::month(y, m, Bound::Start).unwrap(),
        _ => TimePoint::ymd(y, m, d).unwrap_or_else(|_| TimePoint::ymd(y, m, 28).unwrap()),
    })
}

pub fn candidates_strategy() -> impl Strategy<Value = Vec<BoundVote>> {
    prop::collection::vec((0usize..6, point_strategy()), 1..8).prop_map(|v| {
        v.into_iter().map(|(s, p)| (s, [1, 2, 2, 3, 4, 5][s], p)).collect()
    })
}

/// Start-only candidates, one per vote.
pub fn to_candidates(c: &[BoundVote]) -> Vec<TimeCandidate> {
    c.iter()
        .map(|(s, r, p)| TimeCandidate::new(iri(&format!("eventKG-g:s{s}")), *r, TimeInterval { start: Some(*p), end: None }))
        .collect()
}

/// End-only candidates, one per vote.
pub fn to_end_candidates(c: &[BoundVote]) -> Vec<TimeCandidate> {
    to_candidates(c)
        .into_iter()
        .map(|mut t| {
            t.time = TimeInterval { start: None, end: t.time.start };
            t
        })
        .collect()
}

pub const PLACES: usize = 12;

pub fn place(i: usize) -> Iri {
    iri(&format!("dbr:Place_{i}"))
}

pub fn place_index(p: &Iri) -> usize {
    p.local_name().trim_start_matches("Place_").parse().unwrap()
}

/// Edges `a -> b` (a contained in b) with a < b, and per-source place sets.
pub fn dag_strategy() -> impl Strategy<Value = (Vec<(usize, usize)>, Vec<Vec<usize>>)> {
    let edges = prop::collection::vec((0..PLACES, 0..PLACES), 0..30)
        .prop_map(|e| e.into_iter().filter(|(a, b)| a < b).collect::<Vec<_>>());
    let sets = prop::collection::vec(prop::collection::vec(0..PLACES, 0..5), 1..4);
    (edges, sets)
}

pub fn hierarchy(edges: &[(usize, usize)]) -> BTreeMap<Iri, BTreeSet<Iri>> {
    let mut h: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for (a, b) in edges {
        h.entry(place(*a)).or_default().insert(place(*b));
    }
    h
}

/// Transitive closure by Floyd–Warshall over the index pairs.
pub fn reachability(edges: &[(usize, usize)]) -> [[bool; PLACES]; PLACES] {
    let mut reach = [[false; PLACES]; PLACES];
    for (a, b) in edges {
        reach[*a][*b] = true;
    }
    for k in 0..PLACES {
        for i in 0..PLACES {
            for j in 0..PLACES {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    reach
}

/// Places of the union not contained, directly or transitively, in another
/// member of the union.
pub fn antichain(edges: &[(usize, usize)], sets: &[Vec<usize>]) -> BTreeSet<Iri> {
    let reach = reachability(edges);
    let union: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    union.iter().filter(|&&x| !union.iter().any(|&y| reach[y][x])).map(|&x| place(x)).collect()
}

/// The three benchmark clauses over explicit day sets.
pub fn record_oracle(record: &BioRecord, c: &CandidateEntry, tkg: &Tkg) -> bool {
    let lo = NaiveDate::from_ymd_opt(1994, 1, 1).unwrap();
    let hi = NaiveDate::from_ymd_opt(2006, 12, 31).unwrap();
    let days = |t: &TimeInterval| -> Option<(NaiveDate, NaiveDate)> {
        if t.start.is_none() && t.end.is_none() {
            None
        } else {
            Some((t.start.map_or(lo, |p| p.date), t.end.map_or(hi, |p| p.date)))
        }
    };
    let r = &c.relation.time;
    let exact = match (record.time.start, record.time.end, r.start) {
        (Some(a), Some(b), Some(s)) => a == b && a.precision == Precision::Day && s.precision == Precision::Day && s.date == a.date,
        _ => false,
    };
    let shares = record.linked_entities.contains(&c.connected_entity);
    let overlap = match (days(&record.time), days(r)) {
        (Some((a, b)), Some((s, e))) => {
            let mut d = a;
            let mut hit = false;
            while d <= b {
                if d >= s && d <= e {
                    hit = true;
                    break;
                }
                d = d.succ_opt().unwrap();
            }
            hit
        }
        _ => false,
    };
    let event = shares && tkg.entity(&c.connected_entity).is_some_and(|e| e.is_event);
    exact || (shares && overlap) || event
}

fn arb_point(rng: &mut ChaCha8Rng, bound: Bound) -> TimePoint {
    let y = rng.gen_range(1995..2005);
    match rng.gen_range(0..3) {
        0 => TimePoint::year(y, bound).unwrap(),
        1 => TimePoint::month(y, rng.gen_range(1..=12), bound).unwrap(),
        _ => TimePoint::ymd(y, rng.gen_range(1..=12), rng.gen_range(1..=28)).unwrap(),
    }
}

fn arb_interval(rng: &mut ChaCha8Rng) -> TimeInterval {
    loop {
        let s = rng.gen_bool(0.8).then(|| arb_point(rng, Bound::Start));
        let e = rng.gen_bool(0.7).then(|| arb_point(rng, Bound::End));
        let e = if rng.gen_bool(0.3) { s.map(|p| TimePoint { date: p.date, precision: p.precision }) } else { e };
        if let Ok(t) = TimeInterval::new(s, e) {
            return t;
        }
    }
}

/// A person with four random relations and one to three random records.
pub fn benchmark_case(seed: u64) -> (Tkg, Iri, Vec<BioRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let person = iri("eventKG-r:entity_0");
    let mut tkg = Tkg::default();
    tkg.entities.insert(person.clone(), TemporalEntity::new(person.clone(), false));
    let pool: Vec<Iri> = (1..6).map(|i| iri(&format!("eventKG-r:x_{i}"))).collect();
    for (i, id) in pool.iter().enumerate() {
        tkg.entities.insert(id.clone(), TemporalEntity::new(id.clone(), i % 2 == 0));
    }
    for k in 0..4 {
        let other = &pool[rng.gen_range(0..pool.len())];
        let mut time = arb_interval(&mut rng);
        if time.is_empty() {
            time.start = Some(TimePoint::year(2000, Bound::Start).unwrap());
        }
        tkg.relations.push(relation(&format!("eventKG-r:relation_{k}"), &person, other, "wd:P26", time, ProvenanceKind::Explicit));
    }
    let records: Vec<BioRecord> = (0..rng.gen_range(1..4))
        .map(|_| BioRecord {
            time: if rng.gen_bool(0.85) { arb_interval(&mut rng) } else { TimeInterval::default() },
            linked_entities: pool.iter().filter(|_| rng.gen_bool(0.3)).cloned().collect(),
        })
        .collect();
    (tkg, person, records)
}
