use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kg::time::Precision;
use crate::kg::vocab::expand;
use crate::kg::{Bound, Iri, TimeInterval, TimePoint, Tkg};

use super::candidates::{collect_candidates, CandidateEntry};
use super::TimelineError;

/// One dated or linked statement of a biography.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BioRecord {
    pub time: TimeInterval,
    pub linked_entities: BTreeSet<Iri>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BioAnnotation {
    pub person: Iri,
    pub records: Vec<BioRecord>,
}

/// Events linked from a person's encyclopedia abstract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractLinks {
    pub person: Iri,
    pub events: BTreeSet<Iri>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiographySource {
    /// Dated biography records (BS-BIO).
    Bio,
    /// Events linked from encyclopedia abstracts (BS-ENC).
    Enc,
}

impl BiographySource {
    pub fn as_str(self) -> &'static str {
        match self {
            BiographySource::Bio => "bio",
            BiographySource::Enc => "enc",
        }
    }
}

pub enum BenchmarkInput {
    Bio(Vec<BioAnnotation>),
    Abstracts(Vec<AbstractLinks>),
}

/// Relevance judgements for every candidate of every benchmark person.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Benchmark {
    pub source: BiographySource,
    pub judgements: BTreeMap<Iri, BTreeMap<Iri, bool>>,
    /// Biography records per person; empty for abstract-based benchmarks.
    pub records: BTreeMap<Iri, Vec<BioRecord>>,
}

impl Benchmark {
    pub fn persons(&self) -> Vec<Iri> {
        self.judgements.keys().cloned().collect()
    }

    pub fn relevant(&self, person: &Iri) -> BTreeSet<Iri> {
        self.judgements.get(person).into_iter().flatten().filter(|(_, j)| **j).map(|(r, _)| r.clone()).collect()
    }

    /// `S source`, `R person time iris` and `J person relation 0|1` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("S\t{}\n", self.source.as_str());
        for (p, records) in &self.records {
            for r in records {
                out.push_str(&format!("R\t{p}\t{}\t{}\n", format_time(&r.time), join(&r.linked_entities)));
            }
        }
        for (p, js) in &self.judgements {
            for (rel, j) in js {
                out.push_str(&format!("J\t{p}\t{rel}\t{}\n", u8::from(*j)));
            }
        }
        out
    }

    pub fn from_tsv(text: &str, path: &str) -> Result<Self, TimelineError> {
        let mut b = Benchmark { source: BiographySource::Bio, judgements: BTreeMap::new(), records: BTreeMap::new() };
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |m: String| parse_error(path, i + 1, m);
            let f: Vec<&str> = line.split('\t').collect();
            match f.as_slice() {
                ["S", "bio"] => b.source = BiographySource::Bio,
                ["S", "enc"] => b.source = BiographySource::Enc,
                ["R", p, t, iris] => {
                    let person = iri(p).map_err(&bad)?;
                    let record = BioRecord { time: parse_time(t).map_err(&bad)?, linked_entities: parse_iris(iris).map_err(&bad)? };
                    b.records.entry(person).or_default().push(record);
                }
                ["J", p, r, j] => {
                    let judgement = match *j {
                        "0" => false,
                        "1" => true,
                        other => return Err(bad(format!("judgement must be 0 or 1, got {other:?}"))),
                    };
                    b.judgements.entry(iri(p).map_err(&bad)?).or_default().insert(iri(r).map_err(&bad)?, judgement);
                }
                _ => return Err(bad(format!("unrecognised line {line:?}"))),
            }
        }
        Ok(b)
    }
}

fn parse_error(path: &str, line: usize, message: String) -> TimelineError {
    TimelineError::Parse { path: path.to_string(), line, message }
}

fn iri(s: &str) -> Result<Iri, String> {
    expand(s.trim()).map_err(|e| e.to_string())
}

fn join(iris: &BTreeSet<Iri>) -> String {
    if iris.is_empty() {
        return "-".into();
    }
    iris.iter().map(Iri::as_str).collect::<Vec<_>>().join(",")
}

fn parse_iris(text: &str) -> Result<BTreeSet<Iri>, String> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(BTreeSet::new());
    }
    text.split(',').map(iri).collect()
}

fn format_time(t: &TimeInterval) -> String {
    match (t.start, t.end) {
        (None, None) => "-".into(),
        (s, e) => {
            let show = |p: Option<TimePoint>| p.map(|p| p.to_string()).unwrap_or_default();
            format!("{}/{}", show(s), show(e))
        }
    }
}

/// `-`, a single date, or `start/end` with either side optional.
fn parse_time(text: &str) -> Result<TimeInterval, String> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(TimeInterval::default());
    }
    let point = |s: &str, b| -> Result<Option<TimePoint>, String> {
        if s.is_empty() {
            Ok(None)
        } else {
            TimePoint::parse(s, b).map(Some).map_err(|e| e.to_string())
        }
    };
    let (s, e) = text.split_once('/').unwrap_or((text, text));
    TimeInterval::new(point(s, Bound::Start)?, point(e, Bound::End)?).map_err(|e| e.to_string())
}

/// Reads a `.bio` file: `B person` opens a biography, `R time iris` adds a
/// record to it.
pub fn parse_bio_annotations(text: &str, path: &str) -> Result<Vec<BioAnnotation>, TimelineError> {
    let mut out: Vec<BioAnnotation> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |m: String| parse_error(path, i + 1, m);
        let f: Vec<&str> = line.split('\t').collect();
        match f.as_slice() {
            ["B", person] => out.push(BioAnnotation { person: iri(person).map_err(&bad)?, records: Vec::new() }),
            ["R", time, iris] => {
                let record = BioRecord { time: parse_time(time).map_err(&bad)?, linked_entities: parse_iris(iris).map_err(&bad)? };
                if record.time.is_empty() && record.linked_entities.is_empty() {
                    return Err(bad("record has neither a time nor an entity".into()));
                }
                out.last_mut().ok_or_else(|| bad("record before any B line".into()))?.records.push(record);
            }
            _ => return Err(bad(format!("unrecognised line {line:?}"))),
        }
    }
    Ok(out)
}

/// Reads a `.abs` file of `A person event` lines.
pub fn parse_abstract_links(text: &str, path: &str) -> Result<Vec<AbstractLinks>, TimelineError> {
    let mut by_person: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |m: String| parse_error(path, i + 1, m);
        match line.split('\t').collect::<Vec<_>>().as_slice() {
            ["A", p, e] => {
                by_person.entry(iri(p).map_err(&bad)?).or_default().insert(iri(e).map_err(&bad)?);
            }
            _ => return Err(bad(format!("unrecognised line {line:?}"))),
        }
    }
    Ok(by_person.into_iter().map(|(person, events)| AbstractLinks { person, events }).collect())
}

fn is_day(p: &Option<TimePoint>) -> bool {
    p.is_some_and(|p| p.precision == Precision::Day)
}

/// Whether a biography record describes a candidate relation: same exact
/// day, or the record links the connected entity and overlaps the relation
/// time, or the record links the connected event (no overlap needed).
pub fn record_matches(record: &BioRecord, candidate: &CandidateEntry, tkg: &Tkg) -> bool {
    let r = &candidate.relation.time;
    let same_day = is_day(&record.time.start)
        && record.time.start == record.time.end
        && is_day(&r.start)
        && record.time.start_date() == r.start_date();
    let linked = record.linked_entities.contains(&candidate.connected_entity);
    same_day || (linked && record.time.overlaps(r)) || (linked && tkg.is_event(&candidate.connected_entity))
}

/// Judges every candidate of every annotated person.
pub fn build_benchmark(input: &BenchmarkInput, tkg: &Tkg) -> Result<Benchmark, TimelineError> {
    let mut b = Benchmark {
        source: match input {
            BenchmarkInput::Bio(_) => BiographySource::Bio,
            BenchmarkInput::Abstracts(_) => BiographySource::Enc,
        },
        judgements: BTreeMap::new(),
        records: BTreeMap::new(),
    };
    let candidates_of = |person: &Iri| -> Result<Vec<CandidateEntry>, TimelineError> {
        collect_candidates(tkg, person).map_err(|_| TimelineError::UnknownPerson(person.clone()))
    };
    match input {
        BenchmarkInput::Bio(annotations) => {
            for a in annotations {
                let js = b.judgements.entry(a.person.clone()).or_default();
                for c in candidates_of(&a.person)? {
                    let hit = a.records.iter().any(|r| record_matches(r, &c, tkg));
                    let slot = js.entry(c.relation.uri.clone()).or_insert(false);
                    *slot |= hit;
                }
                b.records.entry(a.person.clone()).or_default().extend(a.records.iter().cloned());
            }
        }
        BenchmarkInput::Abstracts(links) => {
            for a in links {
                let js = b.judgements.entry(a.person.clone()).or_default();
                for c in candidates_of(&a.person)? {
                    let hit = a.events.contains(&c.connected_entity) && tkg.is_event(&c.connected_entity);
                    let slot = js.entry(c.relation.uri.clone()).or_insert(false);
                    *slot |= hit;
                }
            }
        }
    }
    Ok(b)
}

/// Shuffles the persons with `seed` and halves them into (train, test).
pub fn split_entities(persons: &[Iri], seed: u64) -> (Vec<Iri>, Vec<Iri>) {
    let mut sorted = persons.to_vec();
    sorted.sort();
    sorted.dedup();
    sorted.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let test = sorted.split_off(sorted.len().div_ceil(2));
    (sorted, test)
}
