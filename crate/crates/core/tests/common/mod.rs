//! Fixture builders shared by the integration tests.
#![allow(dead_code)]

pub mod learning;
pub mod oracles;

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tkgraph::interlink::{CorpusStats, LanguageStats};
use tkgraph::kg::vocab::expand;
use tkgraph::kg::{Bound, Iri, ProvenanceKind, TemporalEntity, TemporalRelation, TimeInterval, TimePoint, Tkg};
use tkgraph::kg::vocab::FUSED_GRAPH;
use tkgraph::pipeline::{build_and_fuse, BuildOutput, Manifest};
use tkgraph::timeline::{build_benchmark, parse_abstract_links, parse_bio_annotations, Benchmark, BenchmarkInput, CandidateEntry, FeatureSpace};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

pub fn iri(s: &str) -> Iri {
    expand(s).unwrap()
}

pub fn day(y: i32, m: u32, d: u32) -> TimePoint {
    TimePoint::ymd(y, m, d).unwrap()
}

pub fn relation(uri: &str, subject: &Iri, object: &Iri, role: &str, time: TimeInterval, kind: ProvenanceKind) -> TemporalRelation {
    TemporalRelation {
        uri: iri(uri),
        time,
        subject_entity: subject.clone(),
        object_entity: object.clone(),
        role: iri(role),
        provenance_kind: kind,
    }
}

fn bump<'a>(stats: &'a mut CorpusStats, lang: &str) -> &'a mut LanguageStats {
    stats.languages.entry(lang.to_string()).or_default()
}

fn set_mentions(stats: &mut CorpusStats, lang: &str, a: &Iri, b: &Iri, n: u64) {
    let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    bump(stats, lang).mentions.insert(key, n);
}

pub struct FeatureWorld {
    pub tkg: Tkg,
    pub stats: CorpusStats,
    pub space: FeatureSpace,
    pub candidate: CandidateEntry,
}

/// Barack Obama with 442 connected entities whose English link totals are
/// all distinct: 360 above the second inauguration's 84 and 81 below it.
/// Forty of them are events with co-mention counts placing the inauguration
/// 18th in Portuguese and 39th over all languages.
pub fn feature_world() -> FeatureWorld {
    let obama = iri("eventKG-r:entity_0");
    let inauguration = iri("eventKG-r:event_0");
    let mut tkg = Tkg::default();
    let mut stats = CorpusStats::default();
    for lang in ["en", "fr", "pt"] {
        bump(&mut stats, lang);
    }

    let mut person = TemporalEntity::new(obama.clone(), false);
    person.time.start = Some(day(1961, 8, 4));
    person.types = [iri("dbo:Politician"), iri("dbo:President"), iri("dbo:Person")].into();
    tkg.entities.insert(obama.clone(), person);

    let mut ev = TemporalEntity::new(inauguration.clone(), true);
    ev.time = TimeInterval::point(day(2013, 1, 21));
    tkg.entities.insert(inauguration.clone(), ev.clone());
    tkg.relations.push(TemporalRelation {
        uri: iri("eventKG-r:relation_0"),
        time: ev.time,
        subject_entity: obama.clone(),
        object_entity: inauguration.clone(),
        role: iri("wd:P793"),
        provenance_kind: ProvenanceKind::InducedFromEvent,
    });
    bump(&mut stats, "en").link_totals.insert(inauguration.clone(), 84);
    set_mentions(&mut stats, "en", &obama, &inauguration, 30);
    set_mentions(&mut stats, "pt", &obama, &inauguration, 4);
    set_mentions(&mut stats, "fr", &obama, &inauguration, 2);

    let totals: Vec<u64> = (85..=444).chain(0..=80).collect();
    for (k, total) in totals.into_iter().enumerate() {
        let is_event = k < 40;
        let id = if is_event { iri(&format!("eventKG-r:event_{}", k + 1)) } else { iri(&format!("eventKG-r:entity_{}", k + 1)) };
        let mut e = TemporalEntity::new(id.clone(), is_event);
        e.time = TimeInterval::point(day(1990 + (k % 30) as i32, 1 + (k % 12) as u32, 10));
        tkg.entities.insert(id.clone(), e.clone());
        let kind = if is_event { ProvenanceKind::InducedFromEvent } else { ProvenanceKind::InducedFromEntity };
        let role = if k % 3 == 0 { "wd:P26" } else { "wd:P793" };
        tkg.relations.push(relation(&format!("eventKG-r:relation_{}", k + 1), &obama, &id, role, e.time, kind));
        bump(&mut stats, "en").link_totals.insert(id.clone(), total);
        if is_event {
            let (all, pt) = match k {
                k if k < 17 => (37 + k as u64, 5 + k as u64),
                k if k < 38 => (37 + k as u64, 0),
                k => (k as u64 - 37, 0),
            };
            let fr = u64::from(k % 2 == 0 && all > pt);
            set_mentions(&mut stats, "pt", &obama, &id, pt);
            set_mentions(&mut stats, "fr", &obama, &id, fr);
            set_mentions(&mut stats, "en", &obama, &id, all - pt - fr);
        }
    }
    tkg.relations.sort_by(|a, b| a.uri.cmp(&b.uri));

    let space = FeatureSpace::new(
        vec![iri("dbo:Politician"), iri("dbo:President"), iri("dbo:Scientist")],
        vec![iri("wd:P793"), iri("wd:P26")],
        &stats,
    );
    let candidate = CandidateEntry {
        relation: tkg.relations.iter().find(|r| r.object_entity == inauguration).unwrap().clone(),
        timeline_entity: obama,
        connected_entity: inauguration,
    };
    FeatureWorld { tkg, stats, space, candidate }
}

/// Random persons with random temporal relations and interlinking counts.
pub fn random_world(seed: u64, persons: usize, per_person: usize) -> (Tkg, CorpusStats, Vec<Iri>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tkg = Tkg::default();
    let mut stats = CorpusStats::default();
    let roles = ["wd:P26", "wd:P793", "wd:P69", "wd:P108", "wd:P1344"];
    let types = ["dbo:Politician", "dbo:Scientist", "dbo:Athlete", "dbo:Artist"];
    let mut ids = Vec::new();
    let pool = persons * per_person;
    for j in 0..pool {
        let is_event = j % 3 == 0;
        let id = if is_event { iri(&format!("eventKG-r:event_{j}")) } else { iri(&format!("eventKG-r:entity_{}", pool + j)) };
        let mut e = TemporalEntity::new(id.clone(), is_event);
        let y = rng.gen_range(1900..2020);
        let start = TimePoint::ymd(y, rng.gen_range(1..=12), rng.gen_range(1..=28)).unwrap();
        e.time = if rng.gen_bool(0.2) {
            TimeInterval::default()
        } else {
            TimeInterval::new(Some(start), Some(TimePoint::year(y + rng.gen_range(0..5), Bound::End).unwrap())).unwrap()
        };
        for lang in ["en", "de"] {
            bump(&mut stats, lang).link_totals.insert(id.clone(), rng.gen_range(0..50));
        }
        tkg.entities.insert(id, e);
    }
    let others: Vec<Iri> = tkg.entities.keys().cloned().collect();
    let mut n = 0;
    for p in 0..persons {
        let id = iri(&format!("eventKG-r:entity_{p}"));
        let mut e = TemporalEntity::new(id.clone(), false);
        e.time.start = Some(TimePoint::ymd(rng.gen_range(1900..1990), 1, 1).unwrap());
        e.types.insert(iri(types[rng.gen_range(0..types.len())]));
        tkg.entities.insert(id.clone(), e);
        for _ in 0..per_person {
            let other = &others[rng.gen_range(0..others.len())];
            let target = tkg.entities[other].clone();
            let (time, kind) = if target.time.is_empty() || rng.gen_bool(0.3) {
                let y = rng.gen_range(1900..2020);
                (TimeInterval::point(TimePoint::year(y, Bound::Start).unwrap()), ProvenanceKind::Explicit)
            } else if target.is_event {
                (target.time, ProvenanceKind::InducedFromEvent)
            } else {
                (target.time, ProvenanceKind::InducedFromEntity)
            };
            let (s, o) = if rng.gen_bool(0.8) { (&id, other) } else { (other, &id) };
            let role = roles[rng.gen_range(0..roles.len())];
            tkg.relations.push(relation(&format!("eventKG-r:relation_{n}"), s, o, role, time, kind));
            n += 1;
            for lang in ["en", "de"] {
                set_mentions(&mut stats, lang, &id, other, rng.gen_range(0..20));
            }
        }
        ids.push(id);
    }
    tkg.relations.sort_by(|a, b| a.uri.cmp(&b.uri));
    (tkg, stats, ids)
}

/// (tp, fn, fp, tn), then weighted precision, recall and F1 as exact
/// fractions, then whether some ratio divides by zero.
pub type ConfusionCase = ((usize, usize, usize, usize), (f64, f64), (f64, f64), (f64, f64), bool);

pub const CONFUSION_CASES: [ConfusionCase; 10] = [
    ((2, 0, 2, 0), (1.0, 4.0), (1.0, 2.0), (1.0, 3.0), true),
    ((3, 0, 0, 3), (1.0, 1.0), (1.0, 1.0), (1.0, 1.0), false),
    ((0, 2, 2, 0), (0.0, 1.0), (0.0, 1.0), (0.0, 1.0), true),
    ((1, 1, 1, 1), (1.0, 2.0), (1.0, 2.0), (1.0, 2.0), false),
    ((3, 1, 2, 4), (18.0, 25.0), (7.0, 10.0), (116.0, 165.0), false),
    ((5, 0, 3, 2), (13.0, 16.0), (7.0, 10.0), (61.0, 91.0), false),
    ((0, 0, 1, 4), (1.0, 1.0), (4.0, 5.0), (8.0, 9.0), true),
    ((4, 0, 0, 0), (1.0, 1.0), (1.0, 1.0), (1.0, 1.0), true),
    ((7, 3, 1, 9), (13.0, 16.0), (4.0, 5.0), (79.0, 99.0), false),
    ((2, 5, 0, 13), (59.0, 72.0), (3.0, 4.0), (391.0, 558.0), false),
];

/// Prediction and gold vectors with the given confusion counts.
pub fn confusion_labels(tp: usize, fnn: usize, fp: usize, tn: usize) -> (Vec<bool>, Vec<bool>) {
    let mut pred = Vec::new();
    let mut gold = Vec::new();
    for (n, p, g) in [(tp, true, true), (fnn, false, true), (fp, true, false), (tn, false, false)] {
        pred.extend(std::iter::repeat_n(p, n));
        gold.extend(std::iter::repeat_n(g, n));
    }
    (pred, gold)
}

pub const MANIFESTS: [&str; 3] = ["obama/obama.toml", "query1/query1.toml", "query2/query2.toml"];

pub fn fused(manifest: &str) -> BuildOutput {
    build_and_fuse(&Manifest::load(&fixture(manifest)).unwrap()).unwrap().0
}

/// The biography benchmark of the running example, resolved to canonical ids.
pub fn obama_benchmark(out: &BuildOutput) -> Benchmark {
    let text = std::fs::read_to_string(fixture("obama/obama.bio")).unwrap();
    let mut annotations = parse_bio_annotations(&text, "obama.bio").unwrap();
    for a in &mut annotations {
        a.person = out.clustering.resolve(&a.person);
        for r in &mut a.records {
            r.linked_entities = r.linked_entities.iter().map(|e| out.clustering.resolve(e)).collect();
        }
    }
    let tkg = tkgraph::kg::to_tkg(&out.store, &FUSED_GRAPH).unwrap();
    build_benchmark(&BenchmarkInput::Bio(annotations), &tkg).unwrap()
}

/// The abstract-link benchmark of the election fixture.
pub fn query2_benchmark(out: &BuildOutput) -> Benchmark {
    let text = std::fs::read_to_string(fixture("query2/query2.abs")).unwrap();
    let mut links = parse_abstract_links(&text, "query2.abs").unwrap();
    for l in &mut links {
        l.person = out.clustering.resolve(&l.person);
        l.events = l.events.iter().map(|e| out.clustering.resolve(e)).collect();
    }
    let tkg = tkgraph::kg::to_tkg(&out.store, &FUSED_GRAPH).unwrap();
    build_benchmark(&BenchmarkInput::Abstracts(links), &tkg).unwrap()
}

/// Every fixture store paired with a benchmark judged on it.
pub fn fixture_benchmarks() -> Vec<(BuildOutput, Benchmark)> {
    let obama = fused(MANIFESTS[0]);
    let bio = obama_benchmark(&obama);
    let q1 = fused(MANIFESTS[1]);
    let q2 = fused(MANIFESTS[2]);
    let abs = query2_benchmark(&q2);
    vec![(obama, bio.clone()), (q1, bio), (q2, abs)]
}

pub fn source_graphs(store: &tkgraph::kg::QuadStore) -> Vec<Iri> {
    store.graphs().map(|(g, _)| g.clone()).filter(|g| *g != *FUSED_GRAPH).collect()
}
