mod common;

use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tkgraph::interlink::CorpusStats;
use tkgraph::kg::{Bound, Iri, ProvenanceKind, TemporalEntity, TimeInterval, TimePoint, Tkg};
use tkgraph::timeline::{
    build_benchmark, build_feature_space, collect_candidates, extract_features, generate_timeline, predict, record_matches,
    render_html, render_tsv, split_entities, tm_baseline, train_instances, BenchmarkInput, BioAnnotation, BioRecord,
    CandidateEntry, FeatureExtractor, FeatureSpace, FeatureVector, Normalization, RelevanceModel, TimelineError,
    TmConfig, TrainConfig, ALL_LANGUAGES,
};

use common::learning::{accuracy, check_contract, imbalanced, recall, rule_model, separable, space20};
use common::oracles::{benchmark_case, record_oracle};
use common::{day, feature_world, iri, random_world, relation};

fn feature(space: &FeatureSpace, v: &FeatureVector, name: &str) -> f64 {
    v.values[space.index_of(name).unwrap_or_else(|| panic!("no feature {name}"))]
}

#[test]
fn inauguration_feature_values() {
    let t = feature_world();
    let v = extract_features(&t.candidate, &t.space, &t.tkg, &t.stats);
    assert_eq!(v.values.len(), t.space.len());
    let f = |n: &str| feature(&t.space, &v, n);
    assert_eq!(f("TEF-C:dbo:Politician"), 1.0);
    assert_eq!(f("TEF-C:dbo:President"), 1.0);
    assert_eq!(f("TEF-C:dbo:Scientist"), 0.0);
    assert_eq!(f("CEF-M:en"), 84.0);
    assert_eq!(f("CEF-MR:en"), 361.0);
    assert!((f("CEF-MRR:en") - 361.0 / 442.0).abs() <= 1e-9);
    assert_eq!(f("CEF-E"), 1.0);
    assert_eq!(f("TRF-PI:wd:P793"), 1.0);
    assert_eq!(f("TRF-PI:wd:P26"), 0.0);
    assert_eq!(f("TRF-M:pt"), 4.0);
    assert_eq!(f("TRF-MR:pt"), 18.0);
    assert_eq!(f(&format!("TRF-M:{ALL_LANGUAGES}")), 36.0);
    assert_eq!(f(&format!("TRF-MR:{ALL_LANGUAGES}")), 39.0);
    assert_eq!(f("TF-TDS").abs(), 18798.0);
    assert_eq!(f("TF-TDS"), -18798.0);
    assert_eq!(f("TF-TDS-missing"), 0.0);
    assert_eq!(f("TF-TDE-missing"), 1.0);
    assert_eq!(f("TF-TP"), 2.0);
}

#[test]
fn most_linked_connected_entity_ranks_first() {
    let t = feature_world();
    let top = t.tkg.relations.iter().find(|r| r.object_entity == iri("eventKG-r:entity_360")).unwrap();
    let c = CandidateEntry { relation: top.clone(), timeline_entity: t.candidate.timeline_entity.clone(), connected_entity: top.object_entity.clone() };
    let v = extract_features(&c, &t.space, &t.tkg, &t.stats);
    assert_eq!(feature(&t.space, &v, "CEF-M:en"), 444.0);
    assert_eq!(feature(&t.space, &v, "CEF-MR:en"), 1.0);
    assert_eq!(feature(&t.space, &v, "TF-TP"), 1.0);
}

fn scaled(stats: &CorpusStats, k: u64) -> CorpusStats {
    let mut s = stats.clone();
    for l in s.languages.values_mut() {
        l.link_totals.values_mut().for_each(|n| *n *= k);
        l.mentions.values_mut().for_each(|n| *n *= k);
    }
    s
}

#[test]
fn ranks_are_scale_invariant() {
    let (tkg, stats, persons) = random_world(7, 6, 25);
    let cands: Vec<CandidateEntry> = persons.iter().flat_map(|p| collect_candidates(&tkg, p).unwrap()).collect();
    let space = build_feature_space(&cands, &persons, &tkg, &stats).unwrap();
    let rank_slots: Vec<usize> = space
        .names()
        .iter()
        .enumerate()
        .filter(|(_, n)| ["CEF-MR:", "CEF-MRR:", "TRF-MR:", "TRF-MRR:"].iter().any(|p| n.starts_with(p)))
        .map(|(i, _)| i)
        .collect();
    assert!(!rank_slots.is_empty());
    for k in [2, 7, 1000] {
        let big = scaled(&stats, k);
        let mut a = FeatureExtractor::new(&space, &tkg, &stats);
        let mut b = FeatureExtractor::new(&space, &tkg, &big);
        for c in &cands {
            let (x, y) = (a.extract(c), b.extract(c));
            for &i in &rank_slots {
                assert_eq!(x.values[i], y.values[i], "{}", space.names()[i]);
            }
        }
    }
}

#[test]
fn feature_space_thresholds() {
    let (mut tkg, stats, persons) = random_world(3, 4, 10);
    let counts = [10usize, 8, 2, 1];
    let names = ["dbo:A", "dbo:B", "dbo:C", "dbo:D"];
    let mut people = Vec::new();
    for i in 0..10 {
        let id = iri(&format!("eventKG-r:entity_{}", 900 + i));
        let mut e = TemporalEntity::new(id.clone(), false);
        for (n, t) in counts.iter().zip(names) {
            if i < *n {
                e.types.insert(iri(t));
            }
        }
        tkg.entities.insert(id.clone(), e);
        people.push(id);
    }
    let cands: Vec<CandidateEntry> = persons.iter().flat_map(|p| collect_candidates(&tkg, p).unwrap()).collect();
    let space = build_feature_space(&cands, &people, &tkg, &stats).unwrap();
    assert_eq!(space.entity_types, vec![iri("dbo:A"), iri("dbo:B")]);

    let obama = iri("eventKG-r:entity_0");
    let mk = |role: &str, n: usize| -> Vec<CandidateEntry> {
        (0..n)
            .map(|i| CandidateEntry {
                relation: relation(&format!("eventKG-r:r_{role}_{i}"), &obama, &obama, role, TimeInterval::default(), ProvenanceKind::Explicit),
                timeline_entity: obama.clone(),
                connected_entity: obama.clone(),
            })
            .collect()
    };
    let mut mixed = mk("wd:P26", 3);
    mixed.extend(mk("wd:P793", 1));
    mixed.extend(mk("wd:P69", 6));
    let space = build_feature_space(&mixed, &people, &tkg, &stats).unwrap();
    assert_eq!(space.predicates, vec![iri("wd:P26"), iri("wd:P69")]);
    let mut spread = Vec::new();
    for i in 0..5 {
        spread.extend(mk(&format!("wd:P{}", 100 + i), 1));
    }
    assert!(build_feature_space(&spread, &people, &tkg, &stats).unwrap().predicates.is_empty());
    assert!(matches!(build_feature_space(&[], &people, &tkg, &stats), Err(TimelineError::EmptyTraining)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn benchmark_matches_literal_rule(seed in any::<u64>()) {
        let (tkg, person, records) = benchmark_case(seed);
        let b = build_benchmark(&BenchmarkInput::Bio(vec![BioAnnotation { person: person.clone(), records: records.clone() }]), &tkg).unwrap();
        for c in collect_candidates(&tkg, &person).unwrap() {
            for r in &records {
                prop_assert_eq!(record_matches(r, &c, &tkg), record_oracle(r, &c, &tkg));
            }
            let expected = records.iter().any(|r| record_oracle(r, &c, &tkg));
            prop_assert_eq!(b.judgements[&person][&c.relation.uri], expected);
        }
    }
}

#[test]
fn worked_benchmark_cases() {
    let obama = iri("eventKG-r:entity_0");
    let afghanistan = iri("eventKG-r:event_1");
    let punahou = iri("eventKG-r:entity_2");
    let michelle = iri("eventKG-r:entity_3");
    let inauguration = iri("eventKG-r:event_4");
    let mut tkg = Tkg::default();
    for (id, ev) in [(&obama, false), (&afghanistan, true), (&punahou, false), (&michelle, false), (&inauguration, true)] {
        tkg.entities.insert(id.clone(), TemporalEntity::new(id.clone(), ev));
    }
    let span = |a: i32, b: i32| TimeInterval::new(Some(TimePoint::year(a, Bound::Start).unwrap()), Some(TimePoint::year(b, Bound::End).unwrap())).unwrap();
    tkg.relations = vec![
        relation("eventKG-r:relation_0", &obama, &afghanistan, "wd:P607", span(2001, 2021), ProvenanceKind::InducedFromEvent),
        relation("eventKG-r:relation_1", &obama, &punahou, "wd:P69", span(1971, 1979), ProvenanceKind::Explicit),
        relation("eventKG-r:relation_2", &obama, &michelle, "wd:P26", TimeInterval { start: Some(day(1992, 10, 3)), end: None }, ProvenanceKind::Explicit),
        relation("eventKG-r:relation_3", &obama, &inauguration, "wd:P793", TimeInterval::point(day(2009, 1, 20)), ProvenanceKind::InducedFromEvent),
    ];
    let cands = collect_candidates(&tkg, &obama).unwrap();
    let rec = |time: TimeInterval, links: &[&Iri]| BioRecord { time, linked_entities: links.iter().map(|x| (*x).clone()).collect() };
    let month = |y, m| TimeInterval::new(Some(TimePoint::month(y, m, Bound::Start).unwrap()), Some(TimePoint::month(y, m, Bound::End).unwrap())).unwrap();
    let exact = rec(TimeInterval::point(day(2009, 1, 20)), &[]);
    assert!(record_matches(&exact, &cands[3], &tkg));
    assert!(!record_matches(&exact, &cands[2], &tkg));
    let war = rec(month(2010, 8), &[&afghanistan, &iri("eventKG-r:event_99")]);
    assert!(record_matches(&war, &cands[0], &tkg));
    let early_war = rec(month(1990, 8), &[&afghanistan]);
    assert!(record_matches(&early_war, &cands[0], &tkg));
    let school = rec(span(1979, 1979), &[&punahou]);
    assert!(record_matches(&school, &cands[1], &tkg));
    let late_school = rec(span(1985, 1985), &[&punahou]);
    assert!(!record_matches(&late_school, &cands[1], &tkg));
    let birth = rec(TimeInterval::point(day(1961, 8, 4)), &[&iri("eventKG-r:entity_9")]);
    assert!(cands.iter().all(|c| !record_matches(&birth, c, &tkg)));

    let b = build_benchmark(&BenchmarkInput::Bio(vec![BioAnnotation { person: obama.clone(), records: vec![war, school] }]), &tkg).unwrap();
    let judged: Vec<bool> = cands.iter().map(|c| b.judgements[&obama][&c.relation.uri]).collect();
    assert_eq!(judged, [true, true, false, false]);
    assert_eq!(tkgraph::timeline::Benchmark::from_tsv(&b.to_tsv(), "b").unwrap(), b);
    let unknown = BenchmarkInput::Bio(vec![BioAnnotation { person: iri("eventKG-r:entity_404"), records: vec![] }]);
    assert!(matches!(build_benchmark(&unknown, &tkg), Err(TimelineError::UnknownPerson(_))));
    let abs = BenchmarkInput::Abstracts(vec![tkgraph::timeline::AbstractLinks {
        person: obama.clone(),
        events: [inauguration.clone(), punahou.clone()].into(),
    }]);
    let enc = build_benchmark(&abs, &tkg).unwrap();
    let judged: Vec<bool> = cands.iter().map(|c| enc.judgements[&obama][&c.relation.uri]).collect();
    assert_eq!(judged, [false, false, false, true]);
}

#[test]
fn split_is_seeded_halving() {
    let persons: Vec<Iri> = (0..11).map(|i| iri(&format!("eventKG-r:entity_{i}"))).collect();
    let (train, test) = split_entities(&persons, 9);
    assert_eq!((train.len(), test.len()), (6, 5));
    assert_eq!(split_entities(&persons, 9), (train.clone(), test.clone()));
    let all: BTreeSet<Iri> = train.iter().chain(&test).cloned().collect();
    assert_eq!(all.len(), 11);
    assert_ne!(split_entities(&persons, 10).0, train);
}

#[test]
fn separable_data_is_learned() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (train, train_y) = separable(&mut rng, 200);
    let (test, test_y) = separable(&mut rng, 200);
    let start = std::time::Instant::now();
    let out = train_instances(&train, &train_y, &space20(), &TrainConfig { balance: false, ..Default::default() }).unwrap();
    assert_eq!(accuracy(&out.model, &train, &train_y), 1.0);
    assert!(accuracy(&out.model, &test, &test_y) >= 0.95);
    assert!(out.loss.windows(2).all(|w| w[1] <= w[0]));
    let again = train_instances(&train, &train_y, &space20(), &TrainConfig { balance: false, ..Default::default() }).unwrap();
    assert_eq!(again, out);
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn weighting_and_balancing_raise_recall() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (rows, labels) = imbalanced(&mut rng);
    let (test, test_y) = imbalanced(&mut rng);
    let weighted = train_instances(&rows, &labels, &space20(), &TrainConfig::default()).unwrap().model;
    let plain = TrainConfig { positive_weight: 1.0, balance: false, ..Default::default() };
    let unweighted = train_instances(&rows, &labels, &space20(), &plain).unwrap().model;
    let (rw, ru) = (recall(&weighted, &test, &test_y), recall(&unweighted, &test, &test_y));
    assert!(rw >= 0.9, "weighted recall {rw}");
    assert!(ru < rw, "unweighted recall {ru} vs {rw}");
    assert_eq!(train_instances(&rows, &labels, &space20(), &TrainConfig::default()).unwrap().model, weighted);
}

#[test]
fn degenerate_and_mismatched_training() {
    let space = space20();
    let rows = vec![vec![0.5; 20]; 4];
    assert!(matches!(train_instances(&rows, &[true; 4], &space, &TrainConfig::default()), Err(TimelineError::DegenerateTraining(_))));
    assert!(matches!(train_instances(&[], &[], &space, &TrainConfig::default()), Err(TimelineError::EmptyTraining)));
    assert!(matches!(
        train_instances(&[vec![0.0; 3]], &[true], &space, &TrainConfig::default()),
        Err(TimelineError::DimensionMismatch { expected: 20, got: 3 })
    ));
    let same = train_instances(&rows, &[true, false, false, false], &space, &TrainConfig::default()).unwrap().model;
    let verdict = predict(&same, &FeatureVector { values: vec![0.5; 20] }).unwrap();
    assert!(verdict, "weighted positive class wins on identical vectors");
}

#[test]
fn prediction_sign_and_layout() {
    let space = space20();
    let model = RelevanceModel {
        space: space.clone(),
        normalization: Normalization { min: vec![0.0; 20], max: vec![2.0; 20] },
        weights: (0..20).map(|j| if j == 0 { 1.0 } else { 0.0 }).collect(),
        bias: -0.5,
        config: TrainConfig::default(),
    };
    let v = |x0: f64| FeatureVector { values: (0..20).map(|j| if j == 0 { x0 } else { 7.0 }).collect() };
    assert!(!predict(&model, &FeatureVector { values: vec![0.0; 20] }).unwrap());
    assert!(predict(&model, &v(1.0)).unwrap());
    assert!(predict(&model, &v(1.4)).unwrap());
    assert!(!predict(&model, &v(0.6)).unwrap());
    assert!(matches!(predict(&model, &FeatureVector { values: vec![0.0; 3] }), Err(TimelineError::DimensionMismatch { .. })));
    let z = model.normalization.apply(&v(1.4).values);
    assert_eq!(model.score(&v(1.4).values).unwrap(), model.score_normalized(&z));
}

#[test]
fn model_file_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (rows, labels) = separable(&mut rng, 120);
    let model = train_instances(&rows, &labels, &space20(), &TrainConfig::default()).unwrap().model;
    let text = model.to_text();
    let back = RelevanceModel::from_text(&text, "m.txt").unwrap();
    assert_eq!(back.to_text(), text);
    for _ in 0..100 {
        let values: Vec<f64> = (0..20).map(|_| rng.gen_range(-0.5..1.5)).collect();
        let v = FeatureVector { values };
        assert_eq!(model.score(&v.values).unwrap(), back.score(&v.values).unwrap());
        assert_eq!(predict(&model, &v).unwrap(), predict(&back, &v).unwrap());
    }
    assert!(RelevanceModel::from_text("not a model\n", "m.txt").is_err());
}

#[test]
fn timeline_contract_on_random_worlds() {
    for seed in 0..8 {
        let (tkg, stats, persons) = random_world(seed, 5, 30);
        let cands: Vec<CandidateEntry> = persons.iter().flat_map(|p| collect_candidates(&tkg, p).unwrap()).collect();
        let space = build_feature_space(&cands, &persons, &tkg, &stats).unwrap();
        let mut labels = Vec::new();
        let mut rows = Vec::new();
        let mut fx = FeatureExtractor::new(&space, &tkg, &stats);
        for c in &cands {
            rows.push(fx.extract(c).values);
            labels.push(tkg.is_event(&c.connected_entity) || c.relation.provenance_kind == ProvenanceKind::Explicit);
        }
        let trained = train_instances(&rows, &labels, &space, &TrainConfig { seed, ..Default::default() }).unwrap().model;
        for model in [trained, rule_model(&space, -0.5, 1.0), rule_model(&space, 1.0, 0.0), rule_model(&space, -1.0, 0.0)] {
            for p in &persons {
                let tl = generate_timeline(p, &model, &tkg, &stats).unwrap();
                check_contract(&tl, &model, &tkg, &stats);
            }
        }
        let all = generate_timeline(&persons[0], &rule_model(&space, 1.0, 0.0), &tkg, &stats).unwrap();
        assert_eq!(all.entries.len(), collect_candidates(&tkg, &persons[0]).unwrap().len());
        assert!(generate_timeline(&persons[0], &rule_model(&space, -1.0, 0.0), &tkg, &stats).unwrap().entries.is_empty());
    }
}

#[test]
fn same_start_orders_by_iri() {
    let p = iri("eventKG-r:entity_0");
    let mut tkg = Tkg::default();
    for id in [&p, &iri("eventKG-r:entity_1"), &iri("eventKG-r:entity_2")] {
        tkg.entities.insert(id.clone(), TemporalEntity::new(id.clone(), false));
    }
    let t = TimeInterval::point(day(2000, 5, 5));
    tkg.relations = vec![
        relation("eventKG-r:relation_b", &p, &iri("eventKG-r:entity_1"), "wd:P26", t, ProvenanceKind::Explicit),
        relation("eventKG-r:relation_a", &p, &iri("eventKG-r:entity_2"), "wd:P26", t, ProvenanceKind::Explicit),
    ];
    let stats = CorpusStats::default();
    let space = FeatureSpace::new(vec![], vec![], &stats);
    let tl = generate_timeline(&p, &rule_model(&space, 1.0, 0.0), &tkg, &stats).unwrap();
    let order: Vec<&str> = tl.entries.iter().map(|c| c.relation.uri.local_name()).collect();
    assert_eq!(order, ["relation_a", "relation_b"]);
    assert_eq!(generate_timeline(&p, &rule_model(&space, 1.0, 0.0), &tkg, &stats).unwrap(), tl);
    assert!(matches!(generate_timeline(&iri("eventKG-r:entity_9"), &rule_model(&space, 1.0, 0.0), &tkg, &stats), Err(TimelineError::UnknownEntity(_))));
    assert!(collect_candidates(&tkg, &iri("eventKG-r:entity_1")).unwrap().len() == 1);
    let tsv = render_tsv(&tl);
    assert_eq!(tsv.lines().count(), 3);
    assert!(tsv.lines().nth(1).unwrap().starts_with("2000-05-05\t2000-05-05\twd:P26\teventKG-r:entity_2\texplicit"));
    let html = render_html(&tl);
    assert!(html.contains("<svg") && html.contains("orange"));
}

#[test]
fn tm_baseline_drops_pre_birth_relations() {
    let obama = iri("eventKG-r:entity_0");
    let ww2 = iri("eventKG-r:event_1");
    let mut tkg = Tkg::default();
    let mut person = TemporalEntity::new(obama.clone(), false);
    person.time.start = Some(day(1961, 8, 4));
    tkg.entities.insert(obama.clone(), person);
    let mut war = TemporalEntity::new(ww2.clone(), true);
    war.time = TimeInterval::new(Some(day(1939, 9, 1)), Some(day(1945, 9, 2))).unwrap();
    tkg.entities.insert(ww2.clone(), war.clone());
    let mut stats = CorpusStats::default();
    let en = stats.languages.entry("en".into()).or_default();
    en.link_totals.insert(ww2.clone(), 100_000);
    tkg.relations.push(relation("eventKG-r:relation_0", &obama, &ww2, "wd:P793", war.time, ProvenanceKind::InducedFromEvent));
    for i in 1..6 {
        let id = iri(&format!("eventKG-r:entity_{i}"));
        let mut e = TemporalEntity::new(id.clone(), false);
        e.time.start = Some(day(1950 + i * 10, 1, 1));
        tkg.entities.insert(id.clone(), e.clone());
        stats.languages.get_mut("en").unwrap().link_totals.insert(id.clone(), i as u64);
        let t = TimeInterval { start: Some(day(1955 + i * 10, 2, 2)), end: None };
        tkg.relations.push(relation(&format!("eventKG-r:relation_{i}"), &obama, &id, "wd:P26", t, ProvenanceKind::Explicit));
    }
    let cfg = TmConfig::default();
    let all = tm_baseline(&obama, &tkg, &stats, 100, &cfg).unwrap();
    assert_eq!(all.entries.len(), 5);
    assert!(all.entries.iter().all(|c| c.connected_entity != ww2));
    assert!(all.entries.iter().all(|c| c.relation.time.start_date().unwrap() >= NaiveDate::from_ymd_opt(1961, 8, 4).unwrap()));
    assert!(all.is_chronological());
    let top2 = tm_baseline(&obama, &tkg, &stats, 2, &cfg).unwrap();
    let picked: Vec<&str> = top2.entries.iter().map(|c| c.connected_entity.local_name()).collect();
    assert_eq!(picked, ["entity_4", "entity_5"]);
    assert!(tm_baseline(&obama, &tkg, &stats, 0, &cfg).unwrap().entries.is_empty());
    let strict = TmConfig { min_frequency: 1 };
    assert!(tm_baseline(&obama, &tkg, &stats, 100, &strict).unwrap().entries.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn tm_baseline_never_predates_birth(seed in any::<u64>(), k in 0usize..40) {
        let (tkg, stats, persons) = random_world(seed, 3, 25);
        for p in &persons {
            let birth = tkg.entity(p).unwrap().time.start_date().unwrap();
            let tl = tm_baseline(p, &tkg, &stats, k, &TmConfig::default()).unwrap();
            prop_assert!(tl.entries.len() <= k);
            prop_assert!(tl.is_chronological());
            for c in &tl.entries {
                prop_assert!(c.relation.time.start_date().is_none_or(|s| s >= birth));
            }
        }
    }
}

#[test]
fn obama_fixture_candidates() {
    let m = tkgraph::pipeline::Manifest::load(&common::fixture("obama/obama.toml")).unwrap();
    let (out, _) = tkgraph::pipeline::build_and_fuse(&m).unwrap();
    let tkg = tkgraph::kg::to_tkg(&out.store, &tkgraph::kg::vocab::FUSED_GRAPH).unwrap();
    let obama = out.clustering.resolve(&iri("wd:Q76"));
    let cands = collect_candidates(&tkg, &obama).unwrap();
    let roles: BTreeSet<String> = cands.iter().map(|c| tkgraph::kg::vocab::compact(&c.relation.role)).collect();
    for r in ["wd:P26", "wd:P793", "prop-fr:candidat"] {
        assert!(roles.contains(r), "missing {r} in {roles:?}");
    }
    let space = FeatureSpace::new(vec![], vec![], &out.stats);
    let everything = rule_model(&space, 1.0, 0.0);
    let tl = generate_timeline(&obama, &everything, &tkg, &out.stats).unwrap();
    assert_eq!(tl.entries.len(), cands.len());
    check_contract(&tl, &everything, &tkg, &out.stats);
    let by_start: BTreeMap<String, Option<NaiveDate>> =
        tl.entries.iter().map(|c| (tkgraph::kg::vocab::compact(&c.relation.role), c.relation.time.start_date())).collect();
    assert_eq!(by_start["wd:P26"], NaiveDate::from_ymd_opt(1992, 10, 3));
}

