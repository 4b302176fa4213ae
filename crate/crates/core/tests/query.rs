use std::path::PathBuf;

use chrono::NaiveDate;
use tkgraph::kg::query::{canned_query_locations, canned_query_top_events, TopEvent};
use tkgraph::kg::vocab::{expand, graph_iri, FUSED_GRAPH, SEM_HAS_PLACE};
use tkgraph::kg::{Iri, KgError, QuadPattern, QuadStore, RelationNode, TemporalEntity};
use tkgraph::pipeline::{build_and_fuse, Manifest};

fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

fn iri(s: &str) -> Iri {
    expand(s).unwrap()
}

fn built(manifest: &str) -> QuadStore {
    let m = Manifest::load(&fixture(manifest)).unwrap();
    build_and_fuse(&m).unwrap().0.store
}

#[test]
fn locations_per_graph() {
    let store = built("query1/query1.toml");
    let rows = canned_query_locations(&store, &iri("dbr:First_inauguration_of_Barack_Obama")).unwrap();
    let shown: Vec<(String, String)> = rows.iter().map(|(l, g)| (l.local_name().to_string(), g.local_name().to_string())).collect();
    let expected = [
        ("United_States_Capitol", "event_kg"),
        ("Washington,_D.C.", "wikidata"),
        ("United_States_Capitol", "yago"),
        ("Washington,_D.C.", "yago"),
    ];
    assert_eq!(shown, expected.map(|(a, b)| (a.to_string(), b.to_string())));
    assert!(rows.iter().all(|(l, _)| l.starts_with("http://dbpedia.org/resource/")));
}

#[test]
fn yago_place_pattern() {
    let store = built("query1/query1.toml");
    let pattern = QuadPattern { predicate: Some(SEM_HAS_PLACE.clone()), graph: Some(graph_iri("yago").unwrap()), ..Default::default() };
    assert_eq!(store.quad_match(&pattern).len(), 2);
}

#[test]
fn top_events_by_mentions() {
    let store = built("query2/query2.toml");
    let rows = canned_query_top_events(&store, &iri("dbr:Barack_Obama"), &graph_iri("wikipedia_en").unwrap()).unwrap();
    let shown: Vec<(&str, u64, Option<String>)> =
        rows.iter().map(|r| (r.event.local_name(), r.count, r.start.map(|d| d.to_string()))).collect();
    assert_eq!(
        shown,
        vec![
            ("United_States_presidential_election,_2008", 719, Some("2008-11-04".to_string())),
            ("United_States_presidential_election_in_New_Jersey,_2012", 530, Some("2012-11-06".to_string())),
            ("United_States_presidential_election_in_New_Jersey,_2008", 522, Some("2008-11-04".to_string())),
            ("First_inauguration_of_Barack_Obama", 68, Some("2009-01-20".to_string())),
        ]
    );
}

fn small_store(counts: &[(&str, u64)]) -> QuadStore {
    let en = graph_iri("wikipedia_en").unwrap();
    let mut store = QuadStore::new();
    store.register_graph(FUSED_GRAPH.clone(), None);
    store.register_graph(en.clone(), None);
    let person = TemporalEntity::new(iri("eventKG-r:entity_0"), false);
    person.write(&mut store, &FUSED_GRAPH).unwrap();
    for (i, (name, n)) in counts.iter().enumerate() {
        let mut ev = TemporalEntity::new(iri(&format!("eventKG-r:{name}")), true);
        if i == 0 {
            ev.time.start = Some(tkgraph::kg::TimePoint::ymd(2000, 1, 1).unwrap());
        }
        ev.write(&mut store, &FUSED_GRAPH).unwrap();
        let mut rel = RelationNode::new(iri(&format!("eventKG-r:relation_{i}")), person.iri().clone(), None, ev.iri().clone());
        rel.mentions.insert(en.clone(), *n);
        rel.write(&mut store, &FUSED_GRAPH).unwrap();
    }
    store
}

#[test]
fn equal_counts_break_ties_by_iri() {
    let en = graph_iri("wikipedia_en").unwrap();
    for order in [[("event_b", 5), ("event_a", 5)], [("event_a", 5), ("event_b", 5)]] {
        let store = small_store(&order);
        let rows = canned_query_top_events(&store, &iri("eventKG-r:entity_0"), &en).unwrap();
        let names: Vec<&str> = rows.iter().map(|r| r.event.local_name()).collect();
        assert_eq!(names, ["event_a", "event_b"]);
    }
    let store = small_store(&[("event_z", 0), ("event_y", 0), ("event_x", 3)]);
    let rows = canned_query_top_events(&store, &iri("eventKG-r:entity_0"), &en).unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r.event.local_name()).collect();
    assert_eq!(names, ["event_x", "event_y", "event_z"]);
    assert_eq!(
        rows.iter().find(|r| r.event.local_name() == "event_z").cloned(),
        Some(TopEvent { event: iri("eventKG-r:event_z"), count: 0, start: NaiveDate::from_ymd_opt(2000, 1, 1) })
    );
}

#[test]
fn location_edge_cases() {
    let mut store = QuadStore::new();
    store.register_graph(FUSED_GRAPH.clone(), None);
    let quiet = TemporalEntity::new(iri("eventKG-r:event_0"), true);
    quiet.write(&mut store, &FUSED_GRAPH).unwrap();
    assert!(canned_query_locations(&store, quiet.iri()).unwrap().is_empty());
    let placed = TemporalEntity::new(iri("eventKG-r:event_1"), true);
    placed.write(&mut store, &FUSED_GRAPH).unwrap();
    store.add(placed.iri(), &SEM_HAS_PLACE, iri("dbr:Paris"), &FUSED_GRAPH).unwrap();
    let rows = canned_query_locations(&store, placed.iri()).unwrap();
    assert_eq!(rows, vec![(iri("dbr:Paris"), FUSED_GRAPH.clone())]);
    assert!(matches!(canned_query_locations(&store, &iri("dbr:Nowhere")), Err(KgError::UnknownEntity(_))));
    assert!(matches!(
        canned_query_top_events(&store, &iri("dbr:Nobody"), &FUSED_GRAPH),
        Err(KgError::UnknownEntity(_))
    ));
}
