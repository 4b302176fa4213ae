use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::kg::query::display_iri;
use crate::kg::vocab::{
    expand, EKG_LINKS, EKG_MENTIONS, FUSED_GRAPH, RDF_OBJECT, RDF_SUBJECT, RDF_TYPE, SEM_EVENT, SEM_HAS_BEGIN, SEM_HAS_END,
    SEM_HAS_PLACE,
};
use crate::kg::{Bound, Iri, QuadStore, Term};

const TOP_LINKED: usize = 10;
const TOP_PERSONS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphCompleteness {
    pub graph: Iri,
    pub events: usize,
    pub with_time: usize,
    pub with_location: usize,
    pub with_both: usize,
}

impl GraphCompleteness {
    fn pct(&self, n: usize) -> f64 {
        if self.events == 0 {
            0.0
        } else {
            100.0 * n as f64 / self.events as f64
        }
    }

    pub fn pct_time(&self) -> f64 {
        self.pct(self.with_time)
    }

    pub fn pct_location(&self) -> f64 {
        self.pct(self.with_location)
    }

    pub fn pct_both(&self) -> f64 {
        self.pct(self.with_both)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkedEvent {
    pub event: Iri,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoMention {
    pub event: Iri,
    pub persons: Vec<(Iri, u64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct StoreStats {
    pub graphs: Vec<GraphCompleteness>,
    /// Events with a start time in at least two source graphs.
    pub start_compared: usize,
    /// Of those, how many state the same start date everywhere.
    pub start_agreeing: usize,
    /// Most linked events per graph carrying link counts.
    pub most_linked: BTreeMap<String, Vec<LinkedEvent>>,
    pub co_mentions: Vec<CoMention>,
}

impl StoreStats {
    pub fn start_agreement(&self) -> f64 {
        if self.start_compared == 0 {
            0.0
        } else {
            self.start_agreeing as f64 / self.start_compared as f64
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("graph\tevents\twith_time\twith_location\twith_both\tpct_time\tpct_location\tpct_both\n");
        for g in &self.graphs {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}\n",
                g.graph.local_name(),
                g.events,
                g.with_time,
                g.with_location,
                g.with_both,
                g.pct_time(),
                g.pct_location(),
                g.pct_both()
            ));
        }
        out.push_str(&format!(
            "\nstart_agreement\t{}\t{}\t{:.4}\n",
            self.start_agreeing,
            self.start_compared,
            self.start_agreement()
        ));
        out.push_str("\ngraph\trank\tevent\tlinks\n");
        for (g, rows) in &self.most_linked {
            for (i, r) in rows.iter().enumerate() {
                out.push_str(&format!("{g}\t{}\t{}\t{}\n", i + 1, r.event, r.count));
            }
        }
        out.push_str("\nevent\trank\tperson\tmentions\n");
        for c in &self.co_mentions {
            for (i, (p, n)) in c.persons.iter().enumerate() {
                out.push_str(&format!("{}\t{}\t{p}\t{n}\n", c.event, i + 1));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let summary = serde_json::json!({
            "graphs": self.graphs.iter().map(|g| serde_json::json!({
                "graph": g.graph,
                "events": g.events,
                "with_time": g.with_time,
                "with_location": g.with_location,
                "with_both": g.with_both,
                "pct_time": g.pct_time(),
                "pct_location": g.pct_location(),
                "pct_both": g.pct_both(),
            })).collect::<Vec<_>>(),
            "start_compared": self.start_compared,
            "start_agreeing": self.start_agreeing,
            "start_agreement": self.start_agreement(),
            "most_linked": self.most_linked,
            "co_mentions": self.co_mentions,
        });
        serde_json::to_string_pretty(&summary).expect("stats serialize") + "\n"
    }
}

fn typed(store: &QuadStore, class: &Iri) -> BTreeMap<Iri, BTreeSet<Iri>> {
    let mut by_graph: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for q in store.referencing(class).filter(|q| q.predicate == *RDF_TYPE) {
        by_graph.entry(q.graph.clone()).or_default().insert(q.subject.clone());
    }
    by_graph
}

fn has(store: &QuadStore, s: &Iri, p: &Iri, g: &Iri) -> bool {
    store.objects(s, p, Some(g)).next().is_some()
}

fn endpoint(store: &QuadStore, node: &Iri, p: &Iri) -> Option<Iri> {
    store.objects(node, p, None).find_map(Term::as_iri).cloned()
}

/// Per graph, the largest count stated for each (subject, object) pair,
/// unordered when `symmetric`.
fn pair_counts(store: &QuadStore, predicate: &Iri, symmetric: bool) -> BTreeMap<Iri, BTreeMap<(Iri, Iri), u64>> {
    let mut out: BTreeMap<Iri, BTreeMap<(Iri, Iri), u64>> = BTreeMap::new();
    for q in store.iter().filter(|q| q.predicate == *predicate) {
        let Some(n) = q.object.as_count() else { continue };
        let (Some(s), Some(o)) = (endpoint(store, &q.subject, &RDF_SUBJECT), endpoint(store, &q.subject, &RDF_OBJECT)) else {
            continue;
        };
        let key = if symmetric && o < s { (o, s) } else { (s, o) };
        let slot = out.entry(q.graph.clone()).or_default().entry(key).or_insert(0);
        *slot = (*slot).max(n);
    }
    out
}

/// Completeness, agreement and popularity statistics of a built store.
pub fn store_stats(store: &QuadStore) -> StoreStats {
    let events_by_graph = typed(store, &SEM_EVENT);
    let all_events: BTreeSet<Iri> = events_by_graph.values().flatten().cloned().collect();
    let person = expand("dbo:Person").expect("known prefix");
    let persons: BTreeSet<Iri> = typed(store, &person).into_values().flatten().collect();

    let mut stats = StoreStats::default();
    for (graph, _) in store.graphs() {
        let events = events_by_graph.get(graph).cloned().unwrap_or_default();
        let mut g = GraphCompleteness { graph: graph.clone(), events: events.len(), with_time: 0, with_location: 0, with_both: 0 };
        for e in &events {
            let time = has(store, e, &SEM_HAS_BEGIN, graph) || has(store, e, &SEM_HAS_END, graph);
            let place = has(store, e, &SEM_HAS_PLACE, graph);
            g.with_time += usize::from(time);
            g.with_location += usize::from(place);
            g.with_both += usize::from(time && place);
        }
        if g.events > 0 {
            stats.graphs.push(g);
        }
    }

    for e in &all_events {
        let starts: BTreeMap<&Iri, BTreeSet<_>> = store
            .about(e)
            .filter(|q| q.predicate == *SEM_HAS_BEGIN && q.graph != *FUSED_GRAPH)
            .filter_map(|q| q.object.as_time_point(Bound::Start).map(|p| (&q.graph, p.date)))
            .fold(BTreeMap::new(), |mut m, (g, d)| {
                m.entry(g).or_default().insert(d);
                m
            });
        if starts.len() >= 2 {
            stats.start_compared += 1;
            let dates: BTreeSet<_> = starts.values().flatten().collect();
            stats.start_agreeing += usize::from(dates.len() == 1);
        }
    }

    for (graph, pairs) in pair_counts(store, &EKG_LINKS, false) {
        let mut totals: BTreeMap<&Iri, u64> = BTreeMap::new();
        for ((_, o), n) in &pairs {
            if all_events.contains(o) {
                *totals.entry(o).or_default() += n;
            }
        }
        let mut rows: Vec<LinkedEvent> =
            totals.into_iter().map(|(e, count)| LinkedEvent { event: display_iri(store, e), count }).collect();
        rows.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.event.cmp(&b.event)));
        rows.truncate(TOP_LINKED);
        if !rows.is_empty() {
            stats.most_linked.insert(graph.local_name().to_string(), rows);
        }
    }

    let mut joint: BTreeMap<&Iri, BTreeMap<&Iri, u64>> = BTreeMap::new();
    let mentions = pair_counts(store, &EKG_MENTIONS, true);
    for pairs in mentions.values() {
        for ((s, o), n) in pairs {
            for (e, p) in [(o, s), (s, o)] {
                if all_events.contains(e) && persons.contains(p) && p != e {
                    *joint.entry(e).or_default().entry(p).or_default() += n;
                }
            }
        }
    }
    for (event, people) in joint {
        let mut ranked: Vec<(Iri, u64)> = people.into_iter().map(|(p, n)| (display_iri(store, p), n)).collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        ranked.truncate(TOP_PERSONS);
        stats.co_mentions.push(CoMention { event: display_iri(store, event), persons: ranked });
    }
    stats.co_mentions.sort_by(|a, b| a.event.cmp(&b.event));
    stats
}
