use std::collections::{BTreeMap, BTreeSet, VecDeque};

use log::warn;

use super::config::{IdentificationConfig, LanguageConfig};
use super::format::SourceRecords;
use super::{IngestError, SourceDescriptor, SourceKind};
use crate::kg::Iri;

/// Events identified in one source, with the class closure used and any
/// subclass cycles that were excluded from it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Identification {
    pub events: BTreeSet<Iri>,
    pub event_classes: BTreeSet<Iri>,
    pub cycles: Vec<Vec<Iri>>,
}

impl Identification {
    /// Turns the first reported cycle into an error.
    pub fn strict(self) -> Result<Self, IngestError> {
        match self.cycles.first() {
            Some(c) => Err(IngestError::Cycle(c.clone())),
            None => Ok(self),
        }
    }
}

pub fn identify_events(
    records: &SourceRecords,
    descriptor: &SourceDescriptor,
    language: &LanguageConfig,
    config: &IdentificationConfig,
) -> Identification {
    match (descriptor.kind, records) {
        (SourceKind::KgWikidata, SourceRecords::Kg(kg)) => {
            let (classes, cycles) = event_class_closure(&kg.subclass_of, &config.wikidata_roots, &config.wikidata_blacklist);
            let events = kg
                .instance_of
                .iter()
                .filter(|(_, class)| classes.contains(class))
                .map(|(inst, _)| inst.clone())
                .collect();
            report(&cycles, descriptor);
            Identification { events, event_classes: classes, cycles }
        }
        (SourceKind::KgDbpedia, SourceRecords::Kg(kg)) => {
            let (classes, cycles) = event_class_closure(&kg.subclass_of, &config.dbpedia_roots, &[]);
            let events = kg
                .types
                .iter()
                .chain(&kg.instance_of)
                .filter(|(_, class)| classes.contains(class))
                .map(|(inst, _)| inst.clone())
                .collect();
            report(&cycles, descriptor);
            Identification { events, event_classes: classes, cycles }
        }
        (SourceKind::WikiCorpus, SourceRecords::Corpus(corpus)) => {
            let events = corpus
                .pages
                .values()
                .filter(|p| !language.is_blacklisted_title(&p.title))
                .filter(|p| p.categories.iter().any(|c| language.event_category.is_match(c)))
                .filter_map(|p| p.entity.clone())
                .collect();
            Identification { events, ..Default::default() }
        }
        _ => Identification::default(),
    }
}

fn report(cycles: &[Vec<Iri>], descriptor: &SourceDescriptor) {
    for c in cycles {
        warn!("{}: subclass cycle excluded from event classes: {c:?}", descriptor.graph);
    }
}

/// Classes reachable from a root by descending `subclass_of` edges without
/// passing through a blacklisted class or a class on a cycle. Cycles found in
/// the region below the roots are returned, each sorted.
pub fn event_class_closure(subclass_of: &[(Iri, Iri)], roots: &[Iri], blacklist: &[Iri]) -> (BTreeSet<Iri>, Vec<Vec<Iri>>) {
    let blocked: BTreeSet<&Iri> = blacklist.iter().collect();
    let mut children: BTreeMap<&Iri, BTreeSet<&Iri>> = BTreeMap::new();
    for (sub, sup) in subclass_of {
        children.entry(sup).or_default().insert(sub);
    }
    let descend = |avoid: &dyn Fn(&Iri) -> bool| -> BTreeSet<&Iri> {
        let mut seen: BTreeSet<&Iri> = BTreeSet::new();
        let mut queue: VecDeque<&Iri> = roots.iter().filter(|r| !avoid(r)).collect();
        while let Some(c) = queue.pop_front() {
            if !seen.insert(c) {
                continue;
            }
            for &sub in children.get(c).into_iter().flatten() {
                if !avoid(sub) && !seen.contains(sub) {
                    queue.push_back(sub);
                }
            }
        }
        seen
    };
    let region = descend(&|c| blocked.contains(c));
    let cycles = cycles_within(&region, &children);
    let on_cycle: BTreeSet<&Iri> = cycles.iter().flatten().collect();
    let closure = descend(&|c| blocked.contains(c) || on_cycle.contains(c));
    (closure.into_iter().cloned().collect(), cycles)
}

/// Strongly connected components with a cycle, restricted to `region`.
fn cycles_within(region: &BTreeSet<&Iri>, children: &BTreeMap<&Iri, BTreeSet<&Iri>>) -> Vec<Vec<Iri>> {
    struct Tarjan<'a, 'b> {
        region: &'b BTreeSet<&'a Iri>,
        children: &'b BTreeMap<&'a Iri, BTreeSet<&'a Iri>>,
        index: BTreeMap<&'a Iri, usize>,
        low: BTreeMap<&'a Iri, usize>,
        stack: Vec<&'a Iri>,
        on_stack: BTreeSet<&'a Iri>,
        next: usize,
        out: Vec<Vec<Iri>>,
    }
    impl<'a> Tarjan<'a, '_> {
        fn visit(&mut self, v: &'a Iri) {
            self.index.insert(v, self.next);
            self.low.insert(v, self.next);
            self.next += 1;
            self.stack.push(v);
            self.on_stack.insert(v);
            let succ: Vec<&'a Iri> = self
                .children
                .get(v)
                .into_iter()
                .flatten()
                .copied()
                .filter(|w| self.region.contains(w))
                .collect();
            for w in &succ {
                if !self.index.contains_key(w) {
                    self.visit(w);
                    let lw = self.low[w];
                    let lv = self.low.get_mut(v).expect("visited");
                    *lv = (*lv).min(lw);
                } else if self.on_stack.contains(w) {
                    let iw = self.index[w];
                    let lv = self.low.get_mut(v).expect("visited");
                    *lv = (*lv).min(iw);
                }
            }
            if self.low[v] == self.index[v] {
                let mut comp = Vec::new();
                while let Some(w) = self.stack.pop() {
                    self.on_stack.remove(w);
                    comp.push(w.clone());
                    if w == v {
                        break;
                    }
                }
                let self_loop = succ.contains(&v);
                if comp.len() > 1 || self_loop {
                    comp.sort();
                    self.out.push(comp);
                }
            }
        }
    }
    let mut t = Tarjan {
        region,
        children,
        index: BTreeMap::new(),
        low: BTreeMap::new(),
        stack: Vec::new(),
        on_stack: BTreeSet::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in region.iter().copied() {
        if !t.index.contains_key(v) {
            t.visit(v);
        }
    }
    t.out.sort();
    t.out
}
