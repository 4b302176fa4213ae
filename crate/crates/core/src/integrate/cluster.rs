use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::kg::vocab::{resource_iri, WD};
use crate::kg::Iri;

/// A sameAs pair that was not applied because it would put two distinct
/// Wikidata identifiers into one resource.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conflict {
    pub pair: (Iri, Iri),
    pub wikidata_ids: (Iri, Iri),
}

/// Source identifier to canonical resource mapping.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Clustering {
    pub canonical: BTreeMap<Iri, Iri>,
    pub members: BTreeMap<Iri, BTreeSet<Iri>>,
    pub events: BTreeSet<Iri>,
    pub conflicts: Vec<Conflict>,
    next_event: usize,
    next_entity: usize,
}

impl Clustering {
    /// Canonical id of a source identifier.
    pub fn get(&self, iri: &Iri) -> Option<&Iri> {
        self.canonical.get(iri)
    }

    /// Canonical id, or the identifier itself when it was never clustered.
    pub fn resolve(&self, iri: &Iri) -> Iri {
        self.canonical.get(iri).cloned().unwrap_or_else(|| iri.clone())
    }

    pub fn is_event(&self, canonical: &Iri) -> bool {
        self.events.contains(canonical)
    }

    /// Source identifiers whose resource is an event.
    pub fn event_members(&self) -> BTreeSet<Iri> {
        self.canonical.iter().filter(|(_, c)| self.events.contains(*c)).map(|(s, _)| s.clone()).collect()
    }

    /// Mints a fresh event id after all clustered ones.
    pub fn mint_event(&mut self) -> Iri {
        let id = resource_iri(&format!("event_{}", self.next_event));
        self.next_event += 1;
        self.events.insert(id.clone());
        self.members.entry(id.clone()).or_default();
        id
    }

    fn mint(&mut self, event: bool) -> Iri {
        if event {
            return self.mint_event();
        }
        let id = resource_iri(&format!("entity_{}", self.next_entity));
        self.next_entity += 1;
        id
    }
}

pub fn is_wikidata_id(iri: &Iri) -> bool {
    iri.starts_with(WD) && iri.local_name().starts_with('Q')
}

fn wikidata_key(iri: &Iri) -> (u64, String) {
    let n = iri.local_name().trim_start_matches('Q').parse().unwrap_or(u64::MAX);
    (n, iri.as_str().to_string())
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
}

/// Groups identifiers linked by sameAs pairs into resources and mints
/// `entity_<n>` / `event_<n>` ids: components with a Wikidata id first, in
/// id order, then the rest by smallest member. A component is an event when
/// any member is in `events`. `nodes` adds identifiers seen without pairs.
pub fn cluster_sameas(pairs: &[(Iri, Iri)], nodes: &BTreeSet<Iri>, events: &BTreeSet<Iri>) -> Clustering {
    let mut all: BTreeSet<&Iri> = nodes.iter().collect();
    for (a, b) in pairs {
        all.insert(a);
        all.insert(b);
    }
    let all: Vec<&Iri> = all.into_iter().collect();
    let index: BTreeMap<&Iri, usize> = all.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let mut uf = UnionFind { parent: (0..all.len()).collect() };
    let mut wikidata: Vec<Option<&Iri>> = all.iter().map(|n| is_wikidata_id(n).then_some(*n)).collect();
    let mut sorted_pairs: Vec<&(Iri, Iri)> = pairs.iter().collect();
    sorted_pairs.sort();
    sorted_pairs.dedup();
    let mut conflicts = Vec::new();
    for (a, b) in sorted_pairs {
        let (ra, rb) = (uf.find(index[a]), uf.find(index[b]));
        if ra == rb {
            continue;
        }
        match (wikidata[ra], wikidata[rb]) {
            (Some(x), Some(y)) if x != y => {
                conflicts.push(Conflict { pair: (a.clone(), b.clone()), wikidata_ids: (x.clone(), y.clone()) });
                continue;
            }
            (wa, wb) => {
                let (root, child) = if ra < rb { (ra, rb) } else { (rb, ra) };
                uf.parent[child] = root;
                wikidata[root] = wa.or(wb);
            }
        }
    }
    let mut components: BTreeMap<usize, BTreeSet<Iri>> = BTreeMap::new();
    for (i, n) in all.iter().enumerate() {
        let r = uf.find(i);
        components.entry(r).or_default().insert((*n).clone());
    }
    let mut ordered: Vec<(usize, BTreeSet<Iri>)> = components.into_iter().collect();
    ordered.sort_by_cached_key(|(root, members)| match wikidata[*root] {
        Some(w) => (0, wikidata_key(w), String::new()),
        None => (1, (0, String::new()), members.first().map(|m| m.as_str().to_string()).unwrap_or_default()),
    });
    let mut out = Clustering { conflicts, ..Default::default() };
    for (_, members) in ordered {
        let event = members.iter().any(|m| events.contains(m));
        let id = out.mint(event);
        for m in &members {
            out.canonical.insert(m.clone(), id.clone());
        }
        out.members.insert(id, members);
    }
    out
}
