use std::collections::{BTreeMap, BTreeSet};

use crate::ingest::TextEvent;
use crate::kg::{Iri, TimeInterval};

/// A text event together with the graph it was extracted into.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourcedTextEvent {
    pub graph: Iri,
    pub event: TextEvent,
}

/// Text events judged to describe the same happening.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedTextEvent {
    pub time: TimeInterval,
    /// Sorted; the first member's description is the primary one.
    pub members: Vec<SourcedTextEvent>,
    pub links: BTreeSet<Iri>,
}

/// A text event whose description belongs to an identified event.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub event: Iri,
    pub text: SourcedTextEvent,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dedup {
    pub merged: Vec<MergedTextEvent>,
    pub attachments: Vec<Attachment>,
}

/// Merges text events with identical times and overlapping links (closed
/// transitively). A text event linking exactly one identified event that has
/// the same time in some source is attached to that event instead.
/// `known` holds the source times of identified events; links must already
/// be canonical.
pub fn dedup_text_events(events: &[SourcedTextEvent], known: &BTreeMap<Iri, Vec<TimeInterval>>) -> Dedup {
    let mut sorted: Vec<&SourcedTextEvent> = events.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut out = Dedup::default();
    let mut rest = Vec::new();
    for e in sorted {
        let linked: Vec<&Iri> = e.event.linked_entities.iter().filter(|l| known.contains_key(*l)).collect();
        if let [only] = linked.as_slice() {
            if known[*only].contains(&e.event.time) {
                out.attachments.push(Attachment { event: (*only).clone(), text: e.clone() });
                continue;
            }
        }
        rest.push(e);
    }
    let mut parent: Vec<usize> = (0..rest.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let (a, b) = (&rest[i].event, &rest[j].event);
            if a.time == b.time && !a.linked_entities.is_disjoint(&b.linked_entities) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<SourcedTextEvent>> = BTreeMap::new();
    for (i, e) in rest.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push((*e).clone());
    }
    for members in groups.into_values() {
        let links = members.iter().flat_map(|m| m.event.linked_entities.iter().cloned()).collect();
        out.merged.push(MergedTextEvent { time: members[0].event.time, members, links });
    }
    out
}
