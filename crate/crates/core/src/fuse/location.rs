use std::collections::{BTreeMap, BTreeSet};

use super::FuseError;
use crate::kg::Iri;

/// Containment edges, place to the places it is directly contained in.
pub type Containment = BTreeMap<Iri, BTreeSet<Iri>>;

/// All places strictly containing `place`.
pub fn ancestors(place: &Iri, contained_in: &Containment) -> BTreeSet<Iri> {
    let mut seen = BTreeSet::new();
    let mut stack: Vec<&Iri> = contained_in.get(place).into_iter().flatten().collect();
    while let Some(p) = stack.pop() {
        if seen.insert(p.clone()) {
            stack.extend(contained_in.get(p).into_iter().flatten());
        }
    }
    seen
}

/// A containment cycle reachable from `start`, if any.
pub fn find_cycle<'a>(start: impl IntoIterator<Item = &'a Iri>, contained_in: &'a Containment) -> Option<Vec<Iri>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut marks: BTreeMap<&Iri, Mark> = BTreeMap::new();
    for root in start {
        if marks.contains_key(root) {
            continue;
        }
        let mut path: Vec<&Iri> = vec![root];
        let mut iters = vec![contained_in.get(root).into_iter().flatten()];
        marks.insert(root, Mark::Open);
        while let Some(it) = iters.last_mut() {
            match it.next() {
                Some(next) => match marks.get(next) {
                    Some(Mark::Open) => {
                        let at = path.iter().position(|p| *p == next).expect("open node is on the path");
                        return Some(path[at..].iter().map(|p| (*p).clone()).collect());
                    }
                    Some(Mark::Done) => {}
                    None => {
                        marks.insert(next, Mark::Open);
                        path.push(next);
                        iters.push(contained_in.get(next).into_iter().flatten());
                    }
                },
                None => {
                    iters.pop();
                    let done = path.pop().expect("path tracks iterators");
                    marks.insert(done, Mark::Done);
                }
            }
        }
    }
    None
}

/// Union of the location sets minus every place that contains another member.
pub fn fuse_locations(sets: &[BTreeSet<Iri>], contained_in: &Containment) -> Result<BTreeSet<Iri>, FuseError> {
    let union: BTreeSet<Iri> = sets.iter().flatten().cloned().collect();
    if let Some(cycle) = find_cycle(&union, contained_in) {
        return Err(FuseError::Cycle(cycle));
    }
    let containing: BTreeSet<Iri> = union.iter().flat_map(|p| ancestors(p, contained_in)).collect();
    Ok(union.into_iter().filter(|p| !containing.contains(p)).collect())
}
