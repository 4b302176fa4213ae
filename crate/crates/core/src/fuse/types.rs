use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::FuseError;
use crate::kg::vocab::{expand, DBO};
use crate::kg::Iri;

const DEFAULT_TYPES: &str = include_str!("../../data/type_mapping.tsv");

/// Symmetric type equivalences between source vocabularies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeMapping {
    same_as: BTreeMap<Iri, BTreeSet<Iri>>,
}

impl TypeMapping {
    /// Bundled equivalences from Wikidata and YAGO classes to DBpedia classes.
    pub fn bundled() -> Self {
        Self::parse(DEFAULT_TYPES).expect("bundled type mapping is valid")
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a Iri, &'a Iri)>) -> Self {
        let mut m = TypeMapping::default();
        for (a, b) in pairs {
            m.same_as.entry(a.clone()).or_default().insert(b.clone());
            m.same_as.entry(b.clone()).or_default().insert(a.clone());
        }
        m
    }

    /// Two tab-separated prefixed names per line.
    pub fn parse(text: &str) -> Result<Self, FuseError> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').map(str::trim).collect();
            let [a, b] = f.as_slice() else {
                return Err(FuseError::Config(format!("type mapping line {}: expected 2 fields", i + 1)));
            };
            let e = |s: &str| expand(s).map_err(|e| FuseError::Config(format!("type mapping line {}: {e}", i + 1)));
            pairs.push((e(a)?, e(b)?));
        }
        Ok(Self::from_pairs(pairs.iter().map(|(a, b)| (a, b))))
    }

    fn closure(&self, t: &Iri) -> BTreeSet<Iri> {
        let mut seen: BTreeSet<Iri> = [t.clone()].into();
        let mut queue: VecDeque<&Iri> = [t].into();
        while let Some(x) = queue.pop_front() {
            for y in self.same_as.get(x).into_iter().flatten() {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

/// DBpedia ontology classes equivalent to any of the source types.
pub fn fuse_types(per_source: &[BTreeSet<Iri>], mapping: &TypeMapping) -> BTreeSet<Iri> {
    per_source
        .iter()
        .flatten()
        .flat_map(|t| mapping.closure(t))
        .filter(|t| t.starts_with(DBO))
        .collect()
}
