use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::time::{Bound, Precision, TimePoint};
use super::vocab::{self, DCTERMS_CREATED, RDF_TYPE, VOID_DATASET};
use super::{Iri, KgError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub value: String,
    pub datatype: Option<Iri>,
    pub language: Option<String>,
}

/// Object position of a quad.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn string(value: impl Into<String>) -> Self {
        Term::Literal(Literal { value: value.into(), datatype: None, language: None })
    }

    pub fn lang_string(value: impl Into<String>, language: impl Into<String>) -> Self {
        Term::Literal(Literal {
            value: value.into(),
            datatype: None,
            language: Some(language.into()),
        })
    }

    pub fn typed(value: impl Into<String>, datatype: Iri) -> Self {
        Term::Literal(Literal { value: value.into(), datatype: Some(datatype), language: None })
    }

    pub fn integer(n: u64) -> Self {
        Term::typed(n.to_string(), vocab::XSD_INTEGER.clone())
    }

    /// A date literal whose datatype records the stated precision.
    pub fn date(p: TimePoint) -> Self {
        let dt = match p.precision {
            Precision::Day => vocab::XSD_DATE.clone(),
            Precision::Month => vocab::XSD_G_YEAR_MONTH.clone(),
            Precision::Year => vocab::XSD_G_YEAR.clone(),
        };
        Term::typed(p.to_string(), dt)
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            Term::Iri(_) => None,
        }
    }

    pub fn as_time_point(&self, bound: Bound) -> Option<TimePoint> {
        let lit = self.as_literal()?;
        let dt = lit.datatype.as_ref()?;
        let is_date = *dt == *vocab::XSD_DATE
            || *dt == *vocab::XSD_G_YEAR_MONTH
            || *dt == *vocab::XSD_G_YEAR;
        if !is_date {
            return None;
        }
        TimePoint::parse(&lit.value, bound).ok()
    }

    pub fn as_count(&self) -> Option<u64> {
        let lit = self.as_literal()?;
        if lit.datatype.as_ref() != Some(&vocab::XSD_INTEGER) {
            return None;
        }
        lit.value.parse().ok()
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<&Iri> for Term {
    fn from(iri: &Iri) -> Self {
        Term::Iri(iri.clone())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => write!(f, "{i}"),
            Term::Literal(l) => write!(f, "{}", l.value),
        }
    }
}

/// A statement with its named graph. Field order gives the canonical
/// (graph, subject, predicate, object) sort.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Quad {
    pub graph: Iri,
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Quad {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>, graph: Iri) -> Self {
        Quad { graph, subject, predicate, object: object.into() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub created: Option<NaiveDate>,
}

/// Pattern for [`QuadStore::quad_match`]; `None` positions are wildcards.
#[derive(Clone, Debug, Default)]
pub struct QuadPattern {
    pub subject: Option<Iri>,
    pub predicate: Option<Iri>,
    pub object: Option<Term>,
    pub graph: Option<Iri>,
}

impl QuadPattern {
    fn matches(&self, q: &Quad) -> bool {
        self.subject.as_ref().is_none_or(|s| *s == q.subject)
            && self.predicate.as_ref().is_none_or(|p| *p == q.predicate)
            && self.object.as_ref().is_none_or(|o| *o == q.object)
            && self.graph.as_ref().is_none_or(|g| *g == q.graph)
    }
}

/// Set of quads partitioned into registered named graphs.
#[derive(Clone, Debug, Default)]
pub struct QuadStore {
    graphs: BTreeMap<Iri, GraphInfo>,
    quads: BTreeSet<Quad>,
    by_subject: HashMap<Iri, BTreeSet<Quad>>,
    by_object: HashMap<Iri, BTreeSet<Quad>>,
}

impl QuadStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a graph and writes its `void:Dataset` description into it.
    pub fn register_graph(&mut self, graph: Iri, created: Option<NaiveDate>) {
        let info = self.graphs.entry(graph.clone()).or_default();
        if created.is_some() {
            info.created = created;
        }
        let created = info.created;
        self.insert_unchecked(Quad::new(graph.clone(), RDF_TYPE.clone(), VOID_DATASET.clone(), graph.clone()));
        if let Some(date) = created {
            self.insert_unchecked(Quad::new(
                graph.clone(),
                DCTERMS_CREATED.clone(),
                Term::date(TimePoint::day(date)),
                graph,
            ));
        }
    }

    pub fn has_graph(&self, graph: &Iri) -> bool {
        self.graphs.contains_key(graph)
    }

    pub fn graphs(&self) -> impl Iterator<Item = (&Iri, &GraphInfo)> {
        self.graphs.iter()
    }

    /// Inserts a quad; returns false when it was already present.
    pub fn insert(&mut self, quad: Quad) -> Result<bool, KgError> {
        if !self.graphs.contains_key(&quad.graph) {
            return Err(KgError::UnknownGraph(quad.graph));
        }
        Ok(self.insert_unchecked(quad))
    }

    fn insert_unchecked(&mut self, quad: Quad) -> bool {
        if self.quads.contains(&quad) {
            return false;
        }
        self.by_subject.entry(quad.subject.clone()).or_default().insert(quad.clone());
        if let Term::Iri(o) = &quad.object {
            self.by_object.entry(o.clone()).or_default().insert(quad.clone());
        }
        self.quads.insert(quad)
    }

    /// Adds a statement about `subject` into `graph`.
    pub fn add(&mut self, subject: &Iri, predicate: &Iri, object: impl Into<Term>, graph: &Iri) -> Result<bool, KgError> {
        self.insert(Quad::new(subject.clone(), predicate.clone(), object, graph.clone()))
    }

    pub fn contains(&self, quad: &Quad) -> bool {
        self.quads.contains(quad)
    }

    /// Removes every quad of `graph` except its registry description.
    pub fn clear_graph(&mut self, graph: &Iri) {
        let doomed: Vec<Quad> = self
            .quads
            .iter()
            .filter(|q| q.graph == *graph && q.subject != *graph)
            .cloned()
            .collect();
        for q in doomed {
            self.quads.remove(&q);
            if let Some(set) = self.by_subject.get_mut(&q.subject) {
                set.remove(&q);
            }
            if let Term::Iri(o) = &q.object {
                if let Some(set) = self.by_object.get_mut(o) {
                    set.remove(&q);
                }
            }
        }
    }

    pub fn len(&self) -> usize {
        self.quads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quads.is_empty()
    }

    /// All quads in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Quad> {
        self.quads.iter()
    }

    /// All quads matching every bound position, in canonical order.
    pub fn quad_match(&self, pattern: &QuadPattern) -> Vec<Quad> {
        self.iter_match(pattern).cloned().collect()
    }

    pub fn iter_match<'a>(&'a self, pattern: &'a QuadPattern) -> Box<dyn Iterator<Item = &'a Quad> + 'a> {
        if let Some(s) = &pattern.subject {
            return match self.by_subject.get(s) {
                Some(set) => Box::new(set.iter().filter(move |q| pattern.matches(q))),
                None => Box::new(std::iter::empty()),
            };
        }
        if let Some(Term::Iri(o)) = &pattern.object {
            return match self.by_object.get(o) {
                Some(set) => Box::new(set.iter().filter(move |q| pattern.matches(q))),
                None => Box::new(std::iter::empty()),
            };
        }
        Box::new(self.quads.iter().filter(move |q| pattern.matches(q)))
    }

    /// Objects of `(subject, predicate, ?, graph?)`.
    pub fn objects<'a>(&'a self, subject: &Iri, predicate: &'a Iri, graph: Option<&'a Iri>) -> impl Iterator<Item = &'a Term> + 'a {
        self.by_subject
            .get(subject)
            .into_iter()
            .flatten()
            .filter(move |q| q.predicate == *predicate && graph.is_none_or(|g| q.graph == *g))
            .map(|q| &q.object)
    }

    /// Quads with the given IRI in object position.
    pub fn referencing<'a>(&'a self, object: &Iri) -> impl Iterator<Item = &'a Quad> + 'a {
        self.by_object.get(object).into_iter().flatten()
    }

    /// Quads with the given subject.
    pub fn about<'a>(&'a self, subject: &Iri) -> impl Iterator<Item = &'a Quad> + 'a {
        self.by_subject.get(subject).into_iter().flatten()
    }
}
