//! Line-oriented, tab-separated fixture formats standing in for real dumps.
//!
//! * `.kgsrc`: `T s p o [start] [end]`, `H sub super`, `I inst class`,
//!   `S local wikidata_id`, `L id lang label`, `Y id dbo_type`
//! * `.wiki`: `P title entity`, `C title category`, `S title sentence`
//! * `.evl`: `G title`, `H heading`, `E line`
//!
//! Sentences and list lines carry links as `[[iri|surface]]`. Terms use the
//! prefixes known to [`crate::kg::vocab`]; blank lines and `#` comments are
//! ignored.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::LazyLock;

use regex::Regex;

use super::{read_file, IngestError, SourceDescriptor, SourceKind};
use crate::kg::time::{Bound, TimeInterval, TimePoint};
use crate::kg::vocab::expand;
use crate::kg::{Iri, Term};

#[derive(Clone, Debug, PartialEq)]
pub struct TripleRecord {
    pub line: usize,
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
    pub qualifier: TimeInterval,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct KgRecords {
    pub triples: Vec<TripleRecord>,
    pub subclass_of: Vec<(Iri, Iri)>,
    pub instance_of: Vec<(Iri, Iri)>,
    pub same_as: Vec<(Iri, Iri)>,
    pub labels: Vec<(Iri, String, String)>,
    pub types: Vec<(Iri, Iri)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub target: Iri,
    pub surface: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sentence {
    /// Text with link markup replaced by surface forms.
    pub text: String,
    pub links: Vec<Link>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WikiPage {
    pub title: String,
    pub entity: Option<Iri>,
    pub categories: Vec<String>,
    pub sentences: Vec<Sentence>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WikiCorpus {
    pub language: String,
    pub pages: BTreeMap<String, WikiPage>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventListLine {
    pub section: Option<String>,
    pub text: String,
    pub links: Vec<Link>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventListPage {
    pub title: String,
    pub language: String,
    pub lines: Vec<EventListLine>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SourceRecords {
    Kg(KgRecords),
    Corpus(WikiCorpus),
    EventLists(Vec<EventListPage>),
}

/// Reads and parses a fixture file with the adapter selected by `descriptor.kind`.
pub fn load_source(path: &Path, descriptor: &SourceDescriptor) -> Result<SourceRecords, IngestError> {
    let text = read_file(path)?;
    let label = path.display().to_string();
    let lang = descriptor.language_or_default();
    Ok(match descriptor.kind {
        SourceKind::KgWikidata | SourceKind::KgDbpedia | SourceKind::KgYago => {
            SourceRecords::Kg(parse_kg_source(&text, &label)?)
        }
        SourceKind::WikiCorpus => SourceRecords::Corpus(parse_wiki_corpus(&text, &label, lang)?),
        SourceKind::WikiEventLists | SourceKind::Wcep => {
            SourceRecords::EventLists(parse_event_lists(&text, &label, lang)?)
        }
    })
}

struct Lines<'a> {
    path: &'a str,
}

impl Lines<'_> {
    fn parse_err(&self, line: usize, message: impl Into<String>) -> IngestError {
        IngestError::Parse { path: self.path.to_string(), line, message: message.into() }
    }

    /// Yields `(line number, fields)` for every record line.
    fn records<'t>(&self, text: &'t str) -> impl Iterator<Item = (usize, Vec<&'t str>)> + 't {
        text.lines().enumerate().filter_map(|(i, raw)| {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                return None;
            }
            Some((i + 1, line.split('\t').collect()))
        })
    }

    fn arity(&self, line: usize, fields: &[&str], min: usize, max: usize) -> Result<(), IngestError> {
        if fields.len() < min || fields.len() > max {
            let want = if min == max { format!("{min}") } else { format!("{min} to {max}") };
            return Err(self.parse_err(line, format!("{} record needs {want} fields, got {}", fields[0], fields.len())));
        }
        Ok(())
    }

    fn iri(&self, line: usize, text: &str) -> Result<Iri, IngestError> {
        expand(text.trim()).map_err(|e| self.parse_err(line, e.to_string()))
    }

    fn unknown(&self, line: usize, tag: &str) -> IngestError {
        IngestError::Schema { path: self.path.to_string(), line, tag: tag.to_string() }
    }
}

static DATE_LIKE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^-?\d{4}(?:-\d{2}(?:-\d{2})?)?$").expect("static regex"));

/// Parses an object field: a quoted literal, a date, or a (prefixed) IRI.
pub fn parse_term(text: &str) -> Result<Term, String> {
    let text = text.trim();
    if let Some(body) = text.strip_prefix('"') {
        let close = body.rfind('"').ok_or("unterminated literal")?;
        let value = body[..close].replace("\\\"", "\"");
        let rest = &body[close + 1..];
        return match rest.strip_prefix('@') {
            Some(lang) if !lang.is_empty() => Ok(Term::lang_string(value, lang)),
            Some(_) => Err("empty language tag".into()),
            None if rest.is_empty() => Ok(Term::string(value)),
            None => Err(format!("unexpected text after literal: {rest:?}")),
        };
    }
    if DATE_LIKE.is_match(text) {
        return TimePoint::parse(text, Bound::Start).map(Term::date).map_err(|e| e.to_string());
    }
    expand(text).map(Term::Iri).map_err(|e| e.to_string())
}

fn parse_bound(text: &str, bound: Bound) -> Result<Option<TimePoint>, String> {
    let text = text.trim();
    if text.is_empty() || text == "-" {
        return Ok(None);
    }
    TimePoint::parse(text, bound).map(Some).map_err(|e| e.to_string())
}

pub fn parse_kg_source(text: &str, path: &str) -> Result<KgRecords, IngestError> {
    let lines = Lines { path };
    let mut out = KgRecords::default();
    for (n, f) in lines.records(text) {
        match f[0] {
            "T" => {
                lines.arity(n, &f, 4, 6)?;
                let start = parse_bound(f.get(4).copied().unwrap_or(""), Bound::Start).map_err(|m| lines.parse_err(n, m))?;
                let end = parse_bound(f.get(5).copied().unwrap_or(""), Bound::End).map_err(|m| lines.parse_err(n, m))?;
                let qualifier = TimeInterval::new(start, end).map_err(|e| lines.parse_err(n, e.to_string()))?;
                out.triples.push(TripleRecord {
                    line: n,
                    subject: lines.iri(n, f[1])?,
                    predicate: lines.iri(n, f[2])?,
                    object: parse_term(f[3]).map_err(|m| lines.parse_err(n, m))?,
                    qualifier,
                });
            }
            "H" | "I" | "S" | "Y" => {
                lines.arity(n, &f, 3, 3)?;
                let pair = (lines.iri(n, f[1])?, lines.iri(n, f[2])?);
                match f[0] {
                    "H" => out.subclass_of.push(pair),
                    "I" => out.instance_of.push(pair),
                    "S" => out.same_as.push(pair),
                    _ => out.types.push(pair),
                }
            }
            "L" => {
                lines.arity(n, &f, 4, 4)?;
                let lang = f[2].trim();
                if lang.is_empty() {
                    return Err(lines.parse_err(n, "empty language code"));
                }
                out.labels.push((lines.iri(n, f[1])?, lang.to_string(), f[3].trim().to_string()));
            }
            tag => return Err(lines.unknown(n, tag)),
        }
    }
    Ok(out)
}

/// Splits `[[iri|surface]]` markup into plain text and links.
pub fn parse_links(text: &str) -> Result<(String, Vec<Link>), String> {
    let mut plain = String::with_capacity(text.len());
    let mut links = Vec::new();
    let mut rest = text;
    while let Some(open) = rest.find("[[") {
        plain.push_str(&rest[..open]);
        let inner_start = &rest[open + 2..];
        let close = inner_start.find("]]").ok_or("unterminated link markup")?;
        let inner = &inner_start[..close];
        let (target, surface) = match inner.split_once('|') {
            Some((t, s)) => (t.trim(), s.to_string()),
            None => (inner.trim(), String::new()),
        };
        let target = expand(target).map_err(|e| e.to_string())?;
        let surface = if surface.is_empty() { target.local_name().replace('_', " ") } else { surface };
        plain.push_str(&surface);
        links.push(Link { target, surface });
        rest = &inner_start[close + 2..];
    }
    plain.push_str(rest);
    Ok((plain, links))
}

pub fn parse_wiki_corpus(text: &str, path: &str, language: &str) -> Result<WikiCorpus, IngestError> {
    let lines = Lines { path };
    let mut corpus = WikiCorpus { language: language.to_string(), pages: BTreeMap::new() };
    for (n, f) in lines.records(text) {
        if !matches!(f[0], "P" | "C" | "S") {
            return Err(lines.unknown(n, f[0]));
        }
        lines.arity(n, &f, 3, 3)?;
        let title = f[1].trim().to_string();
        if title.is_empty() {
            return Err(lines.parse_err(n, "empty page title"));
        }
        let page = corpus.pages.entry(title.clone()).or_insert_with(|| WikiPage { title, ..Default::default() });
        match f[0] {
            "P" => {
                let entity = lines.iri(n, f[2])?;
                if page.entity.as_ref().is_some_and(|e| *e != entity) {
                    return Err(lines.parse_err(n, format!("page {:?} already maps to another entity", page.title)));
                }
                page.entity = Some(entity);
            }
            "C" => page.categories.push(f[2].trim().to_string()),
            _ => {
                let (text, links) = parse_links(f[2]).map_err(|m| lines.parse_err(n, m))?;
                page.sentences.push(Sentence { text, links });
            }
        }
    }
    Ok(corpus)
}

pub fn parse_event_lists(text: &str, path: &str, language: &str) -> Result<Vec<EventListPage>, IngestError> {
    let lines = Lines { path };
    let mut pages: Vec<EventListPage> = Vec::new();
    let mut section: Option<String> = None;
    for (n, f) in lines.records(text) {
        if !matches!(f[0], "G" | "H" | "E") {
            return Err(lines.unknown(n, f[0]));
        }
        lines.arity(n, &f, 2, 2)?;
        if f[0] == "G" {
            pages.push(EventListPage { title: f[1].trim().to_string(), language: language.to_string(), lines: Vec::new() });
            section = None;
            continue;
        }
        let Some(page) = pages.last_mut() else {
            return Err(lines.parse_err(n, format!("{} record before any G record", f[0])));
        };
        if f[0] == "H" {
            section = Some(f[1].trim().to_string());
        } else {
            let (text, links) = parse_links(f[1]).map_err(|m| lines.parse_err(n, m))?;
            page.lines.push(EventListLine { section: section.clone(), text, links });
        }
    }
    Ok(pages)
}
