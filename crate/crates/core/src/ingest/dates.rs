use std::collections::BTreeSet;

use regex::Captures;
use serde::{Deserialize, Serialize};

use super::config::{LanguageConfig, PatternClass};
use super::format::EventListPage;
use super::IngestError;
use crate::kg::time::{Bound, TimeInterval, TimePoint};
use crate::kg::Iri;

/// Temporal scope of a page or section: the components its entries inherit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Scope {
    pub year: Option<i32>,
    pub month: Option<u32>,
    pub day: Option<u32>,
}

impl Scope {
    pub fn year(year: i32) -> Self {
        Scope { year: Some(year), ..Default::default() }
    }

    /// Scope captured from an event-list title, if any pattern matches.
    pub fn from_title(title: &str, config: &LanguageConfig) -> Option<Scope> {
        config.scope_patterns.iter().find_map(|re| {
            let caps = re.captures(title)?;
            Some(Scope {
                year: caps.name("year").and_then(|m| m.as_str().parse().ok()),
                month: caps.name("month").and_then(|m| config.month_number(m.as_str())),
                day: caps.name("day").and_then(|m| m.as_str().parse().ok()),
            })
        })
    }

    /// Scope of a section heading: a title-like scope or a bare month name.
    pub fn from_heading(heading: &str, config: &LanguageConfig) -> Scope {
        let heading = heading.trim();
        if let Some(s) = Self::from_title(heading, config) {
            return s;
        }
        Scope { month: config.month_number(heading), ..Default::default() }
    }

    /// Components of `self` override those of `outer`.
    pub fn within(self, outer: Scope) -> Scope {
        Scope {
            year: self.year.or(outer.year),
            month: self.month.or(outer.month),
            day: self.day.or(outer.day),
        }
    }
}

/// A dated event description extracted from an event list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TextEvent {
    pub description: String,
    pub time: TimeInterval,
    pub linked_entities: BTreeSet<Iri>,
    pub source_page: Iri,
    pub language: String,
}

#[derive(Clone, Copy, Default)]
struct Parts {
    year: Option<i32>,
    month: Option<u32>,
    day: Option<u32>,
}

/// Finds the first date expression at the start of `text`, filling missing
/// components from `scope`.
pub fn extract_date(text: &str, config: &LanguageConfig, scope: &Scope) -> Option<TimeInterval> {
    match_date(text, config, scope).map(|(t, _)| t)
}

/// Like [`extract_date`], also returning the byte offset where the date
/// expression ends.
pub fn match_date(text: &str, config: &LanguageConfig, scope: &Scope) -> Option<(TimeInterval, usize)> {
    for pattern in &config.date_patterns {
        let Some(caps) = pattern.regex.captures(text) else { continue };
        let end = caps.get(0).map(|m| m.end()).unwrap_or(0);
        if let Some(t) = interpret(&caps, pattern.class, config, scope) {
            return Some((t, end));
        }
    }
    None
}

fn interpret(caps: &Captures, class: PatternClass, config: &LanguageConfig, scope: &Scope) -> Option<TimeInterval> {
    let get = |name: &str| caps.name(name).map(|m| m.as_str());
    let year = |name| get(name).and_then(|s| s.parse::<i32>().ok());
    let month = |name| get(name).and_then(|s| config.month_number(s));
    let day = |name| get(name).and_then(|s| s.parse::<u32>().ok());
    let (y1, m1, d1) = (year("year1"), month("month1"), day("day1"));
    let (y2, m2, d2) = (year("year2"), month("month2"), day("day2"));
    let start_text = Parts { year: y1.or(y2), month: m1.or(m2), day: d1 };
    let end_text = if class == PatternClass::Interval {
        Parts { year: y2.or(y1), month: m2.or(m1), day: d2 }
    } else {
        start_text
    };
    let start = resolve(start_text, scope)?;
    let end = resolve(end_text, scope)?;
    let mut s = point(start, Bound::Start)?;
    let e = point(end, Bound::End)?;
    if s.date > e.date && y1.is_none() && y2.is_some() {
        // "December 28 – January 3, 2011": the stated year belongs to the end.
        s = point(Parts { year: start.year.map(|y| y - 1), ..start }, Bound::Start)?;
    }
    TimeInterval::new(Some(s), Some(e)).ok()
}

/// Fills missing components from the scope. Coarser components always come
/// from the scope; finer ones only when the text and scope do not both state
/// some component (otherwise they would describe different dates).
fn resolve(text: Parts, scope: &Scope) -> Option<Parts> {
    let finest = if text.day.is_some() {
        2
    } else if text.month.is_some() {
        1
    } else if text.year.is_some() {
        0
    } else {
        return None;
    };
    let clash = (text.year.is_some() && scope.year.is_some())
        || (text.month.is_some() && scope.month.is_some())
        || (text.day.is_some() && scope.day.is_some());
    let year = text.year.or(scope.year)?;
    let month = text.month.or(if finest > 1 || !clash { scope.month } else { None });
    if finest > 1 && month.is_none() {
        return None;
    }
    let day = match month {
        Some(_) => text.day.or(if !clash { scope.day } else { None }),
        None => None,
    };
    Some(Parts { year: Some(year), month, day })
}

fn point(p: Parts, bound: Bound) -> Option<TimePoint> {
    let year = p.year?;
    match (p.month, p.day) {
        (Some(m), Some(d)) => TimePoint::ymd(year, m, d).ok(),
        (Some(m), None) => TimePoint::month(year, m, bound).ok(),
        _ => TimePoint::year(year, bound).ok(),
    }
}

/// IRI of a Wikipedia page in the given language edition.
pub fn page_iri(language: &str, title: &str) -> Iri {
    let mut path = String::with_capacity(title.len());
    for c in title.trim().chars() {
        match c {
            ' ' => path.push('_'),
            c if c.is_control() || "<>\"{}|^`\\%".contains(c) => {
                let mut buf = [0u8; 4];
                for b in c.encode_utf8(&mut buf).bytes() {
                    path.push_str(&format!("%{b:02X}"));
                }
            }
            c => path.push(c),
        }
    }
    Iri::new(format!("https://{language}.wikipedia.org/wiki/{path}")).expect("escaped page IRI is valid")
}

/// Extracts one text event per dated line of an event-list page.
pub fn parse_event_list_page(page: &EventListPage, config: &LanguageConfig) -> Result<Vec<TextEvent>, IngestError> {
    let page_scope = Scope::from_title(&page.title, config).ok_or_else(|| IngestError::Scope(page.title.clone()))?;
    let source_page = page_iri(&page.language, &page.title);
    let mut events = Vec::new();
    for line in &page.lines {
        let scope = match &line.section {
            Some(h) => Scope::from_heading(h, config).within(page_scope),
            None => page_scope,
        };
        let Some((time, end)) = match_date(&line.text, config, &scope) else {
            continue;
        };
        let rest = line.text[end..].trim_start_matches(|c: char| c.is_whitespace() || ":,;-‐‒–—―".contains(c));
        let description = if rest.trim().is_empty() { line.text.trim() } else { rest.trim() };
        events.push(TextEvent {
            description: description.to_string(),
            time,
            linked_entities: line.links.iter().map(|l| l.target.clone()).collect(),
            source_page: source_page.clone(),
            language: page.language.clone(),
        });
    }
    Ok(events)
}
