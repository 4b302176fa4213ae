use regex::Regex;
use serde::Deserialize;

use super::IngestError;
use crate::kg::vocab::expand;
use crate::kg::Iri;

const EN_CONFIG: &str = include_str!("../../data/en.toml");

/// Specificity class of a date expression, most specific first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternClass {
    Interval,
    Single,
    Month,
    Year,
}

#[derive(Clone, Debug)]
pub struct DatePattern {
    pub class: PatternClass,
    pub regex: Regex,
}

#[derive(Deserialize)]
struct RawPattern {
    #[serde(default)]
    class: Option<PatternClass>,
    pattern: String,
}

#[derive(Deserialize)]
struct RawConfig {
    language: String,
    months: Vec<String>,
    #[serde(default)]
    weekdays: Vec<String>,
    hyphens: Vec<String>,
    #[serde(default)]
    blacklist_prefixes: Vec<String>,
    event_category_pattern: String,
    scope_patterns: Vec<RawPattern>,
    date_patterns: Vec<RawPattern>,
}

/// Language-dependent terms and regular expressions.
#[derive(Clone, Debug)]
pub struct LanguageConfig {
    pub language: String,
    pub months: Vec<String>,
    pub weekdays: Vec<String>,
    pub blacklist_prefixes: Vec<String>,
    pub event_category: Regex,
    /// Event-list title patterns capturing `year`, `month` and `day`.
    pub scope_patterns: Vec<Regex>,
    /// Anchored at the start of the text, in decreasing specificity.
    pub date_patterns: Vec<DatePattern>,
}

impl LanguageConfig {
    pub fn english() -> Self {
        Self::from_toml(EN_CONFIG).expect("bundled English configuration is valid")
    }

    pub fn for_language(language: &str) -> Result<Self, IngestError> {
        match language {
            "en" => Ok(Self::english()),
            other => Err(IngestError::Config(format!("no configuration for language {other:?}"))),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, IngestError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| IngestError::Config(e.to_string()))?;
        if raw.months.len() != 12 {
            return Err(IngestError::Config(format!("expected 12 month names, got {}", raw.months.len())));
        }
        let expander = Expander::new(&raw.months, &raw.weekdays, &raw.hyphens);
        let compile = |pattern: &str, anchored: bool| -> Result<Regex, IngestError> {
            let body = expander.expand(pattern);
            let full = if anchored { format!(r"^\s*(?:{body})") } else { body };
            Regex::new(&full).map_err(|e| IngestError::Config(format!("{pattern:?}: {e}")))
        };
        let mut date_patterns = Vec::new();
        for p in &raw.date_patterns {
            let class = p
                .class
                .ok_or_else(|| IngestError::Config(format!("date pattern {:?} has no class", p.pattern)))?;
            if let Some(prev) = date_patterns.last().map(|d: &DatePattern| d.class) {
                if class < prev {
                    return Err(IngestError::Config(format!(
                        "date pattern {:?} ({class:?}) listed after a less specific {prev:?} pattern",
                        p.pattern
                    )));
                }
            }
            date_patterns.push(DatePattern { class, regex: compile(&p.pattern, true)? });
        }
        let scope_patterns = raw
            .scope_patterns
            .iter()
            .map(|p| compile(&p.pattern, false))
            .collect::<Result<_, _>>()?;
        let event_category = Regex::new(&raw.event_category_pattern)
            .map_err(|e| IngestError::Config(format!("event category pattern: {e}")))?;
        Ok(LanguageConfig {
            language: raw.language,
            months: raw.months,
            weekdays: raw.weekdays,
            blacklist_prefixes: raw.blacklist_prefixes,
            event_category,
            scope_patterns,
            date_patterns,
        })
    }

    /// 1-based month number for a month name.
    pub fn month_number(&self, name: &str) -> Option<u32> {
        self.months.iter().position(|m| m == name).map(|i| i as u32 + 1)
    }

    pub fn is_blacklisted_title(&self, title: &str) -> bool {
        self.blacklist_prefixes.iter().any(|p| title.starts_with(p.as_str()))
    }
}

struct Expander {
    months: String,
    weekdays: String,
    hyphens: String,
}

impl Expander {
    fn new(months: &[String], weekdays: &[String], hyphens: &[String]) -> Self {
        let alternation = |items: &[String]| {
            let mut sorted: Vec<&String> = items.iter().collect();
            sorted.sort_by_key(|s| std::cmp::Reverse(s.chars().count()));
            sorted.iter().map(|s| regex::escape(s)).collect::<Vec<_>>().join("|")
        };
        Expander { months: alternation(months), weekdays: alternation(weekdays), hyphens: alternation(hyphens) }
    }

    fn expand(&self, pattern: &str) -> String {
        let mut out = pattern.to_string();
        for suffix in ["1", "2", ""] {
            out = out
                .replace(&format!("@month{suffix}@"), &format!(r"(?P<month{suffix}>{})\b", self.months))
                .replace(&format!("@day{suffix}@"), &format!(r"(?P<day{suffix}>[12]\d|3[01]|0?[1-9])\b"))
                .replace(&format!("@year{suffix}@"), &format!(r"(?P<year{suffix}>\d{{3,4}})\b"));
        }
        out.replace("@hyphensOr@", &format!(r"\s*(?:{})\s*", self.hyphens))
            .replace("@weekday@", &format!(r"(?:{})", self.weekdays))
    }
}

/// Class hierarchy roots and blacklist for knowledge-graph event identification.
#[derive(Clone, Debug, Deserialize)]
#[serde(try_from = "RawIdentification")]
pub struct IdentificationConfig {
    pub wikidata_roots: Vec<Iri>,
    pub wikidata_blacklist: Vec<Iri>,
    pub dbpedia_roots: Vec<Iri>,
}

#[derive(Deserialize)]
struct RawIdentification {
    wikidata_roots: Vec<String>,
    #[serde(default)]
    wikidata_blacklist: Vec<String>,
    dbpedia_roots: Vec<String>,
}

impl TryFrom<RawIdentification> for IdentificationConfig {
    type Error = IngestError;

    fn try_from(raw: RawIdentification) -> Result<Self, Self::Error> {
        let all = |v: Vec<String>| v.iter().map(|s| expand(s)).collect::<Result<Vec<_>, _>>();
        Ok(IdentificationConfig {
            wikidata_roots: all(raw.wikidata_roots)?,
            wikidata_blacklist: all(raw.wikidata_blacklist)?,
            dbpedia_roots: all(raw.dbpedia_roots)?,
        })
    }
}

impl Default for IdentificationConfig {
    /// Wikidata "event" and "occurrence" roots with "song" blacklisted, and
    /// `dbo:Event` for DBpedia.
    fn default() -> Self {
        let e = |s: &str| expand(s).expect("static IRI");
        IdentificationConfig {
            wikidata_roots: vec![e("wd:Q1656682"), e("wd:Q1190554")],
            wikidata_blacklist: vec![e("wd:Q7366")],
            dbpedia_roots: vec![e("dbo:Event")],
        }
    }
}
