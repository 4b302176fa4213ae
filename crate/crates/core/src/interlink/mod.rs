//! Link and co-mention statistics over wiki corpora, attached to relation
//! nodes per language graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ingest::{IngestError, WikiCorpus};
use crate::kg::{Iri, RelationNode, Term};

/// Counts for one language edition, in canonical identifier space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LanguageStats {
    /// (page entity, target) to number of link occurrences on that page.
    pub links: BTreeMap<(Iri, Iri), u64>,
    /// Unordered pair (stored smaller first) to number of sentences linking
    /// both; `(a, a)` counts sentences linking `a`.
    pub mentions: BTreeMap<(Iri, Iri), u64>,
    /// Incoming link occurrences per entity over the whole edition.
    pub link_totals: BTreeMap<Iri, u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub languages: BTreeMap<String, LanguageStats>,
}

fn pair(a: &Iri, b: &Iri) -> (Iri, Iri) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

impl CorpusStats {
    /// Builds statistics for every corpus, mapping identifiers through `canon`.
    /// Corpora of the same language are merged.
    pub fn build<'a>(corpora: impl IntoIterator<Item = &'a WikiCorpus>, canon: impl Fn(&Iri) -> Iri) -> Self {
        let mut stats = CorpusStats::default();
        for corpus in corpora {
            let lang = stats.languages.entry(corpus.language.clone()).or_default();
            for page in corpus.pages.values() {
                let owner = page.entity.as_ref().map(&canon);
                for sentence in &page.sentences {
                    let mut targets = BTreeSet::new();
                    for link in &sentence.links {
                        let target = canon(&link.target);
                        *lang.link_totals.entry(target.clone()).or_default() += 1;
                        if let Some(owner) = &owner {
                            *lang.links.entry((owner.clone(), target.clone())).or_default() += 1;
                        }
                        targets.insert(target);
                    }
                    let targets: Vec<&Iri> = targets.iter().collect();
                    for (i, a) in targets.iter().enumerate() {
                        for b in &targets[i..] {
                            *lang.mentions.entry(pair(a, b)).or_default() += 1;
                        }
                    }
                }
            }
        }
        stats
    }

    pub fn language_codes(&self) -> impl Iterator<Item = &str> {
        self.languages.keys().map(String::as_str)
    }

    pub fn links(&self, lang: &str, subject: &Iri, object: &Iri) -> u64 {
        self.languages
            .get(lang)
            .and_then(|l| l.links.get(&(subject.clone(), object.clone())))
            .copied()
            .unwrap_or(0)
    }

    pub fn mentions(&self, lang: &str, a: &Iri, b: &Iri) -> u64 {
        self.languages.get(lang).and_then(|l| l.mentions.get(&pair(a, b))).copied().unwrap_or(0)
    }

    pub fn link_total(&self, lang: &str, entity: &Iri) -> u64 {
        self.languages.get(lang).and_then(|l| l.link_totals.get(entity)).copied().unwrap_or(0)
    }

    pub fn mentions_all(&self, a: &Iri, b: &Iri) -> u64 {
        self.language_codes().map(|l| self.mentions(l, a, b)).sum()
    }

    pub fn link_total_all(&self, entity: &Iri) -> u64 {
        self.language_codes().map(|l| self.link_total(l, entity)).sum()
    }
}

impl CorpusStats {
    /// Tab-separated dump: `T lang target n`, `L lang owner target n` and
    /// `M lang a b n` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (lang, l) in &self.languages {
            out.push_str(&format!("G\t{lang}\n"));
            for (t, n) in &l.link_totals {
                out.push_str(&format!("T\t{lang}\t{t}\t{n}\n"));
            }
            for ((a, b), n) in &l.links {
                out.push_str(&format!("L\t{lang}\t{a}\t{b}\t{n}\n"));
            }
            for ((a, b), n) in &l.mentions {
                out.push_str(&format!("M\t{lang}\t{a}\t{b}\t{n}\n"));
            }
        }
        out
    }

    pub fn from_tsv(text: &str, path: &str) -> Result<Self, IngestError> {
        let mut stats = CorpusStats::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = |message: String| IngestError::Parse { path: path.to_string(), line: i + 1, message };
            let f: Vec<&str> = line.split('\t').collect();
            let iri = |s: &str| Iri::new(s).map_err(|e| bad(e.to_string()));
            let count = |s: &str| s.parse::<u64>().map_err(|e| bad(e.to_string()));
            match f.as_slice() {
                ["G", lang] => {
                    stats.languages.entry(lang.to_string()).or_default();
                }
                ["T", lang, t, n] => {
                    stats.languages.entry(lang.to_string()).or_default().link_totals.insert(iri(t)?, count(n)?);
                }
                ["L", lang, a, b, n] => {
                    stats.languages.entry(lang.to_string()).or_default().links.insert((iri(a)?, iri(b)?), count(n)?);
                }
                ["M", lang, a, b, n] => {
                    let (a, b) = (iri(a)?, iri(b)?);
                    stats.languages.entry(lang.to_string()).or_default().mentions.insert(pair(&a, &b), count(n)?);
                }
                [tag, ..] if !["G", "T", "L", "M"].contains(tag) => {
                    return Err(IngestError::Schema { path: path.to_string(), line: i + 1, tag: tag.to_string() })
                }
                _ => return Err(bad(format!("wrong number of fields: {}", f.len()))),
            }
        }
        Ok(stats)
    }
}

/// Occurrences of links to `object` on the page representing `subject`.
pub fn count_links(corpus: &WikiCorpus, subject: &Iri, object: &Iri) -> u64 {
    corpus
        .pages
        .values()
        .filter(|p| p.entity.as_ref() == Some(subject))
        .flat_map(|p| &p.sentences)
        .flat_map(|s| &s.links)
        .filter(|l| l.target == *object)
        .count() as u64
}

/// Sentences, over all pages, linking both `a` and `b`.
pub fn count_mentions(corpus: &WikiCorpus, a: &Iri, b: &Iri) -> u64 {
    corpus
        .pages
        .values()
        .flat_map(|p| &p.sentences)
        .filter(|s| s.links.iter().any(|l| l.target == *a) && s.links.iter().any(|l| l.target == *b))
        .count() as u64
}

/// Fills per-language links and mentions of every relation, keyed by the
/// graph `graph_of` assigns to each language.
pub fn annotate_relations(relations: &mut [RelationNode], stats: &CorpusStats, graph_of: impl Fn(&str) -> Iri) {
    for rel in relations {
        for lang in stats.language_codes() {
            let graph = graph_of(lang);
            let (links, mentions) = match &rel.object {
                Term::Iri(o) => (stats.links(lang, &rel.subject, o), stats.mentions(lang, &rel.subject, o)),
                Term::Literal(_) => (0, 0),
            };
            rel.links.insert(graph.clone(), links);
            rel.mentions.insert(graph, mentions);
        }
    }
}
