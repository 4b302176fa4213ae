//! Manifest-driven construction: load sources, identify events, integrate,
//! interlink and assemble the named graphs.
//!
//! Manifest grammar (TOML):
//!
//! ```toml
//! [[source]]
//! graph = "wikidata"          # local name under eventKG-g:
//! kind = "kg_wikidata"        # kg_wikidata | kg_dbpedia | kg_yago | wiki_corpus | wiki_event_lists | wcep
//! path = "wikidata.kgsrc"     # relative to the manifest
//! language = "en"             # optional
//! trust = 1                   # optional, lower is more trusted
//! created = "2018-03-01"      # optional
//!
//! [languages]                 # optional language configurations
//! pt = "pt.toml"
//!
//! [identification]            # optional, prefixed names
//! wikidata_roots = ["wd:Q1656682"]
//! dbpedia_roots = ["dbo:Event"]
//!
//! [mapping]                   # optional replacement tables
//! predicates = "predicates.tsv"
//! types = "types.tsv"
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use log::{info, warn};
use serde::Deserialize;
use thiserror::Error;

use crate::fuse::{build_fused_graph, FuseError, FusionConfig, FusionReport, TypeMapping};
use crate::ingest::{
    extract_entity_times, extract_relations, identify_events, load_source, parse_event_list_page, IdentificationConfig,
    IngestError, LanguageConfig, PredicateMapping, RelationCategory, SourceDescriptor, SourceKind, SourceRecords,
    StatedTimes,
};
use crate::ingest::dates::page_iri;
use crate::integrate::{assemble_graphs, cluster_sameas, dedup_text_events, Clustering, Dedup, SourceGraph, SourcedTextEvent};
use crate::interlink::{annotate_relations, CorpusStats};
use crate::kg::vocab::{graph_iri, resource_iri, SO_SUBJECT_OF};
use crate::kg::{Iri, KgError, QuadStore, RelationNode, Term, TimeInterval};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Manifest { path: String, message: String },
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Fuse(#[from] FuseError),
    #[error(transparent)]
    Kg(#[from] KgError),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceEntry {
    pub graph: String,
    pub kind: SourceKind,
    pub path: PathBuf,
    pub language: Option<String>,
    pub trust: Option<u32>,
    pub created: Option<NaiveDate>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MappingFiles {
    pub predicates: Option<PathBuf>,
    pub types: Option<PathBuf>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(rename = "source", default)]
    pub sources: Vec<SourceEntry>,
    #[serde(default)]
    pub languages: BTreeMap<String, PathBuf>,
    pub identification: Option<IdentificationConfig>,
    #[serde(default)]
    pub mapping: MappingFiles,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base: PathBuf,
}

fn read(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|source| PipelineError::Io { path: path.display().to_string(), source })
}

impl Manifest {
    pub fn load(path: &Path) -> Result<Self, PipelineError> {
        let text = read(path)?;
        let mut m = Self::parse(&text, &path.display().to_string())?;
        m.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(m)
    }

    pub fn parse(text: &str, label: &str) -> Result<Self, PipelineError> {
        let m: Manifest =
            toml::from_str(text).map_err(|e| PipelineError::Manifest { path: label.to_string(), message: e.to_string() })?;
        let mut seen = BTreeSet::new();
        for s in &m.sources {
            if !seen.insert((&s.graph, s.kind)) {
                return Err(PipelineError::Manifest {
                    path: label.to_string(),
                    message: format!("source {} of kind {} listed twice", s.graph, s.kind),
                });
            }
        }
        Ok(m)
    }

    fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    pub fn descriptors(&self) -> Result<Vec<SourceDescriptor>, PipelineError> {
        self.sources
            .iter()
            .map(|s| {
                let mut d = SourceDescriptor::new(graph_iri(&s.graph)?, s.kind, s.language.as_deref());
                if let Some(t) = s.trust {
                    d.trust_rank = t;
                }
                d.created = s.created;
                Ok(d)
            })
            .collect()
    }

    fn language(&self, code: &str) -> Result<LanguageConfig, PipelineError> {
        match self.languages.get(code) {
            Some(p) => Ok(LanguageConfig::from_toml(&read(&self.resolve(p))?)?),
            None => Ok(LanguageConfig::for_language(code)?),
        }
    }

    pub fn predicate_mapping(&self) -> Result<PredicateMapping, PipelineError> {
        match &self.mapping.predicates {
            Some(p) => Ok(PredicateMapping::parse(&read(&self.resolve(p))?)?),
            None => Ok(PredicateMapping::default()),
        }
    }

    /// Fusion settings: manifest trust ranks and type equivalences.
    pub fn fusion_config(&self) -> Result<FusionConfig, PipelineError> {
        let mut config = FusionConfig::default();
        if let Some(p) = &self.mapping.types {
            config.types = TypeMapping::parse(&read(&self.resolve(p))?)?;
        }
        for d in self.descriptors()? {
            config.trust_ranks.insert(d.graph, d.trust_rank);
        }
        Ok(config)
    }
}

/// Everything produced by [`build`].
#[derive(Clone, Debug)]
pub struct BuildOutput {
    pub store: QuadStore,
    pub stats: CorpusStats,
    pub clustering: Clustering,
    pub dedup: Dedup,
    /// Subclass cycles per source graph, excluded from event identification.
    pub cycles: BTreeMap<Iri, Vec<Vec<Iri>>>,
}

struct Loaded {
    descriptor: SourceDescriptor,
    records: SourceRecords,
    language: Option<LanguageConfig>,
    events: BTreeSet<Iri>,
}

fn language_graph(lang: &str) -> Iri {
    graph_iri(&format!("wikipedia_{lang}")).expect("language codes form valid graph names")
}

/// Runs ingestion through assembly; the fused graph is left empty.
pub fn build(manifest: &Manifest) -> Result<BuildOutput, PipelineError> {
    let identification = manifest.identification.clone().unwrap_or_default();
    let mapping = manifest.predicate_mapping()?;
    let mut loaded = Vec::new();
    let mut cycles = BTreeMap::new();
    for (entry, descriptor) in manifest.sources.iter().zip(manifest.descriptors()?) {
        let records = load_source(&manifest.resolve(&entry.path), &descriptor)?;
        let lang = descriptor.language_or_default();
        let language = match descriptor.kind {
            SourceKind::WikiEventLists | SourceKind::Wcep => Some(manifest.language(lang)?),
            SourceKind::WikiCorpus => Some(manifest.language(lang).unwrap_or_else(|e| {
                warn!("{}: {e}; using the English category pattern", descriptor.graph);
                LanguageConfig::english()
            })),
            _ => None,
        };
        let ident = identify_events(&records, &descriptor, language.as_ref().unwrap_or(&LanguageConfig::english()), &identification);
        if !ident.cycles.is_empty() {
            cycles.insert(descriptor.graph.clone(), ident.cycles.clone());
        }
        info!("{}: {} events identified", descriptor.graph, ident.events.len());
        loaded.push(Loaded { descriptor, records, language, events: ident.events });
    }

    let mut pairs = Vec::new();
    let mut nodes = BTreeSet::new();
    let mut events = BTreeSet::new();
    for l in &loaded {
        events.extend(l.events.iter().cloned());
        match &l.records {
            SourceRecords::Kg(kg) => {
                pairs.extend(kg.same_as.iter().cloned());
                for t in &kg.triples {
                    nodes.insert(t.subject.clone());
                    nodes.extend(t.object.as_iri().cloned());
                }
                nodes.extend(kg.labels.iter().map(|(i, _, _)| i.clone()));
                nodes.extend(kg.instance_of.iter().map(|(i, _)| i.clone()));
                nodes.extend(kg.types.iter().map(|(i, _)| i.clone()));
            }
            SourceRecords::Corpus(c) => {
                for p in c.pages.values() {
                    nodes.extend(p.entity.iter().cloned());
                    nodes.extend(p.sentences.iter().flat_map(|s| s.links.iter().map(|l| l.target.clone())));
                }
            }
            SourceRecords::EventLists(pages) => {
                nodes.extend(pages.iter().flat_map(|p| p.lines.iter().flat_map(|l| l.links.iter().map(|k| k.target.clone()))));
            }
        }
    }
    let mut clustering = cluster_sameas(&pairs, &nodes, &events);
    for c in &clustering.conflicts {
        warn!("sameAs {} ~ {} not applied: would merge {} and {}", c.pair.0, c.pair.1, c.wikidata_ids.0, c.wikidata_ids.1);
    }

    let mut graphs: BTreeMap<Iri, SourceGraph> = BTreeMap::new();
    let mut known_times: BTreeMap<Iri, Vec<TimeInterval>> = BTreeMap::new();
    let mut relation_counter: BTreeMap<Iri, usize> = BTreeMap::new();
    let mut next_relation = |graph: &Iri| -> Iri {
        let n = relation_counter.entry(graph.clone()).or_default();
        *n += 1;
        resource_iri(&format!("{}_relation_{}", graph.local_name(), *n - 1))
    };
    let mut text_events = Vec::new();
    let mut corpora = Vec::new();
    for l in &loaded {
        let d = &l.descriptor;
        let g = graphs.entry(d.graph.clone()).or_insert_with(|| SourceGraph::new(d.clone()));
        match &l.records {
            SourceRecords::Kg(kg) => {
                let times = extract_entity_times(kg, d.kind, &mapping);
                let timed: BTreeSet<Iri> = times.keys().cloned().collect();
                let touch = |g: &mut SourceGraph, source_id: &Iri| -> Iri {
                    let c = clustering.resolve(source_id);
                    let is_event = clustering.is_event(&c);
                    g.entity(&c, is_event).same_as.insert(source_id.clone());
                    c
                };
                let mut mentioned: BTreeSet<&Iri> = BTreeSet::new();
                for t in &kg.triples {
                    mentioned.insert(&t.subject);
                    mentioned.extend(t.object.as_iri());
                }
                mentioned.extend(kg.labels.iter().map(|x| &x.0));
                mentioned.extend(kg.instance_of.iter().chain(&kg.types).chain(&kg.same_as).map(|x| &x.0));
                for id in mentioned {
                    touch(g, id);
                }
                for (id, StatedTimes { starts, ends }) in &times {
                    let c = touch(g, id);
                    let t = TimeInterval::lenient(starts.iter().min_by_key(|p| p.date).copied(), ends.iter().max_by_key(|p| p.date).copied());
                    g.entity(&c, false).time = t;
                    if clustering.is_event(&c) {
                        known_times.entry(c).or_default().push(t);
                    }
                }
                for (id, lang, label) in &kg.labels {
                    let c = clustering.resolve(id);
                    let e = g.entity(&c, false);
                    if e.labels.get(lang).is_some_and(|x| x != label) {
                        e.aliases.entry(lang.clone()).or_default().insert(label.clone());
                    } else {
                        e.labels.insert(lang.clone(), label.clone());
                    }
                }
                for (id, class) in kg.instance_of.iter().chain(&kg.types) {
                    let c = clustering.resolve(id);
                    g.entity(&c, false).types.insert(class.clone());
                }
                for r in extract_relations(kg, d, &mapping, &l.events, &timed) {
                    let s = clustering.resolve(&r.subject);
                    let o = match &r.object {
                        Term::Iri(o) => Term::Iri(clustering.resolve(o)),
                        lit => lit.clone(),
                    };
                    if r.category == RelationCategory::Structural {
                        g.statements.push((s, r.predicate, o));
                    } else {
                        let mut node = RelationNode::new(next_relation(&d.graph), s, Some(r.predicate), o);
                        node.time = r.qualifier_time;
                        g.relations.push(node);
                    }
                }
            }
            SourceRecords::Corpus(corpus) => {
                let lang = d.language_or_default();
                for p in corpus.pages.values() {
                    let Some(entity) = &p.entity else { continue };
                    let c = clustering.resolve(entity);
                    let e = g.entity(&c, clustering.is_event(&c));
                    e.labels.insert(lang.to_string(), p.title.clone());
                    e.same_as.insert(page_iri(lang, &p.title));
                }
                corpora.push(corpus);
            }
            SourceRecords::EventLists(pages) => {
                let config = l.language.as_ref().expect("event-list sources carry a language");
                for page in pages {
                    for mut t in parse_event_list_page(page, config)? {
                        t.linked_entities = t.linked_entities.iter().map(|x| clustering.resolve(x)).collect();
                        text_events.push(SourcedTextEvent { graph: d.graph.clone(), event: t });
                    }
                }
            }
        }
    }

    let dedup = dedup_text_events(&text_events, &known_times);
    for a in &dedup.attachments {
        let g = graphs.get_mut(&a.text.graph).expect("text events come from registered graphs");
        let e = g.entity(&a.event, true);
        e.descriptions.entry(a.text.event.language.clone()).or_default().insert(a.text.event.description.clone());
        e.extracted_from.insert(a.text.event.source_page.clone());
    }
    for m in &dedup.merged {
        let id = clustering.mint_event();
        for member in &m.members {
            let g = graphs.get_mut(&member.graph).expect("text events come from registered graphs");
            let e = g.entity(&id, true);
            e.time = member.event.time;
            e.descriptions.entry(member.event.language.clone()).or_default().insert(member.event.description.clone());
            e.extracted_from.insert(member.event.source_page.clone());
            for linked in &member.event.linked_entities {
                let is_event = clustering.is_event(linked);
                g.entity(linked, is_event);
                let node_id = next_relation(&member.graph);
                g.relations.push(RelationNode::new(node_id, linked.clone(), Some(SO_SUBJECT_OF.clone()), id.clone()));
            }
        }
    }

    let stats = CorpusStats::build(corpora.iter().copied(), |i| clustering.resolve(i));
    let lang_graph: BTreeMap<String, Iri> = loaded
        .iter()
        .filter(|l| l.descriptor.kind == SourceKind::WikiCorpus)
        .map(|l| (l.descriptor.language_or_default().to_string(), l.descriptor.graph.clone()))
        .collect();
    let graph_of = |lang: &str| lang_graph.get(lang).cloned().unwrap_or_else(|| language_graph(lang));

    let mut related: BTreeSet<(Iri, Iri)> = BTreeSet::new();
    for g in graphs.values() {
        for r in &g.relations {
            if let Term::Iri(o) = &r.object {
                related.insert((r.subject.clone(), o.clone()));
            }
        }
    }
    let mut link_only: BTreeMap<(Iri, Iri), String> = BTreeMap::new();
    for (lang, ls) in &stats.languages {
        for ((owner, target), n) in &ls.links {
            let touches_event = clustering.is_event(owner) || clustering.is_event(target);
            if *n > 0 && touches_event && !related.contains(&(owner.clone(), target.clone())) {
                link_only.entry((owner.clone(), target.clone())).or_insert_with(|| lang.clone());
            }
        }
    }
    for ((owner, target), lang) in link_only {
        let graph = graph_of(&lang);
        let id = next_relation(&graph);
        if let Some(g) = graphs.get_mut(&graph) {
            g.relations.push(RelationNode::new(id, owner, None, target));
        }
    }
    for g in graphs.values_mut() {
        for r in g.relations.iter_mut() {
            let involves_event =
                clustering.is_event(&r.subject) || r.object.as_iri().is_some_and(|o| clustering.is_event(o));
            if involves_event {
                annotate_relations(std::slice::from_mut(r), &stats, graph_of);
            }
        }
    }

    let sources: Vec<SourceGraph> = graphs.into_values().collect();
    let store = assemble_graphs(&sources);
    Ok(BuildOutput { store, stats, clustering, dedup, cycles })
}

/// [`build`] followed by fusion with the manifest's settings.
pub fn build_and_fuse(manifest: &Manifest) -> Result<(BuildOutput, FusionReport), PipelineError> {
    let mut out = build(manifest)?;
    let report = build_fused_graph(&mut out.store, &manifest.fusion_config()?)?;
    Ok((out, report))
}
