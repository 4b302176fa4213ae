//! Namespaces and the fixed vocabulary terms used by the store.

use std::sync::LazyLock;

use super::Iri;

pub const SO: &str = "http://schema.org/";
pub const DBO: &str = "http://dbpedia.org/ontology/";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const DCTERMS: &str = "http://purl.org/dc/terms/";
pub const SEM: &str = "http://semanticweb.cs.vu.nl/2009/11/sem/";
pub const EVENTKG_S: &str = "http://eventKG.l3s.uni-hannover.de/schema/";
pub const EVENTKG_R: &str = "http://eventKG.l3s.uni-hannover.de/resource/";
pub const EVENTKG_G: &str = "http://eventKG.l3s.uni-hannover.de/graph/";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const VOID: &str = "http://rdfs.org/ns/void#";
pub const WD: &str = "http://www.wikidata.org/entity/";
pub const DBR: &str = "http://dbpedia.org/resource/";
pub const YAGO: &str = "http://yago-knowledge.org/resource/";

/// The core namespace table, in the order it is written to prefix files.
pub const CORE_PREFIXES: &[(&str, &str)] = &[
    ("so", SO),
    ("dbo", DBO),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("dcterms", DCTERMS),
    ("sem", SEM),
    ("eventKG-s", EVENTKG_S),
    ("eventKG-r", EVENTKG_R),
    ("eventKG-g", EVENTKG_G),
];

/// Additional prefixes accepted in fixture files.
pub const EXTRA_PREFIXES: &[(&str, &str)] = &[
    ("owl", OWL),
    ("xsd", XSD),
    ("void", VOID),
    ("wd", WD),
    ("dbr", DBR),
    ("yago", YAGO),
    ("dbr-fr", "http://fr.dbpedia.org/resource/"),
    ("dbr-de", "http://de.dbpedia.org/resource/"),
    ("dbr-pt", "http://pt.dbpedia.org/resource/"),
    ("dbr-ru", "http://ru.dbpedia.org/resource/"),
    ("prop-fr", "http://fr.dbpedia.org/property/"),
    ("dbp", "http://dbpedia.org/property/"),
];

/// Expands `prefix:local` against the known prefix tables. Strings that
/// are already absolute (`http://…`, `https://…`, `urn:…`) pass through.
pub fn expand(term: &str) -> Result<Iri, super::KgError> {
    if term.starts_with("http://") || term.starts_with("https://") || term.starts_with("urn:") {
        return Iri::new(term);
    }
    if let Some((prefix, local)) = term.split_once(':') {
        if let Some((_, ns)) = CORE_PREFIXES
            .iter()
            .chain(EXTRA_PREFIXES)
            .find(|(p, _)| *p == prefix)
        {
            return Iri::new(format!("{ns}{local}"));
        }
    }
    Iri::new(term)
}

/// Shortest `prefix:local` form of an IRI, for human-readable output.
pub fn compact(iri: &Iri) -> String {
    let s = iri.as_str();
    CORE_PREFIXES
        .iter()
        .chain(EXTRA_PREFIXES)
        .filter(|(_, ns)| s.starts_with(ns) && s.len() > ns.len())
        .max_by_key(|(_, ns)| ns.len())
        .map(|(p, ns)| format!("{p}:{}", &s[ns.len()..]))
        .unwrap_or_else(|| s.to_string())
}

/// Turtle-style `@prefix` lines for the core namespace table.
pub fn prefix_file() -> String {
    CORE_PREFIXES
        .iter()
        .chain(EXTRA_PREFIXES)
        .map(|(p, ns)| format!("@prefix {p}: <{ns}> .\n"))
        .collect()
}

fn term(ns: &str, local: &str) -> Iri {
    Iri::new(format!("{ns}{local}")).expect("vocabulary terms are valid IRIs")
}

pub fn graph_iri(local: &str) -> Result<Iri, super::KgError> {
    Iri::new(format!("{EVENTKG_G}{local}"))
}

pub fn resource_iri(local: &str) -> Iri {
    term(EVENTKG_R, local)
}

macro_rules! vocab {
    ($($name:ident = $ns:ident, $local:literal;)*) => {
        $(pub static $name: LazyLock<Iri> = LazyLock::new(|| term($ns, $local));)*
    };
}

vocab! {
    RDF_TYPE = RDF, "type";
    RDF_SUBJECT = RDF, "subject";
    RDF_OBJECT = RDF, "object";
    RDFS_LABEL = RDFS, "label";
    DCTERMS_ALTERNATIVE = DCTERMS, "alternative";
    DCTERMS_DESCRIPTION = DCTERMS, "description";
    DCTERMS_CREATED = DCTERMS, "created";
    OWL_SAME_AS = OWL, "sameAs";
    VOID_DATASET = VOID, "Dataset";
    SEM_CORE = SEM, "Core";
    SEM_EVENT = SEM, "Event";
    SEM_HAS_PLACE = SEM, "hasPlace";
    SEM_HAS_BEGIN = SEM, "hasBeginTimeStamp";
    SEM_HAS_END = SEM, "hasEndTimeStamp";
    SEM_ROLE_TYPE = SEM, "roleType";
    SO_HAS_SUB_EVENT = SO, "hasSubEvent";
    SO_CONTAINED_IN_PLACE = SO, "containedInPlace";
    SO_SUBJECT_OF = SO, "subjectOf";
    DBO_PREVIOUS_EVENT = DBO, "previousEvent";
    DBO_NEXT_EVENT = DBO, "nextEvent";
    EKG_RELATION = EVENTKG_S, "Relation";
    EKG_LINKS = EVENTKG_S, "links";
    EKG_MENTIONS = EVENTKG_S, "mentions";
    EKG_EXTRACTED_FROM = EVENTKG_S, "extractedFrom";
    XSD_DATE = XSD, "date";
    XSD_G_YEAR_MONTH = XSD, "gYearMonth";
    XSD_G_YEAR = XSD, "gYear";
    XSD_INTEGER = XSD, "integer";
    XSD_STRING = XSD, "string";
}

/// The fused named graph.
pub static FUSED_GRAPH: LazyLock<Iri> = LazyLock::new(|| term(EVENTKG_G, "event_kg"));
