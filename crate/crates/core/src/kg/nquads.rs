//! N-Quads 1.1 reading and writing.
//!
//! Output is canonical: one quad per line in store order, IRIs unescaped,
//! literals escaping only `"`, `\`, LF and CR. Every quad carries a graph
//! label; blank nodes are not supported.

use std::fmt::Write as _;

use super::store::{Literal, Quad, QuadStore, Term};
use super::time::Bound;
use super::vocab::DCTERMS_CREATED;
use super::{Iri, KgError};

pub fn write_quad(out: &mut String, q: &Quad) {
    let _ = write!(out, "<{}> <{}> ", q.subject, q.predicate);
    write_term(out, &q.object);
    let _ = writeln!(out, " <{}> .", q.graph);
}

fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(i) => {
            let _ = write!(out, "<{i}>");
        }
        Term::Literal(l) => {
            out.push('"');
            for c in l.value.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\r' => out.push_str("\\r"),
                    c => out.push(c),
                }
            }
            out.push('"');
            if let Some(lang) = &l.language {
                let _ = write!(out, "@{lang}");
            } else if let Some(dt) = &l.datatype {
                let _ = write!(out, "^^<{dt}>");
            }
        }
    }
}

/// Serializes the whole store in canonical order.
pub fn to_nquads(store: &QuadStore) -> String {
    let mut out = String::new();
    for q in store.iter() {
        write_quad(&mut out, q);
    }
    out
}

/// Parses N-Quads into a store. Every graph label seen is registered; a
/// `dcterms:created` date on the graph itself becomes its creation date.
pub fn from_nquads(text: &str) -> Result<QuadStore, KgError> {
    let mut quads = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let quad = parse_line(line).map_err(|message| KgError::Parse { line: idx + 1, message })?;
        quads.push(quad);
    }
    let mut store = QuadStore::new();
    for q in &quads {
        if !store.has_graph(&q.graph) {
            store.register_graph(q.graph.clone(), None);
        }
        if q.subject == q.graph && q.predicate == *DCTERMS_CREATED {
            if let Some(p) = q.object.as_time_point(Bound::Start) {
                store.register_graph(q.graph.clone(), Some(p.date));
            }
        }
    }
    for q in quads {
        store.insert(q)?;
    }
    Ok(store)
}

pub fn parse_line(line: &str) -> Result<Quad, String> {
    let mut cur = Cursor { rest: line };
    let subject = cur.iri()?;
    let predicate = cur.iri()?;
    let object = cur.term()?;
    cur.skip_ws();
    if cur.rest.starts_with('.') {
        return Err("missing graph label (default-graph statements are not supported)".into());
    }
    let graph = cur.iri()?;
    cur.skip_ws();
    if !cur.rest.starts_with('.') {
        return Err("expected '.'".into());
    }
    cur.rest = &cur.rest[1..];
    cur.skip_ws();
    if !cur.rest.is_empty() && !cur.rest.starts_with('#') {
        return Err(format!("trailing content {:?}", cur.rest));
    }
    Ok(Quad { graph, subject, predicate, object })
}

struct Cursor<'a> {
    rest: &'a str,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start_matches([' ', '\t']);
    }

    fn iri(&mut self) -> Result<Iri, String> {
        self.skip_ws();
        if self.rest.starts_with("_:") {
            return Err("blank nodes are not supported".into());
        }
        let body = self.rest.strip_prefix('<').ok_or("expected '<'")?;
        let end = body.find('>').ok_or("unterminated IRI")?;
        let raw = &body[..end];
        self.rest = &body[end + 1..];
        let value = unescape(raw, false)?;
        Iri::new(value).map_err(|e| e.to_string())
    }

    fn term(&mut self) -> Result<Term, String> {
        self.skip_ws();
        if !self.rest.starts_with('"') {
            return self.iri().map(Term::Iri);
        }
        let body = &self.rest[1..];
        let mut end = None;
        let mut escaped = false;
        for (i, c) in body.char_indices() {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => {
                    end = Some(i);
                    break;
                }
                _ => {}
            }
        }
        let end = end.ok_or("unterminated literal")?;
        let value = unescape(&body[..end], true)?;
        self.rest = &body[end + 1..];
        if let Some(after) = self.rest.strip_prefix('@') {
            let len = after
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
                .unwrap_or(after.len());
            if len == 0 {
                return Err("empty language tag".into());
            }
            let language = after[..len].to_string();
            self.rest = &after[len..];
            return Ok(Term::Literal(Literal { value, datatype: None, language: Some(language) }));
        }
        if let Some(after) = self.rest.strip_prefix("^^") {
            self.rest = after;
            let dt = self.iri()?;
            return Ok(Term::Literal(Literal { value, datatype: Some(dt), language: None }));
        }
        Ok(Term::Literal(Literal { value, datatype: None, language: None }))
    }
}

fn unescape(raw: &str, literal: bool) -> Result<String, String> {
    let mut out = String::with_capacity(raw.len());
    let mut chars = raw.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        let e = chars.next().ok_or("dangling escape")?;
        let hex = |n: usize, chars: &mut std::str::Chars| -> Result<char, String> {
            let digits: String = chars.by_ref().take(n).collect();
            if digits.len() != n {
                return Err("short unicode escape".into());
            }
            u32::from_str_radix(&digits, 16)
                .ok()
                .and_then(char::from_u32)
                .ok_or_else(|| format!("bad unicode escape {digits}"))
        };
        match e {
            'u' => out.push(hex(4, &mut chars)?),
            'U' => out.push(hex(8, &mut chars)?),
            't' if literal => out.push('\t'),
            'b' if literal => out.push('\u{8}'),
            'n' if literal => out.push('\n'),
            'r' if literal => out.push('\r'),
            'f' if literal => out.push('\u{c}'),
            '"' if literal => out.push('"'),
            '\'' if literal => out.push('\''),
            '\\' if literal => out.push('\\'),
            other => return Err(format!("invalid escape \\{other}")),
        }
    }
    Ok(out)
}
