//! RDF terms: IRIs, blank nodes, literals, and triples.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use super::iri::Iri;
use super::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("blank node label `{0}` must match [A-Za-z0-9_]+")]
    BadBlankNodeLabel(String),
    #[error("language tag `{0}` is not well formed")]
    BadLanguageTag(String),
    #[error("language-tagged literals must use the rdf:langString datatype")]
    LangStringDatatype,
}

/// A blank node, identified by its label within one graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode(String);

impl BlankNode {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if label.is_empty()
            || !label
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(TermError::BadBlankNodeLabel(label));
        }
        Ok(BlankNode(label))
    }

    pub fn label(&self) -> &str {
        &self.0
    }

    /// Skips label validation; for parser-internal placeholders only.
    pub(crate) fn new_unchecked(label: String) -> Self {
        BlankNode(label)
    }
}

/// An RDF literal: lexical form plus datatype, optionally language-tagged.
///
/// Equality is term equality (lexical form, datatype, tag), not value-space
/// equality: `"1"^^xsd:integer` and `"01"^^xsd:integer` are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    /// Plain string literal (datatype xsd:string).
    pub fn string(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: vocab::iri(vocab::XSD_STRING),
            language: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Result<Self, TermError> {
        if datatype.as_str() == vocab::RDF_LANG_STRING {
            return Err(TermError::LangStringDatatype);
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        })
    }

    pub fn lang_tagged(
        lexical: impl Into<String>,
        tag: impl Into<String>,
    ) -> Result<Self, TermError> {
        let tag = tag.into();
        if !well_formed_language_tag(&tag) {
            return Err(TermError::BadLanguageTag(tag));
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype: vocab::iri(vocab::RDF_LANG_STRING),
            language: Some(tag),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

/// First subtag: 1-8 letters; further subtags: 1-8 letters or digits.
fn well_formed_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = match parts.next() {
        Some(p) => p,
        None => return false,
    };
    if first.is_empty() || first.len() > 8 || !first.chars().all(|c| c.is_ascii_alphabetic()) {
        return false;
    }
    parts.all(|p| {
        !p.is_empty() && p.len() <= 8 && p.chars().all(|c| c.is_ascii_alphanumeric())
    })
}

/// Any term that may appear in a triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    /// Canonical N-Triples-style rendering, used for deterministic ordering
    /// and diagnostics.
    pub fn canonical(&self) -> String {
        match self {
            Term::Iri(i) => format!("<{i}>"),
            Term::Blank(b) => format!("_:{}", b.label()),
            Term::Literal(l) => {
                let quoted = format!("\"{}\"", escape_literal(&l.lexical));
                if let Some(tag) = &l.language {
                    format!("{quoted}@{tag}")
                } else if l.datatype.as_str() == vocab::XSD_STRING {
                    quoted
                } else {
                    format!("{quoted}^^<{}>", l.datatype)
                }
            }
        }
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical().cmp(&other.canonical())
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

/// A term in subject position: IRI or blank node, never a literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subject {
    Iri(Iri),
    Blank(BlankNode),
}

impl Subject {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Subject::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_term(&self) -> Term {
        match self {
            Subject::Iri(i) => Term::Iri(i.clone()),
            Subject::Blank(b) => Term::Blank(b.clone()),
        }
    }

    pub fn canonical(&self) -> String {
        self.as_term().canonical()
    }
}

impl Ord for Subject {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical().cmp(&other.canonical())
    }
}

impl PartialOrd for Subject {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

impl From<Iri> for Subject {
    fn from(i: Iri) -> Self {
        Subject::Iri(i)
    }
}

impl From<BlankNode> for Subject {
    fn from(b: BlankNode) -> Self {
        Subject::Blank(b)
    }
}

impl TryFrom<Term> for Subject {
    type Error = Term;
    fn try_from(t: Term) -> Result<Self, Term> {
        match t {
            Term::Iri(i) => Ok(Subject::Iri(i)),
            Term::Blank(b) => Ok(Subject::Blank(b)),
            lit @ Term::Literal(_) => Err(lit),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }

    pub fn canonical(&self) -> String {
        format!(
            "{} <{}> {} .",
            self.subject.canonical(),
            self.predicate,
            self.object.canonical()
        )
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.subject
            .cmp(&other.subject)
            .then_with(|| self.predicate.cmp(&other.predicate))
            .then_with(|| self.object.cmp(&other.object))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

pub(crate) fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c < '\u{20}' => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}
