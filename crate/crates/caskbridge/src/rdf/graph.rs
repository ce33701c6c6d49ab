//! In-memory triple set with prefix table and pattern matching.

use std::collections::{BTreeMap, BTreeSet};

use super::iri::Iri;
use super::term::{Subject, Term, Triple};

/// A set of triples plus declared namespace prefixes.
///
/// Insertion is idempotent and iteration order is the canonical
/// (subject, predicate, object) string order, so two graphs built from the
/// same triples in any order compare equal and serialize identically.
/// A `Graph` is plain owned data; once built it can be shared across threads
/// freely.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: BTreeMap<String, Iri>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Maps a prefix label to a namespace; the last declaration wins.
    pub fn add_prefix(&mut self, label: impl Into<String>, namespace: Iri) {
        self.prefixes.insert(label.into(), namespace);
    }

    pub fn prefixes(&self) -> &BTreeMap<String, Iri> {
        &self.prefixes
    }

    /// Merges another graph's triples and prefixes into this one.
    pub fn extend(&mut self, other: Graph) {
        self.triples.extend(other.triples);
        self.prefixes.extend(other.prefixes);
    }

    /// All triples agreeing with every given position, in canonical order.
    ///
    /// A literal in subject position can never match.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> Vec<Triple> {
        self.triples
            .iter()
            .filter(|t| {
                subject.is_none_or(|s| t.subject.as_term() == *s)
                    && predicate.is_none_or(|p| t.predicate == *p)
                    && object.is_none_or(|o| t.object == *o)
            })
            .cloned()
            .collect()
    }

    /// Objects of all triples `(subject, predicate, _)`, in canonical order.
    pub fn objects_for(&self, subject: &Subject, predicate: &Iri) -> Vec<Term> {
        self.triples
            .iter()
            .filter(|t| t.subject == *subject && t.predicate == *predicate)
            .map(|t| t.object.clone())
            .collect()
    }

    /// Subjects of all `rdf:type` triples with the given class object.
    pub fn subjects_of_type(&self, class: &Iri) -> Vec<Subject> {
        let ty = super::vocab::rdf_type();
        self.triples
            .iter()
            .filter(|t| t.predicate == ty && t.object.as_iri() == Some(class))
            .map(|t| t.subject.clone())
            .collect()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;
    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}
