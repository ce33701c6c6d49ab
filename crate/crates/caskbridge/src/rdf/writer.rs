//! Deterministic Turtle serializer.
//!
//! Emits prefix declarations sorted by label, then one triple per line in
//! canonical (subject, predicate, object) order. Re-parsing the output yields
//! a graph equal to the input (blank node labels are written explicitly, so
//! no relabeling happens on the way back).

use super::iri::Iri;
use super::term::{escape_literal, Literal, Subject, Term};
use super::vocab;
use super::Graph;

pub fn serialize_turtle(graph: &Graph) -> String {
    let mut out = String::new();
    for (label, ns) in graph.prefixes() {
        out.push_str(&format!("@prefix {label}: <{ns}> .\n"));
    }
    if !graph.prefixes().is_empty() && !graph.is_empty() {
        out.push('\n');
    }
    for triple in graph.iter() {
        let s = render_subject(graph, &triple.subject);
        let p = if triple.predicate.as_str() == vocab::RDF_TYPE {
            "a".to_string()
        } else {
            render_iri(graph, &triple.predicate)
        };
        let o = render_term(graph, &triple.object);
        out.push_str(&format!("{s} {p} {o} .\n"));
    }
    out
}

fn render_subject(graph: &Graph, subject: &Subject) -> String {
    match subject {
        Subject::Iri(i) => render_iri(graph, i),
        Subject::Blank(b) => format!("_:{}", b.label()),
    }
}

fn render_term(graph: &Graph, term: &Term) -> String {
    match term {
        Term::Iri(i) => render_iri(graph, i),
        Term::Blank(b) => format!("_:{}", b.label()),
        Term::Literal(l) => render_literal(graph, l),
    }
}

/// Compresses to a prefixed name when a declared namespace covers the IRI and
/// the remainder is a name the parser reads back unambiguously.
fn render_iri(graph: &Graph, iri: &Iri) -> String {
    let mut best: Option<(&String, &Iri)> = None;
    for (label, ns) in graph.prefixes() {
        if !label_safe(label) {
            continue;
        }
        if let Some(local) = iri.as_str().strip_prefix(ns.as_str()) {
            if local_safe(local) {
                let better = match best {
                    Some((_, best_ns)) => ns.as_str().len() > best_ns.as_str().len(),
                    None => true,
                };
                if better {
                    best = Some((label, ns));
                }
            }
        }
    }
    match best {
        Some((label, ns)) => {
            let local = &iri.as_str()[ns.as_str().len()..];
            format!("{label}:{local}")
        }
        None => format!("<{iri}>"),
    }
}

fn label_safe(label: &str) -> bool {
    label.is_empty()
        || (label.chars().next().unwrap().is_ascii_alphabetic()
            && label
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-'))
}

/// Conservative local-name subset: what we emit must re-parse to the same
/// IRI, so stay well inside the PN_LOCAL grammar.
fn local_safe(local: &str) -> bool {
    !local.is_empty()
        && !local.starts_with('-')
        && !local.starts_with('.')
        && !local.ends_with('.')
        && local
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn render_literal(graph: &Graph, literal: &Literal) -> String {
    let quoted = format!("\"{}\"", escape_literal(literal.lexical()));
    if let Some(tag) = literal.language() {
        return format!("{quoted}@{tag}");
    }
    let dt = literal.datatype().as_str();
    let lex = literal.lexical();
    match dt {
        vocab::XSD_STRING => quoted,
        vocab::XSD_INTEGER if is_integer_lexical(lex) => lex.to_string(),
        vocab::XSD_DECIMAL if is_decimal_lexical(lex) => lex.to_string(),
        vocab::XSD_DOUBLE if is_double_lexical(lex) => lex.to_string(),
        vocab::XSD_BOOLEAN if lex == "true" || lex == "false" => lex.to_string(),
        _ => format!("{quoted}^^{}", render_iri(graph, literal.datatype())),
    }
}

fn split_sign(lex: &str) -> &str {
    lex.strip_prefix(['+', '-']).unwrap_or(lex)
}

fn is_integer_lexical(lex: &str) -> bool {
    let digits = split_sign(lex);
    !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit())
}

fn is_decimal_lexical(lex: &str) -> bool {
    let body = split_sign(lex);
    match body.split_once('.') {
        Some((before, after)) => {
            !after.is_empty()
                && before.chars().all(|c| c.is_ascii_digit())
                && after.chars().all(|c| c.is_ascii_digit())
        }
        None => false,
    }
}

fn is_double_lexical(lex: &str) -> bool {
    let body = split_sign(lex);
    let (mantissa, exponent) = match body.split_once(['e', 'E']) {
        Some(parts) => parts,
        None => return false,
    };
    let exponent = exponent.strip_prefix(['+', '-']).unwrap_or(exponent);
    if exponent.is_empty() || !exponent.chars().all(|c| c.is_ascii_digit()) {
        return false;
    }
    let (before, after) = match mantissa.split_once('.') {
        Some((b, a)) => (b, a),
        None => (mantissa, ""),
    };
    (!before.is_empty() || !after.is_empty())
        && before.chars().all(|c| c.is_ascii_digit())
        && after.chars().all(|c| c.is_ascii_digit())
}
