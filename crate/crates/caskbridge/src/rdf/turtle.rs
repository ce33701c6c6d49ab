//! Turtle parser.
//!
//! Supported syntax: `@prefix`/`@base` (and the SPARQL-style `PREFIX`/`BASE`
//! forms), IRIs with `\u`/`\U` escapes, prefixed names, string literals in
//! all four quoting styles with datatype or language tag, numeric and boolean
//! shorthand, the `a` keyword, predicate lists (`;`), object lists (`,`),
//! labeled and anonymous blank nodes including property lists, and comments.
//! Collections `( )` and quoted triples are not supported.

use std::collections::BTreeMap;

use thiserror::Error;

use super::iri::Iri;
use super::term::{BlankNode, Literal, Subject, Term, Triple};
use super::vocab;
use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurtleError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown prefix `{prefix}` at {line}:{column}")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        column: usize,
    },
    #[error("relative IRI `{reference}` at {line}:{column} but no base was given")]
    MissingBase {
        reference: String,
        line: usize,
        column: usize,
    },
}

/// Parses a Turtle document into a [`Graph`].
///
/// Relative IRIs resolve against `base` (or a `@base` directive); anonymous
/// blank nodes get stable generated labels (`b0`, `b1`, ... in input order,
/// skipping labels the document uses explicitly).
pub fn parse_turtle(text: &str, base: Option<&Iri>) -> Result<Graph, TurtleError> {
    let mut parser = Parser::new(text, base.cloned());
    parser.parse_document()?;
    Ok(parser.finish())
}

/// Internal marker prefix for generated anonymous labels. Contains `:` so it
/// can never collide with an explicit label (`[A-Za-z0-9_]+`).
const ANON_PREFIX: &str = "anon:";

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    base: Option<Iri>,
    prefixes: BTreeMap<String, Iri>,
    triples: Vec<(Term, Iri, Term)>,
    anon_counter: usize,
}

impl Parser {
    fn new(text: &str, base: Option<Iri>) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            base,
            prefixes: BTreeMap::new(),
            triples: Vec::new(),
            anon_counter: 0,
        }
    }

    fn finish(self) -> Graph {
        let mut explicit: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
        for (s, _, o) in &self.triples {
            for term in [s, o] {
                if let Term::Blank(b) = term {
                    if !b.label().starts_with(ANON_PREFIX) {
                        explicit.insert(b.label().to_string());
                    }
                }
            }
        }
        // assign b0, b1, ... to anonymous nodes in input order
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        let mut next = 0usize;
        for (s, _, o) in &self.triples {
            for term in [s, o] {
                if let Term::Blank(b) = term {
                    let label = b.label();
                    if label.starts_with(ANON_PREFIX) && !rename.contains_key(label) {
                        let fresh = loop {
                            let candidate = format!("b{next}");
                            next += 1;
                            if !explicit.contains(&candidate) {
                                break candidate;
                            }
                        };
                        rename.insert(label.to_string(), fresh);
                    }
                }
            }
        }
        let relabel = |term: &Term| -> Term {
            match term {
                Term::Blank(b) if b.label().starts_with(ANON_PREFIX) => Term::Blank(
                    BlankNode::new(rename[b.label()].clone()).expect("generated label"),
                ),
                other => other.clone(),
            }
        };
        let mut graph = Graph::new();
        for (label, ns) in self.prefixes {
            graph.add_prefix(label, ns);
        }
        for (s, p, o) in &self.triples {
            let subject = Subject::try_from(relabel(s)).expect("parser never emits literal subjects");
            graph.insert(Triple::new(subject, p.clone(), relabel(o)));
        }
        graph
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, TurtleError> {
        Err(TurtleError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, expected: char) -> Result<(), TurtleError> {
        match self.peek() {
            Some(c) if c == expected => {
                self.bump();
                Ok(())
            }
            Some(c) => self.err(format!("expected `{expected}`, found `{c}`")),
            None => self.err(format!("expected `{expected}`, found end of input")),
        }
    }

    /// True if the next characters spell `word` followed by a delimiter.
    fn at_keyword(&self, word: &str) -> bool {
        for (i, w) in word.chars().enumerate() {
            match self.peek_at(i) {
                Some(c) if c.eq_ignore_ascii_case(&w) => {}
                _ => return false,
            }
        }
        match self.peek_at(word.chars().count()) {
            None => true,
            Some(c) => !(c.is_alphanumeric() || c == '_' || c == '-'),
        }
    }

    fn consume_keyword(&mut self, word: &str) {
        for _ in word.chars() {
            self.bump();
        }
    }

    fn parse_document(&mut self) -> Result<(), TurtleError> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.parse_statement()?;
        }
    }

    fn parse_statement(&mut self) -> Result<(), TurtleError> {
        if self.peek() == Some('@') {
            if self.at_directive("@prefix") {
                self.consume_keyword("@prefix");
                self.parse_prefix_directive(true)?;
                return Ok(());
            }
            if self.at_directive("@base") {
                self.consume_keyword("@base");
                self.parse_base_directive(true)?;
                return Ok(());
            }
            return self.err("unknown directive");
        }
        if self.at_keyword("PREFIX") {
            self.consume_keyword("PREFIX");
            self.parse_prefix_directive(false)?;
            return Ok(());
        }
        if self.at_keyword("BASE") {
            self.consume_keyword("BASE");
            self.parse_base_directive(false)?;
            return Ok(());
        }
        self.parse_triples()?;
        self.skip_ws();
        self.expect('.')
    }

    fn at_directive(&self, word: &str) -> bool {
        // case-sensitive match for @-directives
        for (i, w) in word.chars().enumerate() {
            if self.peek_at(i) != Some(w) {
                return false;
            }
        }
        true
    }

    fn parse_prefix_directive(&mut self, dotted: bool) -> Result<(), TurtleError> {
        self.skip_ws();
        let label = self.parse_prefix_label()?;
        self.expect(':')?;
        self.skip_ws();
        let ns = self.parse_iriref()?;
        if dotted {
            self.skip_ws();
            self.expect('.')?;
        }
        self.prefixes.insert(label, ns);
        Ok(())
    }

    fn parse_base_directive(&mut self, dotted: bool) -> Result<(), TurtleError> {
        self.skip_ws();
        let iri = self.parse_iriref()?;
        if dotted {
            self.skip_ws();
            self.expect('.')?;
        }
        self.base = Some(iri);
        Ok(())
    }

    /// Prefix label: empty, or a name starting with a letter.
    fn parse_prefix_label(&mut self) -> Result<String, TurtleError> {
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if label.is_empty() {
                if !c.is_alphabetic() {
                    break;
                }
            } else if !(c.is_alphanumeric() || c == '_' || c == '-' || c == '.') {
                break;
            }
            label.push(c);
            self.bump();
        }
        if label.ends_with('.') {
            return self.err("prefix label must not end with `.`");
        }
        Ok(label)
    }

    fn parse_triples(&mut self) -> Result<(), TurtleError> {
        let subject = self.parse_subject()?;
        self.skip_ws();
        // a bare blank node property list may omit the predicate-object list
        if self.peek() == Some('.') {
            return Ok(());
        }
        self.parse_predicate_object_list(&subject)
    }

    fn parse_subject(&mut self) -> Result<Term, TurtleError> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::Blank(self.parse_blank_label()?)),
            Some('[') => self.parse_blank_node_body(),
            Some('(') => self.err("collections are not supported"),
            Some(_) => Ok(Term::Iri(self.parse_prefixed_name()?)),
            None => self.err("expected subject, found end of input"),
        }
    }

    fn parse_predicate_object_list(&mut self, subject: &Term) -> Result<(), TurtleError> {
        loop {
            self.skip_ws();
            let predicate = self.parse_verb()?;
            loop {
                self.skip_ws();
                let object = self.parse_object()?;
                self.triples
                    .push((subject.clone(), predicate.clone(), object));
                self.skip_ws();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            if self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
                // trailing `;` before `.` or `]` is allowed
                match self.peek() {
                    Some('.') | Some(']') | None => return Ok(()),
                    Some(';') => continue,
                    _ => continue,
                }
            } else {
                return Ok(());
            }
        }
    }

    fn parse_verb(&mut self) -> Result<Iri, TurtleError> {
        if self.at_directive("a")
            && self
                .peek_at(1)
                .map(|c| c.is_whitespace() || c == '<' || c == '[' || c == '#')
                .unwrap_or(false)
        {
            self.bump();
            return Ok(vocab::rdf_type());
        }
        match self.peek() {
            Some('<') => self.parse_iriref(),
            Some(_) => self.parse_prefixed_name(),
            None => self.err("expected predicate, found end of input"),
        }
    }

    fn parse_object(&mut self) -> Result<Term, TurtleError> {
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::Blank(self.parse_blank_label()?)),
            Some('[') => self.parse_blank_node_body(),
            Some('(') => self.err("collections are not supported"),
            Some('"') | Some('\'') => self.parse_rdf_literal(),
            Some(c) if c == '+' || c == '-' || c.is_ascii_digit() => self.parse_numeric_literal(),
            Some('.') if self.peek_at(1).map(|c| c.is_ascii_digit()).unwrap_or(false) => {
                self.parse_numeric_literal()
            }
            Some(_) if self.at_keyword("true") => {
                self.consume_keyword("true");
                Ok(Term::Literal(self.boolean("true")))
            }
            Some(_) if self.at_keyword("false") => {
                self.consume_keyword("false");
                Ok(Term::Literal(self.boolean("false")))
            }
            Some(_) => Ok(Term::Iri(self.parse_prefixed_name()?)),
            None => self.err("expected object, found end of input"),
        }
    }

    fn boolean(&self, lexical: &str) -> Literal {
        Literal::typed(lexical, vocab::iri(vocab::XSD_BOOLEAN)).expect("not langString")
    }

    /// `[]` or `[ predicateObjectList ]`.
    fn parse_blank_node_body(&mut self) -> Result<Term, TurtleError> {
        self.expect('[')?;
        let label = format!("{ANON_PREFIX}{}", self.anon_counter);
        self.anon_counter += 1;
        let node = Term::Blank(BlankNode::new_unchecked(label));
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.parse_predicate_object_list(&node)?;
        self.skip_ws();
        self.expect(']')?;
        Ok(node)
    }

    fn parse_blank_label(&mut self) -> Result<BlankNode, TurtleError> {
        self.bump(); // _
        self.bump(); // :
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        match BlankNode::new(label) {
            Ok(b) => Ok(b),
            Err(e) => self.err(e.to_string()),
        }
    }

    fn parse_iriref(&mut self) -> Result<Iri, TurtleError> {
        let (start_line, start_column) = (self.line, self.column);
        self.expect('<')?;
        let mut raw = String::new();
        loop {
            match self.peek() {
                None => return self.err("unterminated IRI"),
                Some('>') => {
                    self.bump();
                    break;
                }
                Some('\\') => {
                    self.bump();
                    raw.push(self.parse_uchar()?);
                }
                Some(c) if c <= '\u{20}' || "<\"{}|^`".contains(c) => {
                    return self.err(format!("character {c:?} must be escaped in IRIs"));
                }
                Some(c) => {
                    raw.push(c);
                    self.bump();
                }
            }
        }
        let resolved = match &self.base {
            Some(base) => base.resolve(&raw),
            None => match Iri::new(raw.clone()) {
                ok @ Ok(_) => ok,
                Err(_) => {
                    return Err(TurtleError::MissingBase {
                        reference: raw,
                        line: start_line,
                        column: start_column,
                    });
                }
            },
        };
        match resolved {
            Ok(iri) => Ok(iri),
            Err(e) => Err(TurtleError::Syntax {
                line: start_line,
                column: start_column,
                message: e.to_string(),
            }),
        }
    }

    fn parse_uchar(&mut self) -> Result<char, TurtleError> {
        let count = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return self.err("expected \\u or \\U escape"),
        };
        let mut value: u32 = 0;
        for _ in 0..count {
            let c = match self.bump() {
                Some(c) => c,
                None => return self.err("unterminated escape"),
            };
            let digit = match c.to_digit(16) {
                Some(d) => d,
                None => return self.err("invalid hex digit in escape"),
            };
            value = value * 16 + digit;
        }
        match char::from_u32(value) {
            Some(c) => Ok(c),
            None => self.err("escape is not a valid code point"),
        }
    }

    fn parse_prefixed_name(&mut self) -> Result<Iri, TurtleError> {
        let (start_line, start_column) = (self.line, self.column);
        let prefix = self.parse_prefix_label()?;
        if self.peek() != Some(':') {
            return self.err(format!("expected prefixed name, found `{prefix}`"));
        }
        self.bump();
        let namespace = match self.prefixes.get(&prefix) {
            Some(ns) => ns.clone(),
            None => {
                return Err(TurtleError::UnknownPrefix {
                    prefix,
                    line: start_line,
                    column: start_column,
                })
            }
        };
        let local = self.parse_local_name()?;
        match Iri::new(format!("{}{}", namespace.as_str(), local)) {
            Ok(iri) => Ok(iri),
            Err(e) => Err(TurtleError::Syntax {
                line: start_line,
                column: start_column,
                message: e.to_string(),
            }),
        }
    }

    /// Local part of a prefixed name. Percent escapes are kept verbatim,
    /// backslash escapes are decoded. A trailing run of `.` is left in the
    /// stream (it terminates the statement).
    fn parse_local_name(&mut self) -> Result<String, TurtleError> {
        const ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";
        let mut local = String::new();
        let mut first = true;
        loop {
            match self.peek() {
                Some('\\') => {
                    self.bump();
                    match self.peek() {
                        Some(c) if ESCAPABLE.contains(c) => {
                            local.push(c);
                            self.bump();
                        }
                        _ => return self.err("invalid local name escape"),
                    }
                }
                Some('%') => {
                    local.push('%');
                    self.bump();
                    for _ in 0..2 {
                        match self.peek() {
                            Some(c) if c.is_ascii_hexdigit() => {
                                local.push(c);
                                self.bump();
                            }
                            _ => return self.err("invalid percent escape in local name"),
                        }
                    }
                }
                Some(c)
                    if c.is_alphanumeric()
                        || c == '_'
                        || c == ':'
                        || (!first && (c == '-' || c == '.')) =>
                {
                    local.push(c);
                    self.bump();
                }
                _ => break,
            }
            first = false;
        }
        // a trailing `.` belongs to the statement, not the name
        let mut trailing = 0;
        for c in local.chars().rev() {
            if c == '.' {
                trailing += 1;
            } else {
                break;
            }
        }
        if trailing > 0 {
            local.truncate(local.len() - trailing);
            self.pos -= trailing;
            self.column -= trailing;
        }
        Ok(local)
    }

    fn parse_rdf_literal(&mut self) -> Result<Term, TurtleError> {
        let lexical = self.parse_string()?;
        match self.peek() {
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        tag.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                match Literal::lang_tagged(lexical, tag) {
                    Ok(l) => Ok(Term::Literal(l)),
                    Err(e) => self.err(e.to_string()),
                }
            }
            Some('^') => {
                self.bump();
                self.expect('^')?;
                self.skip_ws();
                let datatype = match self.peek() {
                    Some('<') => self.parse_iriref()?,
                    _ => self.parse_prefixed_name()?,
                };
                if datatype.as_str() == vocab::RDF_LANG_STRING {
                    return self.err("rdf:langString literals need a language tag");
                }
                Ok(Term::Literal(
                    Literal::typed(lexical, datatype).expect("langString checked"),
                ))
            }
            _ => Ok(Term::Literal(Literal::string(lexical))),
        }
    }

    fn parse_string(&mut self) -> Result<String, TurtleError> {
        let quote = self.bump().expect("caller checked quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        } else if self.peek() == Some(quote) {
            // empty short string
            self.bump();
            return Ok(String::new());
        }
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return self.err("unterminated string literal"),
                Some('\\') => {
                    self.bump();
                    let escaped = match self.peek() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') | Some('U') => {
                            out.push(self.parse_uchar()?);
                            continue;
                        }
                        _ => return self.err("invalid string escape"),
                    };
                    out.push(escaped);
                    self.bump();
                }
                Some(c) if c == quote => {
                    if long {
                        if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
                            self.bump();
                            self.bump();
                            self.bump();
                            return Ok(out);
                        }
                        out.push(c);
                        self.bump();
                    } else {
                        self.bump();
                        return Ok(out);
                    }
                }
                Some(c) if !long && (c == '\n' || c == '\r') => {
                    return self.err("newline in single-line string");
                }
                Some(c) => {
                    out.push(c);
                    self.bump();
                }
            }
        }
    }

    fn parse_numeric_literal(&mut self) -> Result<Term, TurtleError> {
        let mut lexical = String::new();
        if matches!(self.peek(), Some('+') | Some('-')) {
            lexical.push(self.bump().unwrap());
        }
        let mut digits_before = 0;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                lexical.push(c);
                self.bump();
                digits_before += 1;
            } else {
                break;
            }
        }
        let mut has_fraction = false;
        if self.peek() == Some('.') && self.peek_at(1).map(|c| c.is_ascii_digit()).unwrap_or(false)
        {
            has_fraction = true;
            lexical.push('.');
            self.bump();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    lexical.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
        }
        if digits_before == 0 && !has_fraction {
            return self.err("malformed numeric literal");
        }
        let mut has_exponent = false;
        if matches!(self.peek(), Some('e') | Some('E')) {
            let mut offset = 1;
            if matches!(self.peek_at(1), Some('+') | Some('-')) {
                offset = 2;
            }
            if self.peek_at(offset).map(|c| c.is_ascii_digit()).unwrap_or(false) {
                has_exponent = true;
                lexical.push(self.bump().unwrap());
                if matches!(self.peek(), Some('+') | Some('-')) {
                    lexical.push(self.bump().unwrap());
                }
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        lexical.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        let datatype = if has_exponent {
            vocab::XSD_DOUBLE
        } else if has_fraction {
            vocab::XSD_DECIMAL
        } else {
            vocab::XSD_INTEGER
        };
        Ok(Term::Literal(
            Literal::typed(lexical, vocab::iri(datatype)).expect("not langString"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn empty_document() {
        let g = parse_turtle("", None).unwrap();
        assert!(g.is_empty());
        assert!(g.prefixes().is_empty());
    }

    #[test]
    fn single_statement() {
        let g = parse_turtle("<http://a> <http://b> <http://c> .", None).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.contains(&Triple::new(
            iri("http://a"),
            iri("http://b"),
            iri("http://c")
        )));
    }

    // Hand-expanded: `css:Drilling` = <http://x/css#> + `Drilling`,
    // `a` = rdf:type, `css:Capability` = <http://x/css#> + `Capability`.
    #[test]
    fn prefixed_names_and_a_keyword() {
        let g = parse_turtle(
            "@prefix css: <http://x/css#> . css:Drilling a css:Capability .",
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.contains(&Triple::new(
            iri("http://x/css#Drilling"),
            vocab::rdf_type(),
            iri("http://x/css#Capability")
        )));
        assert_eq!(
            g.prefixes().get("css"),
            Some(&iri("http://x/css#"))
        );
    }

    #[test]
    fn predicate_and_object_lists() {
        let g = parse_turtle(
            "<http://s> <http://p> <http://o1>, <http://o2> ; <http://q> \"v\" .",
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn literals_with_datatype_and_language() {
        let g = parse_turtle(
            r#"<http://s> <http://p> "hi"@en ; <http://q> "5"^^<http://www.w3.org/2001/XMLSchema#integer> ."#,
            None,
        )
        .unwrap();
        let hi = Term::Literal(Literal::lang_tagged("hi", "en").unwrap());
        let five =
            Term::Literal(Literal::typed("5", iri(vocab::XSD_INTEGER)).unwrap());
        assert_eq!(g.match_pattern(None, None, Some(&hi)).len(), 1);
        assert_eq!(g.match_pattern(None, None, Some(&five)).len(), 1);
    }

    #[test]
    fn numeric_and_boolean_shorthand() {
        let g = parse_turtle(
            "<http://s> <http://p> 42, -7, 3.14, .5, 1e3, 1.5E-2, true, false .",
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 8);
        let int42 = Term::Literal(Literal::typed("42", iri(vocab::XSD_INTEGER)).unwrap());
        let dec = Term::Literal(Literal::typed("3.14", iri(vocab::XSD_DECIMAL)).unwrap());
        let dbl = Term::Literal(Literal::typed("1e3", iri(vocab::XSD_DOUBLE)).unwrap());
        let t = Term::Literal(Literal::typed("true", iri(vocab::XSD_BOOLEAN)).unwrap());
        for term in [int42, dec, dbl, t] {
            assert_eq!(g.match_pattern(None, None, Some(&term)).len(), 1, "{term}");
        }
    }

    #[test]
    fn integer_then_statement_dot() {
        let g = parse_turtle("<http://s> <http://p> 1 .", None).unwrap();
        let one = Term::Literal(Literal::typed("1", iri(vocab::XSD_INTEGER)).unwrap());
        assert_eq!(g.match_pattern(None, None, Some(&one)).len(), 1);
    }

    #[test]
    fn blank_nodes_labeled_and_anonymous() {
        let g = parse_turtle(
            "_:x <http://p> [] . [ <http://q> \"v\" ] <http://p> _:x .",
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 3);
        // anonymous nodes got fresh labels distinct from _:x
        let labels: std::collections::BTreeSet<String> = g
            .iter()
            .flat_map(|t| {
                let mut v = Vec::new();
                if let Subject::Blank(b) = &t.subject {
                    v.push(b.label().to_string());
                }
                if let Term::Blank(b) = &t.object {
                    v.push(b.label().to_string());
                }
                v
            })
            .collect();
        assert!(labels.contains("x"));
        assert_eq!(labels.len(), 3);
    }

    #[test]
    fn generated_labels_skip_explicit_ones() {
        let g = parse_turtle("_:b0 <http://p> [] .", None).unwrap();
        let objects: Vec<String> = g
            .iter()
            .filter_map(|t| match &t.object {
                Term::Blank(b) => Some(b.label().to_string()),
                _ => None,
            })
            .collect();
        assert_eq!(objects, vec!["b1".to_string()]);
    }

    #[test]
    fn base_resolution() {
        let base = iri("http://example.org/css");
        let g = parse_turtle("<#Drilling> <#p> <other> .", Some(&base)).unwrap();
        assert!(g.contains(&Triple::new(
            iri("http://example.org/css#Drilling"),
            iri("http://example.org/css#p"),
            iri("http://example.org/other")
        )));
        let g = parse_turtle(
            "@base <http://example.org/css> . <#Drilling> <#p> <#q> .",
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn missing_base_error() {
        let err = parse_turtle("<#x> <http://p> <http://o> .", None).unwrap_err();
        assert!(matches!(err, TurtleError::MissingBase { .. }));
    }

    #[test]
    fn unknown_prefix_error() {
        let err = parse_turtle("css:Drilling a css:Capability .", None).unwrap_err();
        match err {
            TurtleError::UnknownPrefix { prefix, .. } => assert_eq!(prefix, "css"),
            other => panic!("expected UnknownPrefix, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_turtle("<http://a> <http://b>\n   @@ .", None).unwrap_err();
        match err {
            TurtleError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column >= 3);
            }
            other => panic!("expected Syntax, got {other:?}"),
        }
    }

    #[test]
    fn collections_are_rejected() {
        let err = parse_turtle("<http://s> <http://p> (1 2) .", None).unwrap_err();
        match err {
            TurtleError::Syntax { message, .. } => {
                assert!(message.contains("collections"));
            }
            other => panic!("expected Syntax, got {other:?}"),
        }
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_turtle(
            "# leading comment\n<http://a> <http://b> <http://c> . # trailing",
            None,
        )
        .unwrap();
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn long_strings() {
        let g = parse_turtle(
            "<http://s> <http://p> \"\"\"multi\nline \"quoted\" text\"\"\" .",
            None,
        )
        .unwrap();
        let lit = Term::Literal(Literal::string("multi\nline \"quoted\" text"));
        assert_eq!(g.match_pattern(None, None, Some(&lit)).len(), 1);
    }

    #[test]
    fn string_escapes() {
        let g = parse_turtle(r#"<http://s> <http://p> "a\tb\n\\\"A" ."#, None).unwrap();
        let lit = Term::Literal(Literal::string("a\tb\n\\\"A"));
        assert_eq!(g.match_pattern(None, None, Some(&lit)).len(), 1);
    }

    #[test]
    fn iri_uchar_escapes() {
        let g = parse_turtle(r"<http://a/A> <http://p> <http://o> .", None).unwrap();
        assert_eq!(g.match_pattern(Some(&Term::Iri(iri("http://a/A"))), None, None).len(), 1);
    }

    #[test]
    fn empty_prefix_label() {
        let g = parse_turtle("@prefix : <http://d/> . :x :p :o .", None).unwrap();
        assert!(g.contains(&Triple::new(iri("http://d/x"), iri("http://d/p"), iri("http://d/o"))));
    }

    #[test]
    fn local_name_with_trailing_dot_terminates_statement() {
        let g = parse_turtle("@prefix e: <http://e/> . e:s e:p e:o.", None).unwrap();
        assert!(g.contains(&Triple::new(iri("http://e/s"), iri("http://e/p"), iri("http://e/o"))));
    }

    #[test]
    fn sparql_style_directives() {
        let g = parse_turtle(
            "PREFIX css: <http://x/css#>\nBASE <http://b/>\ncss:A css:p <rel> .",
            None,
        )
        .unwrap();
        assert!(g.contains(&Triple::new(
            iri("http://x/css#A"),
            iri("http://x/css#p"),
            iri("http://b/rel")
        )));
    }
}
