//! Absolute IRI values and RFC 3986 reference resolution.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An absolute IRI.
///
/// The value is guaranteed to have a scheme and to contain none of the
/// characters that are illegal in an IRI reference (whitespace, control
/// characters, `<`, `>`, `"`, `{`, `}`, `|`, `^`, backtick, backslash).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Iri(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IriError {
    #[error("IRI is empty")]
    Empty,
    #[error("IRI `{0}` has no scheme")]
    MissingScheme(String),
    #[error("IRI `{iri}` contains forbidden character {ch:?}")]
    ForbiddenChar { iri: String, ch: char },
}

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, IriError> {
        let value = value.into();
        if value.is_empty() {
            return Err(IriError::Empty);
        }
        if let Some(ch) = value
            .chars()
            .find(|&c| c <= '\u{20}' || c == '\u{7f}' || "<>\"{}|^`\\".contains(c))
        {
            return Err(IriError::ForbiddenChar { iri: value, ch });
        }
        if scheme_end(&value).is_none() {
            return Err(IriError::MissingScheme(value));
        }
        Ok(Iri(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Local name of the IRI: the part after the first `#`, else after the
    /// last `/`, else the whole value.
    pub fn local_name(&self) -> &str {
        if let Some(i) = self.0.find('#') {
            &self.0[i + 1..]
        } else if let Some(i) = self.0.rfind('/') {
            &self.0[i + 1..]
        } else {
            &self.0
        }
    }

    /// Resolves `reference` against this IRI per RFC 3986 section 5.
    ///
    /// The result still goes through [`Iri::new`] so that resolved values
    /// obey the same character restrictions as directly constructed ones.
    pub fn resolve(&self, reference: &str) -> Result<Iri, IriError> {
        if scheme_end(reference).is_some() {
            let parts = Components::parse(reference);
            return Iri::new(parts.recompose_with_path(remove_dot_segments(parts.path)));
        }
        let base = Components::parse(&self.0);
        let r = Components::parse(reference);
        let (authority, path, query) = if r.authority.is_some() {
            (r.authority, remove_dot_segments(r.path), r.query)
        } else if r.path.is_empty() {
            (base.authority, base.path.to_string(), r.query.or(base.query))
        } else if r.path.starts_with('/') {
            (base.authority, remove_dot_segments(r.path), r.query)
        } else {
            let merged = merge_paths(base.authority.is_some(), base.path, r.path);
            (base.authority, remove_dot_segments(&merged), r.query)
        };
        let target = Components {
            scheme: base.scheme,
            authority,
            path: "",
            query,
            fragment: r.fragment,
        };
        Iri::new(target.recompose_with_path(path))
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for Iri {
    type Error = IriError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        Iri::new(value)
    }
}

impl From<Iri> for String {
    fn from(iri: Iri) -> String {
        iri.0
    }
}

/// Byte offset of the `:` terminating a syntactically valid scheme, if any.
fn scheme_end(s: &str) -> Option<usize> {
    let mut chars = s.char_indices();
    match chars.next() {
        Some((_, c)) if c.is_ascii_alphabetic() => {}
        _ => return None,
    }
    for (i, c) in chars {
        match c {
            ':' => return Some(i),
            c if c.is_ascii_alphanumeric() || c == '+' || c == '-' || c == '.' => {}
            _ => return None,
        }
    }
    None
}

struct Components<'a> {
    scheme: Option<&'a str>,
    authority: Option<&'a str>,
    path: &'a str,
    query: Option<&'a str>,
    fragment: Option<&'a str>,
}

impl<'a> Components<'a> {
    fn parse(s: &'a str) -> Components<'a> {
        let (rest, fragment) = match s.split_once('#') {
            Some((r, f)) => (r, Some(f)),
            None => (s, None),
        };
        let (rest, query) = match rest.split_once('?') {
            Some((r, q)) => (r, Some(q)),
            None => (rest, None),
        };
        let (scheme, rest) = match scheme_end(rest) {
            Some(i) => (Some(&rest[..i]), &rest[i + 1..]),
            None => (None, rest),
        };
        let (authority, path) = if let Some(after) = rest.strip_prefix("//") {
            let end = after.find('/').unwrap_or(after.len());
            (Some(&after[..end]), &after[end..])
        } else {
            (None, rest)
        };
        Components {
            scheme,
            authority,
            path,
            query,
            fragment,
        }
    }

    fn recompose_with_path(&self, path: String) -> String {
        let mut out = String::new();
        if let Some(s) = self.scheme {
            out.push_str(s);
            out.push(':');
        }
        if let Some(a) = self.authority {
            out.push_str("//");
            out.push_str(a);
        }
        out.push_str(&path);
        if let Some(q) = self.query {
            out.push('?');
            out.push_str(q);
        }
        if let Some(f) = self.fragment {
            out.push('#');
            out.push_str(f);
        }
        out
    }
}

fn merge_paths(base_has_authority: bool, base_path: &str, ref_path: &str) -> String {
    if base_has_authority && base_path.is_empty() {
        return format!("/{ref_path}");
    }
    match base_path.rfind('/') {
        Some(i) => format!("{}{}", &base_path[..=i], ref_path),
        None => ref_path.to_string(),
    }
}

fn remove_dot_segments(path: &str) -> String {
    let mut input = path.to_string();
    let mut output = String::new();
    while !input.is_empty() {
        if let Some(rest) = input.strip_prefix("../") {
            input = rest.to_string();
        } else if let Some(rest) = input.strip_prefix("./") {
            input = rest.to_string();
        } else if let Some(rest) = input.strip_prefix("/./") {
            input = format!("/{rest}");
        } else if input == "/." {
            input = "/".to_string();
        } else if let Some(rest) = input.strip_prefix("/../") {
            input = format!("/{rest}");
            truncate_last_segment(&mut output);
        } else if input == "/.." {
            input = "/".to_string();
            truncate_last_segment(&mut output);
        } else if input == "." || input == ".." {
            input.clear();
        } else {
            let start = if input.starts_with('/') { 1 } else { 0 };
            let end = input[start..]
                .find('/')
                .map(|i| i + start)
                .unwrap_or(input.len());
            output.push_str(&input[..end]);
            input = input[end..].to_string();
        }
    }
    output
}

fn truncate_last_segment(output: &mut String) {
    match output.rfind('/') {
        Some(i) => output.truncate(i),
        None => output.clear(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_plain_http_iri() {
        assert!(Iri::new("http://example.org/a#b").is_ok());
        assert!(Iri::new("urn:caskbridge:rule:capability").is_ok());
        assert!(Iri::new("opc.tcp://server:4840/path").is_ok());
    }

    #[test]
    fn rejects_bad_iris() {
        assert_eq!(Iri::new(""), Err(IriError::Empty));
        assert!(matches!(Iri::new("no-scheme"), Err(IriError::MissingScheme(_))));
        assert!(matches!(
            Iri::new("http://a b"),
            Err(IriError::ForbiddenChar { ch: ' ', .. })
        ));
        assert!(matches!(
            Iri::new("http://a/{x}"),
            Err(IriError::ForbiddenChar { ch: '{', .. })
        ));
        assert!(matches!(
            Iri::new("http://a/\\x"),
            Err(IriError::ForbiddenChar { ch: '\\', .. })
        ));
    }

    #[test]
    fn local_name_conventions() {
        let i = Iri::new("http://x/css#Drilling").unwrap();
        assert_eq!(i.local_name(), "Drilling");
        let i = Iri::new("http://x/css/Drilling").unwrap();
        assert_eq!(i.local_name(), "Drilling");
        let i = Iri::new("urn:x-test:Drilling").unwrap();
        assert_eq!(i.local_name(), "urn:x-test:Drilling");
    }

    // Expected values hand-checked against RFC 3986 section 5.4 examples.
    #[test]
    fn rfc3986_reference_resolution() {
        let base = Iri::new("http://a/b/c/d;p?q").unwrap();
        let cases = [
            ("g", "http://a/b/c/g"),
            ("./g", "http://a/b/c/g"),
            ("g/", "http://a/b/c/g/"),
            ("/g", "http://a/g"),
            ("//g", "http://g"),
            ("?y", "http://a/b/c/d;p?y"),
            ("g?y", "http://a/b/c/g?y"),
            ("#s", "http://a/b/c/d;p?q#s"),
            ("g#s", "http://a/b/c/g#s"),
            (";x", "http://a/b/c/;x"),
            ("", "http://a/b/c/d;p?q"),
            (".", "http://a/b/c/"),
            ("..", "http://a/b/"),
            ("../g", "http://a/b/g"),
            ("../..", "http://a/"),
            ("../../g", "http://a/g"),
            ("g.", "http://a/b/c/g."),
            (".g", "http://a/b/c/.g"),
            ("g..", "http://a/b/c/g.."),
            ("..g", "http://a/b/c/..g"),
            ("./../g", "http://a/b/g"),
            ("g;x=1/./y", "http://a/b/c/g;x=1/y"),
            ("g;x=1/../y", "http://a/b/c/y"),
        ];
        for (reference, expected) in cases {
            assert_eq!(
                base.resolve(reference).unwrap().as_str(),
                expected,
                "resolving {reference:?}"
            );
        }
    }

    #[test]
    fn resolve_fragment_against_hash_base() {
        let base = Iri::new("http://example.org/css#").unwrap();
        assert_eq!(
            base.resolve("#Drilling").unwrap().as_str(),
            "http://example.org/css#Drilling"
        );
        let base = Iri::new("http://example.org/css").unwrap();
        assert_eq!(
            base.resolve("#Drilling").unwrap().as_str(),
            "http://example.org/css#Drilling"
        );
    }

    #[test]
    fn resolve_absolute_reference_ignores_base() {
        let base = Iri::new("http://a/").unwrap();
        assert_eq!(
            base.resolve("urn:x:y").unwrap().as_str(),
            "urn:x:y"
        );
    }
}
