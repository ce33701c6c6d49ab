//! JSONPath subset: compilation, evaluation with location tracking, and
//! write-back insertion.
//!
//! Supported: `$`, `.name`, `['name']`, `[*]`, `[n]`, `..name`, and
//! `[?(@.name=='literal')]`. Everything else from the full language (slices,
//! unions, script expressions, comparison operators other than `==`) is
//! reported as unsupported rather than a plain syntax error.

use std::fmt;

use serde_json::Value;
use thiserror::Error;

use super::JsonDoc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Root,
    Child(String),
    Wildcard,
    Index(usize),
    RecursiveDescent(String),
    Filter { field: String, value: String },
}

/// A compiled path expression; the first step is always [`Step::Root`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathExpr {
    steps: Vec<Step>,
}

impl PathExpr {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            match step {
                Step::Root => write!(f, "$")?,
                Step::Child(name) => {
                    if plain_name(name) {
                        write!(f, ".{name}")?;
                    } else {
                        write!(f, "['{name}']")?;
                    }
                }
                Step::Wildcard => write!(f, "[*]")?,
                Step::Index(n) => write!(f, "[{n}]")?,
                Step::RecursiveDescent(name) => write!(f, "..{name}")?,
                Step::Filter { field, value } => write!(f, "[?(@.{field}=='{value}')]")?,
            }
        }
        Ok(())
    }
}

fn plain_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unsupported JSONPath syntax: `{0}`")]
    UnsupportedSyntax(String),
    #[error("JSONPath syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// One concrete step of a match location.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Segment {
    Member(String),
    Index(usize),
}

pub fn format_location(location: &[Segment]) -> String {
    let mut out = String::from("$");
    for seg in location {
        match seg {
            Segment::Member(name) => {
                if plain_name(name) {
                    out.push('.');
                    out.push_str(name);
                } else {
                    out.push_str(&format!("['{name}']"));
                }
            }
            Segment::Index(i) => out.push_str(&format!("[{i}]")),
        }
    }
    out
}

/// A matched node: its concrete location and a copy of its value.
#[derive(Debug, Clone, PartialEq)]
pub struct PathMatch {
    pub location: Vec<Segment>,
    pub value: Value,
}

pub fn compile_path(expr: &str) -> Result<PathExpr, PathError> {
    let chars: Vec<char> = expr.chars().collect();
    let mut pos = 0usize;
    let err = |pos: usize, message: &str| PathError::Syntax {
        offset: pos,
        message: message.to_string(),
    };
    if chars.first() != Some(&'$') {
        return Err(err(0, "path must start with `$`"));
    }
    pos += 1;
    let mut steps = vec![Step::Root];
    while pos < chars.len() {
        match chars[pos] {
            '.' if chars.get(pos + 1) == Some(&'.') => {
                pos += 2;
                let name = take_name(&chars, &mut pos);
                if name.is_empty() {
                    if chars.get(pos) == Some(&'*') {
                        return Err(PathError::UnsupportedSyntax("..*".to_string()));
                    }
                    return Err(err(pos, "expected member name after `..`"));
                }
                steps.push(Step::RecursiveDescent(name));
            }
            '.' => {
                pos += 1;
                if chars.get(pos) == Some(&'*') {
                    return Err(PathError::UnsupportedSyntax(".*".to_string()));
                }
                let name = take_name(&chars, &mut pos);
                if name.is_empty() {
                    return Err(err(pos, "expected member name after `.`"));
                }
                steps.push(Step::Child(name));
            }
            '[' => {
                pos += 1;
                steps.push(parse_bracket(&chars, &mut pos)?);
            }
            c => return Err(err(pos, &format!("unexpected character `{c}`"))),
        }
    }
    Ok(PathExpr { steps })
}

fn take_name(chars: &[char], pos: &mut usize) -> String {
    let mut name = String::new();
    while let Some(&c) = chars.get(*pos) {
        let ok = if name.is_empty() {
            c.is_alphabetic() || c == '_'
        } else {
            c.is_alphanumeric() || c == '_' || c == '-'
        };
        if !ok {
            break;
        }
        name.push(c);
        *pos += 1;
    }
    name
}

fn parse_bracket(chars: &[char], pos: &mut usize) -> Result<Step, PathError> {
    let start = *pos;
    let rest: String = chars[*pos..].iter().collect();
    let close = match rest.find(']') {
        Some(i) => i,
        None => {
            return Err(PathError::Syntax {
                offset: start,
                message: "unterminated `[`".to_string(),
            })
        }
    };
    let inner: String = rest[..close].to_string();
    *pos += close + 1;
    let trimmed = inner.trim();
    if trimmed == "*" {
        return Ok(Step::Wildcard);
    }
    if trimmed.chars().all(|c| c.is_ascii_digit()) && !trimmed.is_empty() {
        return Ok(Step::Index(trimmed.parse().map_err(|_| PathError::Syntax {
            offset: start,
            message: "index out of range".to_string(),
        })?));
    }
    if let Some(quoted) = trimmed.strip_prefix('\'') {
        return match quoted.strip_suffix('\'') {
            Some(name) if !name.contains('\'') => Ok(Step::Child(name.to_string())),
            _ if trimmed.contains("','") => {
                Err(PathError::UnsupportedSyntax(format!("[{trimmed}]")))
            }
            _ => Err(PathError::Syntax {
                offset: start,
                message: "unterminated quoted member name".to_string(),
            }),
        };
    }
    if let Some(filter) = trimmed.strip_prefix("?(") {
        let filter = match filter.strip_suffix(')') {
            Some(f) => f,
            None => {
                return Err(PathError::Syntax {
                    offset: start,
                    message: "filter must end with `)`".to_string(),
                })
            }
        };
        return parse_filter(filter.trim());
    }
    // recognizable full-JSONPath forms that are outside the subset
    if trimmed.contains(':')
        || trimmed.contains(',')
        || trimmed.starts_with('-')
        || trimmed.starts_with('(')
        || trimmed.starts_with('"')
    {
        return Err(PathError::UnsupportedSyntax(format!("[{trimmed}]")));
    }
    Err(PathError::Syntax {
        offset: start,
        message: format!("cannot parse selector `[{trimmed}]`"),
    })
}

fn parse_filter(filter: &str) -> Result<Step, PathError> {
    let body = match filter.strip_prefix("@.") {
        Some(b) => b,
        None => return Err(PathError::UnsupportedSyntax(format!("[?({filter})]"))),
    };
    let (field, rest) = {
        let mut field = String::new();
        let mut it = body.char_indices();
        let mut split = body.len();
        for (i, c) in it.by_ref() {
            if c.is_alphanumeric() || c == '_' || c == '-' {
                field.push(c);
            } else {
                split = i;
                break;
            }
        }
        (field, body[split.min(body.len())..].trim_start())
    };
    if field.is_empty() {
        return Err(PathError::UnsupportedSyntax(format!("[?({filter})]")));
    }
    if rest.starts_with('.') || rest.starts_with('[') {
        // nested field paths are outside the subset
        return Err(PathError::UnsupportedSyntax(format!("[?({filter})]")));
    }
    let rest = match rest.strip_prefix("==") {
        Some(r) => r.trim_start(),
        None => return Err(PathError::UnsupportedSyntax(format!("[?({filter})]"))),
    };
    let value = rest
        .strip_prefix('\'')
        .and_then(|r| r.strip_suffix('\''))
        .filter(|v| !v.contains('\''));
    match value {
        Some(v) => Ok(Step::Filter {
            field,
            value: v.to_string(),
        }),
        None => Err(PathError::UnsupportedSyntax(format!("[?({filter})]"))),
    }
}

/// Evaluates a compiled path; matches come back in document order.
pub fn evaluate_path(doc: &JsonDoc, path: &PathExpr) -> Vec<PathMatch> {
    evaluate_path_value(doc.root(), path)
}

/// Like [`evaluate_path`] but against any value as the root; locations are
/// relative to that value.
pub fn evaluate_path_value(root: &Value, path: &PathExpr) -> Vec<PathMatch> {
    let mut out = Vec::new();
    let steps = path.steps();
    let rest = if steps.first() == Some(&Step::Root) {
        &steps[1..]
    } else {
        steps
    };
    eval(root, rest, &mut Vec::new(), &mut out);
    out
}

fn eval(node: &Value, steps: &[Step], location: &mut Vec<Segment>, out: &mut Vec<PathMatch>) {
    let step = match steps.first() {
        None => {
            out.push(PathMatch {
                location: location.clone(),
                value: node.clone(),
            });
            return;
        }
        Some(s) => s,
    };
    let rest = &steps[1..];
    match step {
        Step::Root => eval(node, rest, location, out),
        Step::Child(name) => {
            if let Value::Object(map) = node {
                if let Some(child) = map.get(name) {
                    location.push(Segment::Member(name.clone()));
                    eval(child, rest, location, out);
                    location.pop();
                }
            }
        }
        Step::Wildcard => match node {
            Value::Object(map) => {
                for (key, child) in map {
                    location.push(Segment::Member(key.clone()));
                    eval(child, rest, location, out);
                    location.pop();
                }
            }
            Value::Array(items) => {
                for (i, child) in items.iter().enumerate() {
                    location.push(Segment::Index(i));
                    eval(child, rest, location, out);
                    location.pop();
                }
            }
            _ => {}
        },
        Step::Index(n) => {
            if let Value::Array(items) = node {
                if let Some(child) = items.get(*n) {
                    location.push(Segment::Index(*n));
                    eval(child, rest, location, out);
                    location.pop();
                }
            }
        }
        Step::RecursiveDescent(name) => descend(node, name, rest, location, out),
        Step::Filter { field, value } => {
            let keep = |child: &Value| -> bool {
                match child {
                    Value::Object(map) => map.get(field).and_then(Value::as_str) == Some(value),
                    _ => false,
                }
            };
            match node {
                Value::Array(items) => {
                    for (i, child) in items.iter().enumerate() {
                        if keep(child) {
                            location.push(Segment::Index(i));
                            eval(child, rest, location, out);
                            location.pop();
                        }
                    }
                }
                Value::Object(map) => {
                    for (key, child) in map {
                        if keep(child) {
                            location.push(Segment::Member(key.clone()));
                            eval(child, rest, location, out);
                            location.pop();
                        }
                    }
                }
                _ => {}
            }
        }
    }
}

/// Depth-first pre-order: a node's own `name` member matches before any
/// matches further down, and the search also descends into matched values.
fn descend(
    node: &Value,
    name: &str,
    rest: &[Step],
    location: &mut Vec<Segment>,
    out: &mut Vec<PathMatch>,
) {
    if let Value::Object(map) = node {
        if let Some(child) = map.get(name) {
            location.push(Segment::Member(name.to_string()));
            eval(child, rest, location, out);
            location.pop();
        }
    }
    match node {
        Value::Object(map) => {
            for (key, child) in map {
                location.push(Segment::Member(key.clone()));
                descend(child, name, rest, location, out);
                location.pop();
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                location.push(Segment::Index(i));
                descend(child, name, rest, location, out);
                location.pop();
            }
        }
        _ => {}
    }
}

/// Walks a concrete location from the root; `None` if any segment is absent.
pub fn navigate<'a>(root: &'a Value, location: &[Segment]) -> Option<&'a Value> {
    let mut node = root;
    for seg in location {
        node = match (node, seg) {
            (Value::Object(map), Segment::Member(name)) => map.get(name)?,
            (Value::Array(items), Segment::Index(i)) => items.get(*i)?,
            _ => return None,
        };
    }
    Some(node)
}

fn navigate_mut<'a>(root: &'a mut Value, location: &[Segment]) -> Option<&'a mut Value> {
    let mut node = root;
    for seg in location {
        node = match (node, seg) {
            (Value::Object(map), Segment::Member(name)) => map.get_mut(name)?,
            (Value::Array(items), Segment::Index(i)) => items.get_mut(*i)?,
            _ => return None,
        };
    }
    Some(node)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InsertError {
    #[error("insertion target {0} does not exist")]
    TargetNotFound(String),
    #[error("insertion target {0} is not an array or object")]
    TargetNotContainer(String),
    #[error("object merge would duplicate member `{0}`")]
    DuplicateMemberName(String),
    #[error("only a single-member object can be merged into an object target")]
    ChildNotSingleMember,
}

/// Inserts `child` at `location`: appended for arrays, merged for objects
/// (the child must then be a single-member object). Everything else in the
/// document is left untouched.
pub fn insert_at(doc: &mut JsonDoc, location: &[Segment], child: Value) -> Result<(), InsertError> {
    let target = navigate_mut(doc.root_mut(), location)
        .ok_or_else(|| InsertError::TargetNotFound(format_location(location)))?;
    match target {
        Value::Array(items) => {
            items.push(child);
            Ok(())
        }
        Value::Object(map) => {
            let Value::Object(child_map) = child else {
                return Err(InsertError::ChildNotSingleMember);
            };
            if child_map.len() != 1 {
                return Err(InsertError::ChildNotSingleMember);
            }
            let (key, value) = child_map.into_iter().next().expect("len checked");
            if map.contains_key(&key) {
                return Err(InsertError::DuplicateMemberName(key));
            }
            map.insert(key, value);
            Ok(())
        }
        _ => Err(InsertError::TargetNotContainer(format_location(location))),
    }
}
