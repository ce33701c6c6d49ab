//! JSON document model with order- and digit-preserving round trips.
//!
//! Documents are `serde_json` values parsed with `preserve_order` and
//! `arbitrary_precision`, so object member order and exact number tokens
//! survive a read/write cycle. Equality on documents is order-insensitive
//! for object members and order-sensitive for arrays.

pub mod path;

use std::fmt;

use serde_json::Value;
use thiserror::Error;

pub use path::{
    compile_path, evaluate_path, insert_at, navigate, InsertError, PathError, PathExpr, PathMatch,
    Segment, Step,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("JSON parse error at {line}:{column}: {message}")]
pub struct JsonParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A parsed JSON document.
#[derive(Debug, Clone, PartialEq)]
pub struct JsonDoc {
    root: Value,
}

impl JsonDoc {
    pub fn new(root: Value) -> Self {
        JsonDoc { root }
    }

    pub fn from_str(text: &str) -> Result<Self, JsonParseError> {
        match serde_json::from_str(text) {
            Ok(root) => Ok(JsonDoc { root }),
            Err(e) => Err(JsonParseError {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }),
        }
    }

    pub fn root(&self) -> &Value {
        &self.root
    }

    pub fn root_mut(&mut self) -> &mut Value {
        &mut self.root
    }

    pub fn into_root(self) -> Value {
        self.root
    }

    /// Canonical serialization: two-space indentation, member order
    /// preserved, non-ASCII characters left unescaped.
    pub fn to_canonical_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.root).expect("Value always serializes");
        out.push('\n');
        out
    }
}

impl fmt::Display for JsonDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl From<Value> for JsonDoc {
    fn from(root: Value) -> Self {
        JsonDoc { root }
    }
}
