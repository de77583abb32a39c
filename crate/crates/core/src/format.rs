//! Shared helpers for the text and JSON file formats.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

/// A malformed input file, with a 1-based position of the offending token.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        ParseError::new(err.line(), err.column(), err.to_string())
    }
}

/// JSON number when the value fits in `u64`, decimal string otherwise.
pub(crate) fn biguint_to_json(x: &BigUint) -> serde_json::Value {
    match x.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

pub(crate) fn biguint_from_json(v: &serde_json::Value) -> Option<BigUint> {
    match v {
        serde_json::Value::Number(n) => n.as_u64().map(BigUint::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}
