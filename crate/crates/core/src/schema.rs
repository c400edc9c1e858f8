//! Small helpers for reading JSON input with JSON-pointer error locations.

use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{pointer}: {message}")]
pub struct SchemaError {
    /// JSON pointer (RFC 6901) to the offending value; empty for the root.
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

pub(crate) fn child(pointer: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{pointer}/{key}")
}

pub(crate) fn object<'a>(
    v: &'a Value,
    pointer: &str,
) -> Result<&'a Map<String, Value>, SchemaError> {
    v.as_object()
        .ok_or_else(|| SchemaError::new(pointer, "expected an object"))
}

pub(crate) fn array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>, SchemaError> {
    v.as_array()
        .ok_or_else(|| SchemaError::new(pointer, "expected an array"))
}

pub(crate) fn field<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    pointer: &str,
) -> Result<&'a Value, SchemaError> {
    obj.get(key)
        .ok_or_else(|| SchemaError::new(pointer, format!("missing field \"{key}\"")))
}

pub(crate) fn uint(v: &Value, pointer: &str) -> Result<u64, SchemaError> {
    v.as_u64()
        .ok_or_else(|| SchemaError::new(pointer, "expected a non-negative integer"))
}

pub(crate) fn int(v: &Value, pointer: &str) -> Result<i64, SchemaError> {
    v.as_i64()
        .ok_or_else(|| SchemaError::new(pointer, "expected an integer"))
}

pub(crate) fn string<'a>(v: &'a Value, pointer: &str) -> Result<&'a str, SchemaError> {
    v.as_str()
        .ok_or_else(|| SchemaError::new(pointer, "expected a string"))
}

/// Array of non-negative integers.
pub(crate) fn uint_array(v: &Value, pointer: &str) -> Result<Vec<u64>, SchemaError> {
    array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(i, x)| uint(x, &child(pointer, i)))
        .collect()
}
