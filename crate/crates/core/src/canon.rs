//! Canonical JSON serialization for pipeline artifacts.
//!
//! Canonical form: UTF-8, object keys sorted, 2-space indentation, LF
//! newlines, single trailing newline. Artifacts written this way are
//! byte-stable across runs and filesystem iteration orders, which makes
//! golden-file comparison and tree hashing meaningful.

use serde::Serialize;

use crate::error::{Error, Result};

/// Serialize a value to canonical JSON text.
///
/// Key sorting falls out of routing everything through `serde_json::Value`,
/// whose object representation is a `BTreeMap`.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    let tree = serde_json::to_value(value)
        .map_err(|e| Error::Invalid(format!("serialization failed: {e}")))?;
    let mut text = serde_json::to_string_pretty(&tree)
        .map_err(|e| Error::Invalid(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}
