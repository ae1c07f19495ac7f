//! Validated file-system primitives used by every pipeline stage and
//! exposed on the CLI as `tool read|write|merge|list`.
//!
//! Writes are atomic: content is validated first, then written to a
//! temporary file in the target directory and renamed into place. A failed
//! write never changes the target.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Line cap applied when no explicit range is requested.
pub const READ_LINE_CAP: usize = 500;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReadResult {
    pub content: String,
    pub truncated: bool,
    pub total_lines: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Validation {
    None,
    Python,
    Json,
    Yaml,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WriteReceipt {
    pub path: PathBuf,
    pub bytes_written: usize,
    pub validation: Validation,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    File,
    Dir,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DirEntry {
    pub path: PathBuf,
    pub kind: EntryKind,
}

/// Read a file as text, optionally restricted to an inclusive 1-based line
/// range. Without a range at most [`READ_LINE_CAP`] lines are returned and
/// `truncated` reports whether the cap cut anything off.
pub fn read_file(path: &Path, range: Option<(usize, usize)>) -> Result<ReadResult> {
    if !path.exists() {
        return Err(Error::NotFound { path: path.into() });
    }
    if !path.is_file() {
        return Err(Error::Unreadable { path: path.into() });
    }
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.contains(&0) {
        return Err(Error::Unreadable { path: path.into() });
    }
    let text = String::from_utf8(bytes).map_err(|_| Error::Unreadable { path: path.into() })?;
    let lines: Vec<&str> = text.lines().collect();
    let total_lines = lines.len();

    match range {
        Some((start, end)) => {
            if start == 0 || start > end {
                return Err(Error::Invalid(format!(
                    "invalid line range ({start}, {end})"
                )));
            }
            if start > total_lines {
                return Err(Error::Invalid(format!(
                    "range starts at line {start} but {} has only {total_lines} lines",
                    path.display()
                )));
            }
            let end = end.min(total_lines);
            let content = lines[start - 1..end].join("\n");
            Ok(ReadResult {
                content,
                truncated: false,
                total_lines,
                range: Some((start, end)),
            })
        }
        None => {
            let truncated = total_lines > READ_LINE_CAP;
            let upto = total_lines.min(READ_LINE_CAP);
            let content = if truncated {
                lines[..upto].join("\n")
            } else {
                text.clone()
            };
            Ok(ReadResult {
                content,
                truncated,
                total_lines,
                range: None,
            })
        }
    }
}

fn validate_content(content: &str, validation: Validation) -> std::result::Result<(), String> {
    match validation {
        Validation::None => Ok(()),
        Validation::Json => serde_json::from_str::<serde_json::Value>(content)
            .map(|_| ())
            .map_err(|e| format!("json: {e}")),
        Validation::Yaml => serde_yaml::from_str::<serde_yaml::Value>(content)
            .map(|_| ())
            .map_err(|e| format!("yaml: {e}")),
        Validation::Python => {
            match rustpython_parser::parse(content, rustpython_parser::Mode::Module, "<write>") {
                Ok(_) => Ok(()),
                Err(err) => {
                    let line = offset_to_line(content, err.offset.to_usize());
                    Err(format!("python: line {line}: {}", err.error))
                }
            }
        }
    }
}

pub(crate) fn offset_to_line(text: &str, offset: usize) -> usize {
    text.bytes().take(offset).filter(|b| *b == b'\n').count() + 1
}

/// Validate `content` and atomically replace `path` with it. On validation
/// failure the receipt carries `ok = false` and the target is untouched.
pub fn write_file(path: &Path, content: &str, validation: Validation) -> Result<WriteReceipt> {
    if let Err(message) = validate_content(content, validation) {
        return Ok(WriteReceipt {
            path: path.into(),
            bytes_written: 0,
            validation,
            ok: false,
            error: Some(message),
        });
    }
    atomic_write(path, content.as_bytes())?;
    Ok(WriteReceipt {
        path: path.into(),
        bytes_written: content.len(),
        validation,
        ok: true,
        error: None,
    })
}

/// Write bytes to `path` via a temporary file in the same directory.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let dir = dir.unwrap_or_else(|| Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| Error::io(path, e))?;
    tmp.persist(path)
        .map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

/// Bind `key` to `value` in the JSON object stored at `path`. A missing
/// file starts from the empty object; anything other than a JSON object
/// root is rejected unchanged.
pub fn merge_json_key(path: &Path, key: &str, value: serde_json::Value) -> Result<WriteReceipt> {
    let mut root = if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let parsed: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Json {
                path: path.into(),
                message: e.to_string(),
            })?;
        match parsed {
            serde_json::Value::Object(map) => map,
            other => {
                return Err(Error::Json {
                    path: path.into(),
                    message: format!(
                        "merge target must be a JSON object, found {}",
                        type_name(&other)
                    ),
                })
            }
        }
    } else {
        serde_json::Map::new()
    };
    root.insert(key.to_string(), value);
    let text = crate::canon::to_canonical_string(&serde_json::Value::Object(root))?;
    atomic_write(path, text.as_bytes())?;
    Ok(WriteReceipt {
        path: path.into(),
        bytes_written: text.len(),
        validation: Validation::Json,
        ok: true,
        error: None,
    })
}

fn type_name(v: &serde_json::Value) -> &'static str {
    match v {
        serde_json::Value::Null => "null",
        serde_json::Value::Bool(_) => "bool",
        serde_json::Value::Number(_) => "number",
        serde_json::Value::String(_) => "string",
        serde_json::Value::Array(_) => "array",
        serde_json::Value::Object(_) => "object",
    }
}

/// List a directory. Entries are sorted lexicographically; recursive
/// listing is depth-first, so a directory precedes its children.
pub fn list_dir(path: &Path, recursive: bool) -> Result<Vec<DirEntry>> {
    if !path.is_dir() {
        return Err(Error::NotADirectory { path: path.into() });
    }
    let mut out = Vec::new();
    list_into(path, recursive, &mut out)?;
    Ok(out)
}

fn list_into(dir: &Path, recursive: bool, out: &mut Vec<DirEntry>) -> Result<()> {
    let mut entries: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    entries.sort();
    for entry in entries {
        let kind = if entry.is_dir() {
            EntryKind::Dir
        } else {
            EntryKind::File
        };
        out.push(DirEntry {
            path: entry.clone(),
            kind,
        });
        if recursive && kind == EntryKind::Dir {
            list_into(&entry, true, out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_lines(path: &Path, n: usize) {
        let text: String = (1..=n).map(|i| format!("line {i}\n")).collect();
        std::fs::write(path, text).unwrap();
    }

    #[test]
    fn truncation_triggers_past_the_cap() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("big.txt");

        write_lines(&path, 501);
        let r = read_file(&path, None).unwrap();
        assert!(r.truncated);
        assert_eq!(r.total_lines, 501);
        assert_eq!(r.content.lines().count(), 500);

        write_lines(&path, 500);
        let r = read_file(&path, None).unwrap();
        assert!(!r.truncated);
        assert_eq!(r.content.lines().count(), 500);
    }

    #[test]
    fn explicit_range_is_inclusive_and_never_truncates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.txt");
        write_lines(&path, 600);
        let r = read_file(&path, Some((10, 12))).unwrap();
        assert_eq!(r.content, "line 10\nline 11\nline 12");
        assert!(!r.truncated);
        assert_eq!(r.range, Some((10, 12)));
    }

    #[test]
    fn missing_and_binary_files_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            read_file(&dir.path().join("nope"), None),
            Err(Error::NotFound { .. })
        ));
        let bin = dir.path().join("blob");
        std::fs::write(&bin, [0u8, 159, 146, 150]).unwrap();
        assert!(matches!(
            read_file(&bin, None),
            Err(Error::Unreadable { .. })
        ));
    }

    #[test]
    fn failed_validation_leaves_target_unchanged() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("doc.json");
        std::fs::write(&path, b"{\"a\": 1}").unwrap();

        let receipt = write_file(&path, "{\"a\":", Validation::Json).unwrap();
        assert!(!receipt.ok);
        assert!(receipt.error.is_some());
        assert_eq!(std::fs::read(&path).unwrap(), b"{\"a\": 1}");
    }

    #[test]
    fn python_validation_reports_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mod.py");
        let receipt =
            write_file(&path, "def ok():\n    pass\ndef broken(:\n", Validation::Python).unwrap();
        assert!(!receipt.ok);
        assert!(receipt.error.unwrap().contains("line 3"));
        assert!(!path.exists());
    }

    #[test]
    fn merge_builds_documents_key_by_key() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("doc.json");

        merge_json_key(&path, "a", serde_json::json!(1)).unwrap();
        merge_json_key(&path, "b", serde_json::json!(2)).unwrap();
        let text_ab = std::fs::read_to_string(&path).unwrap();

        std::fs::remove_file(&path).unwrap();
        merge_json_key(&path, "b", serde_json::json!(2)).unwrap();
        merge_json_key(&path, "a", serde_json::json!(1)).unwrap();
        let text_ba = std::fs::read_to_string(&path).unwrap();

        assert_eq!(text_ab, text_ba);
        let v: serde_json::Value = serde_json::from_str(&text_ab).unwrap();
        assert_eq!(v, serde_json::json!({"a": 1, "b": 2}));
    }

    #[test]
    fn merge_rejects_non_object_roots() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("arr.json");
        std::fs::write(&path, b"[1, 2]").unwrap();
        assert!(merge_json_key(&path, "a", serde_json::json!(1)).is_err());
        assert_eq!(std::fs::read(&path).unwrap(), b"[1, 2]");
    }

    #[test]
    fn listing_sorts_and_walks_depth_first() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::create_dir(dir.path().join("b")).unwrap();
        std::fs::write(dir.path().join("b/inner.txt"), "x").unwrap();
        std::fs::write(dir.path().join("a.txt"), "x").unwrap();

        let flat = list_dir(dir.path(), false).unwrap();
        let names: Vec<_> = flat
            .iter()
            .map(|e| e.path.file_name().unwrap().to_str().unwrap().to_string())
            .collect();
        assert_eq!(names, vec!["a.txt", "b"]);

        let deep = list_dir(dir.path(), true).unwrap();
        let names: Vec<_> = deep
            .iter()
            .map(|e| e.path.file_name().unwrap().to_str().unwrap().to_string())
            .collect();
        assert_eq!(names, vec!["a.txt", "b", "inner.txt"]);
    }
}
