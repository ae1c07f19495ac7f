//! DynamoDB schema location and table-declaration extraction.
//!
//! Candidate files are ranked by a three-tier priority: initialization
//! scripts, then database configuration modules, then general business
//! logic. Within a tier the order is lexicographic; at most three
//! candidates are reported.

use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{FileTag, Tag};

fn tier(file: &str) -> u8 {
    let stem = file
        .rsplit('/')
        .next()
        .unwrap_or(file)
        .rsplit_once('.')
        .map(|(s, _)| s)
        .unwrap_or(file);
    let tier1 = ["init_db", "create_tables", "init_tables", "db_init", "setup_db"];
    let tier2 = ["db", "database", "models", "model", "db_config", "config_db"];
    if tier1.contains(&stem) || stem.starts_with("init_") || stem.starts_with("seed") {
        1
    } else if tier2.contains(&stem) {
        2
    } else {
        3
    }
}

/// Ranked schema-definition candidates among DynamoDB-tagged files.
pub fn locate_dynamodb_schemas(file_tags: &[FileTag]) -> Vec<String> {
    let mut candidates: Vec<(u8, String)> = file_tags
        .iter()
        .filter(|ft| ft.tags.contains(&Tag::DynamoDb))
        .map(|ft| (tier(&ft.file), ft.file.clone()))
        .collect();
    candidates.sort();
    candidates.into_iter().take(3).map(|(_, f)| f).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyAttribute {
    pub name: String,
    #[serde(rename = "type")]
    pub attr_type: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDecl {
    pub name: String,
    pub hash_key: KeyAttribute,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range_key: Option<KeyAttribute>,
}

struct SchemaPatterns {
    table_name: Regex,
    key_schema: Regex,
    attr_def: Regex,
}

fn schema_patterns() -> &'static SchemaPatterns {
    static CELL: OnceLock<SchemaPatterns> = OnceLock::new();
    CELL.get_or_init(|| SchemaPatterns {
        table_name: Regex::new(r#"TableName['"]?\s*[:=]\s*['"]([A-Za-z0-9_.-]+)['"]"#).unwrap(),
        key_schema: Regex::new(
            r#"['"]?AttributeName['"]?\s*[:=]\s*['"](\w+)['"]\s*,\s*['"]?KeyType['"]?\s*[:=]\s*['"](HASH|RANGE)['"]"#,
        )
        .unwrap(),
        attr_def: Regex::new(
            r#"['"]?AttributeName['"]?\s*[:=]\s*['"](\w+)['"]\s*,\s*['"]?AttributeType['"]?\s*[:=]\s*['"]([SNB])['"]"#,
        )
        .unwrap(),
    })
}

/// Table declarations found in one schema file. Each declaration block runs
/// from a `TableName` occurrence to the next.
pub fn extract_table_decls(text: &str) -> Vec<TableDecl> {
    let p = schema_patterns();
    let names: Vec<(usize, String)> = p
        .table_name
        .captures_iter(text)
        .map(|c| (c.get(0).unwrap().start(), c[1].to_string()))
        .collect();
    let mut decls = Vec::new();
    for (idx, (start, name)) in names.iter().enumerate() {
        let end = names
            .get(idx + 1)
            .map(|(next, _)| *next)
            .unwrap_or(text.len());
        let block = &text[*start..end];
        let types: std::collections::BTreeMap<String, String> = p
            .attr_def
            .captures_iter(block)
            .map(|c| (c[1].to_string(), c[2].to_string()))
            .collect();
        let mut hash_key = None;
        let mut range_key = None;
        for c in p.key_schema.captures_iter(block) {
            let attr = KeyAttribute {
                name: c[1].to_string(),
                attr_type: types.get(&c[1]).cloned().unwrap_or_else(|| "S".into()),
            };
            match &c[2] {
                "HASH" if hash_key.is_none() => hash_key = Some(attr),
                "RANGE" if range_key.is_none() => range_key = Some(attr),
                _ => {}
            }
        }
        decls.push(TableDecl {
            name: name.clone(),
            hash_key: hash_key.unwrap_or(KeyAttribute {
                name: "id".into(),
                attr_type: "S".into(),
            }),
            range_key,
        });
    }
    decls
}
