//! Content-feature tagging: deterministic keyword matching on file source.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, Hash,
)]
pub enum Tag {
    #[serde(rename = "AWS_SDK")]
    AwsSdk,
    #[serde(rename = "DynamoDB")]
    DynamoDb,
    #[serde(rename = "Auth")]
    Auth,
    #[serde(rename = "FileUpload")]
    FileUpload,
}

const AWS_SDK_KEYWORDS: &[&str] = &["boto3", "botocore", "aws-sdk", "@aws-sdk/"];

const DYNAMODB_KEYWORDS: &[&str] = &[
    "dynamodb",
    "put_item",
    "get_item",
    "create_table",
    "createtablecommand",
    "documentclient",
    "putcommand",
    "getcommand",
];

const AUTH_KEYWORDS: &[&str] = &[
    "jwt",
    "jsonwebtoken",
    "login_required",
    "warehouse_required",
    "requires_auth",
    "token_required",
    "authenticate",
    "bearer ",
];

const FILE_UPLOAD_KEYWORDS: &[&str] = &[
    "multipart",
    "multer",
    "secure_filename",
    "request.files",
    "upload.single",
    "file_upload",
];

/// Tag a file from its source text. Matching is case-insensitive substring
/// search, so the result is a pure function of the file bytes.
pub fn tag_source(text: &str) -> BTreeSet<Tag> {
    let lower = text.to_ascii_lowercase();
    let mut tags = BTreeSet::new();
    let matches = |keywords: &[&str]| keywords.iter().any(|k| lower.contains(k));
    if matches(AWS_SDK_KEYWORDS) {
        tags.insert(Tag::AwsSdk);
    }
    if matches(DYNAMODB_KEYWORDS) {
        tags.insert(Tag::DynamoDb);
    }
    if matches(AUTH_KEYWORDS) {
        tags.insert(Tag::Auth);
    }
    if matches(FILE_UPLOAD_KEYWORDS) {
        tags.insert(Tag::FileUpload);
    }
    tags
}
