//! Endpoint classification: auth endpoints are dropped in favor of managed
//! identity, everything else is a business endpoint.

use crate::facts::{AnalysisReport, EntryPoint};

use super::AuthRequirement;

#[derive(Debug, Clone)]
pub struct ClassifiedEndpoint {
    pub entry: EntryPoint,
    pub dropped: bool,
    pub auth: AuthRequirement,
}

/// Endpoints whose exact path is in `auth_paths` are dropped; remaining
/// endpoints carry `auth = required` when any configured auth decorator was
/// observed on the handler.
pub fn classify_endpoints(
    report: &AnalysisReport,
    auth_decorators: &[String],
    auth_paths: &[String],
) -> Vec<ClassifiedEndpoint> {
    report
        .entry_points
        .iter()
        .map(|ep| {
            let dropped = auth_paths.iter().any(|p| p == &ep.path);
            let auth = if ep
                .auth_markers
                .iter()
                .any(|m| auth_decorators.iter().any(|d| d == m))
            {
                AuthRequirement::Required
            } else {
                AuthRequirement::None
            };
            ClassifiedEndpoint {
                entry: ep.clone(),
                dropped,
                auth,
            }
        })
        .collect()
}

/// Tier-1 schema candidates (initialization scripts) are infrastructure
/// scripts: they are never bundled into lambda source sets.
pub(super) fn is_tier1_schema_file(file: &str) -> bool {
    let stem = file
        .rsplit('/')
        .next()
        .unwrap_or(file)
        .rsplit_once('.')
        .map(|(s, _)| s)
        .unwrap_or(file);
    let tier1 = ["init_db", "create_tables", "init_tables", "db_init", "setup_db"];
    tier1.contains(&stem) || stem.starts_with("init_") || stem.starts_with("seed")
}
