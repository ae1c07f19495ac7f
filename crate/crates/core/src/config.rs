//! Pipeline configuration.
//!
//! One TOML file configures every stage; CLI flags override individual
//! fields. Defaults are chosen so the pipeline runs with no configuration
//! at all.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub analysis: AnalysisConfig,
    pub planner: PlannerConfig,
    pub synth: SynthConfig,
    pub lint: LintConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    /// Decorator / middleware names recorded as auth markers on endpoints.
    pub auth_decorators: Vec<String>,
    /// HTTP methods recognized as route-registration shortcuts
    /// (`app.get`, `router.post`, ...).
    pub route_methods: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerConfig {
    /// Endpoints on these exact paths are dropped in favor of managed identity.
    pub auth_paths: Vec<String>,
    /// Maximum file-hop depth for transitive call tracing.
    pub max_trace_depth: usize,
    /// Overrides for the domain of a top-level directory. Mapping a
    /// directory to the empty string makes it neutral (shared plumbing,
    /// never a communication boundary).
    pub domain_overrides: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub python_runtime: String,
    pub node_runtime: String,
    pub stage_name: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LintConfig {
    /// Optional external CloudFormation linter executable. When set and
    /// present on disk its findings are merged into the native ones; the
    /// native checks never depend on it.
    pub external_linter: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            analysis: AnalysisConfig::default(),
            planner: PlannerConfig::default(),
            synth: SynthConfig::default(),
            lint: LintConfig::default(),
        }
    }
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            auth_decorators: [
                "login_required",
                "warehouse_required",
                "jwt_required",
                "requires_auth",
                "authenticate",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            route_methods: ["get", "post", "put", "patch", "delete"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            auth_paths: ["/register", "/login", "/logout"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            max_trace_depth: 3,
            domain_overrides: BTreeMap::new(),
        }
    }
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            python_runtime: "python3.12".to_string(),
            node_runtime: "nodejs22.x".to_string(),
            stage_name: "Prod".to_string(),
        }
    }
}

impl Default for LintConfig {
    fn default() -> Self {
        LintConfig {
            external_linter: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}
