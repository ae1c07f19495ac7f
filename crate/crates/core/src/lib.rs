//! Deterministic migration toolkit for monolithic Flask/Express backends.
//!
//! The library decomposes the migration into five composable stages that
//! communicate through files only:
//!
//! 1. [`facts`] — static analysis of the monolith source tree
//!    (`analysis_report.json`, `symbol_table.json`)
//! 2. [`planner`] — architecture planning (`blueprint.json`)
//! 3. [`synth`] — SAM template and handler stub generation
//!    (`template.yaml`, `lambdas/`, `layers/`)
//! 4. [`validator`] — 11-check cross-artifact consistency validation
//!    with mechanical fixes (`validation_report.json`)
//! 5. [`metrics`] — API-coverage F1 and end-to-end pass-rate scoring
//!
//! Everything is deterministic: re-running any stage on unchanged inputs
//! produces byte-identical artifacts.

pub mod canon;
pub mod config;
pub mod diag;
pub mod error;
pub mod facts;
pub mod metrics;
pub mod naming;
pub mod pipeline;
pub mod planner;
pub mod sam;
pub mod synth;
pub mod tools;
pub mod validator;

pub use config::Config;
pub use error::Error;

/// Execution strategy for per-file analysis.
///
/// `Rayon` falls back to sequential execution when the `parallel` feature
/// is disabled, so callers can request it unconditionally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Rayon,
}

impl Default for Parallelism {
    fn default() -> Self {
        Parallelism::Rayon
    }
}
