//! Static analysis of the monolith source tree.
//!
//! Per-file extraction is a pure function of file bytes, so files are
//! analyzed independently (in parallel when the `parallel` feature is on)
//! and merged with a deterministic sort. The merge resolves imports,
//! blueprint/router prefixes and cross-file call edges, then derives the
//! per-endpoint dependency map.

mod javascript;
mod python;
mod schema;
mod tags;

pub use schema::{extract_table_decls, KeyAttribute, TableDecl};
pub use tags::Tag;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{AnalysisConfig, Config};
use crate::diag::Diagnostic;
use crate::error::{Error, Result};
use crate::Parallelism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Python,
    Javascript,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HttpMethod {
    #[serde(rename = "GET")]
    Get,
    #[serde(rename = "POST")]
    Post,
    #[serde(rename = "PUT")]
    Put,
    #[serde(rename = "PATCH")]
    Patch,
    #[serde(rename = "DELETE")]
    Delete,
}

impl HttpMethod {
    pub fn parse(s: &str) -> Option<HttpMethod> {
        match s.to_ascii_uppercase().as_str() {
            "GET" => Some(HttpMethod::Get),
            "POST" => Some(HttpMethod::Post),
            "PUT" => Some(HttpMethod::Put),
            "PATCH" => Some(HttpMethod::Patch),
            "DELETE" => Some(HttpMethod::Delete),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            HttpMethod::Get => "GET",
            HttpMethod::Post => "POST",
            HttpMethod::Put => "PUT",
            HttpMethod::Patch => "PATCH",
            HttpMethod::Delete => "DELETE",
        }
    }
}

/// One HTTP route registration in the monolith.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryPoint {
    pub method: HttpMethod,
    pub path: String,
    pub handler_function: String,
    pub file: String,
    pub line: usize,
    pub auth_markers: Vec<String>,
}

impl EntryPoint {
    /// Key used in `entry_point_dependencies`, e.g. `"GET /todos"`.
    pub fn key(&self) -> String {
        format!("{} {}", self.method.as_str(), self.path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileTag {
    pub file: String,
    pub tags: BTreeSet<Tag>,
}

/// A cross-file call site with its async semantics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CallEdge {
    pub caller_file: String,
    pub caller_function: String,
    pub callee_file: String,
    pub callee_function: String,
    pub line: usize,
    pub return_value_used: bool,
    pub is_awaited: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub project_root: String,
    pub language: Language,
    pub entry_points: Vec<EntryPoint>,
    pub file_tags: Vec<FileTag>,
    pub entry_point_dependencies: BTreeMap<String, Vec<CallEdge>>,
    pub dynamodb_schema_candidates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSymbol {
    pub name: String,
    pub start_line: usize,
    pub end_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSymbol {
    pub name: String,
    pub start_line: usize,
    pub end_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImportRecord {
    pub name: String,
    pub source: String,
    pub external: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileSymbols {
    pub functions: Vec<FunctionSymbol>,
    pub classes: Vec<ClassSymbol>,
    pub imports: Vec<ImportRecord>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolTable {
    pub files: BTreeMap<String, FileSymbols>,
}

/// Full analysis of one project tree.
#[derive(Debug, Clone)]
pub struct ProjectAnalysis {
    pub report: AnalysisReport,
    pub symbols: SymbolTable,
    /// All cross-file edges, sorted by (caller_file, line).
    pub edges: Vec<CallEdge>,
    /// Same-file call pairs `(file, caller_fn, callee_fn)`, used by the
    /// planner to follow call chains through a file without leaving it.
    pub local_calls: Vec<(String, String, String)>,
    pub diagnostics: Vec<Diagnostic>,
}

// ---------------------------------------------------------------------------
// Per-file intermediate representation produced by the language frontends.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default)]
pub(crate) struct FileAnalysis {
    pub file: String,
    pub routes: Vec<RouteCandidate>,
    pub mounts: Vec<MountCandidate>,
    /// Router/blueprint objects declared in this file: ident -> url prefix.
    pub routers: BTreeMap<String, Option<String>>,
    pub imports: Vec<RawImport>,
    pub calls: Vec<RawCall>,
    pub functions: Vec<FunctionSymbol>,
    pub classes: Vec<ClassSymbol>,
    pub tags: BTreeSet<Tag>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone)]
pub(crate) struct RouteCandidate {
    pub receiver: String,
    pub methods: Vec<HttpMethod>,
    pub local_path: String,
    pub handler: String,
    pub line: usize,
    pub markers: Vec<String>,
}

/// `app.use('/api', router)` / `app.register_blueprint(bp, url_prefix=...)`.
#[derive(Debug, Clone)]
pub(crate) struct MountCandidate {
    pub prefix: Option<String>,
    pub target_ident: String,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct RawImport {
    /// Identifier bound in the importing file.
    pub local_name: String,
    /// Raw module spec: `"orders.logic"` or `"./routes/orders"`.
    pub module: String,
    /// `Some(original)` for from-imports / destructured requires.
    pub symbol: Option<String>,
    /// Python relative-import level.
    pub level: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct RawCall {
    pub caller_function: String,
    pub base: Option<String>,
    pub name: String,
    pub line: usize,
    pub return_value_used: bool,
    pub is_awaited: bool,
}

// ---------------------------------------------------------------------------
// Project scanning
// ---------------------------------------------------------------------------

const SKIP_DIRS: &[&str] = &[
    ".git",
    "node_modules",
    "__pycache__",
    "venv",
    ".venv",
    "dist",
    "build",
    ".aws-sam",
];

fn rel_string(root: &Path, path: &Path) -> String {
    path.strip_prefix(root)
        .unwrap_or(path)
        .components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Source files under `root`, project-relative with forward slashes, sorted.
pub fn discover_files(root: &Path) -> Result<Vec<String>> {
    if !root.is_dir() {
        return Err(Error::NotADirectory { path: root.into() });
    }
    let mut files = Vec::new();
    for entry in walkdir::WalkDir::new(root)
        .sort_by_file_name()
        .into_iter()
        .filter_entry(|e| {
            e.file_name()
                .to_str()
                .map(|n| !SKIP_DIRS.contains(&n))
                .unwrap_or(true)
        })
    {
        let entry = entry.map_err(|e| Error::io(root, e.into()))?;
        if !entry.file_type().is_file() {
            continue;
        }
        let ext = entry
            .path()
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("");
        if matches!(ext, "py" | "js" | "mjs" | "cjs") {
            files.push(rel_string(root, entry.path()));
        }
    }
    files.sort();
    Ok(files)
}

pub fn detect_language(files: &[String]) -> Result<Language> {
    let py = files.iter().filter(|f| f.ends_with(".py")).count();
    let js = files.len() - py;
    if py == 0 && js == 0 {
        return Err(Error::EmptyProject {
            path: PathBuf::new(),
        });
    }
    Ok(if py >= js {
        Language::Python
    } else {
        Language::Javascript
    })
}

fn map_files<T: Send>(
    files: &[String],
    par: Parallelism,
    f: impl Fn(&String) -> T + Sync,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        if par == Parallelism::Rayon {
            use rayon::prelude::*;
            return files.par_iter().map(|file| f(file)).collect();
        }
    }
    let _ = par;
    files.iter().map(f).collect()
}

// ---------------------------------------------------------------------------
// Analysis
// ---------------------------------------------------------------------------

/// Analyze one file. Pure in the file bytes; never fails (parse problems
/// degrade to diagnostics).
fn analyze_file(root: &Path, rel: &str, cfg: &AnalysisConfig) -> FileAnalysis {
    let path = root.join(rel);
    let source = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => {
            let mut fa = FileAnalysis {
                file: rel.to_string(),
                ..FileAnalysis::default()
            };
            fa.diagnostics.push(
                Diagnostic::warning("unreadable-file", format!("cannot read {rel}: {e}"))
                    .with_file(rel),
            );
            return fa;
        }
    };
    let mut fa = if rel.ends_with(".py") {
        python::analyze(rel, &source, cfg)
    } else {
        javascript::analyze(rel, &source, cfg)
    };
    fa.tags = tags::tag_source(&source);
    fa
}

pub fn analyze_project(root: &Path, cfg: &Config, par: Parallelism) -> Result<ProjectAnalysis> {
    let files = discover_files(root)?;
    if files.is_empty() {
        return Err(Error::EmptyProject { path: root.into() });
    }
    let language = detect_language(&files)?;
    let analyses = map_files(&files, par, |rel| analyze_file(root, rel, &cfg.analysis));
    Ok(merge(root, language, &files, analyses))
}

/// Resolution of a raw import target.
#[derive(Debug, Clone, PartialEq, Eq)]
enum ImportTarget {
    Project(String),
    External(String),
    Unresolved(String),
}

fn resolve_module(file_set: &BTreeSet<String>, importer: &str, imp: &RawImport) -> ImportTarget {
    let base_dir = || -> Vec<&str> {
        match importer.rfind('/') {
            Some(idx) => importer[..idx].split('/').collect(),
            None => Vec::new(),
        }
    };
    let first_match = |candidates: &[String]| -> Option<ImportTarget> {
        candidates
            .iter()
            .find(|c| file_set.contains(*c))
            .map(|c| ImportTarget::Project(c.clone()))
    };

    if imp.module.starts_with("./") || imp.module.starts_with("../") {
        // JavaScript relative path.
        let mut parts = base_dir();
        for seg in imp.module.split('/') {
            match seg {
                "." | "" => {}
                ".." => {
                    parts.pop();
                }
                seg => parts.push(seg),
            }
        }
        let joined = parts.join("/");
        let candidates = [
            format!("{joined}.js"),
            format!("{joined}/index.js"),
            format!("{joined}.mjs"),
            format!("{joined}.cjs"),
            joined.clone(),
        ];
        return first_match(&candidates)
            .unwrap_or_else(|| ImportTarget::Unresolved(imp.module.clone()));
    }

    if imp.level > 0 {
        // Python relative import: `from . import x` / `from ..pkg import y`.
        let mut parts = base_dir();
        for _ in 1..imp.level {
            parts.pop();
        }
        for seg in imp.module.split('.').filter(|s| !s.is_empty()) {
            parts.push(seg);
        }
        let joined = parts.join("/");
        let candidates = [format!("{joined}.py"), format!("{joined}/__init__.py")];
        return first_match(&candidates)
            .unwrap_or_else(|| ImportTarget::Unresolved(imp.module.clone()));
    }

    // Absolute Python module path: dots to slashes.
    let joined = imp.module.replace('.', "/");
    let candidates = [format!("{joined}.py"), format!("{joined}/__init__.py")];
    first_match(&candidates).unwrap_or_else(|| ImportTarget::External(imp.module.clone()))
}

fn normalize_path(prefix: Option<&str>, local: &str) -> String {
    let mut combined = String::new();
    if let Some(p) = prefix {
        combined.push_str(p);
    }
    if !local.is_empty() && !local.starts_with('/') {
        combined.push('/');
    }
    combined.push_str(local);
    // Collapse duplicate slashes, ensure leading slash, strip trailing.
    let mut path = String::from("/");
    for seg in combined.split('/').filter(|s| !s.is_empty()) {
        if path.len() > 1 {
            path.push('/');
        }
        path.push_str(seg);
    }
    path
}

fn merge(
    root: &Path,
    language: Language,
    files: &[String],
    analyses: Vec<FileAnalysis>,
) -> ProjectAnalysis {
    let file_set: BTreeSet<String> = files.iter().cloned().collect();
    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let by_file: BTreeMap<String, FileAnalysis> = analyses
        .into_iter()
        .map(|fa| (fa.file.clone(), fa))
        .collect();

    // Import resolution: (file, local ident) -> target (+ original symbol).
    let mut imports: BTreeMap<(String, String), (ImportTarget, Option<String>)> = BTreeMap::new();
    for fa in by_file.values() {
        for imp in &fa.imports {
            let target = resolve_module(&file_set, &fa.file, imp);
            if let ImportTarget::Unresolved(module) = &target {
                diagnostics.push(
                    Diagnostic::warning(
                        "unresolved-import",
                        format!("cannot resolve import `{module}` in {}", fa.file),
                    )
                    .with_file(fa.file.clone()),
                );
            }
            imports.insert(
                (fa.file.clone(), imp.local_name.clone()),
                (target, imp.symbol.clone()),
            );
        }
        diagnostics.extend(fa.diagnostics.iter().cloned());
    }

    // Mount prefixes: importing file mounts a router/blueprint defined in
    // another file. One level deep; nested mounts are diagnosed.
    let mut file_prefix: BTreeMap<String, String> = BTreeMap::new();
    for fa in by_file.values() {
        for mount in &fa.mounts {
            let target = imports
                .get(&(fa.file.clone(), mount.target_ident.clone()))
                .cloned();
            match target {
                Some((ImportTarget::Project(target_file), _)) => {
                    if let Some(prefix) = &mount.prefix {
                        file_prefix.insert(target_file.clone(), prefix.clone());
                    } else if let Some(tfa) = by_file.get(&target_file) {
                        // No explicit prefix: fall back to the router's own
                        // declared prefix, which the route merge applies.
                        let _ = tfa;
                    }
                    if by_file
                        .get(&target_file)
                        .map(|tfa| !tfa.mounts.is_empty())
                        .unwrap_or(false)
                    {
                        diagnostics.push(
                            Diagnostic::warning(
                                "nested-mount",
                                format!(
                                    "{} mounts {target_file}, which itself mounts other routers; \
                                     nested prefixes are not resolved",
                                    fa.file
                                ),
                            )
                            .with_file(fa.file.clone())
                            .with_line(mount.line),
                        );
                    }
                }
                _ => {
                    // Same-file mount: register_blueprint(bp, url_prefix=...)
                    // overriding a blueprint declared in this file.
                    if fa.routers.contains_key(&mount.target_ident) {
                        if let Some(prefix) = &mount.prefix {
                            file_prefix.insert(
                                format!("{}::{}", fa.file, mount.target_ident),
                                prefix.clone(),
                            );
                        }
                    }
                }
            }
        }
    }

    // Entry points.
    let mut entry_points: Vec<EntryPoint> = Vec::new();
    for fa in by_file.values() {
        for route in &fa.routes {
            let declared = fa.routers.get(&route.receiver).cloned().flatten();
            let override_key = format!("{}::{}", fa.file, route.receiver);
            let prefix = file_prefix
                .get(&override_key)
                .or_else(|| file_prefix.get(&fa.file))
                .cloned()
                .or(declared);
            let path = normalize_path(prefix.as_deref(), &route.local_path);
            for method in &route.methods {
                entry_points.push(EntryPoint {
                    method: *method,
                    path: path.clone(),
                    handler_function: route.handler.clone(),
                    file: fa.file.clone(),
                    line: route.line,
                    auth_markers: route.markers.clone(),
                });
            }
        }
    }
    entry_points.sort_by(|a, b| {
        (&a.file, a.line, a.method, &a.path).cmp(&(&b.file, b.line, b.method, &b.path))
    });

    // Cross-file call edges.
    let mut edges: Vec<CallEdge> = Vec::new();
    for fa in by_file.values() {
        for call in &fa.calls {
            let lookup = match &call.base {
                Some(base) => imports.get(&(fa.file.clone(), base.clone())),
                None => imports.get(&(fa.file.clone(), call.name.clone())),
            };
            let Some((target, symbol)) = lookup else {
                continue;
            };
            let ImportTarget::Project(callee_file) = target else {
                continue;
            };
            if callee_file == &fa.file {
                continue;
            }
            let callee_function = match &call.base {
                Some(_) => call.name.clone(),
                None => symbol.clone().unwrap_or_else(|| call.name.clone()),
            };
            edges.push(CallEdge {
                caller_file: fa.file.clone(),
                caller_function: call.caller_function.clone(),
                callee_file: callee_file.clone(),
                callee_function,
                line: call.line,
                return_value_used: call.return_value_used,
                is_awaited: call.is_awaited,
            });
        }
    }
    edges.sort();
    edges.dedup();

    // Same-file calls: a bare call naming a function defined in this file
    // and not shadowed by an import.
    let mut local_calls: Vec<(String, String, String)> = Vec::new();
    for fa in by_file.values() {
        let local_fns: BTreeSet<&str> = fa.functions.iter().map(|f| f.name.as_str()).collect();
        for call in &fa.calls {
            if call.base.is_none()
                && local_fns.contains(call.name.as_str())
                && !imports.contains_key(&(fa.file.clone(), call.name.clone()))
            {
                local_calls.push((
                    fa.file.clone(),
                    call.caller_function.clone(),
                    call.name.clone(),
                ));
            }
        }
    }
    local_calls.sort();
    local_calls.dedup();

    // File tags (files with empty tag sets are kept; emptiness is data).
    let file_tags: Vec<FileTag> = by_file
        .values()
        .map(|fa| FileTag {
            file: fa.file.clone(),
            tags: fa.tags.clone(),
        })
        .collect();

    let entry_point_dependencies = derive_entry_dependencies(&edges, &entry_points);
    let dynamodb_schema_candidates = schema::locate_dynamodb_schemas(&file_tags);

    let symbols = SymbolTable {
        files: by_file
            .iter()
            .map(|(file, fa)| {
                let imports = fa
                    .imports
                    .iter()
                    .map(|imp| {
                        let (target, _) = &imports[&(file.clone(), imp.local_name.clone())];
                        match target {
                            ImportTarget::Project(p) => ImportRecord {
                                name: imp.local_name.clone(),
                                source: p.clone(),
                                external: false,
                            },
                            ImportTarget::External(m) | ImportTarget::Unresolved(m) => {
                                ImportRecord {
                                    name: imp.local_name.clone(),
                                    source: m.clone(),
                                    external: true,
                                }
                            }
                        }
                    })
                    .collect();
                (
                    file.clone(),
                    FileSymbols {
                        functions: fa.functions.clone(),
                        classes: fa.classes.clone(),
                        imports,
                    },
                )
            })
            .collect(),
    };

    ProjectAnalysis {
        report: AnalysisReport {
            project_root: root.display().to_string(),
            language,
            entry_points,
            file_tags,
            entry_point_dependencies,
            dynamodb_schema_candidates,
        },
        symbols,
        edges,
        local_calls,
        diagnostics,
    }
}

/// Level-1 edges grouped per entry point: exactly the edges whose caller is
/// the entry-point handler in the entry-point file.
pub fn derive_entry_dependencies(
    edges: &[CallEdge],
    entry_points: &[EntryPoint],
) -> BTreeMap<String, Vec<CallEdge>> {
    let mut map = BTreeMap::new();
    for ep in entry_points {
        let deps: Vec<CallEdge> = edges
            .iter()
            .filter(|e| e.caller_file == ep.file && e.caller_function == ep.handler_function)
            .cloned()
            .collect();
        map.insert(ep.key(), deps);
    }
    map
}

/// Artifact file names written by [`emit_analysis`].
pub const ANALYSIS_REPORT_FILE: &str = "analysis_report.json";
pub const SYMBOL_TABLE_FILE: &str = "symbol_table.json";

/// Run the analysis and write `analysis_report.json` and
/// `symbol_table.json` in canonical serialization.
pub fn emit_analysis(
    root: &Path,
    out_dir: &Path,
    cfg: &Config,
    par: Parallelism,
) -> Result<ProjectAnalysis> {
    let analysis = analyze_project(root, cfg, par)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let report = crate::canon::to_canonical_string(&analysis.report)?;
    crate::tools::atomic_write(&out_dir.join(ANALYSIS_REPORT_FILE), report.as_bytes())?;
    let symbols = crate::canon::to_canonical_string(&analysis.symbols)?;
    crate::tools::atomic_write(&out_dir.join(SYMBOL_TABLE_FILE), symbols.as_bytes())?;
    Ok(analysis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_normalization() {
        assert_eq!(normalize_path(Some("/cart"), "/items"), "/cart/items");
        assert_eq!(normalize_path(Some("/cart"), "/"), "/cart");
        assert_eq!(normalize_path(None, "/todos"), "/todos");
        assert_eq!(normalize_path(Some("/api/"), "/orders"), "/api/orders");
        assert_eq!(normalize_path(None, "/"), "/");
    }

    #[test]
    fn methods_parse_case_insensitively() {
        assert_eq!(HttpMethod::parse("get"), Some(HttpMethod::Get));
        assert_eq!(HttpMethod::parse("DELETE"), Some(HttpMethod::Delete));
        assert_eq!(HttpMethod::parse("OPTIONS"), None);
    }
}
