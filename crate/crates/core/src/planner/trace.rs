//! Deterministic transitive call tracing.
//!
//! Replaces the level-1-only dependency map with a bounded expansion:
//! cross-file edges are followed up to a depth cap (in file hops), and
//! same-file calls are followed without consuming depth, so chains like
//! `handler -> service.create -> service.announce -> other domain` are
//! visible. Cycles terminate through a visited set and are diagnosed.

use std::collections::BTreeSet;
use std::path::Path;

use crate::config::Config;
use crate::diag::Diagnostic;
use crate::error::Result;
use crate::facts::{analyze_project, CallEdge, ProjectAnalysis};
use crate::Parallelism;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedEdge {
    pub edge: CallEdge,
    /// File hops from the handler; direct handler calls are depth 1.
    pub depth: usize,
}

/// All cross-file edges reachable from one function, each with the depth at
/// which it was first reached.
pub fn trace_from(
    analysis: &ProjectAnalysis,
    file: &str,
    function: &str,
    max_depth: usize,
    diagnostics: &mut Vec<Diagnostic>,
) -> Vec<TracedEdge> {
    let mut out: Vec<TracedEdge> = Vec::new();
    let mut visited: BTreeSet<(String, String)> = BTreeSet::new();
    let mut path: Vec<(String, String)> = Vec::new();
    walk(
        analysis,
        (file.to_string(), function.to_string()),
        0,
        max_depth,
        &mut visited,
        &mut path,
        &mut out,
        diagnostics,
    );
    out.sort_by(|a, b| (&a.edge, a.depth).cmp(&(&b.edge, b.depth)));
    out.dedup_by(|a, b| a.edge == b.edge);
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    analysis: &ProjectAnalysis,
    node: (String, String),
    depth: usize,
    max_depth: usize,
    visited: &mut BTreeSet<(String, String)>,
    path: &mut Vec<(String, String)>,
    out: &mut Vec<TracedEdge>,
    diagnostics: &mut Vec<Diagnostic>,
) {
    if path.contains(&node) {
        diagnostics.push(Diagnostic::warning(
            "call-cycle",
            format!(
                "call cycle through {}::{} terminated by visited-set",
                node.0, node.1
            ),
        ));
        return;
    }
    if !visited.insert(node.clone()) {
        return;
    }
    path.push(node.clone());

    // Same-file calls: free hops.
    for (file, caller, callee) in &analysis.local_calls {
        if file == &node.0 && caller == &node.1 {
            walk(
                analysis,
                (file.clone(), callee.clone()),
                depth,
                max_depth,
                visited,
                path,
                out,
                diagnostics,
            );
        }
    }

    // Cross-file calls consume one hop.
    if depth < max_depth {
        for edge in &analysis.edges {
            if edge.caller_file != node.0 || edge.caller_function != node.1 {
                continue;
            }
            out.push(TracedEdge {
                edge: edge.clone(),
                depth: depth + 1,
            });
            walk(
                analysis,
                (edge.callee_file.clone(), edge.callee_function.clone()),
                depth + 1,
                max_depth,
                visited,
                path,
                out,
                diagnostics,
            );
        }
    }
    path.pop();
}

/// Deterministic transitive expansion from every entry-point handler.
/// Re-analyzes the project, so the result depends only on the source tree.
pub fn trace_deep_calls(
    project_root: &Path,
    cfg: &Config,
    max_depth: usize,
) -> Result<(Vec<CallEdge>, Vec<Diagnostic>)> {
    let analysis = analyze_project(project_root, cfg, Parallelism::default())?;
    let mut diagnostics = Vec::new();
    let mut edges: Vec<CallEdge> = Vec::new();
    for ep in &analysis.report.entry_points {
        for traced in trace_from(
            &analysis,
            &ep.file,
            &ep.handler_function,
            max_depth,
            &mut diagnostics,
        ) {
            edges.push(traced.edge);
        }
    }
    edges.sort();
    edges.dedup();
    Ok((edges, diagnostics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::facts::{AnalysisReport, Language, SymbolTable};
    use std::collections::BTreeMap;

    fn edge(cf: &str, cfn: &str, tf: &str, tfn: &str, rv: bool) -> CallEdge {
        CallEdge {
            caller_file: cf.into(),
            caller_function: cfn.into(),
            callee_file: tf.into(),
            callee_function: tfn.into(),
            line: 1,
            return_value_used: rv,
            is_awaited: false,
        }
    }

    fn analysis(edges: Vec<CallEdge>, local: Vec<(&str, &str, &str)>) -> ProjectAnalysis {
        ProjectAnalysis {
            report: AnalysisReport {
                project_root: "p".into(),
                language: Language::Python,
                entry_points: Vec::new(),
                file_tags: Vec::new(),
                entry_point_dependencies: BTreeMap::new(),
                dynamodb_schema_candidates: Vec::new(),
            },
            symbols: SymbolTable::default(),
            edges,
            local_calls: local
                .into_iter()
                .map(|(f, a, b)| (f.into(), a.into(), b.into()))
                .collect(),
            diagnostics: Vec::new(),
        }
    }

    #[test]
    fn depth_two_chain_is_reached() {
        let a = analysis(
            vec![
                edge("route.py", "handler", "svc_a.py", "step", true),
                edge("svc_a.py", "step", "svc_b.py", "finish", true),
            ],
            vec![],
        );
        let mut diags = Vec::new();
        let traced = trace_from(&a, "route.py", "handler", 3, &mut diags);
        assert_eq!(traced.len(), 2);
        let ab = traced
            .iter()
            .find(|t| t.edge.callee_file == "svc_b.py")
            .unwrap();
        assert_eq!(ab.depth, 2);
    }

    #[test]
    fn no_cross_service_calls_is_a_fixed_point() {
        let a = analysis(
            vec![edge("route.py", "handler", "svc.py", "only", true)],
            vec![],
        );
        let mut diags = Vec::new();
        let traced = trace_from(&a, "route.py", "handler", 3, &mut diags);
        assert_eq!(traced.len(), 1);
        assert!(diags.is_empty());
    }

    #[test]
    fn mutual_recursion_terminates_with_both_edges_once() {
        let a = analysis(
            vec![
                edge("route.py", "handler", "a.py", "fa", true),
                edge("a.py", "fa", "b.py", "fb", true),
                edge("b.py", "fb", "a.py", "fa", true),
            ],
            vec![],
        );
        let mut diags = Vec::new();
        let traced = trace_from(&a, "route.py", "handler", 5, &mut diags);
        assert_eq!(traced.len(), 3);
        assert!(diags.iter().any(|d| d.code == "call-cycle"));
    }

    #[test]
    fn local_calls_do_not_consume_depth() {
        let a = analysis(
            vec![edge("svc.py", "announce", "other/far.py", "sink", false)],
            vec![("svc.py", "create", "announce")],
        );
        let mut diags = Vec::new();
        let traced = trace_from(&a, "svc.py", "create", 1, &mut diags);
        assert_eq!(traced.len(), 1);
        assert_eq!(traced[0].depth, 1);
    }

    #[test]
    fn depth_cap_is_respected() {
        let a = analysis(
            vec![
                edge("r.py", "h", "a.py", "fa", true),
                edge("a.py", "fa", "b.py", "fb", true),
                edge("b.py", "fb", "c.py", "fc", true),
                edge("c.py", "fc", "d.py", "fd", true),
            ],
            vec![],
        );
        let mut diags = Vec::new();
        let traced = trace_from(&a, "r.py", "h", 3, &mut diags);
        assert_eq!(traced.len(), 3);
        assert!(traced.iter().all(|t| t.depth <= 3));
    }
}
