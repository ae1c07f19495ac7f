//! Architecture planning: classify endpoints, trace call chains, pick
//! communication mechanisms and assemble the blueprint that every
//! downstream stage consumes.

mod classify;
mod comms;
mod trace;

pub use classify::{classify_endpoints, ClassifiedEndpoint};
pub use comms::{domain_of, select_communication, CommKind, Consumer, Relation};
pub use trace::{trace_deep_calls, trace_from, TracedEdge};

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::diag::Diagnostic;
use crate::error::{Error, Result};
use crate::facts::{
    extract_table_decls, AnalysisReport, HttpMethod, ProjectAnalysis, TableDecl, Tag,
};
use crate::naming;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trigger {
    Http,
    Sqs,
    Eventbridge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuthRequirement {
    Required,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsyncTargetKind {
    SqsQueue,
    EventbridgeRule,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AsyncTarget {
    pub kind: AsyncTargetKind,
    pub target_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaSpec {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<HttpMethod>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub trigger: Trigger,
    pub runtime: String,
    pub source_files: Vec<String>,
    pub auth: AuthRequirement,
    pub publishes_to: Vec<AsyncTarget>,
    pub invokes: Vec<String>,
    pub env_vars: Vec<String>,
    pub uses_shared_layer: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueueSpec {
    pub name: String,
    pub consumer: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub name: String,
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CognitoSpec {
    pub user_pool_name: String,
    pub client_name: String,
    pub managed_paths: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiSpec {
    pub name: String,
    pub stage_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub default_authorizer: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DroppedFunction {
    pub method: HttpMethod,
    pub path: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvokePermission {
    pub caller: String,
    pub callee: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Blueprint {
    pub lambda_functions: Vec<LambdaSpec>,
    pub dynamodb_tables: Vec<TableDecl>,
    pub s3_buckets: Vec<String>,
    pub cognito: Option<CognitoSpec>,
    pub api_gateway: ApiSpec,
    pub sqs_queues: Vec<QueueSpec>,
    pub eventbridge_rules: Vec<RuleSpec>,
    pub lambda_invoke_permissions: Vec<InvokePermission>,
    pub dropped_functions: Vec<DroppedFunction>,
}

pub const BLUEPRINT_FILE: &str = "blueprint.json";

impl Blueprint {
    pub fn http_specs(&self) -> impl Iterator<Item = &LambdaSpec> {
        self.lambda_functions
            .iter()
            .filter(|s| s.trigger == Trigger::Http)
    }

    pub fn spec(&self, name: &str) -> Option<&LambdaSpec> {
        self.lambda_functions.iter().find(|s| s.name == name)
    }

    /// Structural invariants every produced blueprint must satisfy.
    pub fn check_invariants(&self, report: &AnalysisReport) -> Result<()> {
        let mut http_pairs = BTreeSet::new();
        for spec in self.http_specs() {
            let (Some(method), Some(path)) = (spec.method, spec.path.as_ref()) else {
                return Err(Error::Blueprint(format!(
                    "http spec {} is missing method/path",
                    spec.name
                )));
            };
            if !http_pairs.insert((method, path.clone())) {
                return Err(Error::Blueprint(format!(
                    "duplicate http endpoint {} {path}",
                    method.as_str()
                )));
            }
        }
        for spec in &self.lambda_functions {
            if spec.trigger != Trigger::Http && (spec.method.is_some() || spec.path.is_some()) {
                return Err(Error::Blueprint(format!(
                    "{} is {:?}-triggered but carries method/path",
                    spec.name, spec.trigger
                )));
            }
            for invoked in &spec.invokes {
                let pair_present = self
                    .lambda_invoke_permissions
                    .iter()
                    .any(|p| p.caller == spec.name && &p.callee == invoked);
                if !pair_present {
                    return Err(Error::Blueprint(format!(
                        "{} invokes {invoked} without a matching invoke permission",
                        spec.name
                    )));
                }
            }
            for target in &spec.publishes_to {
                let present = match target.kind {
                    AsyncTargetKind::SqsQueue => self
                        .sqs_queues
                        .iter()
                        .any(|q| q.name == target.target_name),
                    AsyncTargetKind::EventbridgeRule => self
                        .eventbridge_rules
                        .iter()
                        .any(|r| r.name == target.target_name),
                };
                if !present {
                    return Err(Error::Blueprint(format!(
                        "{} publishes to undeclared target {}",
                        spec.name, target.target_name
                    )));
                }
            }
        }
        for rule in &self.eventbridge_rules {
            if rule.targets.len() < 2 {
                return Err(Error::Blueprint(format!(
                    "eventbridge rule {} has fewer than 2 targets",
                    rule.name
                )));
            }
        }
        // Partition: http specs plus dropped endpoints equal the report's
        // entry points, with no overlap.
        let mut planned: BTreeSet<(HttpMethod, String)> = BTreeSet::new();
        for spec in self.http_specs() {
            planned.insert((spec.method.unwrap(), spec.path.clone().unwrap()));
        }
        let dropped: BTreeSet<(HttpMethod, String)> = self
            .dropped_functions
            .iter()
            .map(|d| (d.method, d.path.clone()))
            .collect();
        if !planned.is_disjoint(&dropped) {
            return Err(Error::Blueprint(
                "an endpoint is both planned and dropped".into(),
            ));
        }
        let all: BTreeSet<(HttpMethod, String)> = report
            .entry_points
            .iter()
            .map(|ep| (ep.method, ep.path.clone()))
            .collect();
        let union: BTreeSet<(HttpMethod, String)> = planned.union(&dropped).cloned().collect();
        if union != all {
            return Err(Error::Blueprint(
                "business + dropped endpoints do not partition the entry points".into(),
            ));
        }
        Ok(())
    }
}

/// Planner output: blueprint plus non-fatal diagnostics.
pub struct PlanOutcome {
    pub blueprint: Blueprint,
    pub diagnostics: Vec<Diagnostic>,
}

/// Resolved communication wiring for one endpoint.
struct EndpointWiring {
    bundle: Vec<String>,
    /// (callee_file, callee_fn) per fire-and-forget single-consumer relation.
    sqs_targets: Vec<(String, String)>,
    /// (producer_fn, consumers) per fan-out relation.
    rule_actions: Vec<(String, Vec<(String, String)>)>,
    /// (callee_file, callee_fn) per value-returning relation.
    invoke_targets: Vec<(String, String)>,
}

pub fn plan_blueprint(
    report: &AnalysisReport,
    analysis: &ProjectAnalysis,
    project_root: &Path,
    cfg: &Config,
) -> Result<PlanOutcome> {
    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let classified = classify_endpoints(
        report,
        &cfg.analysis.auth_decorators,
        &cfg.planner.auth_paths,
    );
    let business: Vec<&ClassifiedEndpoint> = classified.iter().filter(|c| !c.dropped).collect();
    if business.is_empty() {
        return Err(Error::Blueprint(
            "no business endpoints to migrate after dropping auth endpoints".into(),
        ));
    }

    let tables = collect_tables(report, project_root);
    let tier1_schema_files: BTreeSet<String> = report
        .dynamodb_schema_candidates
        .iter()
        .filter(|f| classify::is_tier1_schema_file(f))
        .cloned()
        .collect();

    let runtime = match report.language {
        crate::facts::Language::Python => cfg.synth.python_runtime.clone(),
        crate::facts::Language::Javascript => cfg.synth.node_runtime.clone(),
    };

    // Endpoints are processed in (path, method) order so the outcome is
    // independent of the report's entry-point ordering.
    let mut ordered: Vec<&ClassifiedEndpoint> = business.clone();
    ordered.sort_by(|a, b| (&a.entry.path, a.entry.method).cmp(&(&b.entry.path, b.entry.method)));

    let max_depth = cfg.planner.max_trace_depth;
    let mut wirings: Vec<(String, &ClassifiedEndpoint, EndpointWiring)> = Vec::new();
    let mut queues: BTreeMap<String, QueueSpec> = BTreeMap::new();
    let mut rules: BTreeMap<String, RuleSpec> = BTreeMap::new();
    // Consumer lambda name -> (callee_file, callee_fn, trigger).
    let mut consumers: BTreeMap<String, (String, String, Trigger)> = BTreeMap::new();

    for ep in &ordered {
        let name = naming::lambda_name(ep.entry.method.as_str(), &ep.entry.path);
        let wiring = wire_endpoint(analysis, ep, cfg, max_depth, &mut diagnostics)?;
        wirings.push((name, ep, wiring));
    }

    // Register queues, rules and consumer lambdas discovered by any endpoint.
    for (_, _, wiring) in &wirings {
        for (callee_file, callee_fn) in &wiring.sqs_targets {
            let consumer_name = unique_consumer_name(&mut consumers, callee_file, callee_fn);
            consumers
                .entry(consumer_name.clone())
                .or_insert_with(|| (callee_file.clone(), callee_fn.clone(), Trigger::Sqs));
            let queue_name = naming::queue_name_for_consumer(&consumer_name);
            queues.entry(queue_name.clone()).or_insert(QueueSpec {
                name: queue_name,
                consumer: consumer_name,
            });
        }
        for (producer_fn, relation_consumers) in &wiring.rule_actions {
            let rule_name = naming::rule_name_for_action(producer_fn);
            let mut targets = Vec::new();
            for (callee_file, callee_fn) in relation_consumers {
                let consumer_name = unique_consumer_name(&mut consumers, callee_file, callee_fn);
                consumers.entry(consumer_name.clone()).or_insert_with(|| {
                    (callee_file.clone(), callee_fn.clone(), Trigger::Eventbridge)
                });
                targets.push(consumer_name);
            }
            targets.sort();
            targets.dedup();
            rules.entry(rule_name.clone()).or_insert(RuleSpec {
                name: rule_name,
                targets,
            });
        }
    }

    // Consumer bundles.
    let mut consumer_specs: Vec<LambdaSpec> = Vec::new();
    for (consumer_name, (callee_file, callee_fn, trigger)) in &consumers {
        let (bundle, saw_comm) = bundle_from(analysis, callee_file, callee_fn, cfg, max_depth);
        if saw_comm {
            diagnostics.push(Diagnostic::warning(
                "consumer-publishes",
                format!(
                    "consumer {consumer_name} has outgoing cross-domain calls; nested \
                     communication patterns are not planned"
                ),
            ));
        }
        consumer_specs.push(LambdaSpec {
            name: consumer_name.clone(),
            method: None,
            path: None,
            trigger: *trigger,
            runtime: runtime.clone(),
            source_files: finalize_bundle(bundle, &tier1_schema_files),
            auth: AuthRequirement::None,
            publishes_to: Vec::new(),
            invokes: Vec::new(),
            env_vars: Vec::new(),
            uses_shared_layer: false,
        });
    }

    // HTTP specs, first pass: bundles and async publish targets.
    let mut http_specs: Vec<LambdaSpec> = Vec::new();
    for (name, ep, wiring) in &wirings {
        let mut publishes_to: Vec<AsyncTarget> = Vec::new();
        for (callee_file, callee_fn) in &wiring.sqs_targets {
            let consumer_name = existing_consumer_name(&consumers, callee_file, callee_fn);
            publishes_to.push(AsyncTarget {
                kind: AsyncTargetKind::SqsQueue,
                target_name: naming::queue_name_for_consumer(&consumer_name),
            });
        }
        for (producer_fn, _) in &wiring.rule_actions {
            publishes_to.push(AsyncTarget {
                kind: AsyncTargetKind::EventbridgeRule,
                target_name: naming::rule_name_for_action(producer_fn),
            });
        }
        publishes_to.sort();
        publishes_to.dedup();
        http_specs.push(LambdaSpec {
            name: name.clone(),
            method: Some(ep.entry.method),
            path: Some(ep.entry.path.clone()),
            trigger: Trigger::Http,
            runtime: runtime.clone(),
            source_files: finalize_bundle(wiring.bundle.clone(), &tier1_schema_files),
            auth: ep.auth,
            publishes_to,
            invokes: Vec::new(),
            env_vars: Vec::new(),
            uses_shared_layer: false,
        });
    }

    // Second pass: resolve synchronous invoke targets to the lambda that
    // owns the callee file (lexicographically first owner).
    let mut invoke_permissions: Vec<InvokePermission> = Vec::new();
    for (idx, (name, _, wiring)) in wirings.iter().enumerate() {
        let mut invokes: Vec<String> = Vec::new();
        for (callee_file, callee_fn) in &wiring.invoke_targets {
            let owner = http_specs
                .iter()
                .find(|s| s.name != *name && s.source_files.iter().any(|f| f == callee_file))
                .map(|s| s.name.clone());
            match owner {
                Some(owner) => invokes.push(owner),
                None => diagnostics.push(Diagnostic::warning(
                    "unowned-invoke-target",
                    format!(
                        "{name}: no lambda owns {callee_file}::{callee_fn}; synchronous \
                         invoke left unwired"
                    ),
                )),
            }
        }
        invokes.sort();
        invokes.dedup();
        for callee in &invokes {
            invoke_permissions.push(InvokePermission {
                caller: name.clone(),
                callee: callee.clone(),
            });
        }
        http_specs[idx].invokes = invokes;
    }
    invoke_permissions.sort_by(|a, b| (&a.caller, &a.callee).cmp(&(&b.caller, &b.callee)));
    invoke_permissions.dedup();

    let mut lambda_functions: Vec<LambdaSpec> = http_specs;
    lambda_functions.extend(consumer_specs);
    lambda_functions.sort_by(|a, b| (a.trigger, &a.name).cmp(&(b.trigger, &b.name)));

    // Environment variables from touched tables and async wiring.
    let file_contents = load_source_files(project_root, &lambda_functions);
    for spec in &mut lambda_functions {
        spec.env_vars = derive_env_vars(spec, &tables, &file_contents);
    }

    // Shared layer: any source file bundled into three or more lambdas.
    let mut file_counts: BTreeMap<String, usize> = BTreeMap::new();
    for spec in &lambda_functions {
        for f in &spec.source_files {
            *file_counts.entry(f.clone()).or_default() += 1;
        }
    }
    let shared_files: BTreeSet<String> = file_counts
        .into_iter()
        .filter(|(_, n)| *n >= 3)
        .map(|(f, _)| f)
        .collect();
    for spec in &mut lambda_functions {
        spec.uses_shared_layer = spec
            .source_files
            .iter()
            .any(|f| shared_files.contains(f.as_str()));
    }

    let dropped_functions: Vec<DroppedFunction> = {
        let mut dropped: Vec<DroppedFunction> = classified
            .iter()
            .filter(|c| c.dropped)
            .map(|c| DroppedFunction {
                method: c.entry.method,
                path: c.entry.path.clone(),
                reason: "cognito".into(),
            })
            .collect();
        dropped.sort_by(|a, b| (&a.path, a.method).cmp(&(&b.path, b.method)));
        dropped
    };

    let any_auth_tag = report
        .file_tags
        .iter()
        .any(|ft| ft.tags.contains(&Tag::Auth));
    let cognito = if !dropped_functions.is_empty() || any_auth_tag {
        Some(CognitoSpec {
            user_pool_name: format!("{}-users", project_slug(report)),
            client_name: format!("{}-client", project_slug(report)),
            managed_paths: cfg.planner.auth_paths.clone(),
        })
    } else {
        None
    };

    let s3_buckets = if report
        .file_tags
        .iter()
        .any(|ft| ft.tags.contains(&Tag::FileUpload))
    {
        vec!["uploads".to_string()]
    } else {
        Vec::new()
    };

    let blueprint = Blueprint {
        lambda_functions,
        dynamodb_tables: tables,
        s3_buckets,
        api_gateway: ApiSpec {
            name: format!("{}-api", project_slug(report)),
            stage_name: cfg.synth.stage_name.clone(),
            default_authorizer: cognito
                .as_ref()
                .map(|_| naming::COGNITO_AUTHORIZER.to_string()),
        },
        cognito,
        sqs_queues: queues.into_values().collect(),
        eventbridge_rules: rules.into_values().collect(),
        lambda_invoke_permissions: invoke_permissions,
        dropped_functions,
    };
    blueprint.check_invariants(report)?;
    Ok(PlanOutcome {
        blueprint,
        diagnostics,
    })
}

fn project_slug(report: &AnalysisReport) -> String {
    let base = report
        .project_root
        .replace('\\', "/")
        .trim_end_matches('/')
        .rsplit('/')
        .next()
        .unwrap_or("app")
        .to_string();
    let slug = naming::slug(&base);
    if slug.is_empty() {
        "app".into()
    } else {
        slug
    }
}

fn collect_tables(report: &AnalysisReport, project_root: &Path) -> Vec<TableDecl> {
    let mut tables: BTreeMap<String, TableDecl> = BTreeMap::new();
    for candidate in &report.dynamodb_schema_candidates {
        let Ok(text) = std::fs::read_to_string(project_root.join(candidate)) else {
            continue;
        };
        for decl in extract_table_decls(&text) {
            tables.entry(decl.name.clone()).or_insert(decl);
        }
    }
    tables.into_values().collect()
}

/// Trace one endpoint and split its edges into bundle edges and
/// communication relations.
fn wire_endpoint(
    analysis: &ProjectAnalysis,
    ep: &ClassifiedEndpoint,
    cfg: &Config,
    max_depth: usize,
    diagnostics: &mut Vec<Diagnostic>,
) -> Result<EndpointWiring> {
    let traced = trace_from(
        analysis,
        &ep.entry.file,
        &ep.entry.handler_function,
        max_depth,
        diagnostics,
    );

    // Relations: cross-domain comm candidates grouped by producer action.
    let mut relations: BTreeMap<(String, String), Relation> = BTreeMap::new();
    for t in &traced {
        if !comms::is_comm_candidate(&t.edge, t.depth, &cfg.planner.domain_overrides) {
            continue;
        }
        let key = (t.edge.caller_file.clone(), t.edge.caller_function.clone());
        let relation = relations.entry(key.clone()).or_insert_with(|| Relation {
            producer_file: key.0.clone(),
            producer_function: key.1.clone(),
            consumers: Vec::new(),
            any_value_used: false,
        });
        relation.any_value_used |= t.edge.return_value_used;
        let consumer = Consumer {
            callee_file: t.edge.callee_file.clone(),
            callee_function: t.edge.callee_function.clone(),
            domain: domain_of(&t.edge.callee_file, &cfg.planner.domain_overrides)
                .unwrap_or_default(),
        };
        if !relation.consumers.contains(&consumer) {
            relation.consumers.push(consumer);
        }
    }

    let mut wiring = EndpointWiring {
        bundle: Vec::new(),
        sqs_targets: Vec::new(),
        rule_actions: Vec::new(),
        invoke_targets: Vec::new(),
    };
    for relation in relations.values() {
        match select_communication(relation)? {
            CommKind::SyncInvoke => {
                for c in &relation.consumers {
                    wiring
                        .invoke_targets
                        .push((c.callee_file.clone(), c.callee_function.clone()));
                }
            }
            CommKind::Sqs => {
                for c in &relation.consumers {
                    wiring
                        .sqs_targets
                        .push((c.callee_file.clone(), c.callee_function.clone()));
                }
            }
            CommKind::EventBridge => {
                wiring.rule_actions.push((
                    relation.producer_function.clone(),
                    relation
                        .consumers
                        .iter()
                        .map(|c| (c.callee_file.clone(), c.callee_function.clone()))
                        .collect(),
                ));
            }
        }
    }
    wiring.sqs_targets.sort();
    wiring.sqs_targets.dedup();
    wiring.rule_actions.sort();
    wiring.invoke_targets.sort();
    wiring.invoke_targets.dedup();

    let (bundle, _) = bundle_from(
        analysis,
        &ep.entry.file,
        &ep.entry.handler_function,
        cfg,
        max_depth,
    );
    wiring.bundle = bundle;
    Ok(wiring)
}

/// Files reachable from a starting function following only non-communication
/// edges: these are bundled into the lambda's `source_files`. Same-file
/// calls are followed without consuming depth.
fn bundle_from(
    analysis: &ProjectAnalysis,
    file: &str,
    function: &str,
    cfg: &Config,
    max_depth: usize,
) -> (Vec<String>, bool) {
    let mut files: BTreeSet<String> = BTreeSet::new();
    files.insert(file.to_string());
    let mut visited: BTreeSet<(String, String)> = BTreeSet::new();
    let mut saw_comm = false;
    let mut work: Vec<(String, String, usize)> = vec![(file.into(), function.into(), 0)];
    while let Some((f, func, depth)) = work.pop() {
        if !visited.insert((f.clone(), func.clone())) {
            continue;
        }
        for (lf, caller, callee) in &analysis.local_calls {
            if lf == &f && caller == &func {
                work.push((f.clone(), callee.clone(), depth));
            }
        }
        if depth >= max_depth {
            continue;
        }
        for edge in &analysis.edges {
            if edge.caller_file != f || edge.caller_function != func {
                continue;
            }
            if comms::is_comm_candidate(edge, depth + 1, &cfg.planner.domain_overrides) {
                saw_comm = true;
                continue;
            }
            files.insert(edge.callee_file.clone());
            work.push((
                edge.callee_file.clone(),
                edge.callee_function.clone(),
                depth + 1,
            ));
        }
    }
    (files.into_iter().collect(), saw_comm)
}

fn finalize_bundle(bundle: Vec<String>, tier1_schema_files: &BTreeSet<String>) -> Vec<String> {
    let mut files: Vec<String> = bundle
        .into_iter()
        .filter(|f| !tier1_schema_files.contains(f))
        .collect();
    files.sort();
    files.dedup();
    files
}

fn unique_consumer_name(
    consumers: &mut BTreeMap<String, (String, String, Trigger)>,
    callee_file: &str,
    callee_fn: &str,
) -> String {
    let base = naming::consumer_lambda_name(callee_fn);
    let mut name = base.clone();
    let mut suffix = 2;
    loop {
        match consumers.get(&name) {
            Some((file, func, _)) if file == callee_file && func == callee_fn => return name,
            Some(_) => {
                name = format!("{base}-{suffix}");
                suffix += 1;
            }
            None => return name,
        }
    }
}

fn existing_consumer_name(
    consumers: &BTreeMap<String, (String, String, Trigger)>,
    callee_file: &str,
    callee_fn: &str,
) -> String {
    consumers
        .iter()
        .find(|(_, (file, func, _))| file == callee_file && func == callee_fn)
        .map(|(name, _)| name.clone())
        .unwrap_or_else(|| naming::consumer_lambda_name(callee_fn))
}

fn load_source_files(project_root: &Path, specs: &[LambdaSpec]) -> BTreeMap<String, String> {
    let mut contents = BTreeMap::new();
    for spec in specs {
        for file in &spec.source_files {
            contents.entry(file.clone()).or_insert_with(|| {
                std::fs::read_to_string(project_root.join(file)).unwrap_or_default()
            });
        }
    }
    contents
}

/// Env var names for one spec: a table-name variable per touched table,
/// queue-URL / bus-name variables per async target, and a function-name
/// variable per synchronous invoke target.
fn derive_env_vars(
    spec: &LambdaSpec,
    tables: &[TableDecl],
    file_contents: &BTreeMap<String, String>,
) -> Vec<String> {
    let mut vars: BTreeSet<String> = BTreeSet::new();
    for table in tables {
        let touched = spec.source_files.iter().any(|f| {
            file_contents
                .get(f)
                .map(|text| mentions_table(text, &table.name))
                .unwrap_or(false)
        });
        if touched {
            vars.insert(naming::table_env_var(&table.name));
        }
    }
    for target in &spec.publishes_to {
        match target.kind {
            AsyncTargetKind::SqsQueue => {
                vars.insert(naming::queue_env_var(&target.target_name));
            }
            AsyncTargetKind::EventbridgeRule => {
                vars.insert(naming::EVENT_BUS_ENV_VAR.to_string());
            }
        }
    }
    for callee in &spec.invokes {
        vars.insert(naming::function_env_var(callee));
    }
    vars.into_iter().collect()
}

/// A table is "touched" when its name appears as a quoted string literal.
pub(crate) fn mentions_table(text: &str, table: &str) -> bool {
    for quote in ['"', '\''] {
        let needle = format!("{quote}{table}{quote}");
        if text.contains(&needle) {
            return true;
        }
    }
    false
}

/// Write `blueprint.json` canonically.
pub fn emit_blueprint(blueprint: &Blueprint, out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let text = crate::canon::to_canonical_string(blueprint)?;
    crate::tools::atomic_write(&out_dir.join(BLUEPRINT_FILE), text.as_bytes())
}

pub fn load_blueprint(path: &Path) -> Result<Blueprint> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        path: path.into(),
        message: e.to_string(),
    })
}
