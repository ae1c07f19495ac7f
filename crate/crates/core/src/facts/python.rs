//! Python frontend: full syntactic parsing via `rustpython-parser`.
//!
//! Extracts route decorators (`@app.route`, `@app.get`, blueprint routes),
//! Blueprint declarations and registrations, imports, function/class
//! symbols and call sites with `return_value_used` / `is_awaited` flags.

use rustpython_parser::{ast, parse, Mode};

use crate::config::AnalysisConfig;
use crate::diag::Diagnostic;

use super::{
    FileAnalysis, FunctionSymbol, HttpMethod, MountCandidate, RawCall, RawImport, RouteCandidate,
};

struct LineIndex {
    starts: Vec<usize>,
}

impl LineIndex {
    fn new(text: &str) -> Self {
        let mut starts = vec![0usize];
        for (i, b) in text.bytes().enumerate() {
            if b == b'\n' {
                starts.push(i + 1);
            }
        }
        LineIndex { starts }
    }

    fn line(&self, offset: usize) -> usize {
        self.starts.partition_point(|s| *s <= offset)
    }
}

fn off(size: rustpython_parser::text_size::TextSize) -> usize {
    u32::from(size) as usize
}

struct Walker<'a> {
    cfg: &'a AnalysisConfig,
    lines: LineIndex,
    out: FileAnalysis,
}

pub(super) fn analyze(rel: &str, source: &str, cfg: &AnalysisConfig) -> FileAnalysis {
    let mut out = FileAnalysis {
        file: rel.to_string(),
        ..FileAnalysis::default()
    };
    let module = match parse(source, Mode::Module, rel) {
        Ok(ast::Mod::Module(m)) => m,
        Ok(_) => return out,
        Err(err) => {
            let line = crate::tools::offset_to_line(source, off(err.offset));
            out.diagnostics.push(
                Diagnostic::warning(
                    "python-parse-error",
                    format!("{rel}:{line}: {} (file skipped)", err.error),
                )
                .with_file(rel)
                .with_line(line),
            );
            return out;
        }
    };
    let mut walker = Walker {
        cfg,
        lines: LineIndex::new(source),
        out,
    };
    walker.walk_stmts(&module.body, "<module>", false, true);
    walker.out
}

/// String constant contents, if the expression is one.
fn str_const(expr: &ast::Expr) -> Option<String> {
    if let ast::Expr::Constant(c) = expr {
        if let ast::Constant::Str(s) = &c.value {
            return Some(s.clone());
        }
    }
    None
}

fn name_of(expr: &ast::Expr) -> Option<String> {
    match expr {
        ast::Expr::Name(n) => Some(n.id.to_string()),
        ast::Expr::Attribute(a) => Some(a.attr.to_string()),
        _ => None,
    }
}

/// `/todos/<int:todo_id>` -> `/todos/{todo_id}`.
fn canonicalize_flask_path(path: &str) -> String {
    let mut out = String::with_capacity(path.len());
    let mut rest = path;
    while let Some(start) = rest.find('<') {
        out.push_str(&rest[..start]);
        let tail = &rest[start + 1..];
        match tail.find('>') {
            Some(end) => {
                let inner = &tail[..end];
                let param = inner.rsplit(':').next().unwrap_or(inner);
                out.push('{');
                out.push_str(param);
                out.push('}');
                rest = &tail[end + 1..];
            }
            None => {
                out.push('<');
                rest = tail;
            }
        }
    }
    out.push_str(rest);
    out
}

impl Walker<'_> {
    fn line(&self, range: rustpython_parser::text_size::TextRange) -> usize {
        self.lines.line(off(range.start()))
    }

    fn walk_stmts(&mut self, stmts: &[ast::Stmt], caller: &str, is_async: bool, top_level: bool) {
        for stmt in stmts {
            self.walk_stmt(stmt, caller, is_async, top_level);
        }
    }

    fn walk_stmt(&mut self, stmt: &ast::Stmt, caller: &str, is_async: bool, top_level: bool) {
        match stmt {
            ast::Stmt::FunctionDef(f) => {
                self.enter_function(
                    &f.name,
                    &f.decorator_list,
                    &f.body,
                    f.range,
                    false,
                    top_level,
                );
            }
            ast::Stmt::AsyncFunctionDef(f) => {
                self.enter_function(
                    &f.name,
                    &f.decorator_list,
                    &f.body,
                    f.range,
                    true,
                    top_level,
                );
            }
            ast::Stmt::ClassDef(c) => {
                if top_level {
                    self.out.classes.push(super::ClassSymbol {
                        name: c.name.to_string(),
                        start_line: self.lines.line(off(c.range.start())),
                        end_line: self.lines.line(off(c.range.end()).saturating_sub(1)),
                    });
                }
                self.walk_stmts(&c.body, caller, is_async, top_level);
            }
            ast::Stmt::Import(imp) => {
                for alias in &imp.names {
                    let local = alias
                        .asname
                        .as_ref()
                        .map(|a| a.to_string())
                        .unwrap_or_else(|| alias.name.to_string());
                    self.out.imports.push(RawImport {
                        local_name: local,
                        module: alias.name.to_string(),
                        symbol: None,
                        level: 0,
                    });
                }
            }
            ast::Stmt::ImportFrom(imp) => {
                let module = imp
                    .module
                    .as_ref()
                    .map(|m| m.to_string())
                    .unwrap_or_default();
                let level = imp.level.map(|l| l.to_usize()).unwrap_or(0);
                for alias in &imp.names {
                    let original = alias.name.to_string();
                    if original == "*" {
                        continue;
                    }
                    let local = alias
                        .asname
                        .as_ref()
                        .map(|a| a.to_string())
                        .unwrap_or_else(|| original.clone());
                    self.out.imports.push(RawImport {
                        local_name: local,
                        module: module.clone(),
                        symbol: Some(original),
                        level,
                    });
                }
            }
            ast::Stmt::Assign(assign) => {
                self.detect_router_decl(&assign.targets, &assign.value);
                self.walk_expr(&assign.value, caller, is_async, true, false);
            }
            ast::Stmt::AnnAssign(assign) => {
                if let Some(value) = &assign.value {
                    self.walk_expr(value, caller, is_async, true, false);
                }
            }
            ast::Stmt::AugAssign(assign) => {
                self.walk_expr(&assign.value, caller, is_async, true, false);
            }
            ast::Stmt::Expr(e) => {
                self.detect_mount(&e.value);
                // Bare expression statement: the only place a call's return
                // value is discarded.
                match e.value.as_ref() {
                    ast::Expr::Call(call) => {
                        self.emit_call(call, caller, false, false);
                        self.walk_call_children(call, caller, is_async);
                    }
                    ast::Expr::Await(awaited) => {
                        if let ast::Expr::Call(call) = awaited.value.as_ref() {
                            self.emit_call(call, caller, false, is_async);
                            self.walk_call_children(call, caller, is_async);
                        } else {
                            self.walk_expr(&awaited.value, caller, is_async, true, false);
                        }
                    }
                    other => self.walk_expr_ref(other, caller, is_async),
                }
            }
            ast::Stmt::Return(r) => {
                if let Some(value) = &r.value {
                    self.walk_expr(value, caller, is_async, true, false);
                }
            }
            ast::Stmt::If(s) => {
                self.walk_expr(&s.test, caller, is_async, true, false);
                self.walk_stmts(&s.body, caller, is_async, false);
                self.walk_stmts(&s.orelse, caller, is_async, false);
            }
            ast::Stmt::While(s) => {
                self.walk_expr(&s.test, caller, is_async, true, false);
                self.walk_stmts(&s.body, caller, is_async, false);
                self.walk_stmts(&s.orelse, caller, is_async, false);
            }
            ast::Stmt::For(s) => {
                self.walk_expr(&s.iter, caller, is_async, true, false);
                self.walk_stmts(&s.body, caller, is_async, false);
                self.walk_stmts(&s.orelse, caller, is_async, false);
            }
            ast::Stmt::AsyncFor(s) => {
                self.walk_expr(&s.iter, caller, is_async, true, false);
                self.walk_stmts(&s.body, caller, is_async, false);
                self.walk_stmts(&s.orelse, caller, is_async, false);
            }
            ast::Stmt::With(s) => {
                for item in &s.items {
                    self.walk_expr(&item.context_expr, caller, is_async, true, false);
                }
                self.walk_stmts(&s.body, caller, is_async, false);
            }
            ast::Stmt::AsyncWith(s) => {
                for item in &s.items {
                    self.walk_expr(&item.context_expr, caller, is_async, true, false);
                }
                self.walk_stmts(&s.body, caller, is_async, false);
            }
            ast::Stmt::Raise(s) => {
                if let Some(exc) = &s.exc {
                    self.walk_expr(exc, caller, is_async, true, false);
                }
            }
            ast::Stmt::Try(s) => {
                self.walk_stmts(&s.body, caller, is_async, false);
                for handler in &s.handlers {
                    let ast::ExceptHandler::ExceptHandler(h) = handler;
                    self.walk_stmts(&h.body, caller, is_async, false);
                }
                self.walk_stmts(&s.orelse, caller, is_async, false);
                self.walk_stmts(&s.finalbody, caller, is_async, false);
            }
            ast::Stmt::Assert(s) => {
                self.walk_expr(&s.test, caller, is_async, true, false);
            }
            ast::Stmt::Delete(_)
            | ast::Stmt::Global(_)
            | ast::Stmt::Nonlocal(_)
            | ast::Stmt::Pass(_)
            | ast::Stmt::Break(_)
            | ast::Stmt::Continue(_) => {}
            _ => {}
        }
    }

    fn enter_function(
        &mut self,
        name: &str,
        decorators: &[ast::Expr],
        body: &[ast::Stmt],
        range: rustpython_parser::text_size::TextRange,
        is_async: bool,
        top_level: bool,
    ) {
        if top_level {
            self.out.functions.push(FunctionSymbol {
                name: name.to_string(),
                start_line: self.lines.line(off(range.start())),
                end_line: self.lines.line(off(range.end()).saturating_sub(1)),
            });
        }
        self.extract_routes(name, decorators);
        self.walk_stmts(body, name, is_async, false);
    }

    /// Route decorators plus auth markers on one handler.
    fn extract_routes(&mut self, handler: &str, decorators: &[ast::Expr]) {
        let mut routes: Vec<RouteCandidate> = Vec::new();
        let mut markers: Vec<String> = Vec::new();

        for dec in decorators {
            match dec {
                ast::Expr::Call(call) => {
                    if let ast::Expr::Attribute(attr) = call.func.as_ref() {
                        let receiver = name_of(&attr.value).unwrap_or_default();
                        let attr_name = attr.attr.as_str();
                        if attr_name == "route" {
                            if let Some(path) = call.args.first().and_then(str_const) {
                                let mut methods: Vec<HttpMethod> = Vec::new();
                                for kw in &call.keywords {
                                    if kw.arg.as_deref() == Some("methods") {
                                        if let ast::Expr::List(list) = &kw.value {
                                            for elt in &list.elts {
                                                if let Some(m) = str_const(elt) {
                                                    if let Some(parsed) = HttpMethod::parse(&m) {
                                                        methods.push(parsed);
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                                if methods.is_empty() {
                                    methods.push(HttpMethod::Get);
                                }
                                routes.push(RouteCandidate {
                                    receiver,
                                    methods,
                                    local_path: canonicalize_flask_path(&path),
                                    handler: handler.to_string(),
                                    line: self.line(call.range),
                                    markers: Vec::new(),
                                });
                            }
                        } else if self.cfg.route_methods.iter().any(|m| m == attr_name) {
                            if let Some(path) = call.args.first().and_then(str_const) {
                                if let Some(method) = HttpMethod::parse(attr_name) {
                                    routes.push(RouteCandidate {
                                        receiver,
                                        methods: vec![method],
                                        local_path: canonicalize_flask_path(&path),
                                        handler: handler.to_string(),
                                        line: self.line(call.range),
                                        markers: Vec::new(),
                                    });
                                }
                            }
                        } else if self.cfg.auth_decorators.iter().any(|d| d == attr_name) {
                            markers.push(attr_name.to_string());
                        }
                    } else if let Some(name) = name_of(&call.func) {
                        if self.cfg.auth_decorators.contains(&name) {
                            markers.push(name);
                        }
                    }
                }
                other => {
                    if let Some(name) = name_of(other) {
                        if self.cfg.auth_decorators.contains(&name) {
                            markers.push(name);
                        }
                    }
                }
            }
        }

        for mut route in routes {
            route.markers = markers.clone();
            self.out.routes.push(route);
        }
    }

    /// `bp = Blueprint("cart", __name__, url_prefix="/cart")`
    fn detect_router_decl(&mut self, targets: &[ast::Expr], value: &ast::Expr) {
        let ast::Expr::Call(call) = value else {
            return;
        };
        let ctor = name_of(&call.func).unwrap_or_default();
        if ctor != "Blueprint" {
            return;
        }
        let Some(ast::Expr::Name(target)) = targets.first() else {
            return;
        };
        let prefix = call
            .keywords
            .iter()
            .find(|kw| kw.arg.as_deref() == Some("url_prefix"))
            .and_then(|kw| str_const(&kw.value));
        self.out.routers.insert(target.id.to_string(), prefix);
    }

    /// `app.register_blueprint(bp, url_prefix="/cart")`
    fn detect_mount(&mut self, expr: &ast::Expr) {
        let ast::Expr::Call(call) = expr else { return };
        let ast::Expr::Attribute(attr) = call.func.as_ref() else {
            return;
        };
        if attr.attr.as_str() != "register_blueprint" {
            return;
        }
        let Some(ast::Expr::Name(target)) = call.args.first() else {
            return;
        };
        let prefix = call
            .keywords
            .iter()
            .find(|kw| kw.arg.as_deref() == Some("url_prefix"))
            .and_then(|kw| str_const(&kw.value));
        self.out.mounts.push(MountCandidate {
            prefix,
            target_ident: target.id.to_string(),
            line: self.line(call.range),
        });
    }

    fn emit_call(&mut self, call: &ast::ExprCall, caller: &str, used: bool, awaited: bool) {
        let (base, name) = match call.func.as_ref() {
            ast::Expr::Name(n) => (None, n.id.to_string()),
            ast::Expr::Attribute(attr) => match attr.value.as_ref() {
                ast::Expr::Name(base) => (Some(base.id.to_string()), attr.attr.to_string()),
                // Chained bases (`a.b.c()`) are out of reach for the
                // single-ident import map; skip.
                _ => return,
            },
            _ => return,
        };
        self.out.calls.push(RawCall {
            caller_function: caller.to_string(),
            base,
            name,
            line: self.line(call.range),
            return_value_used: used,
            is_awaited: awaited,
        });
    }

    fn walk_call_children(&mut self, call: &ast::ExprCall, caller: &str, is_async: bool) {
        // Chained bases (`db.get_table("x").put_item(...)`) still carry an
        // inner call worth recording.
        if let ast::Expr::Attribute(attr) = call.func.as_ref() {
            if !matches!(attr.value.as_ref(), ast::Expr::Name(_)) {
                self.walk_expr(&attr.value, caller, is_async, true, false);
            }
        }
        for arg in &call.args {
            self.walk_expr(arg, caller, is_async, true, false);
        }
        for kw in &call.keywords {
            self.walk_expr(&kw.value, caller, is_async, true, false);
        }
    }

    fn walk_expr(
        &mut self,
        expr: &ast::Expr,
        caller: &str,
        is_async: bool,
        used: bool,
        awaited: bool,
    ) {
        match expr {
            ast::Expr::Call(call) => {
                self.emit_call(call, caller, used, awaited);
                self.walk_call_children(call, caller, is_async);
            }
            ast::Expr::Await(a) => {
                if let ast::Expr::Call(call) = a.value.as_ref() {
                    self.emit_call(call, caller, used, is_async);
                    self.walk_call_children(call, caller, is_async);
                } else {
                    self.walk_expr(&a.value, caller, is_async, used, false);
                }
            }
            other => self.walk_expr_ref(other, caller, is_async),
        }
    }

    /// Recurse into sub-expressions; any call found is value-consuming.
    fn walk_expr_ref(&mut self, expr: &ast::Expr, caller: &str, is_async: bool) {
        let go = |e: &ast::Expr, w: &mut Self| w.walk_expr(e, caller, is_async, true, false);
        match expr {
            ast::Expr::BoolOp(e) => e.values.iter().for_each(|v| go(v, self)),
            ast::Expr::NamedExpr(e) => go(&e.value, self),
            ast::Expr::BinOp(e) => {
                go(&e.left, self);
                go(&e.right, self);
            }
            ast::Expr::UnaryOp(e) => go(&e.operand, self),
            ast::Expr::Lambda(e) => go(&e.body, self),
            ast::Expr::IfExp(e) => {
                go(&e.test, self);
                go(&e.body, self);
                go(&e.orelse, self);
            }
            ast::Expr::Dict(e) => {
                e.keys.iter().flatten().for_each(|k| go(k, self));
                e.values.iter().for_each(|v| go(v, self));
            }
            ast::Expr::Set(e) => e.elts.iter().for_each(|v| go(v, self)),
            ast::Expr::ListComp(e) => {
                go(&e.elt, self);
                for c in &e.generators {
                    go(&c.iter, self);
                }
            }
            ast::Expr::SetComp(e) => {
                go(&e.elt, self);
                for c in &e.generators {
                    go(&c.iter, self);
                }
            }
            ast::Expr::DictComp(e) => {
                go(&e.key, self);
                go(&e.value, self);
                for c in &e.generators {
                    go(&c.iter, self);
                }
            }
            ast::Expr::GeneratorExp(e) => {
                go(&e.elt, self);
                for c in &e.generators {
                    go(&c.iter, self);
                }
            }
            ast::Expr::Await(e) => self.walk_expr(&e.value, caller, is_async, true, true),
            ast::Expr::Yield(e) => {
                if let Some(v) = &e.value {
                    go(v, self);
                }
            }
            ast::Expr::YieldFrom(e) => go(&e.value, self),
            ast::Expr::Compare(e) => {
                go(&e.left, self);
                e.comparators.iter().for_each(|c| go(c, self));
            }
            ast::Expr::Call(call) => {
                self.emit_call(call, caller, true, false);
                self.walk_call_children(call, caller, is_async);
            }
            ast::Expr::FormattedValue(e) => go(&e.value, self),
            ast::Expr::JoinedStr(e) => e.values.iter().for_each(|v| go(v, self)),
            ast::Expr::Attribute(e) => go(&e.value, self),
            ast::Expr::Subscript(e) => {
                go(&e.value, self);
                go(&e.slice, self);
            }
            ast::Expr::Starred(e) => go(&e.value, self),
            ast::Expr::List(e) => e.elts.iter().for_each(|v| go(v, self)),
            ast::Expr::Tuple(e) => e.elts.iter().for_each(|v| go(v, self)),
            ast::Expr::Slice(e) => {
                for part in [&e.lower, &e.upper, &e.step].into_iter().flatten() {
                    go(part, self);
                }
            }
            ast::Expr::Name(_) | ast::Expr::Constant(_) => {}
        }
    }
}
