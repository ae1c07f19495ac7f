//! JavaScript frontend: line-oriented regex matching over Express patterns.
//!
//! Known blind spots, by design: computed route strings, template-literal
//! paths, and multi-line registration calls. The pattern table lives here
//! and the recognized HTTP verbs come from configuration.

use std::sync::OnceLock;

use regex::Regex;

use crate::config::AnalysisConfig;

use super::{
    ClassSymbol, FileAnalysis, FunctionSymbol, HttpMethod, MountCandidate, RawCall, RawImport,
    RouteCandidate,
};

struct Patterns {
    route: Regex,
    mount: Regex,
    require_whole: Regex,
    require_destructured: Regex,
    import_default: Regex,
    import_star: Regex,
    import_named: Regex,
    func_decl: Regex,
    func_expr: Regex,
    exports_fn: Regex,
    class_decl: Regex,
    router_decl: Regex,
    ns_call: Regex,
    bare_call: Regex,
    bare_stmt: Regex,
    ident: Regex,
}

fn patterns() -> &'static Patterns {
    static CELL: OnceLock<Patterns> = OnceLock::new();
    CELL.get_or_init(|| Patterns {
        route: Regex::new(
            r#"^\s*([A-Za-z_$][\w$]*)\.(get|post|put|patch|delete)\s*\(\s*['"]([^'"]*)['"]\s*,(.*)$"#,
        )
        .unwrap(),
        mount: Regex::new(
            r#"^\s*([A-Za-z_$][\w$]*)\.use\s*\(\s*['"]([^'"]+)['"]\s*,\s*([A-Za-z_$][\w$]*)\s*\)"#,
        )
        .unwrap(),
        require_whole: Regex::new(
            r#"^\s*(?:const|let|var)\s+([A-Za-z_$][\w$]*)\s*=\s*require\(\s*['"]([^'"]+)['"]\s*\)"#,
        )
        .unwrap(),
        require_destructured: Regex::new(
            r#"^\s*(?:const|let|var)\s*\{([^}]*)\}\s*=\s*require\(\s*['"]([^'"]+)['"]\s*\)"#,
        )
        .unwrap(),
        import_default: Regex::new(
            r#"^\s*import\s+([A-Za-z_$][\w$]*)\s+from\s+['"]([^'"]+)['"]"#,
        )
        .unwrap(),
        import_star: Regex::new(
            r#"^\s*import\s+\*\s+as\s+([A-Za-z_$][\w$]*)\s+from\s+['"]([^'"]+)['"]"#,
        )
        .unwrap(),
        import_named: Regex::new(r#"^\s*import\s*\{([^}]*)\}\s*from\s+['"]([^'"]+)['"]"#).unwrap(),
        func_decl: Regex::new(r"^\s*(async\s+)?function\s+([A-Za-z_$][\w$]*)\s*\(").unwrap(),
        func_expr: Regex::new(
            r"^\s*(?:const|let|var)\s+([A-Za-z_$][\w$]*)\s*=\s*(async\s*)?(?:function\b|\([^)]*\)\s*=>|[A-Za-z_$][\w$]*\s*=>)",
        )
        .unwrap(),
        exports_fn: Regex::new(
            r"^\s*(?:module\.)?exports\.([A-Za-z_$][\w$]*)\s*=\s*(async\s*)?(?:function\b|\()",
        )
        .unwrap(),
        class_decl: Regex::new(r"^\s*class\s+([A-Za-z_$][\w$]*)").unwrap(),
        router_decl: Regex::new(
            r"^\s*(?:const|let|var)\s+([A-Za-z_$][\w$]*)\s*=\s*(?:express\.)?Router\s*\(\s*\)",
        )
        .unwrap(),
        ns_call: Regex::new(r"(await\s+)?\b([A-Za-z_$][\w$]*)\.([A-Za-z_$][\w$]*)\s*\(").unwrap(),
        bare_call: Regex::new(r"(await\s+)?\b([A-Za-z_$][\w$]*)\s*\(").unwrap(),
        bare_stmt: Regex::new(
            r"^(await\s+)?[A-Za-z_$][\w$]*(\.[A-Za-z_$][\w$]*)?\s*\([^;]*\)\s*;?\s*$",
        )
        .unwrap(),
        ident: Regex::new(r"[A-Za-z_$][\w$]*").unwrap(),
    })
}

const KEYWORDS: &[&str] = &[
    "if", "for", "while", "switch", "catch", "return", "function", "require", "typeof", "new",
    "throw", "await", "else", "do", "try",
];

#[derive(Debug)]
struct Context {
    name: String,
    is_async: bool,
    entry_depth: i32,
    start_line: usize,
    /// Symbol spans must not overlap, so only outermost functions are recorded.
    top_level: bool,
}

pub(super) fn analyze(rel: &str, source: &str, cfg: &AnalysisConfig) -> FileAnalysis {
    let p = patterns();
    let mut out = FileAnalysis {
        file: rel.to_string(),
        ..FileAnalysis::default()
    };
    let mut depth: i32 = 0;
    let mut stack: Vec<Context> = Vec::new();
    let mut class_stack: Vec<(String, i32, usize)> = Vec::new();

    for (idx, raw_line) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_line_comment(raw_line);
        let trimmed = line.trim();

        let mut handled_structure = false;

        if let Some(c) = p.require_whole.captures(line) {
            out.imports.push(RawImport {
                local_name: c[1].to_string(),
                module: c[2].to_string(),
                symbol: None,
                level: 0,
            });
            handled_structure = true;
        } else if let Some(c) = p.require_destructured.captures(line) {
            push_named_bindings(&mut out, &c[1], &c[2]);
            handled_structure = true;
        } else if let Some(c) = p.import_star.captures(line) {
            out.imports.push(RawImport {
                local_name: c[1].to_string(),
                module: c[2].to_string(),
                symbol: None,
                level: 0,
            });
            handled_structure = true;
        } else if let Some(c) = p.import_default.captures(line) {
            out.imports.push(RawImport {
                local_name: c[1].to_string(),
                module: c[2].to_string(),
                symbol: None,
                level: 0,
            });
            handled_structure = true;
        } else if let Some(c) = p.import_named.captures(line) {
            push_named_bindings(&mut out, &c[1], &c[2]);
            handled_structure = true;
        }

        // Router declarations: `const router = express.Router()`.
        if !handled_structure {
            if let Some(c) = p.router_decl.captures(line) {
                out.routers.insert(c[1].to_string(), None);
                handled_structure = true;
            }
        }

        if !handled_structure {
            if let Some(c) = p.route.captures(line) {
                let receiver = c[1].to_string();
                let method = HttpMethod::parse(&c[2]);
                let recognized = cfg.route_methods.iter().any(|m| m == &c[2]);
                if let (Some(method), true) = (method, recognized) {
                    let local_path = canonicalize_express_path(&c[3]);
                    let rest = &c[4];
                    let mut idents: Vec<String> = p
                        .ident
                        .find_iter(rest)
                        .map(|m| m.as_str().to_string())
                        .filter(|s| !KEYWORDS.contains(&s.as_str()) && s != "req" && s != "res")
                        .collect();
                    let inline = rest.contains("=>") || rest.contains("function");
                    let handler = if inline {
                        format!("<anonymous:{lineno}>")
                    } else {
                        idents.pop().unwrap_or_else(|| format!("<anonymous:{lineno}>"))
                    };
                    let markers: Vec<String> = idents
                        .into_iter()
                        .filter(|i| cfg.auth_decorators.contains(i))
                        .collect();
                    out.routes.push(RouteCandidate {
                        receiver,
                        methods: vec![method],
                        local_path,
                        handler: handler.clone(),
                        line: lineno,
                        markers,
                    });
                    if inline && rest.contains('{') {
                        let top_level = stack.is_empty();
                        stack.push(Context {
                            name: handler,
                            is_async: rest.contains("async"),
                            entry_depth: depth,
                            start_line: lineno,
                            top_level,
                        });
                    }
                    handled_structure = true;
                }
            }
        }

        if !handled_structure {
            if let Some(c) = p.mount.captures(line) {
                out.mounts.push(MountCandidate {
                    prefix: Some(c[2].to_string()),
                    target_ident: c[3].to_string(),
                    line: lineno,
                });
                handled_structure = true;
            }
        }

        if !handled_structure {
            if let Some(c) = p.func_decl.captures(line) {
                let top_level = stack.is_empty();
                stack.push(Context {
                    name: c[2].to_string(),
                    is_async: c.get(1).is_some(),
                    entry_depth: depth,
                    start_line: lineno,
                    top_level,
                });
                handled_structure = true;
            } else if let Some(c) = p.func_expr.captures(line) {
                if line.contains('{') {
                    let top_level = stack.is_empty();
                    stack.push(Context {
                        name: c[1].to_string(),
                        is_async: c.get(2).is_some(),
                        entry_depth: depth,
                        start_line: lineno,
                        top_level,
                    });
                }
                handled_structure = true;
            } else if let Some(c) = p.exports_fn.captures(line) {
                if line.contains('{') {
                    let top_level = stack.is_empty();
                    stack.push(Context {
                        name: c[1].to_string(),
                        is_async: c.get(2).is_some(),
                        entry_depth: depth,
                        start_line: lineno,
                        top_level,
                    });
                }
                handled_structure = true;
            } else if let Some(c) = p.class_decl.captures(line) {
                class_stack.push((c[1].to_string(), depth, lineno));
                handled_structure = true;
            }
        }

        if !handled_structure {
            extract_calls(&mut out, p, line, trimmed, lineno, &stack);
        }

        // Brace tracking closes function and class contexts.
        let opens = line.matches('{').count() as i32;
        let closes = line.matches('}').count() as i32;
        depth += opens - closes;
        while let Some(ctx) = stack.last() {
            if depth <= ctx.entry_depth && closes > 0 {
                let ctx = stack.pop().unwrap();
                if ctx.top_level && !ctx.name.starts_with('<') {
                    out.functions.push(FunctionSymbol {
                        name: ctx.name,
                        start_line: ctx.start_line,
                        end_line: lineno,
                    });
                }
            } else {
                break;
            }
        }
        while let Some((_, class_depth, _)) = class_stack.last() {
            if depth <= *class_depth && closes > 0 {
                let (name, _, start_line) = class_stack.pop().unwrap();
                out.classes.push(ClassSymbol {
                    name,
                    start_line,
                    end_line: lineno,
                });
            } else {
                break;
            }
        }
    }

    // Unclosed contexts (EOF): close at the last line.
    let last_line = source.lines().count();
    for ctx in stack {
        if ctx.top_level && !ctx.name.starts_with('<') {
            out.functions.push(FunctionSymbol {
                name: ctx.name,
                start_line: ctx.start_line,
                end_line: last_line,
            });
        }
    }
    out.functions.sort_by_key(|f| f.start_line);

    out
}

fn push_named_bindings(out: &mut FileAnalysis, bindings: &str, module: &str) {
    for binding in bindings.split(',') {
        let binding = binding.trim();
        if binding.is_empty() {
            continue;
        }
        // `orig: alias` (require) and `orig as alias` (import).
        let (orig, local) = if let Some((o, l)) = binding.split_once(':') {
            (o.trim(), l.trim())
        } else if let Some((o, l)) = binding.split_once(" as ") {
            (o.trim(), l.trim())
        } else {
            (binding, binding)
        };
        out.imports.push(RawImport {
            local_name: local.to_string(),
            module: module.to_string(),
            symbol: Some(orig.to_string()),
            level: 0,
        });
    }
}

/// `/orders/:id` -> `/orders/{id}`.
fn canonicalize_express_path(path: &str) -> String {
    path.split('/')
        .map(|seg| match seg.strip_prefix(':') {
            Some(param) => format!("{{{param}}}"),
            None => seg.to_string(),
        })
        .collect::<Vec<_>>()
        .join("/")
}

fn extract_calls(
    out: &mut FileAnalysis,
    p: &Patterns,
    line: &str,
    trimmed: &str,
    lineno: usize,
    stack: &[Context],
) {
    let caller = stack
        .last()
        .map(|c| c.name.clone())
        .unwrap_or_else(|| "<module>".to_string());
    let in_async = stack.last().map(|c| c.is_async).unwrap_or(false);
    let stmt_is_bare = p.bare_stmt.is_match(trimmed);

    let mut seen_spans: Vec<(usize, usize)> = Vec::new();
    for c in p.ns_call.captures_iter(line) {
        let whole = c.get(0).unwrap();
        seen_spans.push((whole.start(), whole.end()));
        let base = c[2].to_string();
        if KEYWORDS.contains(&base.as_str()) {
            continue;
        }
        let awaited = c.get(1).is_some() && in_async;
        let at_stmt_start = line[..whole.start()].trim().is_empty();
        out.calls.push(RawCall {
            caller_function: caller.clone(),
            base: Some(base),
            name: c[3].to_string(),
            line: lineno,
            return_value_used: !(stmt_is_bare && at_stmt_start),
            is_awaited: awaited,
        });
    }
    for c in p.bare_call.captures_iter(line) {
        let whole = c.get(0).unwrap();
        // Skip matches that are the method part of a namespace call.
        if seen_spans
            .iter()
            .any(|(s, e)| whole.start() >= *s && whole.start() < *e)
        {
            continue;
        }
        // Skip `x.f(` method positions the ns regex missed (chained bases).
        if line[..whole.start()].ends_with('.') {
            continue;
        }
        let name = c[2].to_string();
        if KEYWORDS.contains(&name.as_str()) {
            continue;
        }
        let awaited = c.get(1).is_some() && in_async;
        let at_stmt_start = line[..whole.start()].trim().is_empty();
        out.calls.push(RawCall {
            caller_function: caller.clone(),
            base: None,
            name,
            line: lineno,
            return_value_used: !(stmt_is_bare && at_stmt_start),
            is_awaited: awaited,
        });
    }
}

fn strip_line_comment(line: &str) -> &str {
    // Good enough for source without `//` inside string literals on the
    // same line as a call; URLs in strings are the common exception.
    match line.find("//") {
        Some(idx) if !line[..idx].contains("://") => &line[..idx],
        _ => line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AnalysisConfig;

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    #[test]
    fn routes_with_middleware_and_params() {
        let src = r#"
const express = require('express');
const router = express.Router();

router.get('/products/:id', getProduct);
router.post('/products', authenticate, createProduct);
"#;
        let fa = analyze("routes/products.js", src, &cfg());
        assert_eq!(fa.routes.len(), 2);
        assert_eq!(fa.routes[0].local_path, "/products/{id}");
        assert_eq!(fa.routes[0].handler, "getProduct");
        assert!(fa.routes[0].markers.is_empty());
        assert_eq!(fa.routes[1].handler, "createProduct");
        assert_eq!(fa.routes[1].markers, vec!["authenticate"]);
        assert!(fa.routers.contains_key("router"));
    }

    #[test]
    fn mounts_and_imports() {
        let src = r#"
const ordersRouter = require('./routes/orders');
app.use('/api', ordersRouter);
"#;
        let fa = analyze("app.js", src, &cfg());
        assert_eq!(fa.mounts.len(), 1);
        assert_eq!(fa.mounts[0].prefix.as_deref(), Some("/api"));
        assert_eq!(fa.mounts[0].target_ident, "ordersRouter");
        assert_eq!(fa.imports[0].module, "./routes/orders");
    }

    #[test]
    fn call_classification() {
        let src = r#"
const fulfillment = require('./services/fulfillment');
const { buildOrder } = require('./services/catalog');

async function createOrder(req, res) {
    const order = buildOrder(req.body);
    fulfillment.queueFulfillment(order);
    await fulfillment.confirm(order);
    res.json(order);
}
"#;
        let fa = analyze("routes/orders.js", src, &cfg());
        let build = fa.calls.iter().find(|c| c.name == "buildOrder").unwrap();
        assert!(build.return_value_used);
        assert!(!build.is_awaited);
        let queue = fa
            .calls
            .iter()
            .find(|c| c.name == "queueFulfillment")
            .unwrap();
        assert!(!queue.return_value_used);
        assert!(!queue.is_awaited);
        let confirm = fa.calls.iter().find(|c| c.name == "confirm").unwrap();
        assert!(!confirm.return_value_used);
        assert!(confirm.is_awaited);
        assert_eq!(queue.caller_function, "createOrder");
    }

    #[test]
    fn function_symbols_with_spans() {
        let src = "function a() {\n  return 1;\n}\nconst b = async (x) => {\n  return x;\n};\n";
        let fa = analyze("m.js", src, &cfg());
        let names: Vec<&str> = fa.functions.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, vec!["a", "b"]);
        assert_eq!(fa.functions[0].start_line, 1);
        assert_eq!(fa.functions[0].end_line, 3);
    }

    #[test]
    fn destructured_require_binds_symbols() {
        let fa = analyze(
            "m.js",
            "const { send, track: t } = require('./lib');\n",
            &cfg(),
        );
        assert_eq!(fa.imports.len(), 2);
        assert_eq!(fa.imports[1].local_name, "t");
        assert_eq!(fa.imports[1].symbol.as_deref(), Some("track"));
    }
}
