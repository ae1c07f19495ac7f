//! Deterministic naming rules shared by the planner, the synthesizer and
//! the consistency validator.
//!
//! All cross-artifact identity in the pipeline (Lambda names, CloudFormation
//! logical ids, environment variable names) is derived here so that every
//! stage computes exactly the same strings.

/// Lower-case slug from an arbitrary string: runs of non-alphanumerics
/// collapse to single dashes.
pub fn slug(input: &str) -> String {
    let mut out = String::with_capacity(input.len());
    let mut pending_dash = false;
    for ch in input.chars() {
        if ch.is_ascii_alphanumeric() {
            if pending_dash && !out.is_empty() {
                out.push('-');
            }
            pending_dash = false;
            out.push(ch.to_ascii_lowercase());
        } else {
            pending_dash = true;
        }
    }
    out
}

/// Lambda name for an HTTP endpoint: `<method>-<path-slug>` with `{param}`
/// segments rendered as `by-<param>`.
///
/// `GET /orders/{order_id}` -> `get-orders-by-order-id`.
pub fn lambda_name(method: &str, path: &str) -> String {
    let mut parts: Vec<String> = vec![method.to_ascii_lowercase()];
    for segment in path.split('/').filter(|s| !s.is_empty()) {
        if let Some(param) = segment.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
            parts.push(format!("by-{}", slug(param)));
        } else {
            parts.push(slug(segment));
        }
    }
    parts.retain(|p| !p.is_empty());
    parts.join("-")
}

/// PascalCase rendering of a slug, used for CloudFormation logical ids.
pub fn pascal(input: &str) -> String {
    input
        .split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|s| !s.is_empty())
        .map(|word| {
            let mut chars = word.chars();
            match chars.next() {
                Some(first) => first.to_ascii_uppercase().to_string() + chars.as_str(),
                None => String::new(),
            }
        })
        .collect()
}

/// UPPER_SNAKE rendering of a slug, used for environment variable names.
pub fn upper_snake(input: &str) -> String {
    slug(input).replace('-', "_").to_ascii_uppercase()
}

pub fn function_logical_id(lambda: &str) -> String {
    format!("{}Function", pascal(lambda))
}

pub fn table_logical_id(table: &str) -> String {
    format!("{}Table", pascal(table))
}

pub fn queue_logical_id(queue: &str) -> String {
    // Queue names already carry a "-queue" suffix.
    pascal(queue)
}

pub fn rule_logical_id(rule: &str) -> String {
    pascal(rule)
}

pub fn table_env_var(table: &str) -> String {
    format!("{}_TABLE", upper_snake(table))
}

pub fn queue_env_var(queue: &str) -> String {
    let base = queue.strip_suffix("-queue").unwrap_or(queue);
    format!("{}_QUEUE_URL", upper_snake(base))
}

pub fn function_env_var(lambda: &str) -> String {
    format!("{}_FUNCTION_NAME", upper_snake(lambda))
}

pub const EVENT_BUS_ENV_VAR: &str = "EVENT_BUS_NAME";
pub const SHARED_LAYER_LOGICAL_ID: &str = "SharedLayer";
pub const API_LOGICAL_ID: &str = "Api";
pub const USER_POOL_LOGICAL_ID: &str = "UserPool";
pub const USER_POOL_CLIENT_LOGICAL_ID: &str = "UserPoolClient";
pub const COGNITO_AUTHORIZER: &str = "CognitoAuthorizer";

pub fn queue_name_for_consumer(consumer_fn: &str) -> String {
    format!("{}-queue", slug(consumer_fn))
}

pub fn rule_name_for_action(producer_fn: &str) -> String {
    format!("{}-rule", slug(producer_fn))
}

pub fn consumer_lambda_name(consumer_fn: &str) -> String {
    slug(consumer_fn)
}

pub fn permission_logical_id(rule: &str, target_fn_logical_id: &str) -> String {
    format!("{}{}Permission", rule_logical_id(rule), target_fn_logical_id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs_collapse_punctuation() {
        assert_eq!(slug("send_confirmation"), "send-confirmation");
        assert_eq!(slug("/api//products/"), "api-products");
        assert_eq!(slug("Already-Fine"), "already-fine");
    }

    #[test]
    fn lambda_names_render_params() {
        assert_eq!(lambda_name("GET", "/todos"), "get-todos");
        assert_eq!(
            lambda_name("DELETE", "/todos/{todo_id}"),
            "delete-todos-by-todo-id"
        );
        assert_eq!(
            lambda_name("GET", "/api/products/{id}"),
            "get-api-products-by-id"
        );
    }

    #[test]
    fn logical_ids_and_env_vars() {
        assert_eq!(function_logical_id("get-todos"), "GetTodosFunction");
        assert_eq!(table_logical_id("orders"), "OrdersTable");
        assert_eq!(queue_logical_id("log-restock-queue"), "LogRestockQueue");
        assert_eq!(table_env_var("orders"), "ORDERS_TABLE");
        assert_eq!(queue_env_var("log-restock-queue"), "LOG_RESTOCK_QUEUE_URL");
        assert_eq!(
            function_env_var("get-inventory-by-sku"),
            "GET_INVENTORY_BY_SKU_FUNCTION_NAME"
        );
    }
}
