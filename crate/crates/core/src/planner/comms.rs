//! Communication-pattern selection for cross-domain relations.
//!
//! A relation is one producer action (file + function) together with all of
//! its cross-domain callees. Three rules, in precedence order:
//!
//! 1. any edge needs the callee's return value -> synchronous invoke
//! 2. fire-and-forget fanning out to >= 2 consumers in >= 2 domains -> EventBridge
//! 3. fire-and-forget otherwise -> SQS queue

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::facts::CallEdge;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommKind {
    SyncInvoke,
    Sqs,
    EventBridge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Consumer {
    pub callee_file: String,
    pub callee_function: String,
    pub domain: String,
}

#[derive(Debug, Clone)]
pub struct Relation {
    pub producer_file: String,
    pub producer_function: String,
    pub consumers: Vec<Consumer>,
    pub any_value_used: bool,
}

/// Domain of a file: its top-level directory, subject to configured
/// overrides. Root-level files have no domain (shared plumbing).
pub fn domain_of(file: &str, overrides: &BTreeMap<String, String>) -> Option<String> {
    let top = match file.split_once('/') {
        Some((dir, _)) => dir,
        None => return None,
    };
    match overrides.get(top) {
        Some(mapped) if mapped.is_empty() => None,
        Some(mapped) => Some(mapped.clone()),
        None => Some(top.to_string()),
    }
}

/// Whether an edge participates in communication planning rather than
/// bundling. Depth is in file hops from the route handler (direct handler
/// calls are depth 1).
///
/// A handler's direct value-returning call is bundled even across domains:
/// the service it names is the endpoint's own implementation. Deeper
/// value-returning calls and any fire-and-forget call cross domains as
/// communication.
pub fn is_comm_candidate(
    edge: &CallEdge,
    depth: usize,
    overrides: &BTreeMap<String, String>,
) -> bool {
    let caller = domain_of(&edge.caller_file, overrides);
    let callee = domain_of(&edge.callee_file, overrides);
    let (Some(caller), Some(callee)) = (caller, callee) else {
        return false;
    };
    if caller == callee {
        return false;
    }
    let fire_and_forget = !edge.return_value_used && !edge.is_awaited;
    if fire_and_forget {
        return true;
    }
    edge.return_value_used && depth >= 2
}

/// Map one relation to its communication mechanism.
pub fn select_communication(relation: &Relation) -> Result<CommKind> {
    if relation.consumers.is_empty() {
        return Err(Error::Blueprint(format!(
            "relation {}::{} has no consumers",
            relation.producer_file, relation.producer_function
        )));
    }
    if relation.any_value_used {
        return Ok(CommKind::SyncInvoke);
    }
    let domains: BTreeSet<&str> = relation
        .consumers
        .iter()
        .map(|c| c.domain.as_str())
        .collect();
    if relation.consumers.len() >= 2 && domains.len() >= 2 {
        Ok(CommKind::EventBridge)
    } else {
        Ok(CommKind::Sqs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consumer(n: usize, domain: &str) -> Consumer {
        Consumer {
            callee_file: format!("{domain}/svc{n}.py"),
            callee_function: format!("f{n}"),
            domain: domain.into(),
        }
    }

    fn relation(consumers: Vec<Consumer>, any_value_used: bool) -> Relation {
        Relation {
            producer_file: "orders/logic.py".into(),
            producer_function: "create".into(),
            consumers,
            any_value_used,
        }
    }

    #[test]
    fn value_used_wins_over_everything() {
        let r = relation(vec![consumer(1, "a"), consumer(2, "b")], true);
        assert_eq!(select_communication(&r).unwrap(), CommKind::SyncInvoke);
    }

    #[test]
    fn single_consumer_fire_and_forget_is_sqs() {
        let r = relation(vec![consumer(1, "a")], false);
        assert_eq!(select_communication(&r).unwrap(), CommKind::Sqs);
    }

    #[test]
    fn fanout_across_domains_is_eventbridge() {
        let r = relation(vec![consumer(1, "a"), consumer(2, "b")], false);
        assert_eq!(select_communication(&r).unwrap(), CommKind::EventBridge);
    }

    #[test]
    fn fanout_within_one_domain_stays_sqs() {
        let r = relation(vec![consumer(1, "a"), consumer(2, "a")], false);
        assert_eq!(select_communication(&r).unwrap(), CommKind::Sqs);
    }

    #[test]
    fn empty_relation_is_a_caller_bug() {
        assert!(select_communication(&relation(vec![], false)).is_err());
    }

    #[test]
    fn domains_respect_overrides() {
        let mut overrides = BTreeMap::new();
        overrides.insert("routes".to_string(), String::new());
        overrides.insert("svc".to_string(), "billing".to_string());
        assert_eq!(domain_of("db.py", &overrides), None);
        assert_eq!(domain_of("routes/orders.js", &overrides), None);
        assert_eq!(domain_of("svc/pay.py", &overrides), Some("billing".into()));
        assert_eq!(
            domain_of("orders/logic.py", &overrides),
            Some("orders".into())
        );
    }

    #[test]
    fn handler_level_value_calls_bundle() {
        let edge = CallEdge {
            caller_file: "routes/products.js".into(),
            caller_function: "listProducts".into(),
            callee_file: "services/catalog.js".into(),
            callee_function: "searchProducts".into(),
            line: 10,
            return_value_used: true,
            is_awaited: true,
        };
        let overrides = BTreeMap::new();
        assert!(!is_comm_candidate(&edge, 1, &overrides));
        assert!(is_comm_candidate(&edge, 2, &overrides));
    }
}
