//! Reads the results document:
//!
//! ```json
//! {
//!   "metric": "time",
//!   "labels": ["Road", "Wood"],
//!   "instances": [[0], [0], [0, 1], [0, 1], [1], [1]],
//!   "data": {
//!     "Car A": { "wheels": [100, 30, 40, 50, 10, 20], "motor": [20, 3, 4, 5, 1, 2] },
//!     "Car B": { "wheels": [10, 7, 45, 55, 30, 50] }
//!   }
//! }
//! ```
//!
//! Validation keeps going after the first problem so one pass reports as
//! many errors as possible.

use indexmap::IndexMap;

use crate::json::Json;
use crate::model::{check_instance_labels, check_labels, Components, Dataset, ValidationReport};

const KNOWN_KEYS: [&str; 4] = ["metric", "labels", "instances", "data"];

/// Parses and validates a results document.
///
/// Solver and component order follow the document. Unknown top-level keys
/// produce warnings (see [`parse_dataset_with_report`]); everything else
/// that is wrong produces an error.
pub fn parse_dataset(raw: &[u8]) -> Result<Dataset<f64>, ValidationReport> {
    match parse_dataset_with_report(raw) {
        (Some(ds), _) => Ok(ds),
        (None, report) => Err(report),
    }
}

/// Like [`parse_dataset`] but also returns the warnings of a valid document.
pub fn parse_dataset_with_report(raw: &[u8]) -> (Option<Dataset<f64>>, ValidationReport) {
    match Json::from_slice(raw) {
        Ok(tree) => from_tree(&tree),
        Err(e) => {
            let mut report = ValidationReport::default();
            report.error("", format!("malformed JSON: {e}"));
            (None, report)
        }
    }
}

/// Validates an already-parsed JSON value.
///
/// `serde_json::Value` collapses repeated object keys, so duplicate solver
/// or component names cannot be detected on this path; prefer
/// [`parse_dataset`] when the raw text is available.
pub fn parse_dataset_value(value: &serde_json::Value) -> Result<Dataset<f64>, ValidationReport> {
    match from_tree(&Json::from(value)) {
        (Some(ds), _) => Ok(ds),
        (None, report) => Err(report),
    }
}

fn from_tree(tree: &Json) -> (Option<Dataset<f64>>, ValidationReport) {
    let mut report = ValidationReport::default();
    let Json::Object(members) = tree else {
        report.error("", format!("expected an object, found {}", tree.kind()));
        return (None, report);
    };

    for (i, (key, _)) in members.iter().enumerate() {
        if members[..i].iter().any(|(k, _)| k == key) {
            report.error(key.as_str(), "duplicate key");
        } else if !KNOWN_KEYS.contains(&key.as_str()) {
            report.warn(key.as_str(), "unknown key ignored");
        }
    }
    for key in KNOWN_KEYS {
        if tree.get(key).is_none() {
            report.error(key, "missing required key");
        }
    }

    let metric = match tree.get("metric") {
        Some(Json::String(s)) => Some(s.clone()),
        Some(other) => {
            report.error(
                "metric",
                format!("expected a string, found {}", other.kind()),
            );
            None
        }
        None => None,
    };
    let labels = tree.get("labels").and_then(|v| read_labels(v, &mut report));
    let instances = tree
        .get("instances")
        .and_then(|v| read_instances(v, &mut report));
    if let (Some(labels), Some(instances)) = (&labels, &instances) {
        check_instance_labels(instances, labels.len(), &mut report);
    }
    let data = tree
        .get("data")
        .and_then(|v| read_data(v, instances.as_ref().map(Vec::len), &mut report));

    match (metric, labels, instances, data) {
        (Some(metric), Some(labels), Some(instances), Some(data)) if report.is_valid() => (
            Some(Dataset::assemble(metric, labels, instances, data)),
            report,
        ),
        _ => (None, report),
    }
}

fn read_labels(value: &Json, report: &mut ValidationReport) -> Option<Vec<String>> {
    let Json::Array(items) = value else {
        report.error(
            "labels",
            format!("expected an array, found {}", value.kind()),
        );
        return None;
    };
    let mut labels = Vec::with_capacity(items.len());
    let mut ok = true;
    for (i, item) in items.iter().enumerate() {
        match item {
            Json::String(s) => labels.push(s.clone()),
            other => {
                report.error(
                    format!("labels[{i}]"),
                    format!("expected a string, found {}", other.kind()),
                );
                ok = false;
            }
        }
    }
    check_labels(&labels, report);
    ok.then_some(labels)
}

fn read_instances(value: &Json, report: &mut ValidationReport) -> Option<Vec<Vec<usize>>> {
    let Json::Array(items) = value else {
        report.error(
            "instances",
            format!("expected an array, found {}", value.kind()),
        );
        return None;
    };
    let mut ok = true;
    let mut instances = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let Json::Array(indices) = item else {
            report.error(
                format!("instances[{i}]"),
                format!("expected an array of label indices, found {}", item.kind()),
            );
            ok = false;
            continue;
        };
        let mut list = Vec::with_capacity(indices.len());
        for (j, idx) in indices.iter().enumerate() {
            match as_index(idx) {
                Some(v) => list.push(v),
                None => {
                    report.error(
                        format!("instances[{i}][{j}]"),
                        "label index must be a non-negative integer",
                    );
                    ok = false;
                }
            }
        }
        instances.push(list);
    }
    if items.is_empty() {
        report.error("instances", "at least one instance is required");
        ok = false;
    }
    ok.then_some(instances)
}

fn read_data(
    value: &Json,
    instance_count: Option<usize>,
    report: &mut ValidationReport,
) -> Option<IndexMap<String, Components<f64>>> {
    let Json::Object(solvers) = value else {
        report.error(
            "data",
            format!("expected an object, found {}", value.kind()),
        );
        return None;
    };
    if solvers.is_empty() {
        report.error("data", "at least one solver is required");
        return None;
    }
    let mut ok = true;
    let mut data = IndexMap::with_capacity(solvers.len());
    for (name, comps) in solvers {
        let path = format!("data/{name}");
        if data.contains_key(name) {
            report.error(&path, "duplicate solver name");
            ok = false;
            continue;
        }
        let Json::Object(comps) = comps else {
            report.error(
                &path,
                format!("expected an object of components, found {}", comps.kind()),
            );
            ok = false;
            continue;
        };
        if comps.is_empty() {
            report.error(&path, "a solver needs at least one component");
            ok = false;
        }
        let mut components = Components::with_capacity(comps.len());
        for (comp, values) in comps {
            let cpath = format!("{path}/{comp}");
            if components.contains_key(comp) {
                report.error(&cpath, "duplicate component name");
                ok = false;
                continue;
            }
            match read_values(values, &cpath, instance_count, report) {
                Some(v) => {
                    components.insert(comp.clone(), v);
                }
                None => ok = false,
            }
        }
        data.insert(name.clone(), components);
    }
    ok.then_some(data)
}

fn read_values(
    value: &Json,
    path: &str,
    instance_count: Option<usize>,
    report: &mut ValidationReport,
) -> Option<Vec<f64>> {
    let Json::Array(items) = value else {
        report.error(
            path,
            format!("expected an array of numbers, found {}", value.kind()),
        );
        return None;
    };
    let mut ok = true;
    if let Some(n) = instance_count {
        if items.len() != n {
            report.error(
                path,
                format!(
                    "length mismatch: expected {n} values (one per instance), found {}",
                    items.len()
                ),
            );
            ok = false;
        }
    }
    let mut values = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        match item {
            Json::Number(n) => match n.as_f64() {
                Some(v) if v.is_finite() && v >= 0.0 => values.push(v),
                _ => {
                    report.error(format!("{path}[{i}]"), "metric values must be non-negative");
                    ok = false;
                }
            },
            other => {
                report.error(
                    format!("{path}[{i}]"),
                    format!("expected a number, found {}", other.kind()),
                );
                ok = false;
            }
        }
    }
    ok.then_some(values)
}

/// JSON Schema's `integer` admits `1.0`, so the parser does too.
fn as_index(value: &Json) -> Option<usize> {
    let Json::Number(n) = value else { return None };
    if let Some(u) = n.as_u64() {
        return usize::try_from(u).ok();
    }
    match n.as_f64() {
        Some(f) if f >= 0.0 && f.fract() == 0.0 && f <= u32::MAX as f64 => Some(f as usize),
        _ => None,
    }
}
