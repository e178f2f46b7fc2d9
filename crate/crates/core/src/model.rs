//! Benchmark results: solvers, their additive metric components, and the
//! labels attached to each instance.

use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use crate::scalar::Scalar;

/// One problem with a document, located by a slash-separated JSON path
/// such as `data/Car A/wheels[3]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl Issue {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "(document): {}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

/// Outcome of validating a results document or an analysis configuration.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.errors.push(Issue::new(path, message));
    }

    pub fn warn(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.warnings.push(Issue::new(path, message));
    }

    /// Prefix every path, e.g. `dataset/` when the document is nested in a request.
    pub fn nest(mut self, prefix: &str) -> Self {
        for issue in self.errors.iter_mut().chain(self.warnings.iter_mut()) {
            issue.path = if issue.path.is_empty() {
                prefix.trim_end_matches('/').to_owned()
            } else {
                format!("{prefix}{}", issue.path)
            };
        }
        self
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.errors.extend(other.errors);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error: {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Per-solver components, in document order.
pub type Components<T> = IndexMap<String, Vec<T>>;

/// Validated benchmark results. Immutable once built.
///
/// Every solver has at least one component, every component vector has one
/// value per instance, and all values are finite and non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T = f64> {
    metric_name: String,
    labels: Vec<String>,
    instance_labels: Vec<Vec<usize>>,
    solvers: IndexMap<String, Components<T>>,
}

impl<T: Scalar> Dataset<T> {
    /// Builds a dataset from already-typed parts, checking every invariant.
    pub fn from_parts(
        metric_name: impl Into<String>,
        labels: Vec<String>,
        instance_labels: Vec<Vec<usize>>,
        solvers: IndexMap<String, Components<T>>,
    ) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        check_labels(&labels, &mut report);
        if instance_labels.is_empty() {
            report.error("instances", "at least one instance is required");
        }
        check_instance_labels(&instance_labels, labels.len(), &mut report);
        let n = instance_labels.len();
        if solvers.is_empty() {
            report.error("data", "at least one solver is required");
        }
        for (solver, components) in &solvers {
            if components.is_empty() {
                report.error(
                    format!("data/{solver}"),
                    "a solver needs at least one component",
                );
            }
            for (component, values) in components {
                let path = format!("data/{solver}/{component}");
                if values.len() != n {
                    report.error(
                        &path,
                        format!(
                            "expected {n} values (one per instance), found {}",
                            values.len()
                        ),
                    );
                }
                for (i, v) in values.iter().enumerate() {
                    if !v.is_finite() || *v < T::zero() {
                        report.error(
                            format!("{path}[{i}]"),
                            "metric values must be finite and non-negative",
                        );
                    }
                }
            }
        }
        if !report.is_valid() {
            return Err(report);
        }
        Ok(Self::assemble(
            metric_name.into(),
            labels,
            instance_labels,
            solvers,
        ))
    }

    /// Caller has already checked every invariant.
    pub(crate) fn assemble(
        metric_name: String,
        labels: Vec<String>,
        instance_labels: Vec<Vec<usize>>,
        solvers: IndexMap<String, Components<T>>,
    ) -> Self {
        Self {
            metric_name,
            labels,
            instance_labels,
            solvers,
        }
    }

    /// The same results in another scalar type.
    pub fn cast<U: Scalar>(&self) -> Dataset<U> {
        Dataset {
            metric_name: self.metric_name.clone(),
            labels: self.labels.clone(),
            instance_labels: self.instance_labels.clone(),
            solvers: self
                .solvers
                .iter()
                .map(|(name, comps)| {
                    let comps = comps
                        .iter()
                        .map(|(c, values)| {
                            let values = values
                                .iter()
                                .map(|v| U::from_f64_lossy(v.to_f64_lossy()))
                                .collect();
                            (c.clone(), values)
                        })
                        .collect();
                    (name.clone(), comps)
                })
                .collect(),
        }
    }

    /// Serializes back to the input document format.
    pub fn to_document(&self) -> serde_json::Value {
        use serde_json::{json, Map, Value};
        let data: Map<String, Value> = self
            .solvers
            .iter()
            .map(|(name, comps)| {
                let comps: Map<String, Value> = comps
                    .iter()
                    .map(|(c, values)| {
                        let values = values
                            .iter()
                            .map(|v| json!(v.to_f64_lossy()))
                            .collect::<Vec<_>>();
                        (c.clone(), Value::Array(values))
                    })
                    .collect();
                (name.clone(), Value::Object(comps))
            })
            .collect();
        json!({
            "metric": self.metric_name,
            "labels": self.labels,
            "instances": self.instance_labels,
            "data": data,
        })
    }
}

impl<T> Dataset<T> {
    pub fn metric_name(&self) -> &str {
        &self.metric_name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Label indices attached to each instance.
    pub fn instance_labels(&self) -> &[Vec<usize>] {
        &self.instance_labels
    }

    pub fn instance_count(&self) -> usize {
        self.instance_labels.len()
    }

    pub fn solver_count(&self) -> usize {
        self.solvers.len()
    }

    pub fn solver_names(&self) -> impl Iterator<Item = &str> + '_ {
        self.solvers.keys().map(String::as_str)
    }

    pub fn solver_index(&self, name: &str) -> Option<usize> {
        self.solvers.get_index_of(name)
    }

    pub fn solver_name(&self, index: usize) -> Option<&str> {
        self.solvers.get_index(index).map(|(k, _)| k.as_str())
    }

    pub fn components(&self, solver: &str) -> Option<&Components<T>> {
        self.solvers.get(solver)
    }

    pub fn components_at(&self, solver: usize) -> Option<&Components<T>> {
        self.solvers.get_index(solver).map(|(_, c)| c)
    }

    pub fn solvers(&self) -> &IndexMap<String, Components<T>> {
        &self.solvers
    }
}

pub(crate) fn check_labels(labels: &[String], report: &mut ValidationReport) {
    for (i, label) in labels.iter().enumerate() {
        if labels[..i].contains(label) {
            report.error(format!("labels[{i}]"), format!("duplicate label {label:?}"));
        }
    }
}

pub(crate) fn check_instance_labels(
    instance_labels: &[Vec<usize>],
    label_count: usize,
    report: &mut ValidationReport,
) {
    for (i, list) in instance_labels.iter().enumerate() {
        for (j, &idx) in list.iter().enumerate() {
            let path = format!("instances[{i}][{j}]");
            if idx >= label_count {
                report.error(
                    &path,
                    format!("label index {idx} out of range for {label_count} labels"),
                );
            } else if list[..j].contains(&idx) {
                report.error(&path, format!("label index {idx} repeated"));
            }
        }
    }
}
