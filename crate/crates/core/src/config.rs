//! One what-if scenario: which solvers form the baseline set, which labels
//! stay in the benchmark, per-component scale factors, thresholds, and the
//! plotted τ window.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::model::{Dataset, ValidationReport};
use crate::scalar::Scalar;

/// Scale factor per (solver, component); absent entries mean `1`.
pub type ScaleFactors<T> = IndexMap<String, IndexMap<String, T>>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum XScale {
    #[default]
    Linear,
    #[serde(alias = "log")]
    Logarithmic,
}

impl FromStr for XScale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" | "lin" => Ok(XScale::Linear),
            "logarithmic" | "log" => Ok(XScale::Logarithmic),
            other => Err(format!(
                "unknown x scale {other:?} (expected linear or logarithmic)"
            )),
        }
    }
}

impl fmt::Display for XScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            XScale::Linear => "linear",
            XScale::Logarithmic => "logarithmic",
        })
    }
}

/// A configuration that does not fit the dataset it is applied to.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid analysis configuration:\n{0}")]
pub struct ConfigError(pub ValidationReport);

/// Analysis settings, by name. Validate against a dataset with
/// [`AnalysisConfig::validate`]; the engine does so on entry.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig<T = f64> {
    /// Solvers whose per-instance minimum is the ratio denominator.
    pub baselines: Vec<String>,
    /// Labels kept in the benchmark. Instances carrying any other label are dropped.
    pub active_labels: Vec<String>,
    pub scale_factors: ScaleFactors<T>,
    /// Instances where some baseline total is strictly below this are dropped. `0` disables.
    pub min_baseline_threshold: T,
    /// Totals strictly above this count as unsolved. `+∞` disables.
    pub unsolved_threshold: T,
    pub tau_min: T,
    pub tau_max: T,
    pub x_scale: XScale,
}

impl<T: Scalar> AnalysisConfig<T> {
    /// Defaults: every solver is a baseline, every label active, no scaling,
    /// thresholds off, τ ∈ [0, 2], linear axis.
    pub fn new<U>(dataset: &Dataset<U>) -> Self {
        Self {
            baselines: dataset.solver_names().map(str::to_owned).collect(),
            active_labels: dataset.labels().to_vec(),
            scale_factors: ScaleFactors::new(),
            min_baseline_threshold: T::zero(),
            unsolved_threshold: T::infinity(),
            tau_min: T::zero(),
            tau_max: T::from_f64_lossy(2.0),
            x_scale: XScale::Linear,
        }
    }

    pub fn with_baselines<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.baselines = names.into_iter().map(Into::into).collect();
        self
    }

    pub fn without_label(mut self, label: &str) -> Self {
        self.active_labels.retain(|l| l != label);
        self
    }

    pub fn with_active_labels<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.active_labels = labels.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_scale(mut self, solver: &str, component: &str, factor: T) -> Self {
        self.scale_factors
            .entry(solver.to_owned())
            .or_default()
            .insert(component.to_owned(), factor);
        self
    }

    pub fn with_min_baseline_threshold(mut self, threshold: T) -> Self {
        self.min_baseline_threshold = threshold;
        self
    }

    pub fn with_unsolved_threshold(mut self, threshold: T) -> Self {
        self.unsolved_threshold = threshold;
        self
    }

    pub fn with_tau_window(mut self, tau_min: T, tau_max: T) -> Self {
        self.tau_min = tau_min;
        self.tau_max = tau_max;
        self
    }

    pub fn with_x_scale(mut self, x_scale: XScale) -> Self {
        self.x_scale = x_scale;
        self
    }

    /// Factor for one component, `1` when unset.
    pub fn factor(&self, solver: &str, component: &str) -> T {
        self.scale_factors
            .get(solver)
            .and_then(|c| c.get(component))
            .copied()
            .unwrap_or_else(T::one)
    }

    /// Checks every field against `dataset`. Paths are relative to the
    /// configuration object (`baselines[0]`, `scale_factors/Car A/motor`).
    pub fn validate<U>(&self, dataset: &Dataset<U>) -> Result<(), ConfigError> {
        let mut report = ValidationReport::default();
        if self.baselines.is_empty() {
            report.error("baselines", "at least one baseline solver is required");
        }
        for (i, name) in self.baselines.iter().enumerate() {
            let path = format!("baselines[{i}]");
            if dataset.solver_index(name).is_none() {
                report.error(path, format!("unknown solver {name:?}"));
            } else if self.baselines[..i].contains(name) {
                report.error(path, format!("solver {name:?} listed twice"));
            }
        }
        for (i, label) in self.active_labels.iter().enumerate() {
            if dataset.label_index(label).is_none() {
                report.error(
                    format!("active_labels[{i}]"),
                    format!("unknown label {label:?}"),
                );
            }
        }
        for (solver, comps) in &self.scale_factors {
            let Some(known) = dataset.components(solver) else {
                report.error(
                    format!("scale_factors/{solver}"),
                    format!("unknown solver {solver:?}"),
                );
                continue;
            };
            for (component, factor) in comps {
                let path = format!("scale_factors/{solver}/{component}");
                if !known.contains_key(component) {
                    report.error(
                        path,
                        format!("solver {solver:?} has no component {component:?}"),
                    );
                } else if !factor.is_finite() || *factor < T::zero() {
                    report.error(path, "scale factor must be finite and non-negative");
                }
            }
        }
        let t = self.min_baseline_threshold;
        if !t.is_finite() || t < T::zero() {
            report.error(
                "min_baseline_threshold",
                "threshold must be finite and non-negative",
            );
        }
        let u = self.unsolved_threshold;
        if u.is_nan() || u <= T::zero() {
            report.error(
                "unsolved_threshold",
                "threshold must be positive (or infinite to disable)",
            );
        }
        if !self.tau_min.is_finite() || self.tau_min < T::zero() {
            report.error("tau_min", "tau_min must be finite and non-negative");
        } else if !self.tau_max.is_finite() || self.tau_max <= self.tau_min {
            report.error("tau_max", "tau_max must be finite and greater than tau_min");
        }
        if self.x_scale == XScale::Logarithmic && self.tau_min <= T::zero() {
            report.error("tau_min", "a logarithmic axis needs tau_min > 0");
        }
        if report.is_valid() {
            Ok(())
        } else {
            Err(ConfigError(report))
        }
    }
}

/// Wire form of [`AnalysisConfig`]: every field optional, names as strings.
///
/// Labels are given either as the set to keep (`active_labels`) or the set
/// to remove (`drop_labels`), not both.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baselines: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub active_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub drop_labels: Vec<String>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    pub scale_factors: ScaleFactors<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_baseline_threshold: Option<f64>,
    /// `None` (or JSON `null`) disables the threshold.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unsolved_threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_scale: Option<XScale>,
}

impl ConfigRequest {
    /// Fills in defaults from `dataset` and validates the result.
    pub fn resolve<T: Scalar, U>(
        &self,
        dataset: &Dataset<U>,
    ) -> Result<AnalysisConfig<T>, ConfigError> {
        let mut config = AnalysisConfig::<T>::new(dataset);
        let mut report = ValidationReport::default();
        if let Some(baselines) = &self.baselines {
            config.baselines = baselines.clone();
        }
        if let Some(active) = &self.active_labels {
            config.active_labels = active.clone();
            if !self.drop_labels.is_empty() {
                report.error(
                    "drop_labels",
                    "give either active_labels or drop_labels, not both",
                );
            }
        }
        for (i, label) in self.drop_labels.iter().enumerate() {
            if dataset.label_index(label).is_none() {
                report.error(
                    format!("drop_labels[{i}]"),
                    format!("unknown label {label:?}"),
                );
            }
            config.active_labels.retain(|l| l != label);
        }
        for (solver, comps) in &self.scale_factors {
            for (component, factor) in comps {
                config = config.with_scale(solver, component, T::from_f64_lossy(*factor));
            }
        }
        if let Some(t) = self.min_baseline_threshold {
            config.min_baseline_threshold = T::from_f64_lossy(t);
        }
        if let Some(t) = self.unsolved_threshold {
            config.unsolved_threshold = T::from_f64_lossy(t);
        }
        if let Some(t) = self.tau_min {
            config.tau_min = T::from_f64_lossy(t);
        }
        if let Some(t) = self.tau_max {
            config.tau_max = T::from_f64_lossy(t);
        }
        if let Some(s) = self.x_scale {
            config.x_scale = s;
        }
        if let Err(ConfigError(more)) = config.validate(dataset) {
            report.merge(more);
        }
        if report.is_valid() {
            Ok(config)
        } else {
            Err(ConfigError(report))
        }
    }
}

/// Parses one `SOLVER/COMPONENT=FACTOR` scale spec.
///
/// The solver name may itself contain `/`; the last `/` before `=` splits
/// solver from component.
pub fn parse_scale_spec(spec: &str) -> Result<(String, String, f64), String> {
    let (target, factor) = spec
        .rsplit_once('=')
        .ok_or_else(|| format!("expected SOLVER/COMPONENT=FACTOR, got {spec:?}"))?;
    let (solver, component) = target
        .rsplit_once('/')
        .ok_or_else(|| format!("expected SOLVER/COMPONENT=FACTOR, got {spec:?}"))?;
    if solver.is_empty() || component.is_empty() {
        return Err(format!("empty solver or component name in {spec:?}"));
    }
    let factor: f64 = factor
        .trim()
        .parse()
        .map_err(|_| format!("invalid scale factor {factor:?} in {spec:?}"))?;
    Ok((solver.to_owned(), component.to_owned(), factor))
}
