//! The profile pipeline, in this order:
//!
//! 1. drop instances carrying a removed label;
//! 2. total each solver's scaled components per instance;
//! 3. drop instances where some baseline total is strictly below the
//!    min-baseline threshold;
//! 4. mark totals strictly above the unsolved threshold as `+∞`;
//! 5. divide by the per-instance baseline minimum and accumulate.
//!
//! Thresholds see scaled totals, so a sped-up solver can fall under a
//! timeout. Instances where every baseline is unsolved have no defined ratio
//! and leave the denominator; they are counted in
//! [`ProfileSet::excluded_no_baseline`].

use indexmap::IndexMap;

use crate::config::{AnalysisConfig, ConfigError, ScaleFactors};
use crate::curve::StepCurve;
use crate::model::{Dataset, ValidationReport};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("unknown solver {0:?}")]
    UnknownSolver(String),
    #[error("instance {index} out of range ({count} instances)")]
    InstanceOutOfRange { index: usize, count: usize },
}

/// Sum over components of `factor × value` for one solver and instance.
pub fn total_metric<T: Scalar>(
    dataset: &Dataset<T>,
    scale_factors: &ScaleFactors<T>,
    solver: &str,
    instance: usize,
) -> Result<T, EngineError> {
    let components = dataset
        .components(solver)
        .ok_or_else(|| EngineError::UnknownSolver(solver.to_owned()))?;
    let count = dataset.instance_count();
    if instance >= count {
        return Err(EngineError::InstanceOutOfRange {
            index: instance,
            count,
        });
    }
    let factors = scale_factors.get(solver);
    Ok(components.iter().fold(T::zero(), |acc, (name, values)| {
        let f = factors
            .and_then(|f| f.get(name))
            .copied()
            .unwrap_or_else(T::one);
        acc + f * values[instance]
    }))
}

/// Instances none of whose labels was removed, in original order.
/// Unlabelled instances always survive.
pub fn filter_by_labels<T, S: AsRef<str>>(dataset: &Dataset<T>, active_labels: &[S]) -> Vec<usize> {
    let active: Vec<bool> = dataset
        .labels()
        .iter()
        .map(|l| active_labels.iter().any(|a| a.as_ref() == l))
        .collect();
    dataset
        .instance_labels()
        .iter()
        .enumerate()
        .filter(|(_, labels)| labels.iter().all(|&l| active[l]))
        .map(|(i, _)| i)
        .collect()
}

/// Effective metric per (solver, kept instance), `+∞` for unsolved.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveMatrix<T = f64> {
    metric_name: String,
    solvers: Vec<String>,
    kept_instances: Vec<usize>,
    values: Vec<Vec<T>>,
}

impl<T: Scalar> EffectiveMatrix<T> {
    /// Builds a matrix directly; each row must have one value per kept instance.
    pub fn from_rows(
        metric_name: impl Into<String>,
        solvers: Vec<String>,
        kept_instances: Vec<usize>,
        values: Vec<Vec<T>>,
    ) -> Self {
        assert_eq!(solvers.len(), values.len(), "one row per solver");
        assert!(
            values.iter().all(|row| row.len() == kept_instances.len()),
            "one column per kept instance"
        );
        Self {
            metric_name: metric_name.into(),
            solvers,
            kept_instances,
            values,
        }
    }

    pub fn metric_name(&self) -> &str {
        &self.metric_name
    }

    pub fn solvers(&self) -> &[String] {
        &self.solvers
    }

    /// Original indices of the instances that survived filtering.
    pub fn kept_instances(&self) -> &[usize] {
        &self.kept_instances
    }

    pub fn row(&self, solver: &str) -> Option<&[T]> {
        let s = self.solvers.iter().position(|n| n == solver)?;
        Some(&self.values[s])
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.values
    }
}

/// Runs pipeline steps 1–4.
pub fn build_effective_matrix<T: Scalar>(
    dataset: &Dataset<T>,
    config: &AnalysisConfig<T>,
) -> Result<EffectiveMatrix<T>, ConfigError> {
    config.validate(dataset)?;
    let surviving = filter_by_labels(dataset, &config.active_labels);

    let factors: Vec<Vec<T>> = dataset
        .solvers()
        .iter()
        .map(|(solver, comps)| comps.keys().map(|c| config.factor(solver, c)).collect())
        .collect();
    let totals: Vec<Vec<T>> = dataset
        .solvers()
        .values()
        .zip(&factors)
        .map(|(comps, factors)| {
            surviving
                .iter()
                .map(|&i| {
                    comps
                        .values()
                        .zip(factors)
                        .fold(T::zero(), |acc, (values, &f)| acc + f * values[i])
                })
                .collect()
        })
        .collect();

    let baselines: Vec<usize> = config
        .baselines
        .iter()
        .filter_map(|b| dataset.solver_index(b))
        .collect();
    let floor = config.min_baseline_threshold;
    let keep: Vec<bool> = (0..surviving.len())
        .map(|col| baselines.iter().all(|&b| totals[b][col] >= floor))
        .collect();

    let limit = config.unsolved_threshold;
    let values = totals
        .into_iter()
        .map(|row| {
            row.into_iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(v, _)| if v > limit { T::infinity() } else { v })
                .collect()
        })
        .collect();
    let kept_instances = surviving
        .into_iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(i, _)| i)
        .collect();

    Ok(EffectiveMatrix {
        metric_name: dataset.metric_name().to_owned(),
        solvers: dataset.solver_names().map(str::to_owned).collect(),
        kept_instances,
        values,
    })
}

/// Per-solver performance profiles for one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSet<T = f64> {
    metric_name: String,
    baselines: Vec<String>,
    curves: IndexMap<String, StepCurve<T>>,
    ratios: Vec<Vec<T>>,
    instances: Vec<usize>,
    kept_instances: usize,
    excluded_no_baseline: usize,
    max_ratio: Option<T>,
}

impl<T: Scalar> ProfileSet<T> {
    pub fn metric_name(&self) -> &str {
        &self.metric_name
    }

    pub fn baselines(&self) -> &[String] {
        &self.baselines
    }

    pub fn curves(&self) -> &IndexMap<String, StepCurve<T>> {
        &self.curves
    }

    pub fn curve(&self, solver: &str) -> Option<&StepCurve<T>> {
        self.curves.get(solver)
    }

    /// Ratios of one solver, aligned with [`ProfileSet::instances`].
    pub fn ratios(&self, solver: &str) -> Option<&[T]> {
        let s = self.curves.get_index_of(solver)?;
        Some(&self.ratios[s])
    }

    /// Original indices of the instances in the denominator.
    pub fn instances(&self) -> &[usize] {
        &self.instances
    }

    /// Largest finite ratio over every solver and instance.
    pub fn max_ratio(&self) -> Option<T> {
        self.max_ratio
    }

    pub fn denominator(&self) -> usize {
        self.instances.len()
    }

    /// Instances that survived the label and min-baseline filters.
    pub fn kept_instances(&self) -> usize {
        self.kept_instances
    }

    /// Kept instances dropped because every baseline was unsolved.
    pub fn excluded_no_baseline(&self) -> usize {
        self.excluded_no_baseline
    }

    /// Nothing to plot: every instance was filtered out.
    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }
}

/// `metric / best`, with `∞ / d = ∞`, `0 / 0 = 1` and `x / 0 = ∞` for `x > 0`.
/// `best` is finite.
pub(crate) fn ratio<T: Scalar>(metric: T, best: T) -> T {
    if metric.is_infinite() {
        T::infinity()
    } else if best == T::zero() {
        if metric == T::zero() {
            T::one()
        } else {
            T::infinity()
        }
    } else {
        metric / best
    }
}

/// Pipeline step 5: ratios against the baseline minimum and one step curve per solver.
pub fn compute_profiles<T: Scalar, S: AsRef<str>>(
    matrix: &EffectiveMatrix<T>,
    baselines: &[S],
) -> Result<ProfileSet<T>, ConfigError> {
    let mut report = ValidationReport::default();
    if baselines.is_empty() {
        report.error("baselines", "at least one baseline solver is required");
    }
    let mut rows = Vec::with_capacity(baselines.len());
    for (i, b) in baselines.iter().enumerate() {
        match matrix.solvers.iter().position(|s| s == b.as_ref()) {
            Some(r) => rows.push(r),
            None => report.error(
                format!("baselines[{i}]"),
                format!("unknown solver {:?}", b.as_ref()),
            ),
        }
    }
    if !report.is_valid() {
        return Err(ConfigError(report));
    }

    let mut best = Vec::with_capacity(matrix.kept_instances.len());
    let mut instances = Vec::with_capacity(matrix.kept_instances.len());
    for (col, &instance) in matrix.kept_instances.iter().enumerate() {
        let min = rows
            .iter()
            .map(|&r| matrix.values[r][col])
            .fold(T::infinity(), T::min);
        if min.is_finite() {
            best.push((col, min));
            instances.push(instance);
        }
    }
    let excluded = matrix.kept_instances.len() - instances.len();
    let denominator = instances.len();

    let mut max_ratio: Option<T> = None;
    let mut curves = IndexMap::with_capacity(matrix.solvers.len());
    let mut all_ratios = Vec::with_capacity(matrix.solvers.len());
    for (name, row) in matrix.solvers.iter().zip(&matrix.values) {
        let ratios: Vec<T> = best.iter().map(|&(col, d)| ratio(row[col], d)).collect();
        for &r in ratios.iter().filter(|r| r.is_finite()) {
            max_ratio = Some(max_ratio.map_or(r, |m| m.max(r)));
        }
        curves.insert(name.clone(), StepCurve::from_ratios(&ratios, denominator));
        all_ratios.push(ratios);
    }

    Ok(ProfileSet {
        metric_name: matrix.metric_name.clone(),
        baselines: baselines.iter().map(|b| b.as_ref().to_owned()).collect(),
        curves,
        ratios: all_ratios,
        instances,
        kept_instances: matrix.kept_instances.len(),
        excluded_no_baseline: excluded,
        max_ratio,
    })
}

/// The whole pipeline for one scenario.
pub fn analyze<T: Scalar>(
    dataset: &Dataset<T>,
    config: &AnalysisConfig<T>,
) -> Result<ProfileSet<T>, ConfigError> {
    let matrix = build_effective_matrix(dataset, config)?;
    compute_profiles(&matrix, &config.baselines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_dataset;

    fn cars() -> Dataset<f64> {
        parse_dataset(include_bytes!("../assets/cars.json")).unwrap()
    }

    fn scaled(solver: &str, component: &str, f: f64) -> ScaleFactors<f64> {
        let mut s = ScaleFactors::new();
        s.entry(solver.into())
            .or_default()
            .insert(component.into(), f);
        s
    }

    #[test]
    fn totals_sum_scaled_components() {
        let ds = cars();
        let none = ScaleFactors::new();
        assert_eq!(total_metric(&ds, &none, "Car A", 0).unwrap(), 120.0);
        assert_eq!(
            total_metric(&ds, &scaled("Car A", "motor", 0.0), "Car A", 0).unwrap(),
            100.0
        );
        assert_eq!(
            total_metric(&ds, &scaled("Car C", "wheels", 0.5), "Car C", 2).unwrap(),
            21.5
        );
    }

    #[test]
    fn totals_reject_unknown_targets() {
        let ds = cars();
        let none = ScaleFactors::new();
        assert_eq!(
            total_metric(&ds, &none, "Car D", 0),
            Err(EngineError::UnknownSolver("Car D".into()))
        );
        assert_eq!(
            total_metric(&ds, &none, "Car A", 6),
            Err(EngineError::InstanceOutOfRange { index: 6, count: 6 })
        );
    }

    #[test]
    fn label_filter() {
        let ds = cars();
        assert_eq!(filter_by_labels(&ds, &["Road", "Wood"]), [0, 1, 2, 3, 4, 5]);
        assert_eq!(filter_by_labels(&ds, &["Road"]), [0, 1]);
        assert_eq!(filter_by_labels(&ds, &["Wood"]), [4, 5]);
        assert!(filter_by_labels::<f64, &str>(&ds, &[]).is_empty());
    }

    #[test]
    fn unlabelled_instances_survive_any_filter() {
        let ds = parse_dataset(
            br#"{"metric":"t","labels":["x"],"instances":[[],[0]],"data":{"s":{"c":[1,2]}}}"#,
        )
        .unwrap();
        assert_eq!(filter_by_labels::<f64, &str>(&ds, &[]), [0]);
    }

    #[test]
    fn min_baseline_threshold_drops_instances() {
        let ds = cars();
        let config = AnalysisConfig::new(&ds)
            .with_baselines(["Car B"])
            .with_min_baseline_threshold(11.0);
        let m = build_effective_matrix(&ds, &config).unwrap();
        assert_eq!(m.kept_instances(), [2, 3, 4, 5]);
        assert_eq!(m.row("Car B").unwrap(), [45.0, 55.0, 30.0, 50.0]);
    }

    #[test]
    fn unsolved_threshold_is_strict() {
        let ds = cars();
        let config = AnalysisConfig::new(&ds).with_unsolved_threshold(50.0);
        let m = build_effective_matrix(&ds, &config).unwrap();
        let inf = f64::INFINITY;
        assert_eq!(m.row("Car A").unwrap(), [inf, 33.0, 44.0, inf, 11.0, 22.0]);
        assert_eq!(m.row("Car B").unwrap(), [10.0, 7.0, 45.0, inf, 30.0, 50.0]);
        assert_eq!(
            m.row("Car C").unwrap(),
            [25.0, 15.0, 39.0, 45.0, 16.0, 27.0]
        );
    }

    #[test]
    fn identity_configuration_gives_plain_sums() {
        let ds = cars();
        let m = build_effective_matrix(&ds, &AnalysisConfig::new(&ds)).unwrap();
        assert_eq!(m.kept_instances(), [0, 1, 2, 3, 4, 5]);
        assert_eq!(
            m.row("Car A").unwrap(),
            [120.0, 33.0, 44.0, 55.0, 11.0, 22.0]
        );
    }

    #[test]
    fn ratio_conventions() {
        assert_eq!(ratio(0.0, 0.0), 1.0);
        assert_eq!(ratio(3.0, 0.0), f64::INFINITY);
        assert_eq!(ratio(f64::INFINITY, 2.0), f64::INFINITY);
        assert_eq!(ratio(3.0, 2.0), 1.5);
    }

    #[test]
    fn all_baselines_unsolved_leaves_denominator() {
        let m = EffectiveMatrix::from_rows(
            "t",
            vec!["a".into(), "b".into()],
            vec![0, 1, 2],
            vec![vec![1.0, f64::INFINITY, 2.0], vec![2.0, 3.0, f64::INFINITY]],
        );
        let p = compute_profiles(&m, &["a"]).unwrap();
        assert_eq!(p.denominator(), 2);
        assert_eq!(p.excluded_no_baseline(), 1);
        assert_eq!(p.kept_instances(), 3);
        assert_eq!(p.instances(), [0, 2]);
        assert_eq!(p.ratios("b").unwrap(), [2.0, f64::INFINITY]);
        assert_eq!(p.curve("b").unwrap().evaluate(100.0), 0.5);
        assert_eq!(p.max_ratio(), Some(2.0));
    }

    #[test]
    fn zero_baseline_instances() {
        let m = EffectiveMatrix::from_rows(
            "t",
            vec!["a".into(), "b".into()],
            vec![0],
            vec![vec![0.0], vec![0.0]],
        );
        let p = compute_profiles(&m, &["a", "b"]).unwrap();
        assert_eq!(p.ratios("b").unwrap(), [1.0]);
        let m = EffectiveMatrix::from_rows(
            "t",
            vec!["a".into(), "b".into()],
            vec![0],
            vec![vec![0.0], vec![4.0]],
        );
        let p = compute_profiles(&m, &["a"]).unwrap();
        assert_eq!(p.ratios("b").unwrap(), [f64::INFINITY]);
        assert_eq!(p.max_ratio(), Some(1.0));
    }

    #[test]
    fn sub_unit_ratios_with_partial_baseline_set() {
        let ds = cars();
        let config = AnalysisConfig::new(&ds).with_baselines(["Car A"]);
        let p = analyze(&ds, &config).unwrap();
        let b = p.ratios("Car B").unwrap();
        assert_eq!(b[0], 10.0 / 120.0);
        assert!(p.curve("Car B").unwrap().evaluate(0.5) > 0.0);
    }

    #[test]
    fn compute_rejects_unknown_baseline() {
        let ds = cars();
        let m = build_effective_matrix(&ds, &AnalysisConfig::new(&ds)).unwrap();
        let err = compute_profiles(&m, &["Car D"]).unwrap_err();
        assert_eq!(err.0.errors[0].path, "baselines[0]");
        assert!(compute_profiles::<f64, &str>(&m, &[]).is_err());
    }

    #[test]
    fn runs_in_f32() {
        let ds: Dataset<f32> = cars().cast();
        let p = analyze(&ds, &AnalysisConfig::new(&ds)).unwrap();
        assert_eq!(p.max_ratio(), Some(12.0f32));
        assert_eq!(p.curve("Car C").unwrap().count_at(1.0), 2);
    }
}
