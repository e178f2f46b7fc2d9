//! Literal translation of the profile definition, sharing no code with the
//! engine: its own totals, its own baseline minimum, a plain counting loop.

use perfprof::{AnalysisConfig, Dataset};

fn factor(config: &AnalysisConfig<f64>, solver: &str, component: &str) -> f64 {
    match config.scale_factors.get(solver) {
        Some(per_component) => match per_component.get(component) {
            Some(f) => *f,
            None => 1.0,
        },
        None => 1.0,
    }
}

fn raw_total(ds: &Dataset<f64>, config: &AnalysisConfig<f64>, solver: &str, i: usize) -> f64 {
    let mut sum = 0.0;
    for (component, values) in ds.components(solver).unwrap() {
        sum += factor(config, solver, component) * values[i];
    }
    sum
}

fn metric(ds: &Dataset<f64>, config: &AnalysisConfig<f64>, solver: &str, i: usize) -> f64 {
    let t = raw_total(ds, config, solver, i);
    if t > config.unsolved_threshold {
        f64::INFINITY
    } else {
        t
    }
}

fn label_allowed(ds: &Dataset<f64>, config: &AnalysisConfig<f64>, i: usize) -> bool {
    for &l in &ds.instance_labels()[i] {
        let name = &ds.labels()[l];
        if !config.active_labels.iter().any(|a| a == name) {
            return false;
        }
    }
    true
}

/// The instance set of the profile definition, with each instance's best
/// baseline metric.
pub fn instance_set(ds: &Dataset<f64>, config: &AnalysisConfig<f64>) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for i in 0..ds.instance_count() {
        if !label_allowed(ds, config, i) {
            continue;
        }
        let mut noisy = false;
        for b in &config.baselines {
            if raw_total(ds, config, b, i) < config.min_baseline_threshold {
                noisy = true;
            }
        }
        if noisy {
            continue;
        }
        let mut best = f64::INFINITY;
        for b in &config.baselines {
            let m = metric(ds, config, b, i);
            if m < best {
                best = m;
            }
        }
        if best == f64::INFINITY {
            continue;
        }
        out.push((i, best));
    }
    out
}

/// Instances surviving label and baseline-floor filters, before the
/// all-baselines-unsolved exclusion.
pub fn kept_count(ds: &Dataset<f64>, config: &AnalysisConfig<f64>) -> usize {
    (0..ds.instance_count())
        .filter(|&i| label_allowed(ds, config, i))
        .filter(|&i| {
            config
                .baselines
                .iter()
                .all(|b| raw_total(ds, config, b, i) >= config.min_baseline_threshold)
        })
        .count()
}

pub fn ratio(
    ds: &Dataset<f64>,
    config: &AnalysisConfig<f64>,
    solver: &str,
    i: usize,
    best: f64,
) -> f64 {
    let m = metric(ds, config, solver, i);
    if m == f64::INFINITY {
        return f64::INFINITY;
    }
    if best == 0.0 {
        return if m == 0.0 { 1.0 } else { f64::INFINITY };
    }
    m / best
}

/// `(|{i in I : r(s,i) <= tau}|, |I|)`.
pub fn brute_force_counts(
    ds: &Dataset<f64>,
    config: &AnalysisConfig<f64>,
    solver: &str,
    tau: f64,
) -> (usize, usize) {
    let set = instance_set(ds, config);
    counts_over(ds, config, &set, solver, tau)
}

/// [`brute_force_counts`] over an instance set computed once by [`instance_set`].
pub fn counts_over(
    ds: &Dataset<f64>,
    config: &AnalysisConfig<f64>,
    set: &[(usize, f64)],
    solver: &str,
    tau: f64,
) -> (usize, usize) {
    let mut count = 0;
    for &(i, best) in set {
        if ratio(ds, config, solver, i, best) <= tau {
            count += 1;
        }
    }
    (count, set.len())
}

pub fn brute_force_profile(
    ds: &Dataset<f64>,
    config: &AnalysisConfig<f64>,
    solver: &str,
    tau: f64,
) -> f64 {
    let (count, n) = brute_force_counts(ds, config, solver, tau);
    if n == 0 {
        0.0
    } else {
        count as f64 / n as f64
    }
}

pub fn brute_force_max_ratio(ds: &Dataset<f64>, config: &AnalysisConfig<f64>) -> Option<f64> {
    let mut max: Option<f64> = None;
    for (i, best) in instance_set(ds, config) {
        for s in ds.solver_names() {
            let r = ratio(ds, config, s, i, best);
            if r.is_finite() && max.map_or(true, |m| r > m) {
                max = Some(r);
            }
        }
    }
    max
}
