#![allow(dead_code)]

pub mod oracle;

use indexmap::IndexMap;
use perfprof::{AnalysisConfig, Dataset};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const CARS: &[u8] = include_bytes!("../../assets/cars.json");

pub fn cars() -> Dataset<f64> {
    perfprof::parse_dataset(CARS).unwrap()
}

/// Random dataset: up to `max_solvers` solvers with 1–3 components,
/// up to `max_instances` instances, values in [0, 100] (half of them
/// integral so ties are common, some exact zeros), up to three labels.
pub fn random_dataset(rng: &mut StdRng, max_solvers: usize, max_instances: usize) -> Dataset<f64> {
    let solvers = rng.gen_range(1..=max_solvers);
    let n = rng.gen_range(1..=max_instances);
    let label_count = rng.gen_range(0..=3);
    let labels: Vec<String> = (0..label_count).map(|l| format!("L{l}")).collect();
    let instance_labels: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..label_count).filter(|_| rng.gen_bool(0.4)).collect())
        .collect();
    let integral = rng.gen_bool(0.5);
    let mut data = IndexMap::new();
    for s in 0..solvers {
        let mut comps = IndexMap::new();
        for c in 0..rng.gen_range(1..=3) {
            let values = (0..n)
                .map(|_| {
                    if rng.gen_bool(0.05) {
                        0.0
                    } else if integral {
                        rng.gen_range(0..=100) as f64
                    } else {
                        rng.gen_range(0.0..=100.0)
                    }
                })
                .collect();
            comps.insert(format!("c{c}"), values);
        }
        data.insert(format!("s{s}"), comps);
    }
    Dataset::from_parts("time", labels, instance_labels, data).unwrap()
}

/// Random scenario over `ds`: non-empty baseline subset, some labels
/// removed, factors in [0, 1], thresholds switched on at random.
pub fn random_config(rng: &mut StdRng, ds: &Dataset<f64>) -> AnalysisConfig<f64> {
    let names: Vec<String> = ds.solver_names().map(str::to_owned).collect();
    let k = rng.gen_range(1..=names.len());
    let baselines: Vec<String> = names.choose_multiple(rng, k).cloned().collect();
    let active: Vec<String> = ds
        .labels()
        .iter()
        .filter(|_| rng.gen_bool(0.8))
        .cloned()
        .collect();
    let mut config = AnalysisConfig::new(ds)
        .with_baselines(baselines)
        .with_active_labels(active);
    for (solver, comps) in ds.solvers() {
        for component in comps.keys() {
            if rng.gen_bool(0.4) {
                let f = if rng.gen_bool(0.2) {
                    0.0
                } else {
                    rng.gen_range(0.0..=1.0)
                };
                config = config.with_scale(solver, component, f);
            }
        }
    }
    if rng.gen_bool(0.5) {
        config.min_baseline_threshold = rng.gen_range(0.0..20.0);
    }
    if rng.gen_bool(0.5) {
        config.unsolved_threshold = rng.gen_range(20.0..200.0);
    }
    config
}

/// τ values worth probing for one curve: each breakpoint, its float
/// neighbours, and a few fixed points.
pub fn probe_points(curve: &perfprof::StepCurve<f64>) -> Vec<f64> {
    let mut taus = vec![0.0, 0.5, 1.0, 1.2, 2.0, 12.0, 1e9];
    for &t in curve.breakpoints() {
        taus.extend([t, t * (1.0 - 1e-9), t * (1.0 + 1e-9)]);
    }
    taus
}

/// Literal count of `ratios <= tau`.
pub fn count_le(ratios: &[f64], tau: f64) -> usize {
    ratios.iter().filter(|&&r| r <= tau).count()
}
